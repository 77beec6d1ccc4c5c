#include "limlearn/harness.hpp"

#include <map>
#include <sstream>

#include "limlearn/errors.hpp"

namespace lim {

std::vector<Text> suite_texts(const Language& lang, std::size_t seeded, std::uint64_t seed) {
    std::vector<Text> out{Text::canonical(lang)};
    for (std::size_t i = 0; i < seeded; ++i)
        out.push_back(Text::seeded(lang, seed + i, kSeededPauseRate, kSeededDupRate));
    return out;
}

std::optional<Seq> find_locking(const Learner& h, const Language& target, const LockingQuery& q) {
    const Extension want(target.term, q.B);
    const NatSet alphabet = target.elements_upto(q.B);
    const auto tails = all_sequences(pause_alphabet(alphabet), q.ext_len);
    std::map<std::string, bool> correct;
    auto is_correct = [&](const Term& t) {
        auto it = correct.find(t.canonical());
        if (it == correct.end())
            it = correct.emplace(t.canonical(), !t.is_quest() && Extension(t, q.B) == want).first;
        return it->second;
    };
    std::size_t tried = 0;
    for (const Seq& sigma : all_sequences(pause_alphabet(alphabet), q.bound)) {
        if (++tried > q.max_candidates) return std::nullopt;
        const Term here = h->star(sigma);
        bool locking = true;
        for (const Seq& tau : tails) {
            const Term t = tau.empty() ? here : h->star(concat(sigma, tau));
            if ((!q.bc && !(t == here)) || !is_correct(t)) {
                locking = false;
                break;
            }
        }
        if (locking) return sigma;
    }
    return std::nullopt;
}

bool RunReport::ok() const {
    if (status != RunStatus::Ok) return false;
    for (const auto& v : convergence)
        if (!v.converged()) return false;
    for (const auto& v : restrictions)
        if (!v.clean()) return false;
    return true;
}

std::vector<std::string> RunReport::lines() const {
    const std::string id = learner + "@" + language + "/" + text;
    std::vector<std::string> out;
    for (const auto& v : restrictions) out.push_back(render(v, id));
    for (const auto& v : convergence) out.push_back(render(v, id));
    if (status != RunStatus::Ok)
        out.push_back(std::string(status == RunStatus::Diverged ? "DIVERGED " : "CAP_EXCEEDED ") +
                      id + " at=" + std::to_string(hyps.terms.size()) + " " + status_detail);
    return out;
}

RunReport run_job(const Learner& h, const Language& target, const Text& text,
                  const std::vector<Tag>& tags, const std::vector<Mode>& modes, Nat B,
                  std::size_t H, std::uint64_t seed) {
    RunReport r;
    r.learner = h->id;
    r.language = target.name;
    r.text = text.id();
    r.B = B;
    r.H = H;
    r.seed = seed;
    RunResult res = run(h, text, H);
    r.status = res.status;
    r.status_detail = res.detail;
    r.hyps = std::move(res.hyps);
    r.digest = digest(r.hyps);
    if (r.status != RunStatus::Ok) {
        for (Mode m : modes) {
            Verdict v;
            v.check = std::string(mode_name(m));
            v.outcome = Outcome::Diverged;
            v.B = B;
            v.H = r.hyps.terms.size();
            v.detail = r.status_detail;
            r.convergence.push_back(v);
        }
        return r;
    }
    try {
        for (Tag t : tags) r.restrictions.push_back(check_restriction(t, r.hyps, target, B));
        for (Mode m : modes) r.convergence.push_back(check_convergence(m, r.hyps, target, B, H));
    } catch (const CapExceeded& e) {
        r.status = RunStatus::CapExceeded;
        r.status_detail = e.what();
    }
    return r;
}

std::vector<Text> job_texts(const Job& job, const Language& lang) {
    std::vector<Text> out;
    for (const auto& kind : job.texts) {
        if (kind == "canonical") {
            out.push_back(Text::canonical(lang));
        } else if (kind == "seeded") {
            for (std::size_t i = 0; i < job.seeds; ++i)
                out.push_back(
                    Text::seeded(lang, job.seed + i, kSeededPauseRate, kSeededDupRate));
        } else if (kind == "pauses") {
            out.push_back(Text::finite_then_pauses({}));
        } else {
            throw ConfigError("unknown text ensemble '" + kind + "'");
        }
    }
    return out;
}

std::vector<RunReport> run_suite(const std::vector<Job>& jobs) {
    std::vector<RunReport> out;
    for (const Job& job : jobs) {
        for (Nat i : job.members) {
            const Language lang = member_language(job.family, i);
            for (const Text& t : job_texts(job, lang)) {
                RunReport r = run_job(job.learner, lang, t, job.tags, job.modes, job.B, job.H,
                                      job.seed);
                r.learner = job.learner_name;
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

std::string summary_matrix(const std::vector<RunReport>& reports) {
    // learner -> check -> (pass, fail)
    std::map<std::string, std::map<std::string, std::pair<std::size_t, std::size_t>>> cells;
    std::vector<std::string> checks;
    auto note = [&](const std::string& learner, const std::string& check, bool pass) {
        if (std::find(checks.begin(), checks.end(), check) == checks.end())
            checks.push_back(check);
        auto& c = cells[learner][check];
        (pass ? c.first : c.second)++;
    };
    for (const auto& r : reports) {
        for (const auto& v : r.restrictions) note(r.learner, v.check, v.clean());
        for (const auto& v : r.convergence) note(r.learner, v.check, v.converged());
        if (r.status != RunStatus::Ok) note(r.learner, "run", false);
    }
    std::ostringstream os;
    std::size_t width = 8;
    for (const auto& [learner, _] : cells) width = std::max(width, learner.size());
    os << std::string(width, ' ');
    for (const auto& c : checks) os << ' ' << c;
    os << '\n';
    for (const auto& [learner, row] : cells) {
        os << learner << std::string(width - learner.size(), ' ');
        for (const auto& c : checks) {
            auto it = row.find(c);
            std::string cell = "-";
            if (it != row.end())
                cell = it->second.second == 0 ? "ok" : std::to_string(it->second.second) + "!";
            os << ' ' << cell << std::string(c.size() > cell.size() ? c.size() - cell.size() : 0, ' ');
        }
        os << '\n';
    }
    return os.str();
}

std::optional<FalsificationCertificate> falsify_it(const Learner& h, std::size_t H) {
    if (h->kind != Kind::It) throw ContractViolation("falsify_it needs an iterative learner");
    const Text text = Text::canonical(member_language(finz(), 0));
    const Seq data = text.prefix(H);
    Term q = h->it_init();
    for (std::size_t n0 = 0; n0 <= H; ++n0) {
        if (n0 > 0) q = h->it_step(q, data[n0 - 1]);
        const Seq sigma = take(data, n0);
        const NatSet c = content(sigma);
        const Nat x = c.empty() ? 0 : c.back();
        if (!(h->it_step(q, Datum::num(x + 1)) == h->it_step(q, Datum::num(x + 2)))) continue;
        FalsificationCertificate cert;
        cert.n0 = n0;
        cert.prefix = sigma;
        cert.x = x;
        cert.t1 = Text::prefix_then_constant(append(sigma, Datum::num(x + 1)), Datum::num(0));
        cert.t2 = Text::prefix_then_constant(append(sigma, Datum::num(x + 2)), Datum::num(0));
        cert.target1 = with(with(c, x + 1), 0);
        cert.target2 = with(with(c, x + 2), 0);
        const RunResult r1 = run(h, cert.t1, H);
        const RunResult r2 = run(h, cert.t2, H);
        cert.digest1 = digest(r1.hyps);
        cert.digest2 = digest(r2.hyps);
        cert.shared = r1.hyps;
        cert.verified = r1.status == RunStatus::Ok && r2.status == RunStatus::Ok &&
                        r1.hyps.terms == r2.hyps.terms && cert.digest1 == cert.digest2 &&
                        cert.target1 != cert.target2;
        return cert;
    }
    return std::nullopt;
}

} // namespace lim
