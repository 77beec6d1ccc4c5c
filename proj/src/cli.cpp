#include "limlearn/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "limlearn/dsl.hpp"
#include "limlearn/errors.hpp"
#include "limlearn/registry.hpp"
#include "limlearn/transforms.hpp"

namespace lim {

namespace {

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Clean: return "clean";
        case Outcome::Violation: return "violation";
        case Outcome::Converged: return "converged";
        case Outcome::NotConverged: return "not_converged";
        case Outcome::Diverged: return "diverged";
    }
    return "?";
}

std::string status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Ok: return "ok";
        case RunStatus::Diverged: return "diverged";
        case RunStatus::CapExceeded: return "cap_exceeded";
    }
    return "?";
}

nlohmann::json verdict_json(const Verdict& v) {
    nlohmann::json j;
    j["check"] = v.check;
    j["outcome"] = outcome_name(v.outcome);
    j["indices"] = v.indices;
    j["witness"] = v.witness ? nlohmann::json(*v.witness) : nlohmann::json();
    j["n0"] = v.n0 ? nlohmann::json(*v.n0) : nlohmann::json();
    j["term"] = v.final_term ? nlohmann::json(v.final_term->canonical()) : nlohmann::json();
    j["B"] = v.B;
    j["H"] = v.H;
    return j;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(trim(item));
    return out;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, std::optional<Nat> bound,
            std::optional<std::size_t> horizon, const std::string& json_path, std::ostream& out,
            std::ostream& err) {
    std::string text;
    if (!read_file(path, text)) {
        err << "cannot read " << path << '\n';
        return kExitInvalid;
    }
    ParseResult parsed = parse_spec(text);
    if (!parsed.spec) {
        err << parsed.error->render() << '\n';
        return kExitInvalid;
    }
    std::vector<Job> jobs = parsed.spec->jobs;
    for (Job& j : jobs) {
        if (seed) j.seed = *seed;
        if (bound) j.B = *bound;
        if (horizon) j.H = *horizon;
    }
    const auto reports = run_suite(jobs);
    bool all_ok = true;
    for (const auto& r : reports) {
        for (const auto& line : r.lines()) out << line << '\n';
        all_ok = all_ok && r.ok();
    }
    out << "summary\n" << summary_matrix(reports);
    if (!json_path.empty()) {
        std::ofstream js(json_path);
        if (!js) {
            err << "cannot write " << json_path << '\n';
            return kExitInvalid;
        }
        js << reports_json(reports) << '\n';
    }
    return all_ok ? kExitOk : kExitFailed;
}

int cmd_verify(const std::string& path, const std::string& target_text,
               const std::string& checks, std::ostream& out, std::ostream& err) {
    std::string text;
    if (!read_file(path, text)) {
        err << "cannot read " << path << '\n';
        return kExitInvalid;
    }
    register_catalog();
    Trace trace;
    try {
        trace = parse_trace(text);
    } catch (const std::exception& e) {
        err << path << ": " << e.what() << '\n';
        return kExitInvalid;
    }
    std::optional<Language> target;
    if (!target_text.empty()) {
        try {
            target = Language{target_text, parse_term(target_text), false};
        } catch (const std::exception& e) {
            err << "bad target: " << e.what() << '\n';
            return kExitInvalid;
        }
    }
    std::vector<Tag> tags;
    std::vector<Mode> modes;
    if (checks.empty()) {
        for (Tag t : all_tags())
            if (target || (t != Tag::Mon && t != Tag::CautTar && t != Tag::NU && t != Tag::SNU))
                tags.push_back(t);
        if (target) modes = {Mode::Ex, Mode::Bc};
    } else {
        for (const auto& c : split_list(checks)) {
            if (c == "Ex" || c == "Bc") {
                modes.push_back(c == "Ex" ? Mode::Ex : Mode::Bc);
            } else if (auto t = tag_from_name(c)) {
                tags.push_back(*t);
            } else {
                err << "unknown restriction tag '" << c << "'\n";
                return kExitInvalid;
            }
        }
    }
    const bool needs_target =
        !modes.empty() || std::any_of(tags.begin(), tags.end(), [](Tag t) {
            return t == Tag::Mon || t == Tag::CautTar || t == Tag::NU || t == Tag::SNU;
        });
    if (needs_target && !target) {
        err << "these checks need --target\n";
        return kExitInvalid;
    }
    const Language lang = target ? *target : Language{"-", Term::fin_set({}), false};
    bool ok = true;
    try {
        for (Tag t : tags) {
            Verdict v = check_restriction(t, trace.hyps, lang, trace.B);
            v.H = trace.H;
            out << render(v, path) << '\n';
            ok = ok && v.clean();
        }
        for (Mode m : modes) {
            Verdict v = check_convergence(m, trace.hyps, lang, trace.B, trace.H);
            out << render(v, path) << '\n';
            ok = ok && v.converged();
        }
    } catch (const std::exception& e) {
        err << "cannot evaluate trace: " << e.what() << '\n';
        return kExitInvalid;
    }
    return ok ? kExitOk : kExitFailed;
}

int cmd_catalog(std::ostream& out) {
    register_catalog();
    auto& reg = Registry::global();
    std::vector<std::string> fams = reg.family_names();
    std::sort(fams.begin(), fams.end());
    out << "families\n";
    for (const auto& f : fams) out << "  " << f << "  " << reg.family(f)->description << '\n';
    std::vector<std::string> ls = reg.learner_ids();
    std::sort(ls.begin(), ls.end());
    out << "learners\n";
    for (const auto& id : ls) {
        const auto h = reg.learner(id);
        out << "  " << id << "  " << kind_name(h->kind);
        for (const auto& p : h->properties) out << ' ' << p;
        out << '\n';
    }
    std::vector<const TransformSpec*> ts;
    for (const auto& t : transform_specs()) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) { return a->name < b->name; });
    out << "transforms\n";
    for (const auto* t : ts) {
        out << "  " << t->name << "  ";
        for (std::size_t i = 0; i < t->input_kinds.size(); ++i)
            out << (i ? "|" : "") << kind_name(t->input_kinds[i]);
        out << " -> " << (t->output_kind ? std::string(kind_name(*t->output_kind)) : "same");
        if (!t->required.empty()) {
            out << "  requires";
            for (const auto& r : t->required) out << ' ' << r;
        }
        if (!t->claimed.empty()) {
            out << "  claims";
            for (const auto& c : t->claimed) out << ' ' << c;
        }
        out << '\n';
    }
    return kExitOk;
}

int cmd_falsify(const std::string& id, std::size_t horizon, std::ostream& out,
                std::ostream& err) {
    register_catalog();
    Learner h;
    try {
        h = Registry::global().learner(id);
    } catch (const ConfigError& e) {
        err << e.what() << '\n';
        return kExitInvalid;
    }
    if (h->kind != Kind::It) {
        err << id << " is not an iterative learner\n";
        return kExitInvalid;
    }
    const auto cert = falsify_it(h, horizon);
    if (!cert) {
        out << "no certificate for " << id << " within H=" << horizon << '\n';
        return kExitFailed;
    }
    out << "learner " << id << '\n';
    out << "n0 " << cert->n0 << '\n';
    out << "prefix " << seq_to_string(cert->prefix) << '\n';
    out << "x " << cert->x << '\n';
    out << "target1 " << set_to_string(cert->target1) << '\n';
    out << "target2 " << set_to_string(cert->target2) << '\n';
    out << "digest1 " << cert->digest1 << '\n';
    out << "digest2 " << cert->digest2 << '\n';
    out << (cert->verified ? "verified" : "NOT verified") << '\n';
    return cert->verified ? kExitOk : kExitFailed;
}

} // namespace

std::string format_trace(const HypSequence& p, Nat B, std::size_t H) {
    std::string out = "B=" + std::to_string(B) + " H=" + std::to_string(H) + "\n";
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
        if (i > 0) out += "T: " + p.prefix[i - 1].to_string() + "\n";
        out += "p: " + p.terms[i].canonical() + "\n";
    }
    return out;
}

Trace parse_trace(std::string_view text) {
    Trace t;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    bool want_term = true;
    auto bad = [&](const std::string& what) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + what);
    };
    auto number = [&](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), ::isdigit))
            bad("expected a number, got '" + s + "'");
        return std::stoull(s);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::string l = trim(line);
        if (l.empty()) continue;
        if (!header) {
            std::istringstream hs(l);
            std::string b, h;
            hs >> b >> h;
            if (b.rfind("B=", 0) != 0 || h.rfind("H=", 0) != 0) bad("expected 'B=.. H=..'");
            t.B = number(b.substr(2));
            t.H = number(h.substr(2));
            if (t.B > 4096) bad("B too large");
            header = true;
            continue;
        }
        if (want_term) {
            if (l.rfind("p:", 0) != 0) bad("expected 'p: <term>'");
            t.hyps.terms.push_back(parse_term(trim(std::string_view(l).substr(2))));
        } else {
            if (l.rfind("T:", 0) != 0) bad("expected 'T: <datum>'");
            const std::string d = trim(std::string_view(l).substr(2));
            t.hyps.prefix.push_back(d == "#" ? Datum::pause() : Datum::num(number(d)));
        }
        want_term = !want_term;
    }
    if (!header) bad("missing header");
    if (t.hyps.terms.empty()) bad("no hypotheses");
    if (want_term) bad("trace ends with a datum");
    return t;
}

std::string reports_json(const std::vector<RunReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["learner"] = r.learner;
        j["language"] = r.language;
        j["text"] = r.text;
        j["digest"] = r.digest;
        j["status"] = status_name(r.status);
        j["B"] = r.B;
        j["H"] = r.H;
        j["seed"] = r.seed;
        nlohmann::json vs = nlohmann::json::array();
        for (const auto& v : r.restrictions) vs.push_back(verdict_json(v));
        for (const auto& v : r.convergence) vs.push_back(verdict_json(v));
        j["verdicts"] = vs;
        nlohmann::json hyps = nlohmann::json::array();
        for (const auto& t : r.hyps.terms) hyps.push_back(t.canonical());
        j["hypotheses"] = hyps;
        j["prefix"] = seq_to_string(r.hyps.prefix);
        arr.push_back(j);
    }
    nlohmann::json doc;
    doc["reports"] = arr;
    return doc.dump(2);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learning-in-the-limit simulator"};
    app.require_subcommand(1);

    std::string spec_path, trace_path, target, checks, learner_id, json_path;
    std::optional<std::uint64_t> seed;
    std::optional<Nat> bound;
    std::optional<std::size_t> horizon;
    std::size_t falsify_horizon = kDefaultHorizon;

    auto* run_cmd = app.add_subcommand("run", "execute an experiment spec");
    run_cmd->add_option("spec", spec_path, "spec file")->required();
    run_cmd->add_option("--seed", seed, "seed of the first seeded text");
    run_cmd->add_option("--bound,-B", bound, "semantic bound B");
    run_cmd->add_option("--horizon,-H", horizon, "text horizon H");
    run_cmd->add_option("--json", json_path, "write a JSON dump of all reports");

    auto* verify_cmd = app.add_subcommand("verify", "check restrictions on a trace");
    verify_cmd->add_option("trace", trace_path, "trace file")->required();
    verify_cmd->add_option("--target", target, "target language as a term, e.g. finset(0,3)");
    verify_cmd->add_option("--check", checks, "comma-separated tags and Ex/Bc");

    app.add_subcommand("catalog", "list families, learners and transforms");

    auto* falsify_cmd = app.add_subcommand("falsify-it", "search a separation certificate");
    falsify_cmd->add_option("learner", learner_id, "iterative learner id")->required();
    falsify_cmd->add_option("--horizon,-H", falsify_horizon, "horizon H");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitInvalid;
    }

    try {
        if (run_cmd->parsed())
            return cmd_run(spec_path, seed, bound, horizon, json_path, out, err);
        if (verify_cmd->parsed()) return cmd_verify(trace_path, target, checks, out, err);
        if (falsify_cmd->parsed()) return cmd_falsify(learner_id, falsify_horizon, out, err);
        return cmd_catalog(out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

} // namespace lim
