// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "limlearn/cli.hpp"
#include "limlearn/dsl.hpp"
#include "limlearn/families.hpp"
#include "limlearn/harness.hpp"
#include "limlearn/restrictions.hpp"
#include "limlearn/transforms.hpp"
#include "oracles.hpp"

using namespace lim;

namespace {

constexpr Nat kB = 64;
constexpr std::size_t kH = 100;
constexpr std::size_t kSeeds = 10;

constexpr double kLimitVerifiers = 60.0;
constexpr double kLimitConsistency = 120.0;
constexpr double kLimitEqualities = 300.0;

constexpr std::size_t kEqOneSamples = 1000;
constexpr std::size_t kFuzzInputs = 1000;
constexpr std::size_t kFuzzMaxBytes = 4096;
constexpr std::size_t kSepMembers = 20;
constexpr std::size_t kItFixtures = 5;
constexpr std::size_t kMinCofiniteMembers = 2;
// r(100) must reach this for the delay to count as unbounded at desk scale.
constexpr std::size_t kMinDelayAtHorizon = 40;

struct Result {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;  // 0: no time limit
    std::function<Result()> body;
};

Language fin_target(NatSet d) { return {set_to_string(d), Term::fin_set(std::move(d)), false}; }

// `?` denotes the empty language, as in the verifiers.
bool sem_eq(const Term& a, const Term& b) {
    for (Nat x = 0; x <= kB; ++x)
        if ((!a.is_quest() && a.eval(x)) != (!b.is_quest() && b.eval(x))) return false;
    return true;
}

std::string join(const std::vector<std::string>& parts, std::size_t max = 4) {
    std::string out;
    for (std::size_t i = 0; i < parts.size() && i < max; ++i) out += (i ? "; " : "") + parts[i];
    if (parts.size() > max) out += "; ...";
    return out;
}

bool gold_capable(const Learner& h) {
    return h->kind == Kind::G || h->kind == Kind::Psd || h->kind == Kind::Sd;
}

// Every suite text of every member of an entry.
template <typename F>
void for_suite_texts(const SuiteEntry& e, F&& visit) {
    for (Nat i : e.members) {
        const Language l = member_language(e.family, i);
        for (const Text& t : suite_texts(l, kSeeds)) visit(i, l, t);
    }
}

Result verifiers() {
    const std::vector<std::vector<Term>> pools = {
        {Term::fin_set({0}), Term::fin_set({0, 1}), Term::patch_union(Term::fin_set({0}), {})},
        {Term::quest(), Term::fin_set({1}), Term::co_finite({})},
    };
    const std::vector<Language> targets = {fin_target({0}), fin_target({0, 1}), fin_target({1}),
                                           {"N", Term::co_finite({}), true}};
    std::size_t instances = 0;
    std::size_t mismatches = 0;
    std::string first;
    for (const auto& pool : pools) {
        const auto r = oracle::verifier_agreement(pool, targets, 4, kB);
        instances += r.instances;
        mismatches += r.mismatches;
        if (first.empty()) first = r.first;
    }
    Result o;
    o.pass = mismatches == 0 && instances > 0;
    o.detail = std::to_string(instances) + " instances, " + std::to_string(mismatches) +
               " mismatches" + (first.empty() ? "" : " (first: " + first + ")");
    return o;
}

Result consistency() {
    struct Pick {
        Tag tag;
        std::function<Learner(const Learner&)> transform;
    };
    const std::vector<Pick> picks = {
        {Tag::T, make_consistent_patch},       {Tag::Mon, make_consistent_patch},
        {Tag::SMon, make_consistent_patch},    {Tag::WMon, make_consistent_reset},
        {Tag::CautTar, make_consistent_reset}, {Tag::SemConv, make_consistent_dedup},
        {Tag::Conv, make_consistent_dedup},
    };
    std::size_t runs = 0;
    std::vector<std::string> bad;
    std::set<std::string> covered;
    for (const Pick& pick : picks) {
        for (const SuiteEntry& e : standard_suite()) {
            if (!gold_capable(e.learner)) continue;
            if (std::find(e.clean_tags.begin(), e.clean_tags.end(), pick.tag) == e.clean_tags.end())
                continue;
            covered.insert(std::string(tag_name(pick.tag)));
            const Learner out = pick.transform(e.learner);
            for_suite_texts(e, [&](Nat i, const Language& l, const Text& t) {
                ++runs;
                const auto base = run(e.learner, t, kH);
                const auto got = run(out, t, kH);
                const std::string where = std::string(tag_name(pick.tag)) + " " + e.name + " member " +
                                          std::to_string(i) + " " + t.id();
                if (!check_restriction(Tag::Cons, got.hyps, l, kB).clean())
                    bad.push_back(where + ": Cons");
                if (check_restriction(pick.tag, base.hyps, l, kB).clean() &&
                    !check_restriction(pick.tag, got.hyps, l, kB).clean())
                    bad.push_back(where + ": lost " + std::string(tag_name(pick.tag)));
                for (Mode m : {Mode::Ex, Mode::Bc})
                    if (check_convergence(m, base.hyps, l, kB, kH).converged() &&
                        !check_convergence(m, got.hyps, l, kB, kH).converged())
                        bad.push_back(where + ": lost " + std::string(mode_name(m)));
            });
        }
    }
    Result o;
    o.pass = bad.empty() && covered.size() == picks.size();
    o.detail = std::to_string(covered.size()) + "/7 tags covered, " + std::to_string(runs) +
               " runs, " + std::to_string(bad.size()) + " violations" +
               (bad.empty() ? "" : " (" + join(bad) + ")");
    return o;
}

Result eq_one() {
    const std::vector<Learner> bases = {chain_lag(), star(pause_flip()), star(cof_osc()),
                                        star(sep_learner()), chain_flicker()};
    std::mt19937_64 rng(41);
    std::size_t mismatches = 0;
    std::string first;
    for (std::size_t n = 0; n < kEqOneSamples; ++n) {
        const Learner& h = bases[n % bases.size()];
        Seq sigma;
        const std::size_t len = rng() % 9;
        for (std::size_t i = 0; i < len; ++i)
            sigma.push_back(rng() % 4 == 0 ? Datum::pause() : Datum::num(rng() % 12));
        const Learner patched = make_consistent_patch(h);
        const Term a = patched->star(sigma);
        const Term b = h->star(sigma);
        const NatSet c = content(sigma);
        for (Nat x = 0; x <= kB; ++x) {
            const bool want = b.eval(x) || std::binary_search(c.begin(), c.end(), x);
            if (a.eval(x) != want) {
                if (mismatches++ == 0) first = h->id + " on " + seq_to_string(sigma);
                break;
            }
        }
    }
    Result o;
    o.pass = mismatches == 0;
    o.detail = std::to_string(kEqOneSamples) + " samples, " + std::to_string(mismatches) +
               " mismatches" + (first.empty() ? "" : " (first: " + first + ")");
    return o;
}

Result lower_chain() {
    std::size_t runs = 0;
    std::vector<std::string> bad;
    auto check = [&](const std::string& label, const Learner& out, Tag claim, const SuiteEntry& e) {
        for_suite_texts(e, [&](Nat i, const Language& l, const Text& t) {
            ++runs;
            const auto r = run(out, t, kH);
            const std::string where = label + " " + e.name + " member " + std::to_string(i) + " " +
                                      t.id();
            if (r.status != RunStatus::Ok) bad.push_back(where + ": " + r.detail);
            if (!check_restriction(claim, r.hyps, l, kB).clean())
                bad.push_back(where + ": " + std::string(tag_name(claim)));
            if (!check_convergence(Mode::Ex, r.hyps, l, kB, kH).converged())
                bad.push_back(where + ": Ex");
        });
    };
    std::size_t entries = 0;
    for (const SuiteEntry& e : standard_suite()) {
        if (!gold_capable(e.learner) || e.mode != Mode::Ex) continue;
        if (!e.learner->has_property("Cons") || !e.learner->has_property("CautTar")) continue;
        ++entries;
        const Learner g = star(e.learner);
        check("cauttar_to_wb", cauttar_to_wb(g), Tag::Wb, e);
        const Learner sd = g_to_sd_cauttar(g);
        check("g_to_sd_cauttar", sd, Tag::CautTar, e);
        check("sd_cauttar_to_wb", sd_cauttar_to_wb(sd), Tag::Wb, e);
    }
    Result o;
    o.pass = bad.empty() && entries > 0;
    o.detail = std::to_string(entries) + " suite entries, " + std::to_string(runs) + " runs, " +
               std::to_string(bad.size()) + " failures" + (bad.empty() ? "" : " (" + join(bad) + ")");
    return o;
}

Result snu_sdec() {
    const FamilyPtr f = conflict();
    const Learner base = star(pause_flip());
    const Learner snu = g_to_snu(base, f);
    const Learner sdec = snu_to_sdec(snu);
    std::vector<std::string> bad;

    const Language l0 = member_language(f, 0);
    const Text crafted = Text::finite_then_pauses(seq_of({0}));
    const auto b = run(base, crafted, 8);
    const bool base_violates = !check_restriction(Tag::Dec, b.hyps, l0, kB).clean() ||
                               !check_restriction(Tag::NU, b.hyps, l0, kB).clean();
    if (!base_violates) bad.push_back("base shows no Dec or NU violation on the crafted text");

    std::size_t runs = 0;
    std::size_t pre = 0;
    for (Nat i : f->index_hint) {
        const Language l = member_language(f, i);
        auto texts = suite_texts(l, kSeeds);
        texts.push_back(crafted);
        for (const Text& t : texts) {
            if (!l.member(0)) continue;
            ++runs;
            const std::string where = "member " + std::to_string(i) + " " + t.id();
            const auto rb = run(base, t, kH);
            const auto rs = run(snu, t, kH);
            const auto rd = run(sdec, t, kH);
            if (!check_restriction(Tag::SNU, rs.hyps, l, kB).clean()) bad.push_back(where + ": SNU");
            if (!check_restriction(Tag::SDec, rd.hyps, l, kB).clean()) bad.push_back(where + ": SDec");
            const Verdict vb = check_convergence(Mode::Ex, rb.hyps, l, kB, kH);
            const Verdict vs = check_convergence(Mode::Ex, rs.hyps, l, kB, kH);
            const Verdict vd = check_convergence(Mode::Ex, rd.hyps, l, kB, kH);
            if (vb.converged() && !vs.converged()) bad.push_back(where + ": SNU lost Ex");
            if (vs.converged() && !vd.converged()) bad.push_back(where + ": SDec lost Ex");
            if (!vs.converged()) continue;
            for (std::size_t k = 0; k < *vs.n0; ++k) {
                ++pre;
                if (sem_eq(rs.hyps.terms[k], l.term))
                    bad.push_back(where + ": pre-convergence hypothesis " + std::to_string(k) +
                                  " equals the target");
            }
        }
    }
    Result o;
    o.pass = bad.empty();
    o.detail = std::string("base violates: ") + (base_violates ? "yes" : "no") + ", " +
               std::to_string(runs) + " runs, " + std::to_string(pre) +
               " pre-convergence hypotheses, " + std::to_string(bad.size()) + " failures" +
               (bad.empty() ? "" : " (" + join(bad) + ")");
    return o;
}

// Part (a): Psd learner against the least locking sequence.
std::string part_psd(std::vector<std::string>& bad) {
    std::size_t checked = 0;
    for (const SuiteEntry& e : standard_suite()) {
        const Learner g = star(e.learner);
        const Learner psd = g_to_psd(g);
        for (Nat i : e.members) {
            const Language l = member_language(e.family, i);
            if (l.infinite) continue;
            const NatSet elems = l.elements_upto(kB);
            if (elems.size() > kPsdMaxSet) continue;
            ++checked;
            const std::string where = e.name + " member " + std::to_string(i);
            const auto r = run(psd, Text::canonical(l), kPsdMaxLength);
            if (r.status != RunStatus::Ok) {
                bad.push_back("(a) " + where + ": " + r.detail);
                continue;
            }
            const Verdict v = check_convergence(Mode::Ex, r.hyps, l, kB, kPsdMaxLength);
            LockingQuery q;
            q.bound = kPsdMaxLength;
            const auto lock = find_locking(g, l, q);
            if (!v.converged() || !lock) {
                bad.push_back("(a) " + where + (lock ? ": not converged" : ": no locking sequence"));
                continue;
            }
            if (!(*v.final_term == g->star(*lock)))
                bad.push_back("(a) " + where + ": " + v.final_term->canonical() + " vs " +
                              g->star(*lock).canonical());
        }
    }
    return "(a) " + std::to_string(checked) + " members";
}

std::string part_pad(std::vector<std::string>& bad) {
    std::size_t steps = 0;
    for (const SuiteEntry& e : standard_suite()) {
        const Learner g = star(e.learner);
        const Learner it = bc_to_it_pad(g);
        for_suite_texts(e, [&](Nat i, const Language&, const Text& t) {
            const auto a = run(g, t, kH);
            const auto b = run(it, t, kH);
            for (std::size_t k = 0; k < a.hyps.terms.size(); ++k) {
                ++steps;
                if (!sem_eq(a.hyps.terms[k], b.hyps.terms[k])) {
                    bad.push_back("(b) " + e.name + " member " + std::to_string(i) + " " + t.id() +
                                  " step " + std::to_string(k));
                    break;
                }
            }
        });
    }
    return "(b) " + std::to_string(steps) + " steps";
}

std::string part_it_to_sd(std::vector<std::string>& bad) {
    std::size_t runs = 0;
    std::size_t converged = 0;
    std::set<std::string> cofinite;
    std::vector<std::string> failed;
    for (const SuiteEntry& e : standard_suite()) {
        if (e.mode != Mode::Ex) continue;
        const Learner back = it_to_sd(bc_to_it_pad(star(e.learner)));
        for (Nat i : e.members) {
            const Language l = member_language(e.family, i);
            if (l.infinite) cofinite.insert(e.name + std::to_string(i));
            bool all = true;
            for (const Text& t : suite_texts(l, kSeeds)) {
                ++runs;
                const auto r = run(back, t, kH);
                if (check_convergence(Mode::Ex, r.hyps, l, kB, kH).converged())
                    ++converged;
                else
                    all = false;
            }
            if (!all) failed.push_back(e.name + " member " + std::to_string(i));
        }
    }
    if (cofinite.size() < kMinCofiniteMembers) bad.push_back("(c) fewer than two cofinite members");
    if (!failed.empty()) bad.push_back("(c) not Ex-converged on " + join(failed, 8));
    return "(c) " + std::to_string(converged) + "/" + std::to_string(runs) + " runs converged";
}

std::string part_cautbc(std::vector<std::string>& bad) {
    std::size_t queries = 0;
    for (const SuiteEntry& e : standard_suite()) {
        if (e.learner->kind != Kind::Sd || !e.learner->has_property("Cons")) continue;
        const Learner out = sd_bc_to_cauttar_bc(e.learner);
        for_suite_texts(e, [&](Nat i, const Language& l, const Text& t) {
            const std::string where = "(d) " + e.name + " member " + std::to_string(i) + " " + t.id();
            const auto r = run(out, t, kH);
            if (!check_restriction(Tag::CautTar, r.hyps, l, kB).clean())
                bad.push_back(where + ": CautTar");
            std::set<NatSet> seen;
            for (std::size_t n = 0; n <= kH; ++n) {
                const NatSet d = content(r.hyps.prefix.size() >= n ? take(r.hyps.prefix, n) : Seq{});
                if (!seen.insert(d).second) continue;
                ++queries;
                const Term small = out->sd(d);
                const Term big = e.learner->sd(d);
                for (Nat x = 0; x <= kB; ++x)
                    if (small.eval(x) && !big.eval(x)) {
                        bad.push_back(where + ": not contained at " + set_to_string(d));
                        break;
                    }
            }
        });
    }
    return "(d) " + std::to_string(queries) + " sets";
}

std::string part_bc_to_ex(std::vector<std::string>& bad) {
    const Learner base = cof_osc();
    const Learner out = sd_cauttar_bc_to_ex(base);
    std::size_t bc_runs = 0;
    std::size_t base_ex = 0;
    for (Nat i : cof()->index_hint) {
        const Language l = member_language(cof(), i);
        for (const Text& t : suite_texts(l, kSeeds)) {
            const auto rb = run(base, t, kH);
            if (!check_convergence(Mode::Bc, rb.hyps, l, kB, kH).converged()) continue;
            ++bc_runs;
            if (check_convergence(Mode::Ex, rb.hyps, l, kB, kH).converged()) ++base_ex;
            const auto r = run(out, t, kH);
            if (!check_convergence(Mode::Ex, r.hyps, l, kB, kH).converged())
                bad.push_back("(e) member " + std::to_string(i) + " " + t.id());
        }
    }
    if (bc_runs == 0) bad.push_back("(e) base never Bc-converges");
    return "(e) " + std::to_string(bc_runs) + " runs, base Ex on " + std::to_string(base_ex);
}

std::string part_td(std::vector<std::string>& bad) {
    std::size_t runs = 0;
    for (const SuiteEntry& e : standard_suite()) {
        if (e.learner->kind != Kind::Td) continue;
        const Learner out = td_bc_to_ex(e.learner);
        for_suite_texts(e, [&](Nat i, const Language&, const Text& t) {
            ++runs;
            const auto r = run(out, t, kH);
            std::set<std::string> distinct;
            for (const Term& term : r.hyps.terms)
                if (!term.is_quest()) distinct.insert(term.canonical());
            if (distinct.size() > 1)
                bad.push_back("(f) " + e.name + " member " + std::to_string(i) + " " + t.id() + ": " +
                              std::to_string(distinct.size()) + " terms");
        });
    }
    return "(f) " + std::to_string(runs) + " runs";
}

Result equalities() {
    std::vector<std::string> bad;
    std::vector<std::string> notes;
    for (auto part : {part_psd, part_pad, part_it_to_sd, part_cautbc, part_bc_to_ex, part_td}) {
        try {
            notes.push_back(part(bad));
        } catch (const std::exception& e) {
            bad.push_back(std::string("exception: ") + e.what());
        }
    }
    Result o;
    o.pass = bad.empty();
    o.detail = join(notes, notes.size()) + ", " + std::to_string(bad.size()) + " failures" +
               (bad.empty() ? "" : " (" + join(bad) + ")");
    return o;
}

Result separation() {
    std::vector<std::string> bad;
    std::size_t runs = 0;
    const FamilyPtr f = finz();
    std::size_t members = std::min(kSepMembers, f->index_hint.size());
    for (std::size_t k = 0; k < members; ++k) {
        const Language l = member_language(f, f->index_hint[k]);
        for (const Text& t : suite_texts(l, kSeeds)) {
            ++runs;
            const auto r = run(sep_learner(), t, kH);
            if (!check_convergence(Mode::Ex, r.hyps, l, kB, kH).converged())
                bad.push_back("sep member " + std::to_string(f->index_hint[k]) + " " + t.id());
        }
    }
    if (members < kSepMembers) bad.push_back("only " + std::to_string(members) + " finz members");

    const Language n_minus_0 = member_language(f, 0);
    const auto fixtures = it_fixtures();
    if (fixtures.size() != kItFixtures) bad.push_back("fixture set size " + std::to_string(fixtures.size()));
    std::size_t certs = 0;
    for (const Learner& h : fixtures) {
        const auto conv = run(h, Text::canonical(n_minus_0), kH);
        if (!check_convergence(Mode::Ex, conv.hyps, n_minus_0, kB, kH).converged()) {
            bad.push_back(h->id + " does not converge");
            continue;
        }
        const auto cert = falsify_it(h, kH);
        if (!cert) {
            bad.push_back(h->id + ": no certificate");
            continue;
        }
        const auto r1 = run(h, cert->t1, kH);
        const auto r2 = run(h, cert->t2, kH);
        const bool ok = cert->verified && cert->digest1 == cert->digest2 &&
                        digest(r1.hyps) == cert->digest1 && digest(r2.hyps) == cert->digest2 &&
                        cert->target1 != cert->target2;
        if (ok)
            ++certs;
        else
            bad.push_back(h->id + ": certificate does not replay");
    }
    Result o;
    o.pass = bad.empty();
    o.detail = std::to_string(members) + " finz members over " + std::to_string(runs) + " runs, " +
               std::to_string(certs) + "/" + std::to_string(fixtures.size()) + " certificates" +
               (bad.empty() ? "" : " (" + join(bad) + ")");
    return o;
}

Result cind_roundtrip() {
    std::vector<std::string> bad;
    std::vector<std::string> skipped;
    std::size_t steps = 0;
    for (const SuiteEntry& e : standard_suite()) {
        const Learner g = star(e.learner);
        // The hypothesis-space form needs a learner whose outputs are all C-indices.
        bool has_quest = false;
        for_suite_texts(e, [&](Nat, const Language&, const Text& t) {
            for (const Term& term : run(g, t, kH).hyps.terms) has_quest |= term.is_quest();
        });
        if (has_quest) {
            skipped.push_back(e.name);
            continue;
        }
        const Learner back = to_cind(to_hypothesis_space(g));
        for_suite_texts(e, [&](Nat i, const Language&, const Text& t) {
            const auto a = run(g, t, kH);
            const auto b = run(back, t, kH);
            const std::string where = e.name + " member " + std::to_string(i) + " " + t.id();
            if (mind_change_positions(a.hyps) != mind_change_positions(b.hyps))
                bad.push_back(where + ": mind changes");
            for (std::size_t k = 0; k < a.hyps.terms.size(); ++k) {
                ++steps;
                if (!sem_eq(a.hyps.terms[k], b.hyps.terms[k])) {
                    bad.push_back(where + ": semantics at " + std::to_string(k));
                    break;
                }
            }
        });
    }
    Result o;
    o.pass = bad.empty();
    o.detail = std::to_string(steps) + " steps compared" +
               (skipped.empty() ? "" : ", skipped (outputs ?): " + join(skipped)) +
               (bad.empty() ? "" : " (" + join(bad) + ")");
    return o;
}

Result totalization() {
    std::vector<std::string> bad;
    std::size_t runs = 0;
    std::size_t min_reach = kH;
    for (const Learner& h : costed_fin_learners()) {
        const Learner t = totalize(h);
        const Learner uncosted = make_gold(h->id + "_uncosted", h->gold);
        for (Nat i : fin()->index_hint) {
            const Language l = member_language(fin(), i);
            for (const Text& text : suite_texts(l, kSeeds)) {
                ++runs;
                const std::string where = h->id + " member " + std::to_string(i) + " " + text.id();
                const auto r = run(t, text, kH);
                if (r.status != RunStatus::Ok) bad.push_back(where + ": " + r.detail);
                std::size_t prev = 0;
                const Seq full = text.prefix(kH);
                for (std::size_t n = 0; n <= kH; ++n) {
                    const std::size_t rn = t->delay(take(full, n));
                    if (rn < prev || rn > n) {
                        bad.push_back(where + ": delay table at " + std::to_string(n));
                        break;
                    }
                    prev = rn;
                }
                min_reach = std::min(min_reach, prev);
                if (prev < kMinDelayAtHorizon) bad.push_back(where + ": delay stalls at " + std::to_string(prev));
                const auto rb = run(uncosted, text, kH);
                const Verdict vb = check_convergence(Mode::Ex, rb.hyps, l, kB, kH);
                const Verdict vt = check_convergence(Mode::Ex, r.hyps, l, kB, kH);
                if (vb.outcome != vt.outcome ||
                    (vb.converged() && !(*vb.final_term == *vt.final_term)))
                    bad.push_back(where + ": verdicts differ");
            }
        }
    }
    Result o;
    o.pass = bad.empty();
    o.detail = std::to_string(runs) + " runs, least r(" + std::to_string(kH) +
               ") = " + std::to_string(min_reach) + (bad.empty() ? "" : " (" + join(bad) + ")");
    return o;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Result cli_contract() {
    std::vector<std::string> bad;
    const std::string dir = LIMLEARN_FIXTURE_DIR;
    const std::vector<std::pair<std::string, int>> fixtures = {
        {"pass.spec", kExitOk},
        {"fail.spec", kExitFailed},
        {"bad_syntax.spec", kExitInvalid},
        {"bad_kind.spec", kExitInvalid},
    };
    for (const auto& [name, want] : fixtures) {
        std::ostringstream out;
        std::ostringstream err;
        const int got = run_cli({"run", dir + "/" + name}, out, err);
        if (got != want) bad.push_back(name + " exit " + std::to_string(got));
    }

    std::mt19937_64 rng(99);
    const std::string seed_text = slurp(dir + "/pass.spec") + slurp(dir + "/fail.spec");
    const std::string alphabet = "familyernrun{}()[]=,#<> \n\t\"FhxT0123456789_abcSMonExBH";
    std::size_t crashes = 0;
    for (std::size_t n = 0; n < kFuzzInputs; ++n) {
        std::string s;
        switch (n % 3) {
        case 0: {
            const std::size_t len = rng() % (kFuzzMaxBytes + 1);
            for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>(rng() % 256));
            break;
        }
        case 1: {
            const std::size_t len = rng() % 600;
            for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
            break;
        }
        default:
            s = seed_text;
            for (int k = 0; k < 6; ++k) s[rng() % s.size()] = alphabet[rng() % alphabet.size()];
            if (s.size() > kFuzzMaxBytes) s.resize(kFuzzMaxBytes);
        }
        try {
            const auto r = parse_spec(s);
            if (r.spec.has_value() == r.error.has_value()) ++crashes;
        } catch (...) {
            ++crashes;
        }
    }
    if (crashes) bad.push_back(std::to_string(crashes) + " crashes");
    Result o;
    o.pass = bad.empty();
    o.detail = std::to_string(fixtures.size()) + " fixture specs, " + std::to_string(kFuzzInputs) +
               " fuzz inputs, " + std::to_string(crashes) + " crashes" +
               (bad.empty() ? "" : " (" + join(bad) + ")");
    return o;
}

} // namespace

int main() {
    register_catalog();
    const std::vector<Criterion> criteria = {
        {1, "verifier oracle equivalence", kLimitVerifiers, verifiers},
        {2, "consistency transforms", kLimitConsistency, consistency},
        {3, "patched hypothesis is hypothesis plus content", 0, eq_one},
        {4, "lower collapse chain", 0, lower_chain},
        {5, "SNU and SDec transforms on the conflict family", 0, snu_sdec},
        {6, "operator equalities", kLimitEqualities, equalities},
        {7, "Sd versus It separation", 0, separation},
        {8, "hypothesis-space round trip", 0, cind_roundtrip},
        {9, "totalization", 0, totalization},
        {10, "CLI contract", 0, cli_contract},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Result o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0 && secs >= c.limit_s) {
            o.pass = false;
            o.detail += ", over the time limit";
        }
        char timing[64];
        if (c.limit_s > 0)
            std::snprintf(timing, sizeof timing, "%.1fs < %.0fs", secs, c.limit_s);
        else
            std::snprintf(timing, sizeof timing, "%.1fs", secs);
        std::printf("%s AC%d %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), timing);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
