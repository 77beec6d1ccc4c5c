#include <doctest.h>

#include <random>

#include "limlearn/errors.hpp"
#include "limlearn/families.hpp"
#include "limlearn/restrictions.hpp"
#include "oracles.hpp"

using namespace lim;

namespace {

Language fin_target(NatSet d) { return {set_to_string(d), Term::fin_set(std::move(d)), false}; }

HypSequence hyps(std::vector<Term> terms, Seq prefix) {
    HypSequence p;
    p.terms = std::move(terms);
    p.prefix = std::move(prefix);
    return p;
}

std::vector<Term> pool_a() {
    return {Term::fin_set({0}), Term::fin_set({0, 1}), Term::patch_union(Term::fin_set({0}), {})};
}

std::vector<Term> pool_b() { return {Term::quest(), Term::fin_set({1}), Term::co_finite({})}; }

std::vector<Language> small_targets() {
    return {fin_target({0}), fin_target({0, 1}), fin_target({1})};
}

constexpr Nat kSmallB = 4;

} // namespace

TEST_SUITE("restrictions") {

TEST_CASE("consistency is vacuous on the empty prefix") {
    const auto p = hyps({Term::fin_set({}), Term::fin_set({5})}, seq_of({5}));
    CHECK(check_restriction(Tag::Cons, p, fin_target({5}), 64).clean());
    const auto bad = hyps({Term::fin_set({}), Term::fin_set({})}, seq_of({5}));
    const Verdict v = check_restriction(Tag::Cons, bad, fin_target({5}), 64);
    CHECK(v.outcome == Outcome::Violation);
    CHECK(v.indices == std::vector<std::size_t>{1});
    CHECK(v.witness == Nat{5});
}

TEST_CASE("strong monotonicity violation carries its witness") {
    const auto p = hyps({Term::fin_set({1}), Term::fin_set({})}, seq_of({-1}));
    const Verdict v = check_restriction(Tag::SMon, p, fin_target({1}), 64);
    CHECK(v.outcome == Outcome::Violation);
    CHECK(v.indices == std::vector<std::size_t>{0, 1});
    CHECK(v.witness == Nat{1});
    CHECK(render(v, "t0") == "SMon t0 VIOLATION@(0,1) witness=1 B=64 H=1");
}

TEST_CASE("T never fails") {
    const auto p = hyps({Term::fin_set({1}), Term::quest(), Term::co_finite({})}, seq_of({3, 4}));
    CHECK(check_restriction(Tag::T, p, fin_target({}), 64).clean());
}

TEST_CASE("convergence examples") {
    const auto p = hyps({Term::fin_set({}), Term::fin_set({0, 3}), Term::fin_set({0, 3})},
                        seq_of({0, 3}));
    const Verdict ex = check_convergence(Mode::Ex, p, fin_target({0, 3}), 64, 2);
    CHECK(ex.converged());
    CHECK(ex.n0 == std::size_t{1});
    CHECK(ex.final_term == Term::fin_set({0, 3}));

    const Term a = Term::fin_set({0, 3});
    const Term b = Term::patch_union(Term::fin_set({0}), {3});
    const auto alt = hyps({a, b, a, b}, seq_of({0, 3, -1}));
    CHECK(check_convergence(Mode::Bc, alt, fin_target({0, 3}), 64, 3).converged());
    CHECK(check_convergence(Mode::Ex, alt, fin_target({0, 3}), 64, 3).outcome ==
          Outcome::NotConverged);

    const Language n_minus_0{"N-0", Term::co_finite({0}), true};
    const auto single = hyps({Term::fam_idx(finz(), 0)}, {});
    const Verdict one = check_convergence(Mode::Ex, single, n_minus_0, 64, 0);
    CHECK(one.converged());
    CHECK(one.n0 == std::size_t{0});
}

TEST_CASE("delay composition") {
    const auto p = hyps({Term::fin_set({}), Term::fin_set({1}), Term::fin_set({1, 2})},
                        seq_of({1, 2}));
    const auto same = delay(p, {0, 1, 2}, p.prefix);
    CHECK(same.terms == p.terms);
    const auto stutter = delay(p, {0, 0, 1, 2}, seq_of({-1, 1, 2}));
    CHECK(stutter.terms == std::vector<Term>{p.terms[0], p.terms[0], p.terms[1], p.terms[2]});
    CHECK_THROWS_AS(delay(p, {1, 0, 2}, p.prefix), ContractViolation);
    CHECK_THROWS_AS(delay(p, {0, 1}, p.prefix), ContractViolation);
}

TEST_CASE("verifiers agree with the naive definitions") {
    for (const auto& pool : {pool_a(), pool_b()}) {
        const auto r = oracle::verifier_agreement(pool, small_targets(), 3, kSmallB);
        CHECK(r.instances > 0);
        CHECK_MESSAGE(r.mismatches == 0, r.first);
    }
}

TEST_CASE("witness-based check on every length-3 sequence over three terms") {
    const auto pool = pool_a();
    const Language tgt = fin_target({0, 1});
    for (const Seq& prefix : all_sequences({Datum::num(0), Datum::num(1)}, 2)) {
        if (prefix.size() != 2) continue;
        for (std::size_t code = 0; code < 27; ++code) {
            const auto p = hyps({pool[code % 3], pool[code / 3 % 3], pool[code / 9]}, prefix);
            const auto want =
                oracle::least_violation(Tag::Wb, oracle::violations(Tag::Wb, p, {0, 1}, 8));
            const Verdict got = check_restriction(Tag::Wb, p, tgt, 8);
            CHECK(got.clean() == !want.has_value());
            if (want) CHECK(got.indices == *want);
        }
    }
}

TEST_CASE("violations persist under extension") {
    std::mt19937_64 rng(3);
    const auto pool = pool_a();
    const auto targets = small_targets();
    for (int n = 0; n < 400; ++n) {
        const std::size_t len = 1 + rng() % 4;
        Seq prefix;
        std::vector<Term> terms{pool[rng() % 3]};
        for (std::size_t i = 0; i < len; ++i) {
            prefix.push_back(rng() % 3 == 0 ? Datum::pause() : Datum::num(rng() % 2));
            terms.push_back(pool[rng() % 3]);
        }
        const Language& tgt = targets[rng() % targets.size()];
        const auto short_p = hyps({terms.begin(), terms.end() - 1}, take(prefix, len - 1));
        const auto long_p = hyps(terms, prefix);
        for (Tag tag : all_tags()) {
            const Verdict a = check_restriction(tag, short_p, tgt, kSmallB);
            if (a.clean()) continue;
            const Verdict b = check_restriction(tag, long_p, tgt, kSmallB);
            CHECK(b.outcome == Outcome::Violation);
            CHECK(b.indices == a.indices);
        }
    }
}

TEST_CASE("stronger restrictions imply weaker ones") {
    const std::vector<std::pair<Tag, Tag>> pairs = {
        {Tag::SDec, Tag::Dec}, {Tag::SNU, Tag::NU}, {Tag::Conv, Tag::SemConv},
        {Tag::SMon, Tag::Mon}, {Tag::SMon, Tag::WMon}, {Tag::Dec, Tag::NU}};
    for (const auto& pool : {pool_a(), pool_b()})
        for (const Seq& prefix : all_sequences(pause_alphabet({0, 1}), 3))
            for (std::size_t code = 0; code < 81; ++code) {
                std::vector<Term> terms;
                std::size_t c = code;
                for (std::size_t i = 0; i <= prefix.size(); ++i, c /= 3) terms.push_back(pool[c % 3]);
                const auto p = hyps(terms, prefix);
                for (const auto& tgt : small_targets())
                    for (const auto& [strong, weak] : pairs)
                        if (check_restriction(strong, p, tgt, kSmallB).clean())
                            CHECK(check_restriction(weak, p, tgt, kSmallB).clean());
            }
}

TEST_CASE("delayable restrictions survive delaying") {
    const auto pool = pool_a();
    const auto targets = small_targets();
    const auto alphabet = pause_alphabet({0, 1, 2});
    std::size_t checked = 0;
    auto try_instance = [&](const HypSequence& p, const Seq& t2, const std::vector<std::size_t>& r,
                            const std::vector<std::pair<Tag, const Language*>>& clean) {
        for (std::size_t n = 0; n < r.size(); ++n)
            if (!is_subset(content(take(p.prefix, r[n])), content(take(t2, n)))) return;
        const HypSequence q = delay(p, r, t2);
        for (const auto& [tag, tgt] : clean) {
            ++checked;
            CHECK_MESSAGE(check_restriction(tag, q, *tgt, kSmallB).clean(),
                          tag_name(tag) << " p=" << seq_to_string(p.prefix)
                                        << " T'=" << seq_to_string(t2));
        }
    };
    // every non-decreasing table r of length m+1 with values below |p|
    auto for_tables = [](std::size_t len, std::size_t limit, auto&& visit) {
        std::vector<std::size_t> r(len, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t lo) {
            if (pos == len) return visit(r);
            for (std::size_t v = lo; v < limit; ++v) {
                r[pos] = v;
                rec(pos + 1, v);
            }
        };
        rec(0, 0);
    };
    auto run_p = [&](const HypSequence& p, std::size_t t2_len) {
        std::vector<std::pair<Tag, const Language*>> clean;
        for (const auto& tgt : targets)
            for (Tag tag : all_tags())
                if (is_delayable(tag) && check_restriction(tag, p, tgt, kSmallB).clean())
                    clean.emplace_back(tag, &tgt);
        if (clean.empty()) return;
        for (const Seq& t2 : all_sequences(alphabet, t2_len))
            for_tables(t2.size() + 1, p.terms.size(),
                       [&](const std::vector<std::size_t>& r) { try_instance(p, t2, r, clean); });
    };
    // exhaustive for |p| <= 3
    for (const Seq& prefix : all_sequences(alphabet, 2)) {
        const std::size_t n = prefix.size() + 1;
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= pool.size();
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Term> terms;
            for (std::size_t i = 0, c = code; i < n; ++i, c /= pool.size())
                terms.push_back(pool[c % pool.size()]);
            run_p(hyps(terms, prefix), 2);
        }
    }
    // sampled for |p| = 4
    std::mt19937_64 rng(17);
    for (int s = 0; s < 150; ++s) {
        Seq prefix;
        std::vector<Term> terms{pool[rng() % 3]};
        for (int i = 0; i < 3; ++i) {
            prefix.push_back(alphabet[rng() % alphabet.size()]);
            terms.push_back(pool[rng() % 3]);
        }
        run_p(hyps(terms, prefix), 2);
    }
    CHECK(checked > 1000);
}

TEST_CASE("consistency is not delayable") {
    // p is consistent on <0>, but showing 0 earlier on T' while p waits breaks it
    const auto p = hyps({Term::fin_set({}), Term::fin_set({0})}, seq_of({0}));
    CHECK(check_restriction(Tag::Cons, p, fin_target({0}), 8).clean());
    const auto q = delay(p, {0, 0, 1}, seq_of({0, 0}));
    CHECK_FALSE(check_restriction(Tag::Cons, q, fin_target({0}), 8).clean());
    CHECK_FALSE(is_delayable(Tag::Cons));
}

TEST_CASE("tag names round-trip") {
    CHECK(all_tags().size() == 14);
    for (Tag t : all_tags()) CHECK(tag_from_name(tag_name(t)) == t);
    CHECK_FALSE(tag_from_name("Frobnicate").has_value());
}

}
