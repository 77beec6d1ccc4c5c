#include "limlearn/families.hpp"

#include <algorithm>

#include "limlearn/errors.hpp"
#include "limlearn/registry.hpp"

namespace lim {

namespace {

FamilyPtr make_family(std::string name, std::string description, std::vector<Nat> hint,
                      std::function<bool(Nat, Nat)> decide,
                      std::function<bool(Nat)> infinite = [](Nat) { return false; }) {
    auto f = std::make_shared<IndexedFamily>();
    f->name = std::move(name);
    f->description = std::move(description);
    f->index_hint = std::move(hint);
    f->decide = std::move(decide);
    f->is_infinite = std::move(infinite);
    return Registry::global().add(FamilyPtr(f));
}

std::vector<std::string> names_of(const std::vector<Tag>& tags) {
    std::vector<std::string> out;
    for (Tag t : tags) out.emplace_back(tag_name(t));
    return out;
}

const std::vector<Tag> kAllTags = all_tags();

std::vector<Tag> all_but(std::initializer_list<Tag> excluded) {
    std::vector<Tag> out;
    for (Tag t : kAllTags)
        if (std::find(excluded.begin(), excluded.end(), t) == excluded.end()) out.push_back(t);
    return out;
}

std::vector<std::string> learner_props(const std::vector<Tag>& tags,
                                       std::initializer_list<const char*> extra = {}) {
    auto out = names_of(tags);
    for (const char* e : extra) out.emplace_back(e);
    out.emplace_back("total");
    out.emplace_back("CInd");
    return out;
}

Learner publish(Learner h) { return Registry::global().add(std::move(h)); }

// Restrictions each catalog learner satisfies on its own family.
const std::vector<Tag> kSepTags = all_but({Tag::SMon, Tag::Mon});
const std::vector<Tag> kChainLagTags = all_but({Tag::Cons});
const std::vector<Tag> kPauseFlipTags = {Tag::T, Tag::Cons};
const std::vector<Tag> kCofTags = all_but({Tag::SMon, Tag::Mon});
const std::vector<Tag> kCofOscTags = {Tag::T, Tag::Cons, Tag::CautTar, Tag::SemConv};

Term chain_guess(const NatSet& d) {
    return d.empty() ? Term::fin_set({}) : Term::fam_idx(chain(), d.back());
}

Nat least_missing(const NatSet& d) {
    Nat m = 0;
    for (Nat x : d) {
        if (x != m) break;
        ++m;
    }
    return m;
}

} // namespace

NatSet decode_finite(Nat code) {
    NatSet out;
    for (Nat d = 0; d < 64; ++d)
        if ((code >> d) & 1U) out.push_back(d);
    return out;
}

Nat encode_finite(const NatSet& d) {
    Nat code = 0;
    for (Nat x : d) {
        if (x >= 64) throw ContractViolation("encode_finite: element beyond 63");
        code |= Nat{1} << x;
    }
    return code;
}

Nat finz_index(const NatSet& d) { return 1 + encode_finite(d); }

FamilyPtr finz() {
    static const FamilyPtr f = make_family(
        "finz", "L_0 = N\\{0}; L_{i+1} = D_i + {0} (binary coding)",
        [] {
            std::vector<Nat> hint;
            for (Nat i = 0; i < 20; ++i) hint.push_back(i);
            return hint;
        }(),
        [](Nat i, Nat x) {
            if (i == 0) return x != 0;
            const Nat code = i - 1;
            return x == 0 || (x < 64 && ((code >> x) & 1U) != 0);
        },
        [](Nat i) { return i == 0; });
    return f;
}

Learner sep_learner() {
    static const Learner h = publish(make_sd(
        "sep_learner",
        [](const NatSet& d) {
            return contains(d, 0) ? Term::fin_set(d) : Term::fam_idx(finz(), 0);
        },
        {finz(), learner_props(kSepTags)}));
    return h;
}

FamilyPtr fin() {
    static const FamilyPtr f = make_family(
        "fin", "L_i = D_i (binary coding)", {0, 1, 2, 5, 6, 9, 18},
        [](Nat i, Nat x) { return x < 64 && ((i >> x) & 1U) != 0; });
    return f;
}

Learner fin_learner() {
    static const Learner h = publish(make_sd(
        "fin_learner", [](const NatSet& d) { return Term::fin_set(d); },
        {fin(), learner_props(kAllTags)}));
    return h;
}

FamilyPtr chain() {
    static const FamilyPtr f = make_family("chain", "L_i = {0..i}", {0, 1, 2, 3, 4, 5, 6},
                                           [](Nat i, Nat x) { return x <= i; });
    return f;
}

Learner chain_learner() {
    static const Learner h =
        publish(make_sd("chain_learner", chain_guess, {chain(), learner_props(kAllTags)}));
    return h;
}

Learner chain_lag() {
    static const Learner h = publish(make_gold(
        "chain_lag",
        [](const Seq& s) { return chain_guess(content(take(s, s.empty() ? 0 : s.size() - 1))); },
        {chain(), learner_props(kChainLagTags)}));
    return h;
}

Learner chain_flicker() {
    static const Learner h = publish(make_gold(
        "chain_flicker",
        [](const Seq& s) {
            if (s.size() % 2 == 0) return Term::fin_set({});
            return chain_guess(content(take(s, s.size() - 1)));
        },
        {chain(), learner_props({Tag::T})}));
    return h;
}

FamilyPtr conflict() {
    static const FamilyPtr f =
        make_family("conflict", "L_0 = {0}; L_i = {0,1} for i >= 1", {0, 1},
                    [](Nat i, Nat x) { return x == 0 || (i >= 1 && x == 1); });
    return f;
}

Learner pause_flip() {
    static const Learner h = publish(make_gold(
        "pause_flip",
        [](const Seq& s) {
            const auto pauses = std::count_if(s.begin(), s.end(),
                                              [](Datum d) { return d.is_pause(); });
            const bool flip = contains(content(s), 1) ||
                              (!s.empty() && s.back().is_pause() && pauses == 1);
            return Term::fam_idx(conflict(), flip ? 1 : 0);
        },
        {conflict(), learner_props(kPauseFlipTags)}));
    return h;
}

FamilyPtr cof() {
    static const FamilyPtr f = make_family(
        "cof", "L_i = N\\{i}", {0, 1, 2, 3}, [](Nat i, Nat x) { return x != i; },
        [](Nat) { return true; });
    return f;
}

Learner cof_learner() {
    static const Learner h = publish(make_sd(
        "cof_learner", [](const NatSet& d) { return Term::co_finite({least_missing(d)}); },
        {cof(), learner_props(kCofTags)}));
    return h;
}

Learner cof_osc() {
    static const Learner h = publish(make_sd(
        "cof_osc",
        [](const NatSet& d) {
            Term t = Term::co_finite({least_missing(d)});
            return d.size() % 2 == 1 ? Term::patch_union(t, {}) : t;
        },
        {cof(), learner_props(kCofOscTags)}));
    return h;
}

FamilyPtr mod3() {
    static const FamilyPtr f = make_family(
        "mod3", "L_i = {x | x mod 3 = i mod 3}", {0, 1, 2},
        [](Nat i, Nat x) { return x % 3 == i % 3; }, [](Nat) { return true; });
    return f;
}

Learner mod3_td() {
    static const Learner h = publish(make_td(
        "mod3_td",
        [](Datum d) {
            if (d.is_pause() || d.value() % 7 == 0) return Term::quest();
            return Term::pad(Term::fam_idx(mod3(), d.value() % 3), Seq{d});
        },
        {mod3(), {"total"}}));
    return h;
}

std::vector<Learner> costed_fin_learners() {
    static const std::vector<Learner> hs = [] {
        auto fn = [](const Seq& s) { return Term::fin_set(content(s)); };
        LearnerMeta meta{fin(), learner_props(kAllTags)};
        std::erase(meta.properties, "total");
        std::vector<Learner> out;
        out.push_back(publish(make_gold("fin_cost_double", fn, meta, [](const Seq& s) {
            return std::optional<Nat>(2 * s.size());
        })));
        out.push_back(publish(make_gold("fin_cost_even", fn, meta,
                                        [](const Seq& s) -> std::optional<Nat> {
                                            if (s.empty()) return 0;
                                            if (s.size() % 2 == 1) return std::nullopt;
                                            return s.size() + 1;
                                        })));
        out.push_back(publish(make_gold("fin_cost_spiky", fn, meta,
                                        [](const Seq& s) -> std::optional<Nat> {
                                            if (s.empty()) return 0;
                                            return s.size() + (s.size() % 3 == 0 ? 20 : 0);
                                        })));
        return out;
    }();
    return hs;
}

std::vector<Learner> it_fixtures() {
    static const std::vector<Learner> hs = [] {
        const Term done = Term::fam_idx(finz(), 0);
        LearnerMeta meta{finz(), {"total"}};
        auto count_of = [](const Term& q) { return q.node().set.empty() ? 0 : q.node().set[0]; };
        std::vector<Learner> out;
        out.push_back(publish(make_it(
            "it_const", [done] { return done; }, [](const Term& q, Datum) { return q; }, meta)));
        out.push_back(publish(make_it(
            "it_zero_watch", [done] { return done; },
            [](const Term& q, Datum d) {
                return !d.is_pause() && d.value() == 0 ? Term::co_finite({}) : q;
            },
            meta)));
        out.push_back(publish(make_it(
            "it_count10", [] { return Term::fin_set({0}); },
            [done, count_of](const Term& q, Datum) {
                if (q == done) return q;
                const Nat k = count_of(q) + 1;
                return k >= 10 ? done : Term::fin_set({k});
            },
            meta)));
        out.push_back(publish(make_it(
            "it_max20", [] { return Term::fin_set({0}); },
            [done, count_of](const Term& q, Datum d) {
                if (q == done) return q;
                const Nat m = d.is_pause() ? count_of(q) : std::max(count_of(q), d.value());
                return m >= 20 ? done : Term::fin_set({m});
            },
            meta)));
        out.push_back(publish(make_it(
            "it_parity30", [] { return Term::fin_set({0}); },
            [done, count_of](const Term& q, Datum d) {
                if (q == done) return q;
                if (!d.is_pause() && d.value() >= 30) return done;
                return Term::fin_set({1 - count_of(q)});
            },
            meta)));
        return out;
    }();
    return hs;
}

Learner it_injective() {
    static const Learner h = publish(make_it(
        "it_injective", [] { return Term::fin_set({}); },
        [](const Term& q, Datum d) {
            return d.is_pause() ? q : Term::fin_set(with(q.node().set, d.value()));
        },
        {finz(), {"total"}}));
    return h;
}

Language member_language(const FamilyPtr& f, Nat i) {
    Language lang;
    lang.name = f->name + "[" + std::to_string(i) + "]";
    lang.term = Term::fam_idx(f, i);
    lang.infinite = f->is_infinite(i);
    return lang;
}

std::vector<SuiteEntry> standard_suite() {
    register_catalog();
    std::vector<SuiteEntry> out;
    auto add = [&](std::string name, FamilyPtr f, Learner h, Mode mode,
                   std::vector<Nat> members = {}) {
        SuiteEntry e;
        e.name = std::move(name);
        e.family = f;
        e.learner = h;
        e.members = members.empty() ? f->index_hint : std::move(members);
        e.mode = mode;
        for (Tag t : all_tags())
            if (h->has_property(tag_name(t))) e.clean_tags.push_back(t);
        out.push_back(std::move(e));
    };
    add("finz/sep", finz(), sep_learner(), Mode::Ex);
    add("fin/fin", fin(), fin_learner(), Mode::Ex);
    add("chain/chain", chain(), chain_learner(), Mode::Ex);
    add("chain/lag", chain(), chain_lag(), Mode::Ex);
    add("conflict/pause_flip", conflict(), pause_flip(), Mode::Ex);
    add("cof/cof", cof(), cof_learner(), Mode::Ex);
    add("cof/osc", cof(), cof_osc(), Mode::Bc);
    add("mod3/td", mod3(), mod3_td(), Mode::Bc);
    return out;
}

void register_catalog() {
    finz();
    sep_learner();
    fin();
    fin_learner();
    chain();
    chain_learner();
    chain_lag();
    chain_flicker();
    conflict();
    pause_flip();
    cof();
    cof_learner();
    cof_osc();
    mod3();
    mod3_td();
    costed_fin_learners();
    it_fixtures();
    it_injective();
}

} // namespace lim
