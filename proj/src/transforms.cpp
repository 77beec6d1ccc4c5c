#include "limlearn/transforms.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "limlearn/errors.hpp"
#include "limlearn/registry.hpp"

namespace lim {

namespace {

bool covers(const Term& t, const NatSet& d) {
    if (t.is_quest()) return false;
    return std::all_of(d.begin(), d.end(), [&](Nat x) { return t.eval(x); });
}

std::vector<std::string> keep(const Learner& h, std::initializer_list<const char*> kept,
                              std::initializer_list<const char*> added) {
    std::vector<std::string> out;
    for (const char* p : added) out.emplace_back(p);
    for (const char* p : kept)
        if (h->has_property(p) && std::find(out.begin(), out.end(), p) == out.end())
            out.emplace_back(p);
    return out;
}

std::shared_ptr<LearnerCore> derive(const std::string& name, const Learner& h, Kind kind,
                                    std::vector<std::string> props) {
    auto out = std::make_shared<LearnerCore>();
    out->id = name + "[" + h->id + "]";
    out->kind = kind;
    out->family = h->family;
    out->properties = std::move(props);
    return out;
}

// Thread-safe cache of a function on sequences. Cleared when it grows large.
template <class V>
class SeqMemo {
public:
    template <class F>
    V get(const Seq& s, F&& compute) {
        {
            std::lock_guard lock(mu_);
            auto it = map_.find(s);
            if (it != map_.end()) return it->second;
        }
        V v = compute();
        std::lock_guard lock(mu_);
        if (map_.size() > 200000) map_.clear();
        map_.emplace(s, v);
        return v;
    }

private:
    std::mutex mu_;
    std::map<Seq, V, SeqLess> map_;
};

Learner publish(std::shared_ptr<LearnerCore> h) { return Registry::global().add(std::move(h)); }

void require_kind(const Learner& h, std::initializer_list<Kind> kinds, const char* what) {
    if (std::find(kinds.begin(), kinds.end(), h->kind) == kinds.end())
        throw ContractViolation(std::string(what) + ": unsupported learner kind " +
                                std::string(kind_name(h->kind)));
}

// Shared body of the three consistency transforms: `fix` maps an inconsistent
// hypothesis and the content to the replacement term.
Learner consistent_variant(const std::string& name, const Learner& h,
                           std::vector<std::string> props,
                           std::function<Term(const Term&, const NatSet&)> fix, bool dedup_input) {
    require_kind(h, {Kind::G, Kind::Psd, Kind::Sd}, name.c_str());
    auto out = derive(name, h, h->kind, std::move(props));
    auto decide = [fix](Term t, const NatSet& d) { return covers(t, d) ? t : fix(t, d); };
    switch (h->kind) {
        case Kind::G:
            out->gold = [h, decide, dedup_input](const Seq& s) {
                return decide(h->gold(dedup_input ? dedup(s) : s), content(s));
            };
            break;
        case Kind::Psd:
            out->psd = [h, decide, dedup_input](const NatSet& d, std::size_t t) {
                return decide(h->psd(d, dedup_input ? d.size() : t), d);
            };
            break;
        default:
            out->sd = [h, decide](const NatSet& d) { return decide(h->sd(d), d); };
            break;
    }
    return publish(out);
}

} // namespace

bool satisfies(const Learner& h, std::string_view property) {
    if (property == "total") return !h->cost || h->has_property("total");
    return h->has_property(property);
}

// --- hypothesis spaces ------------------------------------------------------

IndexLearner to_hypothesis_space(const Learner& h) {
    struct Space {
        Learner h;
        std::mutex mu;
        std::vector<Seq> reps;
        std::map<Seq, Nat, SeqLess> index;
        std::vector<Term> universe_terms;
        std::size_t universe_size = 0;

        Nat index_of(const Seq& s) {
            std::lock_guard lock(mu);
            auto it = index.find(s);
            if (it != index.end()) return it->second;
            reps.push_back(s);
            return index.emplace(s, reps.size() - 1).first->second;
        }
        Seq rep(Nat j) {
            std::lock_guard lock(mu);
            if (j >= reps.size()) throw ContractViolation("hypothesis index out of range");
            return reps[j];
        }
    };
    auto space = std::make_shared<Space>();
    space->h = h;
    for (const Seq& u : all_sequences(pause_alphabet({0, 1, 2}), 2)) {
        space->index_of(u);
        space->universe_terms.push_back(h->star(u));
    }
    space->universe_size = space->reps.size();

    auto fam = std::make_shared<IndexedFamily>();
    fam->name = "hs[" + h->id + "]";
    fam->description = "hypothesis space of " + h->id;
    fam->decide = [space](Nat j, Nat x) { return space->h->star(space->rep(j)).eval(x); };
    FamilyPtr registered = Registry::global().add(FamilyPtr(fam));

    IndexLearner out;
    out.id = "hs[" + h->id + "]";
    out.space = registered;
    out.meta = LearnerMeta{h->family, h->properties};
    out.index = [space](const Seq& s) -> Nat {
        const Term t = space->h->star(s);
        std::optional<Seq> best;
        for (std::size_t i = 0; i < space->universe_size; ++i) {
            if (space->universe_terms[i] == t) {
                best = space->rep(i);
                break;
            }
        }
        // Prefixes longer than the universe come after every universe element.
        for (std::size_t k = 0; k <= s.size(); ++k) {
            Seq p = take(s, k);
            if (best && seq_order(p, *best) >= 0) break;
            if (space->h->star(p) == t) {
                best = p;
                break;
            }
        }
        return space->index_of(*best);
    };
    return out;
}

Learner to_cind(const IndexLearner& h) {
    if (!h.space || !Registry::global().has_family(h.space->name) ||
        Registry::global().family(h.space->name) != h.space)
        throw ConfigError("to_cind: hypothesis space is not registered");
    auto out = std::make_shared<LearnerCore>();
    out->id = "cind[" + h.id + "]";
    out->kind = Kind::G;
    out->family = h.meta.family;
    out->properties = h.meta.properties;
    out->gold = [space = h.space, index = h.index](const Seq& s) {
        return Term::fam_idx(space, index(s));
    };
    return publish(out);
}

// --- consistency ------------------------------------------------------------

Learner make_consistent_patch(const Learner& h) {
    return consistent_variant(
        "patch", h, keep(h, {"SMon", "Mon", "total", "CInd"}, {"Cons"}),
        [](const Term& t, const NatSet& d) { return Term::patch_union(t, d); }, false);
}

Learner make_consistent_reset(const Learner& h) {
    return consistent_variant(
        "reset", h, keep(h, {"WMon", "CautTar", "total", "CInd"}, {"Cons"}),
        [](const Term&, const NatSet& d) { return Term::reset_set(d); }, false);
}

Learner make_consistent_dedup(const Learner& h) {
    return consistent_variant(
        "dedup", h, keep(h, {"Conv", "SemConv", "total", "CInd"}, {"Cons"}),
        [](const Term&, const NatSet& d) { return Term::reset_set(d); }, true);
}

// --- delayable restrictions ---------------------------------------------------

Learner cauttar_to_wb(const Learner& h) {
    require_kind(h, {Kind::G}, "cauttar_to_wb");
    auto out = derive("cauttar_to_wb", h, Kind::G,
                      keep(h, {"Cons", "CautTar", "total", "CInd"}, {"Wb"}));
    out->gold = [h](const Seq& s) {
        Term cur = h->gold({});
        for (std::size_t i = 0; i < s.size(); ++i) {
            const Datum d = s[i];
            if (d.is_pause() || (!cur.is_quest() && cur.eval(d.value()))) continue;
            cur = h->gold(take(s, i + 1));
        }
        return cur;
    };
    return publish(out);
}

Learner g_to_sd_cauttar(const Learner& h) {
    require_kind(h, {Kind::G}, "g_to_sd_cauttar");
    auto out = derive("g_to_sd_cauttar", h, Kind::Sd,
                      keep(h, {"Cons", "CautTar", "total", "CInd"}, {"CautTar"}));
    auto raw = out.get();
    out->sd = [h, raw](const NatSet& d) {
        for (std::size_t k = 0; k <= d.size(); ++k) {
            Term t = h->gold(canonical_prefix(d, k));
            if (covers(t, d)) return t;
        }
        // An inconsistent base: use the full ascending presentation.
        raw->fallbacks.fetch_add(1);
        return h->gold(canonical_prefix(d, d.size()));
    };
    return publish(out);
}

Learner sd_cauttar_to_wb(const Learner& h, ScanPolicy policy) {
    require_kind(h, {Kind::Sd}, "sd_cauttar_to_wb");
    auto out = derive("sd_cauttar_to_wb", h, Kind::Sd, keep(h, {"total", "CInd"}, {"Wb"}));
    out->sd = [h, policy](const NatSet& d) {
        const Term full = h->sd(d);
        NatSet base = d;
        for (std::size_t k = 0; k <= d.size(); ++k) {
            NatSet lo(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k));
            NatSet pool(d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
            if (for_each_between(lo, pool, [&](const NatSet& m) { return h->sd(m) == full; },
                                 policy)) {
                base = lo;
                break;
            }
        }
        if (!base.empty()) {
            const Term t = h->sd(base);
            for (Nat x = 0; x < base.back(); ++x)
                if (!contains(base, x) && !t.is_quest() && t.eval(x)) return Term::reset_set(base);
        }
        return Term::wb_forward(h, base);
    };
    return publish(out);
}

// --- non-U-shaped and decisive ------------------------------------------------

Learner g_to_snu(const Learner& h, FamilyPtr family, std::size_t depth) {
    require_kind(h, {Kind::G}, "g_to_snu");
    if (!family) family = h->family;
    if (!family) throw ConfigError("g_to_snu: no family to poison against");
    auto out = derive("g_to_snu", h, Kind::G, keep(h, {"total", "CInd"}, {"SNU"}));
    if (depth != kDefaultPoisonDepth)
        out->id = "g_to_snu[" + h->id + ";depth=" + std::to_string(depth) + "]";
    auto memo = std::make_shared<SeqMemo<Term>>();
    auto base = std::make_shared<SeqMemo<Term>>();
    auto hb = [h, base](const Seq& s) { return base->get(s, [&] { return h->gold(s); }); };
    out->gold = [h, hb, family, depth, memo](const Seq& s) {
      return memo->get(s, [&] {
        const Term cur = hb(s);
        const Nat n = s.size();
        const Extension want(cur, n);
        const auto ext = all_sequences(pause_alphabet(content(s)), std::min<Nat>(n, depth));
        Seq chosen = s;
        for (std::size_t k = 0; k <= s.size(); ++k) {
            const Seq p = take(s, k);
            bool ok = true;
            for (const Seq& tail : ext) {
                const Term t = hb(concat(p, tail));
                if (!(t == cur) && !(Extension(t, n) == want)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                chosen = p;
                break;
            }
        }
        return Term::poison(h, family, depth, chosen);
      });
    };
    return publish(out);
}

Learner snu_to_sdec(const Learner& h) {
    require_kind(h, {Kind::G}, "snu_to_sdec");
    auto out = derive("snu_to_sdec", h, Kind::G, keep(h, {"total", "CInd", "SNU"}, {"SDec"}));
    struct Step {
        Term out;
        std::size_t start;  // first index of the current constant run
    };
    auto memo = std::make_shared<SeqMemo<Step>>();
    auto base = std::make_shared<SeqMemo<Term>>();
    auto hb = [h, base](const Seq& s) { return base->get(s, [&] { return h->gold(s); }); };
    auto step = std::make_shared<std::function<Step(const Seq&)>>();
    std::weak_ptr<std::function<Step(const Seq&)>> weak = step;
    *step = [hb, memo, weak](const Seq& s) -> Step {
        return memo->get(s, [&]() -> Step {
            if (s.empty()) return {hb(s), 0};
            auto self = weak.lock();
            const Step prev = (*self)(take(s, s.size() - 1));
            const std::size_t n = s.size();
            const Term base_start = hb(take(s, prev.start));
            bool unchanged = true;
            for (std::size_t m = prev.start + 1; m <= n && unchanged; ++m)
                unchanged = hb(take(s, m)) == base_start;
            if (unchanged) return {prev.out, prev.start};
            const Term now = hb(s);
            for (std::size_t m = 0; m <= prev.start; ++m) {
                const Term earlier = (*self)(take(s, m)).out;
                bool differs = false;
                for (Nat x = 0; x <= n && !differs; ++x) differs = earlier.eval(x) != now.eval(x);
                if (!differs) return {prev.out, prev.start};
            }
            return {now, n};
        });
    };
    out->gold = [step](const Seq& s) {
        // Fill prefixes in order so the recursion stays shallow.
        for (std::size_t k = 0; k < s.size(); ++k) (*step)(take(s, k));
        return (*step)(s).out;
    };
    return publish(out);
}

// --- operators ----------------------------------------------------------------

Learner g_to_psd(const Learner& h) {
    require_kind(h, {Kind::G}, "g_to_psd");
    auto out = derive("g_to_psd", h, Kind::Psd, keep(h, {"total", "CInd"}, {}));
    out->psd = [h](const NatSet& d, std::size_t t) {
        if (t > kPsdMaxLength || d.size() > kPsdMaxSet)
            throw CapExceeded("g_to_psd: |D|=" + std::to_string(d.size()) +
                              " t=" + std::to_string(t) + " beyond caps");
        const auto pool = all_sequences(pause_alphabet(d), t);
        for (const Seq& sigma : pool) {
            const Term here = h->gold(sigma);
            bool locking = true;
            for (const Seq& tau : pool) {
                if (!(h->gold(concat(sigma, tau)) == here)) {
                    locking = false;
                    break;
                }
            }
            if (locking) return here;
        }
        return h->gold({});
    };
    return publish(out);
}

Learner bc_to_it_pad(const Learner& h) {
    require_kind(h, {Kind::G}, "bc_to_it_pad");
    auto out = derive("bc_to_it_pad", h, Kind::It, keep(h, {"total", "CInd"}, {}));
    out->it_init = [h] { return Term::pad(h->gold({}), {}); };
    out->it_step = [h](const Term& q, Datum d) {
        if (q.kind() != TermKind::Pad)
            throw ContractViolation("bc_to_it_pad: state is not a padded term");
        Seq s = append(q.node().sigma, d);
        Term t = h->gold(s);
        return Term::pad(t, std::move(s));
    };
    return publish(out);
}

Learner it_to_sd(const Learner& h) {
    require_kind(h, {Kind::It}, "it_to_sd");
    auto out = derive("it_to_sd", h, Kind::Sd, keep(h, {"total"}, {}));
    out->sd = [h](const NatSet& d) {
        const Seq s = sort_pause(d);
        const Term a = h->star(s);
        if (a == h->star(append(s, Datum::pause()))) return a;
        return Term::fin_set(d);
    };
    return publish(out);
}

Learner sd_bc_to_cauttar_bc(const Learner& h) {
    require_kind(h, {Kind::Sd}, "sd_bc_to_cauttar_bc");
    auto out = derive("sd_bc_to_cauttar_bc", h, Kind::Sd, keep(h, {"total"}, {"CautTar"}));
    out->sd = [h](const NatSet& d) { return Term::caut_bc(h, d); };
    return publish(out);
}

Learner sd_cauttar_bc_to_ex(const Learner& h) {
    require_kind(h, {Kind::Sd}, "sd_cauttar_bc_to_ex");
    auto out = derive("sd_cauttar_bc_to_ex", h, Kind::Sd,
                      keep(h, {"total", "Cons", "CautTar", "CInd"}, {}));
    auto raw = out.get();
    out->sd = [h, raw](const NatSet& d) {
        const std::uint64_t budget = std::uint64_t{1} << kSubsetSearchMax;
        const std::uint64_t count =
            d.size() >= 64 ? ~std::uint64_t{0} : std::uint64_t{1} << d.size();
        for (std::uint64_t code = 0; code < count; ++code) {
            if (code >= budget)
                throw CapExceeded("sd_cauttar_bc_to_ex: no covering subset among the first " +
                                  std::to_string(budget) + " of |D|=" + std::to_string(d.size()));
            NatSet sub;
            for (std::size_t b = 0; b < kSubsetSearchMax && b < d.size(); ++b)
                if ((code >> b) & 1U) sub.push_back(d[b]);
            Term t = h->sd(sub);
            if (covers(t, d)) return t;
        }
        raw->fallbacks.fetch_add(1);
        return h->sd(d);
    };
    return publish(out);
}

Learner td_bc_to_ex(const Learner& h) {
    require_kind(h, {Kind::Td}, "td_bc_to_ex");
    auto out = derive("td_bc_to_ex", h, Kind::Td, keep(h, {"total"}, {}));
    auto raw = out.get();
    out->td = [h, raw](Datum d) {
        const Term t = h->td(d);
        if (d.is_pause() || t.is_quest()) return t;
        for (Nat x = 0; x <= d.value(); ++x) {
            if (!t.eval(x)) continue;
            Term other = h->td(Datum::num(x));
            if (!other.is_quest()) return other;
        }
        raw->fallbacks.fetch_add(1);
        return t;
    };
    return publish(out);
}

// --- table --------------------------------------------------------------------

const std::vector<TransformSpec>& transform_specs() {
    static const std::vector<TransformSpec> specs = {
        {"star", {Kind::G, Kind::Psd, Kind::Sd, Kind::It, Kind::Td}, {}, Kind::G, {},
         [](const Learner& h) { return star(h); }},
        {"totalize", {Kind::G}, {}, Kind::G, {}, [](const Learner& h) { return totalize(h); }},
        {"cind_roundtrip", {Kind::G}, {"total"}, Kind::G, {},
         [](const Learner& h) { return to_cind(to_hypothesis_space(h)); }},
        {"make_consistent_patch", {Kind::G, Kind::Psd, Kind::Sd}, {"total"}, std::nullopt,
         {"Cons"}, make_consistent_patch},
        {"make_consistent_reset", {Kind::G, Kind::Psd, Kind::Sd}, {"total"}, std::nullopt,
         {"Cons"}, make_consistent_reset},
        {"make_consistent_dedup", {Kind::G, Kind::Psd, Kind::Sd}, {"total"}, std::nullopt,
         {"Cons"}, make_consistent_dedup},
        {"cauttar_to_wb", {Kind::G}, {"Cons", "CautTar"}, Kind::G, {"Wb"}, cauttar_to_wb},
        {"g_to_sd_cauttar", {Kind::G}, {"Cons", "CautTar"}, Kind::Sd, {"CautTar"},
         g_to_sd_cauttar},
        {"sd_cauttar_to_wb", {Kind::Sd}, {"CautTar"}, Kind::Sd, {"Wb"},
         [](const Learner& h) { return sd_cauttar_to_wb(h); }},
        {"g_to_snu", {Kind::G}, {"total"}, Kind::G, {"SNU"},
         [](const Learner& h) { return g_to_snu(h); }},
        {"snu_to_sdec", {Kind::G}, {"SNU"}, Kind::G, {"SDec"}, snu_to_sdec},
        {"g_to_psd", {Kind::G}, {"total"}, Kind::Psd, {}, g_to_psd},
        {"bc_to_it_pad", {Kind::G}, {"total"}, Kind::It, {}, bc_to_it_pad},
        {"it_to_sd", {Kind::It}, {}, Kind::Sd, {}, it_to_sd},
        {"sd_bc_to_cauttar_bc", {Kind::Sd}, {"Cons"}, Kind::Sd, {"CautTar"},
         sd_bc_to_cauttar_bc},
        {"sd_cauttar_bc_to_ex", {Kind::Sd}, {"Cons", "CautTar"}, Kind::Sd, {},
         sd_cauttar_bc_to_ex},
        {"td_bc_to_ex", {Kind::Td}, {}, Kind::Td, {}, td_bc_to_ex},
    };
    return specs;
}

const TransformSpec* find_transform(std::string_view name) {
    for (const auto& s : transform_specs())
        if (s.name == name) return &s;
    return nullptr;
}

} // namespace lim
