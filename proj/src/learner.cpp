#include "limlearn/learner.hpp"

#include <algorithm>
#include <cstdio>

#include "limlearn/errors.hpp"

namespace lim {

std::string_view kind_name(Kind k) {
    switch (k) {
        case Kind::G: return "G";
        case Kind::Psd: return "Psd";
        case Kind::Sd: return "Sd";
        case Kind::It: return "It";
        case Kind::Td: return "Td";
    }
    return "?";
}

std::optional<Kind> kind_from_name(std::string_view name) {
    for (Kind k : {Kind::G, Kind::Psd, Kind::Sd, Kind::It, Kind::Td})
        if (kind_name(k) == name) return k;
    return std::nullopt;
}

bool LearnerCore::has_property(std::string_view p) const {
    return std::find(properties.begin(), properties.end(), p) != properties.end();
}

Term LearnerCore::star(const Seq& sigma) const {
    switch (kind) {
        case Kind::G:
            return gold(sigma);
        case Kind::Psd:
            return psd(content(sigma), sigma.size());
        case Kind::Sd:
            return sd(content(sigma));
        case Kind::It: {
            Term q = it_init();
            for (Datum d : sigma) q = it_step(q, d);
            return q;
        }
        case Kind::Td: {
            for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) {
                Term t = td(*it);
                if (!t.is_quest()) return t;
            }
            return Term::quest();
        }
    }
    throw std::logic_error("bad learner kind");
}

namespace {

std::shared_ptr<LearnerCore> base(std::string id, Kind kind, LearnerMeta meta) {
    auto h = std::make_shared<LearnerCore>();
    h->id = std::move(id);
    h->kind = kind;
    h->family = std::move(meta.family);
    h->properties = std::move(meta.properties);
    return h;
}

} // namespace

Learner make_gold(std::string id, std::function<Term(const Seq&)> fn, LearnerMeta meta,
                  CostModel cost) {
    auto h = base(std::move(id), Kind::G, std::move(meta));
    h->gold = std::move(fn);
    h->cost = std::move(cost);
    return h;
}

Learner make_psd(std::string id, std::function<Term(const NatSet&, std::size_t)> fn,
                 LearnerMeta meta) {
    auto h = base(std::move(id), Kind::Psd, std::move(meta));
    h->psd = std::move(fn);
    return h;
}

Learner make_sd(std::string id, std::function<Term(const NatSet&)> fn, LearnerMeta meta) {
    auto h = base(std::move(id), Kind::Sd, std::move(meta));
    h->sd = std::move(fn);
    return h;
}

Learner make_it(std::string id, std::function<Term()> init,
                std::function<Term(const Term&, Datum)> step, LearnerMeta meta) {
    auto h = base(std::move(id), Kind::It, std::move(meta));
    h->it_init = std::move(init);
    h->it_step = std::move(step);
    return h;
}

Learner make_td(std::string id, std::function<Term(Datum)> fn, LearnerMeta meta) {
    auto h = base(std::move(id), Kind::Td, std::move(meta));
    h->td = std::move(fn);
    return h;
}

RunResult run_on(const Learner& h, const Seq& prefix, std::optional<Nat> budget) {
    RunResult res;
    res.hyps.prefix = prefix;
    auto& terms = res.hyps.terms;
    terms.reserve(prefix.size() + 1);
    try {
        switch (h->kind) {
            case Kind::It: {
                Term q = h->it_init();
                terms.push_back(q);
                for (Datum d : prefix) {
                    q = h->it_step(q, d);
                    terms.push_back(q);
                }
                break;
            }
            case Kind::Td: {
                Term last = Term::quest();
                terms.push_back(last);
                for (Datum d : prefix) {
                    Term t = h->td(d);
                    if (!t.is_quest()) last = t;
                    terms.push_back(last);
                }
                break;
            }
            case Kind::Psd: {
                NatSet c;
                for (std::size_t i = 0; i <= prefix.size(); ++i) {
                    if (i > 0 && !prefix[i - 1].is_pause()) c = with(c, prefix[i - 1].value());
                    terms.push_back(h->psd(c, i));
                }
                break;
            }
            case Kind::Sd: {
                NatSet c;
                for (std::size_t i = 0; i <= prefix.size(); ++i) {
                    if (i > 0 && !prefix[i - 1].is_pause()) c = with(c, prefix[i - 1].value());
                    terms.push_back(h->sd(c));
                }
                break;
            }
            case Kind::G: {
                for (std::size_t i = 0; i <= prefix.size(); ++i) {
                    Seq p = take(prefix, i);
                    if (h->cost) {
                        auto c = h->cost(p);
                        if (!c || (budget && *c > *budget)) {
                            res.status = RunStatus::Diverged;
                            res.stopped_at = i;
                            res.detail = c ? "cost " + std::to_string(*c) + " exceeds budget"
                                           : "undefined";
                            return res;
                        }
                    }
                    terms.push_back(h->gold(p));
                }
                break;
            }
        }
    } catch (const CapExceeded& e) {
        res.status = RunStatus::CapExceeded;
        res.stopped_at = terms.size();
        res.detail = e.what();
    }
    return res;
}

RunResult run(const Learner& h, const Text& text, std::size_t n, std::optional<Nat> budget) {
    return run_on(h, text.prefix(n), budget);
}

Learner star(const Learner& h) {
    if (h->kind == Kind::G) return h;
    auto g = std::make_shared<LearnerCore>();
    g->id = std::string(kind_name(h->kind)) + "_star[" + h->id + "]";
    g->kind = Kind::G;
    g->family = h->family;
    g->properties = h->properties;
    g->gold = [h](const Seq& s) { return h->star(s); };
    return g;
}

Learner totalize(const Learner& h) {
    if (h->kind != Kind::G) throw ContractViolation("totalize needs a Gold-style learner");
    if (!h->cost) return h;
    auto c0 = h->cost(Seq{});
    if (!c0 || *c0 != 0) throw ContractViolation("totalize: h(empty) must be defined at cost 0");
    auto chosen = [h](const Seq& s) {
        std::size_t best = 0;
        for (std::size_t k = s.size(); k > 0; --k) {
            auto c = h->cost(take(s, k));
            if (c && *c <= s.size()) {
                best = k;
                break;
            }
        }
        return best;
    };
    auto g = std::make_shared<LearnerCore>();
    g->id = "totalize[" + h->id + "]";
    g->kind = Kind::G;
    g->family = h->family;
    g->properties = h->properties;
    g->properties.push_back("total");
    g->delay = chosen;
    g->gold = [h, chosen](const Seq& s) { return h->gold(take(s, chosen(s))); };
    return g;
}

std::vector<std::size_t> mind_change_positions(const HypSequence& p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < p.terms.size(); ++i)
        if (!(p.terms[i] == p.terms[i - 1])) out.push_back(i);
    return out;
}

std::string digest(const HypSequence& p) {
    std::uint64_t hash = 14695981039346656037ULL;
    auto feed = [&](unsigned char c) {
        hash ^= c;
        hash *= 1099511628211ULL;
    };
    for (const Term& t : p.terms) {
        for (char c : t.canonical()) feed(static_cast<unsigned char>(c));
        feed('\n');
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace lim
