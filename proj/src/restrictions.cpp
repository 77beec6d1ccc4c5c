#include "limlearn/restrictions.hpp"

#include <algorithm>
#include <map>

#include "limlearn/errors.hpp"

namespace lim {

namespace {

struct TagEntry {
    Tag tag;
    std::string_view name;
};

constexpr TagEntry kTags[] = {
    {Tag::Cons, "Cons"}, {Tag::Conv, "Conv"}, {Tag::SemConv, "SemConv"}, {Tag::Caut, "Caut"},
    {Tag::CautTar, "CautTar"}, {Tag::Mon, "Mon"}, {Tag::SMon, "SMon"}, {Tag::WMon, "WMon"},
    {Tag::Wb, "Wb"}, {Tag::Dec, "Dec"}, {Tag::SDec, "SDec"}, {Tag::NU, "NU"},
    {Tag::SNU, "SNU"}, {Tag::T, "T"},
};

bool member(const Term& t, Nat x) { return !t.is_quest() && t.eval(x); }

// Per-step data shared by all checks: syntactic class ids, extensions on
// [0, B], semantic class ids and content sets.
struct Table {
    std::size_t n = 0;
    std::vector<std::size_t> syn;
    std::vector<std::size_t> sem;
    std::vector<const Extension*> ext;
    std::vector<NatSet> content;  // content(T[i])
    std::map<std::string, Extension> by_canonical;
    std::vector<Extension> classes;

    Table(const HypSequence& p, Nat B) {
        n = p.terms.size();
        std::map<std::string, std::size_t> syn_ids;
        for (const Term& t : p.terms) {
            auto [it, fresh] = syn_ids.emplace(t.canonical(), syn_ids.size());
            syn.push_back(it->second);
            if (fresh)
                by_canonical.emplace(t.canonical(), t.is_quest() ? Extension::of_set({}, B)
                                                                 : Extension(t, B));
        }
        for (const Term& t : p.terms) {
            const Extension* e = &by_canonical.at(t.canonical());
            ext.push_back(e);
            auto c = std::find(classes.begin(), classes.end(), *e);
            sem.push_back(static_cast<std::size_t>(c - classes.begin()));
            if (c == classes.end()) classes.push_back(*e);
        }
        NatSet c;
        content.push_back(c);
        for (std::size_t i = 0; i < p.prefix.size() && i + 1 < n; ++i) {
            if (!p.prefix[i].is_pause()) c = with(c, p.prefix[i].value());
            content.push_back(c);
        }
        while (content.size() < n) content.push_back(c);
    }
};

Verdict violation(std::vector<std::size_t> idx, std::optional<Nat> witness = std::nullopt) {
    Verdict v;
    v.outcome = Outcome::Violation;
    v.indices = std::move(idx);
    v.witness = witness;
    return v;
}

std::optional<Nat> first_missing(const NatSet& s, const Term& t) {
    for (Nat x : s)
        if (!member(t, x)) return x;
    return std::nullopt;
}

Verdict check_impl(Tag tag, const HypSequence& p, const Language& target, Nat B) {
    const Table tb(p, B);
    const auto& terms = p.terms;
    const std::size_t n = tb.n;
    const Extension tgt(target.term, B);
    auto is_target = [&](std::size_t i) { return *tb.ext[i] == tgt; };

    switch (tag) {
        case Tag::T:
            return {};
        case Tag::Cons:
            for (std::size_t i = 0; i < n; ++i)
                if (auto x = first_missing(tb.content[i], terms[i])) return violation({i}, x);
            return {};
        case Tag::Conv:
        case Tag::SemConv:
            for (std::size_t i = 0; i + 1 < n; ++i) {
                if (first_missing(tb.content[i + 1], terms[i])) continue;
                if (tag == Tag::Conv && tb.syn[i] != tb.syn[i + 1]) return violation({i, i + 1});
                if (tag == Tag::SemConv && tb.sem[i] != tb.sem[i + 1])
                    return violation({i, i + 1}, tb.ext[i]->first_difference(*tb.ext[i + 1]));
            }
            return {};
        case Tag::Caut:
            // H_i ⊊ H_j with j < i.
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (tb.sem[i] != tb.sem[j] && tb.ext[i]->subset_of(*tb.ext[j]))
                        return violation({i, j}, tb.ext[j]->first_outside(*tb.ext[i]));
            return {};
        case Tag::CautTar:
            for (std::size_t i = 0; i < n; ++i)
                if (!is_target(i) && tgt.subset_of(*tb.ext[i]))
                    return violation({i}, tb.ext[i]->first_outside(tgt));
            return {};
        case Tag::Mon:
        case Tag::SMon:
        case Tag::WMon:
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    Extension a = *tb.ext[i];
                    Extension b = *tb.ext[j];
                    if (tag == Tag::Mon) {
                        a = a.intersect(tgt);
                        b = b.intersect(tgt);
                    }
                    if (tag == Tag::WMon && first_missing(tb.content[j], terms[i])) continue;
                    if (!a.subset_of(b)) return violation({i, j}, a.first_outside(b));
                }
            return {};
        case Tag::Wb:
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    std::optional<std::size_t> k;
                    for (std::size_t m = i + 1; m <= j && !k; ++m)
                        if (tb.syn[m] != tb.syn[i]) k = m;
                    if (!k) continue;
                    bool justified = false;
                    for (Nat x : tb.content[j])
                        if (member(terms[j], x) && !member(terms[i], x)) justified = true;
                    if (!justified) return violation({i, j, *k});
                }
            return {};
        case Tag::Dec:
        case Tag::SDec:
        case Tag::NU:
        case Tag::SNU:
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j <= k; ++j)
                    for (std::size_t i = 0; i <= j; ++i) {
                        if (tb.sem[i] != tb.sem[k]) continue;
                        if ((tag == Tag::NU || tag == Tag::SNU) && !is_target(i)) continue;
                        const bool strong = tag == Tag::SDec || tag == Tag::SNU;
                        if (strong ? tb.syn[i] != tb.syn[j] : tb.sem[i] != tb.sem[j])
                            return violation({i, j, k}, tb.ext[i]->first_difference(*tb.ext[j]));
                    }
            return {};
    }
    return {};
}

} // namespace

std::string_view tag_name(Tag t) {
    for (const auto& e : kTags)
        if (e.tag == t) return e.name;
    return "?";
}

std::optional<Tag> tag_from_name(std::string_view name) {
    for (const auto& e : kTags)
        if (e.name == name) return e.tag;
    return std::nullopt;
}

const std::vector<Tag>& all_tags() {
    static const std::vector<Tag> tags = [] {
        std::vector<Tag> out;
        for (const auto& e : kTags) out.push_back(e.tag);
        return out;
    }();
    return tags;
}

bool is_delayable(Tag t) { return t != Tag::Cons; }

std::string_view mode_name(Mode m) { return m == Mode::Ex ? "Ex" : "Bc"; }

Verdict check_restriction(Tag tag, const HypSequence& p, const Language& target, Nat B) {
    Verdict v = check_impl(tag, p, target, B);
    v.check = std::string(tag_name(tag));
    v.B = B;
    v.H = p.prefix.size();
    return v;
}

Verdict check_convergence(Mode mode, const HypSequence& p, const Language& target, Nat B,
                          std::size_t H) {
    Verdict v;
    v.check = std::string(mode_name(mode));
    v.B = B;
    v.H = H;
    v.outcome = Outcome::NotConverged;
    if (p.terms.empty()) return v;
    const Extension tgt(target.term, B);
    auto correct = [&](const Term& t) { return !t.is_quest() && Extension(t, B) == tgt; };
    std::map<std::string, bool> seen;
    auto correct_cached = [&](const Term& t) {
        auto it = seen.find(t.canonical());
        if (it == seen.end()) it = seen.emplace(t.canonical(), correct(t)).first;
        return it->second;
    };
    const std::size_t last = p.terms.size() - 1;
    if (!correct_cached(p.terms[last])) return v;
    std::size_t n0 = last;
    while (n0 > 0) {
        const Term& prev = p.terms[n0 - 1];
        const bool ok = mode == Mode::Ex ? prev == p.terms[last] : correct_cached(prev);
        if (!ok) break;
        --n0;
    }
    // A hypothesis first reached at the last step is not yet evidence of convergence.
    if (n0 == last && last > 0) return v;
    v.outcome = Outcome::Converged;
    v.n0 = n0;
    v.final_term = p.terms[last];
    return v;
}

HypSequence delay(const HypSequence& p, const std::vector<std::size_t>& r, Seq prefix) {
    if (r.size() != prefix.size() + 1) throw ContractViolation("delay: table length mismatch");
    HypSequence out;
    out.prefix = std::move(prefix);
    for (std::size_t n = 0; n < r.size(); ++n) {
        if (n > 0 && r[n] < r[n - 1]) throw ContractViolation("delay: table is decreasing");
        if (r[n] >= p.terms.size()) throw ContractViolation("delay: index beyond sequence");
        out.terms.push_back(p.terms[r[n]]);
    }
    return out;
}

std::string render(const Verdict& v, std::string_view text_id) {
    std::string out = v.check + " " + std::string(text_id) + " ";
    switch (v.outcome) {
        case Outcome::Clean:
            out += "CLEAN";
            break;
        case Outcome::Violation: {
            out += "VIOLATION@(";
            for (std::size_t i = 0; i < v.indices.size(); ++i) {
                if (i > 0) out += ',';
                out += std::to_string(v.indices[i]);
            }
            out += ")";
            break;
        }
        case Outcome::Converged:
            out += "CONVERGED@" + std::to_string(*v.n0) + " term=" + v.final_term->canonical();
            break;
        case Outcome::NotConverged:
            out += "NOT_CONVERGED";
            break;
        case Outcome::Diverged:
            out += "DIVERGED@" + std::to_string(v.H);
            break;
    }
    out += " witness=" + (v.witness ? std::to_string(*v.witness) : std::string("-"));
    out += " B=" + std::to_string(v.B) + " H=" + std::to_string(v.H);
    return out;
}

} // namespace lim
