#include "limlearn/seq.hpp"

#include <algorithm>
#include <iterator>
#include <unordered_set>

namespace lim {

std::string Datum::to_string() const {
    return is_pause() ? std::string("#") : std::to_string(value());
}

NatSet make_set(std::vector<Nat> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return elems;
}

bool contains(const NatSet& s, Nat x) {
    return std::binary_search(s.begin(), s.end(), x);
}

bool is_subset(const NatSet& a, const NatSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

NatSet set_union(const NatSet& a, const NatSet& b) {
    NatSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

NatSet set_difference(const NatSet& a, const NatSet& b) {
    NatSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

NatSet with(const NatSet& s, Nat x) {
    NatSet out = s;
    auto it = std::lower_bound(out.begin(), out.end(), x);
    if (it == out.end() || *it != x) out.insert(it, x);
    return out;
}

Seq seq_of(std::initializer_list<long long> items) {
    Seq s;
    s.reserve(items.size());
    for (long long v : items) s.push_back(v < 0 ? Datum::pause() : Datum::num(static_cast<Nat>(v)));
    return s;
}

NatSet content(const Seq& s) {
    NatSet out;
    out.reserve(s.size());
    for (Datum d : s)
        if (!d.is_pause()) out.push_back(d.value());
    return make_set(std::move(out));
}

std::strong_ordering seq_order(const Seq& a, const Seq& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

bool is_prefix(const Seq& prefix, const Seq& s) {
    return prefix.size() <= s.size() && std::equal(prefix.begin(), prefix.end(), s.begin());
}

Seq dedup(const Seq& s) {
    Seq out;
    std::unordered_set<Nat> seen;
    for (Datum d : s) {
        if (d.is_pause()) continue;
        if (seen.insert(d.value()).second) out.push_back(d);
    }
    return out;
}

Seq sort_pause(const NatSet& d) {
    Seq out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i > 0) out.push_back(Datum::pause());
        out.push_back(Datum::num(d[i]));
    }
    return out;
}

Seq canonical_prefix(const NatSet& d, std::size_t k) {
    Seq out;
    for (std::size_t i = 0; i < k && i < d.size(); ++i) out.push_back(Datum::num(d[i]));
    return out;
}

Seq concat(const Seq& a, const Seq& b) {
    Seq out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Seq append(const Seq& a, Datum d) {
    Seq out = a;
    out.push_back(d);
    return out;
}

Seq take(const Seq& s, std::size_t n) {
    return Seq(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(std::min(n, s.size())));
}

std::string seq_to_string(const Seq& s) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ',';
        out += s[i].to_string();
    }
    return out + ">";
}

std::string set_to_string(const NatSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(s[i]);
    }
    return out + "}";
}

std::vector<Seq> all_sequences(const std::vector<Datum>& alphabet, std::size_t max_len) {
    std::vector<Seq> out{Seq{}};
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (Datum d : alphabet) out.push_back(append(out[i], d));
        level_begin = level_end;
    }
    return out;
}

std::vector<Datum> pause_alphabet(const NatSet& elems) {
    std::vector<Datum> out{Datum::pause()};
    for (Nat x : elems) out.push_back(Datum::num(x));
    return out;
}

} // namespace lim
