#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lim {

using Nat = std::uint64_t;

/// One text position: a natural number or the pause symbol `#`.
///
/// Stored as an item code: `#` is 0 and the number n is n + 1. The code order
/// is the item order used by the length-lexicographic order on sequences.
class Datum {
public:
    constexpr Datum() = default;

    static constexpr Datum pause() { return Datum{}; }
    static constexpr Datum num(Nat n) { return Datum{n + 1}; }
    static constexpr Datum from_code(Nat code) { return Datum{code}; }

    constexpr bool is_pause() const { return code_ == 0; }
    constexpr Nat value() const { return code_ - 1; }
    constexpr Nat code() const { return code_; }

    friend constexpr auto operator<=>(Datum, Datum) = default;

    std::string to_string() const;

private:
    constexpr explicit Datum(Nat code) : code_(code) {}
    Nat code_ = 0;
};

using Seq = std::vector<Datum>;

/// Finite set of naturals as a sorted vector without duplicates.
using NatSet = std::vector<Nat>;

NatSet make_set(std::vector<Nat> elems);
bool contains(const NatSet& s, Nat x);
bool is_subset(const NatSet& a, const NatSet& b);
NatSet set_union(const NatSet& a, const NatSet& b);
NatSet set_difference(const NatSet& a, const NatSet& b);
NatSet with(const NatSet& s, Nat x);

Seq seq_of(std::initializer_list<long long> items); // negative entries are pauses

NatSet content(const Seq& s);

/// Total order on sequences: length first, then lexicographic by item code.
std::strong_ordering seq_order(const Seq& a, const Seq& b);

struct SeqLess {
    bool operator()(const Seq& a, const Seq& b) const { return seq_order(a, b) < 0; }
};

bool is_prefix(const Seq& prefix, const Seq& s);

/// Pauses dropped, each number kept at its first occurrence.
Seq dedup(const Seq& s);

/// Ascending elements of `d` with a pause between each two of them.
Seq sort_pause(const NatSet& d);

/// The first k elements of `d` in ascending order, as a sequence.
Seq canonical_prefix(const NatSet& d, std::size_t k);

Seq concat(const Seq& a, const Seq& b);
Seq append(const Seq& a, Datum d);
Seq take(const Seq& s, std::size_t n);

/// `<1,#,2>` notation; `<>` for the empty sequence.
std::string seq_to_string(const Seq& s);
/// `{1,2}` notation.
std::string set_to_string(const NatSet& s);

/// Every sequence over `alphabet` of length at most `max_len`, in seq_order.
std::vector<Seq> all_sequences(const std::vector<Datum>& alphabet, std::size_t max_len);

/// `elems` with a pause added, sorted by code.
std::vector<Datum> pause_alphabet(const NatSet& elems);

} // namespace lim
