#pragma once

#include <cstddef>
#include <functional>

#include "limlearn/seq.hpp"

namespace lim {

/// How the "for all D' between lo and hi" quantifiers are enumerated.
///
/// Pools of at most `exact_limit` free elements are enumerated completely.
/// Larger pools are scanned on their fringe only: every D' that adds at most
/// `fringe` elements to lo, or leaves out at most `fringe` elements of hi.
struct ScanPolicy {
    std::size_t exact_limit = 10;
    std::size_t fringe = 2;
};

inline constexpr ScanPolicy kDefaultScan{};

using SetVisitor = std::function<bool(const NatSet&)>;

/// Visits D' with lo ⊆ D' ⊆ lo ∪ pool (pool disjoint from lo). Stops and
/// returns false as soon as the visitor returns false.
bool for_each_between(const NatSet& lo, const NatSet& pool, const SetVisitor& visit,
                      ScanPolicy policy = kDefaultScan);

/// Same as for_each_between over pool ∪ {fresh}, restricted to the sets
/// containing `fresh`. Used to extend a scan incrementally.
bool for_each_between_with(const NatSet& lo, const NatSet& pool, Nat fresh,
                           const SetVisitor& visit, ScanPolicy policy = kDefaultScan);

/// True iff the scan covers every subset for a pool of this size.
inline bool scan_is_exact(std::size_t pool_size, ScanPolicy policy = kDefaultScan) {
    return pool_size <= policy.exact_limit;
}

} // namespace lim
