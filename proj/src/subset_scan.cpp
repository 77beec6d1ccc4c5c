#include "limlearn/subset_scan.hpp"

#include <set>

namespace lim {

namespace {

// Subsets of pool with at most `k` elements, smallest first.
bool small_subsets(const NatSet& pool, std::size_t k,
                   const std::function<bool(const NatSet&)>& visit) {
    NatSet pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
        if (!visit(pick)) return false;
        if (pick.size() == k) return true;
        for (std::size_t i = start; i < pool.size(); ++i) {
            pick.push_back(pool[i]);
            const bool ok = rec(i + 1);
            pick.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    return rec(0);
}

bool all_subsets(const NatSet& pool, const std::function<bool(const NatSet&)>& visit) {
    const std::size_t n = pool.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        NatSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U) s.push_back(pool[i]);
        if (!visit(s)) return false;
    }
    return true;
}

} // namespace

bool for_each_between(const NatSet& lo, const NatSet& pool, const SetVisitor& visit,
                      ScanPolicy policy) {
    if (scan_is_exact(pool.size(), policy))
        return all_subsets(pool, [&](const NatSet& s) { return visit(set_union(lo, s)); });
    std::set<NatSet> seen;
    auto once = [&](const NatSet& d) { return !seen.insert(d).second || visit(d); };
    if (!small_subsets(pool, policy.fringe, [&](const NatSet& s) { return once(set_union(lo, s)); }))
        return false;
    const NatSet hi = set_union(lo, pool);
    return small_subsets(pool, policy.fringe,
                         [&](const NatSet& r) { return once(set_difference(hi, r)); });
}

bool for_each_between_with(const NatSet& lo, const NatSet& pool, Nat fresh,
                           const SetVisitor& visit, ScanPolicy policy) {
    const NatSet base = with(lo, fresh);
    if (scan_is_exact(pool.size() + 1, policy))
        return all_subsets(pool, [&](const NatSet& s) { return visit(set_union(base, s)); });
    std::set<NatSet> seen;
    auto once = [&](const NatSet& d) { return !seen.insert(d).second || visit(d); };
    if (policy.fringe > 0 &&
        !small_subsets(pool, policy.fringe - 1,
                       [&](const NatSet& s) { return once(set_union(base, s)); }))
        return false;
    const NatSet hi = set_union(base, pool);
    return small_subsets(pool, policy.fringe,
                         [&](const NatSet& r) { return once(set_difference(hi, r)); });
}

} // namespace lim
