#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "limlearn/seq.hpp"

namespace lim {

/// A uniformly decidable family of languages (L_i): decide(i, x) is 1 iff x in L_i.
struct IndexedFamily {
    std::string name;
    std::function<bool(Nat index, Nat x)> decide;
    std::vector<Nat> index_hint;
    Nat universe_bound = 64;
    std::string description;
    /// Indices whose language is infinite. Used to pick texts and to skip
    /// finite-only assertions; decide stays the source of truth.
    std::function<bool(Nat index)> is_infinite = [](Nat) { return false; };
};

using FamilyPtr = std::shared_ptr<const IndexedFamily>;

} // namespace lim
