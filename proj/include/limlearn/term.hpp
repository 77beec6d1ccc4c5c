#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "limlearn/family.hpp"
#include "limlearn/seq.hpp"

namespace lim {

class LearnerCore;
using LearnerPtr = std::shared_ptr<const LearnerCore>;

enum class TermKind : std::uint8_t {
    Quest,
    FamIdx,
    FinSet,
    CoFinite,
    PatchUnion,
    ResetSet,
    WbForward,
    CautBc,
    Poison,
    Pad,
};

struct TermNode;

/// Closed hypothesis term denoting a total 0/1 function (a characteristic index).
///
/// Terms are immutable and shared. Syntactic identity is equality of the
/// canonical prefix serialization, which is computed once at construction.
class Term {
public:
    static Term quest();
    static Term fam_idx(FamilyPtr family, Nat index);
    static Term fin_set(NatSet d);
    static Term co_finite(NatSet excluded);
    static Term patch_union(Term inner, NatSet d);
    static Term reset_set(NatSet d);
    /// Forward-enumerating witness-based hypothesis over a set-driven learner.
    static Term wb_forward(LearnerPtr sd_learner, NatSet d);
    /// Forward-search target-cautious hypothesis over a set-driven learner.
    static Term caut_bc(LearnerPtr sd_learner, NatSet d);
    /// Poisoned hypothesis of a Gold-style learner on `sigma`, contradicting
    /// members of `family` once `sigma` is witnessed not to be locking.
    /// `depth` bounds the length of the extensions searched.
    static Term poison(LearnerPtr g_learner, FamilyPtr family, std::size_t depth, Seq sigma);
    static Term pad(Term inner, Seq sigma);

    TermKind kind() const;
    /// `?`, possibly padded.
    bool is_quest() const;
    const std::string& canonical() const;

    /// Characteristic function value at x. Throws ContractViolation on `?`.
    bool eval(Nat x) const;

    const TermNode& node() const { return *node_; }

    friend bool operator==(const Term& a, const Term& b) {
        return a.node_ == b.node_ || a.canonical() == b.canonical();
    }

private:
    explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const TermNode> node_;
    friend Term intern(std::shared_ptr<TermNode>);
};

bool eval_term(const Term& t, Nat x);

/// Pointwise agreement on [0, bound].
bool semantic_eq(const Term& a, const Term& b, Nat bound);

/// Membership bits of a term on [0, bound].
class Extension {
public:
    Extension() = default;
    Extension(const Term& t, Nat bound);
    static Extension of_set(const NatSet& s, Nat bound);

    Nat bound() const { return bound_; }
    bool test(Nat x) const { return (words_[x / 64] >> (x % 64)) & 1U; }
    void set(Nat x) { words_[x / 64] |= (std::uint64_t{1} << (x % 64)); }

    bool subset_of(const Extension& other) const;
    friend bool operator==(const Extension&, const Extension&) = default;
    /// Smallest x with test(x) && !other.test(x).
    std::optional<Nat> first_outside(const Extension& other) const;
    std::optional<Nat> first_difference(const Extension& other) const;
    Extension intersect(const Extension& other) const;

private:
    Nat bound_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Shared node behind a Term. Fields unused by a kind stay empty.
struct TermNode {
    TermKind kind = TermKind::Quest;
    std::string canonical;
    FamilyPtr family;
    Nat index = 0;
    NatSet set;
    std::shared_ptr<const TermNode> inner;
    LearnerPtr learner;
    Seq sigma;
    std::size_t depth = 0;

    struct Memo;
    mutable std::shared_ptr<Memo> memo;
};

/// Reads the canonical form back. Learner and family names resolve through
/// the global registry; unknown names raise ConfigError, bad syntax raises
/// std::invalid_argument.
Term parse_term(std::string_view text);

} // namespace lim
