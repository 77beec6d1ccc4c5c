#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "limlearn/seq.hpp"
#include "limlearn/term.hpp"

namespace lim {

/// A target language. Membership comes from `term`; `infinite` tells text
/// generators whether the enumeration ever runs dry.
struct Language {
    std::string name;
    Term term = Term::quest();
    bool infinite = false;

    bool member(Nat x) const { return term.eval(x); }
    /// Elements in [0, bound], ascending.
    NatSet elements_upto(Nat bound) const;
};

/// Elements at or above this are never enumerated by text generators.
inline constexpr Nat kScanLimit = 4096;

/// Deterministic 64-bit linear congruential generator used for seeded texts:
/// state' = state * 6364136223846793005 + 1442695040888963407; a uniform draw
/// in [0,1) is the top 53 bits of the new state times 2^-53.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform();
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::uint64_t state_;
};

/// A total presentation of data, evaluable at every position.
///
/// Generators:
///  - canonical: ascending enumeration of the language, then pauses.
///  - finite_then_pauses: a fixed sequence, then pauses.
///  - seeded: pauses with probability `pause_rate`, repeats an already shown
///    element with probability `dup_rate`, and otherwise shows one of the next
///    three unshown elements. After three positions without a fresh element a
///    fresh one is forced, so the m-th smallest element (m counted from 0)
///    appears by position 4 * (m + 3).
///  - delayed: the inner text with `pauses[i % pauses.size()]` pauses inserted
///    before inner datum i.
///  - prefix_then_constant: a fixed sequence, then one datum forever.
class Text {
public:
    static Text canonical(Language lang);
    static Text finite_then_pauses(Seq s);
    static Text seeded(Language lang, std::uint64_t seed, double pause_rate, double dup_rate);
    static Text delayed(Text inner, std::vector<std::size_t> pauses);
    static Text prefix_then_constant(Seq s, Datum d);

    /// T[n]: the first n data.
    Seq prefix(std::size_t n) const;
    Datum at(std::size_t n) const;
    const std::string& id() const;

    /// Position by which every element of the language up to `bound` has been
    /// shown, for generators with a guarantee (canonical, seeded).
    std::size_t coverage_horizon(Nat bound) const;

    struct Impl;

private:
    explicit Text(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

} // namespace lim
