#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "limlearn/seq.hpp"
#include "limlearn/term.hpp"
#include "limlearn/text.hpp"

namespace lim {

/// Interaction operator: what a learner sees of the text.
enum class Kind { G, Psd, Sd, It, Td };

std::string_view kind_name(Kind k);
std::optional<Kind> kind_from_name(std::string_view name);

/// Cost of computing h(sigma); nullopt means the computation diverges.
using CostModel = std::function<std::optional<Nat>(const Seq&)>;

/// A learner: one pure step function selected by `kind`.
///
/// Only the function matching `kind` is set. Outputs are hypothesis terms;
/// transductive learners may answer `?`.
class LearnerCore {
public:
    std::string id;
    Kind kind = Kind::G;

    std::function<Term(const Seq&)> gold;
    std::function<Term(const NatSet&, std::size_t)> psd;
    std::function<Term(const NatSet&)> sd;
    std::function<Term()> it_init;
    std::function<Term(const Term&, Datum)> it_step;
    std::function<Term(Datum)> td;

    /// Present on partial Gold-style learners.
    CostModel cost;
    /// Present on totalized learners: the prefix length the output is based on.
    std::function<std::size_t(const Seq&)> delay;

    /// Family the learner is meant for (poisoning consults it).
    FamilyPtr family;
    /// Restriction tags and facts ("Cons", "CautTar", "total", ...) the learner
    /// is declared to satisfy. Transform chains are type-checked against these.
    std::vector<std::string> properties;

    /// Fallback events, e.g. an empty min-search that had to use a default.
    mutable std::atomic<std::size_t> fallbacks{0};

    bool has_property(std::string_view p) const;

    /// The starred (Gold-style) simulation h*(sigma).
    Term star(const Seq& sigma) const;
};

using Learner = LearnerPtr;

struct LearnerMeta {
    FamilyPtr family;
    std::vector<std::string> properties;
};

Learner make_gold(std::string id, std::function<Term(const Seq&)> fn, LearnerMeta meta = {},
                  CostModel cost = {});
Learner make_psd(std::string id, std::function<Term(const NatSet&, std::size_t)> fn,
                 LearnerMeta meta = {});
Learner make_sd(std::string id, std::function<Term(const NatSet&)> fn, LearnerMeta meta = {});
Learner make_it(std::string id, std::function<Term()> init,
                std::function<Term(const Term&, Datum)> step, LearnerMeta meta = {});
Learner make_td(std::string id, std::function<Term(Datum)> fn, LearnerMeta meta = {});

/// Hypotheses at steps 0..n on a text prefix of length n.
struct HypSequence {
    std::vector<Term> terms;
    Seq prefix;
};

enum class RunStatus { Ok, Diverged, CapExceeded };

struct RunResult {
    HypSequence hyps;
    RunStatus status = RunStatus::Ok;
    /// Step at which the run stopped, when status is not Ok.
    std::size_t stopped_at = 0;
    std::string detail;
};

/// Runs h on the first n positions of the text. Partial learners whose cost
/// exceeds `budget` (or is undefined) at some step yield Diverged; capped
/// searches yield CapExceeded. Neither throws.
RunResult run(const Learner& h, const Text& text, std::size_t n,
              std::optional<Nat> budget = std::nullopt);

/// Runs h on an explicit finite sequence.
RunResult run_on(const Learner& h, const Seq& prefix, std::optional<Nat> budget = std::nullopt);

/// The G-learner simulating h.
Learner star(const Learner& h);

/// Total version of a partial G-learner: h'(sigma) = h(longest prefix whose
/// cost is at most |sigma|, or the empty sequence). The chosen prefix length
/// is exposed through `delay`.
Learner totalize(const Learner& h);

/// Number of syntactic mind changes up to each step, i.e. positions i > 0 with
/// terms[i] != terms[i-1].
std::vector<std::size_t> mind_change_positions(const HypSequence& p);

/// 64-bit FNV-1a over the canonical terms, one per line.
std::string digest(const HypSequence& p);

} // namespace lim
