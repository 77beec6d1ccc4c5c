#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "limlearn/learner.hpp"
#include "limlearn/subset_scan.hpp"

namespace lim {

/// A Gold-style learner that outputs indices into its own hypothesis space.
struct IndexLearner {
    std::string id;
    FamilyPtr space;
    std::function<Nat(const Seq&)> index;
    LearnerMeta meta;
};

/// Hypothesis-space form of a learner emitting hypothesis terms. Each output
/// is replaced by the index of its representative: the least sequence, in
/// the fixed order, among a fixed small universe and the prefixes of the
/// input, on which h* gives the same term. The space is registered under
/// "hs[<id>]" with decide(j, x) = h*(representative_j)(x).
IndexLearner to_hypothesis_space(const Learner& h);

/// Wraps the indices as famidx terms. ConfigError if the space is not registered.
Learner to_cind(const IndexLearner& h);

// Consistency transforms, kinds G, Psd and Sd. The output has the input's kind.
Learner make_consistent_patch(const Learner& h);
Learner make_consistent_reset(const Learner& h);
Learner make_consistent_dedup(const Learner& h);

/// G: keep the hypothesis while data (and pauses) are covered by it.
Learner cauttar_to_wb(const Learner& h);
/// G -> Sd: h on the shortest ascending prefix of D whose hypothesis covers D.
Learner g_to_sd_cauttar(const Learner& h);
/// Sd -> Sd witness-based learner built from forward-enumerating terms.
Learner sd_cauttar_to_wb(const Learner& h, ScanPolicy policy = kDefaultScan);

inline constexpr std::size_t kDefaultPoisonDepth = 2;
/// G -> G: mimic h on least candidate locking prefixes, poison the rest
/// against `family` (defaults to h's family).
Learner g_to_snu(const Learner& h, FamilyPtr family = nullptr,
                 std::size_t depth = kDefaultPoisonDepth);
/// G -> G: change hypothesis only once every earlier one is witnessed different.
Learner snu_to_sdec(const Learner& h);

inline constexpr std::size_t kPsdMaxLength = 5;
inline constexpr std::size_t kPsdMaxSet = 4;
/// G -> Psd: h on the least potential locking sequence over D of length <= t.
/// Throws CapExceeded beyond t = kPsdMaxLength or |D| = kPsdMaxSet.
Learner g_to_psd(const Learner& h);

/// G -> It with state pad(h(sigma), sigma).
Learner bc_to_it_pad(const Learner& h);
/// It -> Sd via the pause-interleaved ascending presentation of D.
Learner it_to_sd(const Learner& h);
/// Sd -> Sd emitting cautbc terms.
Learner sd_bc_to_cauttar_bc(const Learner& h);

inline constexpr std::size_t kSubsetSearchMax = 12;
/// Sd -> Sd: h on the first subset (binary-code order) whose hypothesis covers D.
/// Throws CapExceeded when none of the first 2^kSubsetSearchMax subsets does.
Learner sd_cauttar_bc_to_ex(const Learner& h);
/// Td -> Td: the hypothesis of h on the least datum its current guess accepts.
Learner td_bc_to_ex(const Learner& h);

/// Transform table entry, used by the DSL type checker and the catalog.
struct TransformSpec {
    std::string name;
    std::vector<Kind> input_kinds;
    std::vector<std::string> required;
    /// nullopt: same kind as the input.
    std::optional<Kind> output_kind;
    /// Restriction tags the output is claimed to satisfy.
    std::vector<std::string> claimed;
    std::function<Learner(const Learner&)> apply;
};

const std::vector<TransformSpec>& transform_specs();
const TransformSpec* find_transform(std::string_view name);

/// "total" holds for learners without a cost model; other properties must be declared.
bool satisfies(const Learner& h, std::string_view property);

} // namespace lim
