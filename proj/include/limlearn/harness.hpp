#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limlearn/families.hpp"
#include "limlearn/learner.hpp"
#include "limlearn/restrictions.hpp"
#include "limlearn/text.hpp"

namespace lim {

inline constexpr Nat kDefaultBound = 64;
inline constexpr std::size_t kDefaultHorizon = 100;
inline constexpr double kSeededPauseRate = 0.2;
inline constexpr double kSeededDupRate = 0.2;

/// Canonical text followed by `seeded` seeded texts with seeds seed, seed+1, ...
std::vector<Text> suite_texts(const Language& lang, std::size_t seeded = 10,
                              std::uint64_t seed = 1);

struct LockingQuery {
    /// Maximal length of the candidate sequence.
    std::size_t bound = 3;
    /// Maximal length of the extensions checked.
    std::size_t ext_len = 2;
    Nat B = kDefaultBound;
    /// Drop the syntactic clause.
    bool bc = false;
    /// Candidates tried before giving up.
    std::size_t max_candidates = 20000;
};

/// Least sequence (length, then lexicographic with # first) over the target's
/// elements up to B and #, of length at most `bound`, such that every
/// extension of length at most `ext_len` keeps the hypothesis (Bc mode: its
/// semantics) correct on [0, B].
std::optional<Seq> find_locking(const Learner& h, const Language& target,
                                const LockingQuery& q = {});

struct RunReport {
    std::string learner;
    std::string language;
    std::string text;
    std::string digest;
    RunStatus status = RunStatus::Ok;
    std::string status_detail;
    std::vector<Verdict> convergence;
    std::vector<Verdict> restrictions;
    Nat B = kDefaultBound;
    std::size_t H = kDefaultHorizon;
    std::uint64_t seed = 1;
    HypSequence hyps;

    /// Every verdict Clean or Converged, and the run finished.
    bool ok() const;
    /// One rendered verdict per line.
    std::vector<std::string> lines() const;
};

/// Runs h on one text and checks the requested restrictions and modes.
RunReport run_job(const Learner& h, const Language& target, const Text& text,
                  const std::vector<Tag>& tags, const std::vector<Mode>& modes,
                  Nat B = kDefaultBound, std::size_t H = kDefaultHorizon,
                  std::uint64_t seed = 1);

/// One block of a suite: a learner on family members and text ensembles.
struct Job {
    std::string learner_name;
    Learner learner;
    FamilyPtr family;
    std::vector<Nat> members;
    /// "canonical", "seeded" (uses `seeds` texts) or "pauses" (all-pause text).
    std::vector<std::string> texts = {"canonical"};
    std::size_t seeds = 10;
    std::vector<Tag> tags;
    std::vector<Mode> modes;
    Nat B = kDefaultBound;
    std::size_t H = kDefaultHorizon;
    std::uint64_t seed = 1;
};

std::vector<Text> job_texts(const Job& job, const Language& lang);

/// Cartesian execution in job order. Cap and divergence events end up in the
/// reports, never as exceptions.
std::vector<RunReport> run_suite(const std::vector<Job>& jobs);

/// Matrix of learner × check with counts of passing and failing verdicts.
std::string summary_matrix(const std::vector<RunReport>& reports);

struct FalsificationCertificate {
    std::size_t n0 = 0;
    Seq prefix;
    Nat x = 0;
    Text t1 = Text::finite_then_pauses({});
    Text t2 = Text::finite_then_pauses({});
    HypSequence shared;
    NatSet target1;
    NatSet target2;
    std::string digest1;
    std::string digest2;
    bool verified = false;
};

/// Runs h on the ascending text of N \ {0} and looks for the first n0 <= H
/// where the state q after T[n0] has step(q, x+1) == step(q, x+2), x the
/// largest datum so far (0 if none). The certificate replays
/// T[n0] (x+1) 0 0 ... and T[n0] (x+2) 0 0 ... for H steps.
std::optional<FalsificationCertificate> falsify_it(const Learner& h,
                                                   std::size_t H = kDefaultHorizon);

} // namespace lim
