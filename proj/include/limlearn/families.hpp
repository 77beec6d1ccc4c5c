#pragma once

#include <string>
#include <vector>

#include "limlearn/learner.hpp"
#include "limlearn/restrictions.hpp"
#include "limlearn/text.hpp"

namespace lim {

/// i-th finite set under binary coding: d in D_i iff bit d of i is set.
NatSet decode_finite(Nat code);
Nat encode_finite(const NatSet& d);  // elements must be < 64

/// L_0 = N \ {0}; L_{i+1} = D_i ∪ {0}.
FamilyPtr finz();
/// Index of D ∪ {0} in finz.
Nat finz_index(const NatSet& d);
/// Sd: famidx(finz,0) if 0 is not in D, else finset(D).
Learner sep_learner();

/// L_i = D_i.
FamilyPtr fin();
/// Sd: finset(D).
Learner fin_learner();

/// L_i = {0, ..., i}.
FamilyPtr chain();
/// Sd: famidx(chain, max D), finset() on the empty set.
Learner chain_learner();
/// G: chain_learner on the input without its last datum. Inconsistent, and
/// Mon, SMon, WMon, CautTar, Conv and SemConv.
Learner chain_lag();
/// G: chain_lag on odd lengths, finset() on even ones. Lacks every
/// monotonicity-type restriction.
Learner chain_flicker();

/// L_0 = {0}, L_i = {0, 1} for i >= 1.
FamilyPtr conflict();
/// G: famidx(conflict,1) if 1 was shown, or the input ends in its only pause;
/// famidx(conflict,0) otherwise. Returns to an abandoned guess on 0,#,#,...
Learner pause_flip();

/// L_i = N \ {i}.
FamilyPtr cof();
/// Sd: cofinite({least element missing from D}).
Learner cof_learner();
/// Sd: as cof_learner, wrapped in an empty patch on odd |D|. Bc but not Ex
/// on infinite languages.
Learner cof_osc();

/// L_i = {x | x mod 3 = i}, i < 3 (larger indices wrap).
FamilyPtr mod3();
/// Td: '?' on pauses and on multiples of 7, else pad(famidx(mod3, x mod 3), <x>).
Learner mod3_td();

/// G forms of fin_learner with partial cost models, all defined at cost 0 on
/// the empty input: "double" (2|s|), "even" (undefined on odd lengths,
/// |s| + 1 otherwise), "spiky" (|s| + 20 on lengths divisible by 3, else |s|).
std::vector<Learner> costed_fin_learners();

/// Iterative learners converging to famidx(finz,0) on the ascending text of
/// N \ {0} within 100 steps.
std::vector<Learner> it_fixtures();
/// Iterative learner whose state is the content seen so far.
Learner it_injective();

/// The language L_i of a family as a target.
Language member_language(const FamilyPtr& f, Nat i);

/// One base learner on one family, with the members to run it on.
struct SuiteEntry {
    std::string name;
    FamilyPtr family;
    Learner learner;
    std::vector<Nat> members;
    Mode mode = Mode::Ex;
    /// Restriction tags the base learner satisfies on this family.
    std::vector<Tag> clean_tags;
};

std::vector<SuiteEntry> standard_suite();

/// Registers every catalog family and learner. Idempotent.
void register_catalog();

} // namespace lim
