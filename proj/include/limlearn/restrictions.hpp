#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "limlearn/learner.hpp"
#include "limlearn/text.hpp"

namespace lim {

enum class Tag { Cons, Conv, SemConv, Caut, CautTar, Mon, SMon, WMon, Wb, Dec, SDec, NU, SNU, T };

std::string_view tag_name(Tag t);
std::optional<Tag> tag_from_name(std::string_view name);
const std::vector<Tag>& all_tags();
/// Every tag except Cons.
bool is_delayable(Tag t);

enum class Mode { Ex, Bc };
std::string_view mode_name(Mode m);

enum class Outcome { Clean, Violation, Converged, NotConverged, Diverged };

struct Verdict {
    Outcome outcome = Outcome::Clean;
    std::string check;  // tag or mode name
    /// Violating tuple in definition order, e.g. (i, j) or (i, j, k).
    std::vector<std::size_t> indices;
    std::optional<Nat> witness;
    std::optional<std::size_t> n0;
    std::optional<Term> final_term;
    Nat B = 0;
    std::size_t H = 0;
    std::string detail;

    bool clean() const { return outcome == Outcome::Clean; }
    bool converged() const { return outcome == Outcome::Converged; }
};

/// Checks one restriction on the finite prefix `p`. Semantic (in)equalities are
/// decided on [0, B]; membership of content elements is decided directly.
/// Mon, CautTar, NU and SNU use `target` for content(T). `?` denotes the empty
/// language. The reported tuple is the least violating one when ordered by
/// its latest index first.
Verdict check_restriction(Tag tag, const HypSequence& p, const Language& target, Nat B);

/// Least n0 from which the mode's condition holds up to the end of `p`. An n0
/// equal to the last step counts only when `p` has a single hypothesis.
Verdict check_convergence(Mode mode, const HypSequence& p, const Language& target, Nat B,
                          std::size_t H);

/// p∘r on a new text prefix; r must be non-decreasing with r(n) < |p.terms|
/// and r.size() == prefix.size() + 1.
HypSequence delay(const HypSequence& p, const std::vector<std::size_t>& r, Seq prefix);

/// `TAG text-id CLEAN|VIOLATION@(i,j,k) witness=x B=.. H=..`
std::string render(const Verdict& v, std::string_view text_id);

} // namespace lim
