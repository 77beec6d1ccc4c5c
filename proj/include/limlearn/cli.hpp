#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "limlearn/harness.hpp"

namespace lim {

/// Exit codes of the command-line runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;   // some verdict is a Violation, NotConverged, ...
inline constexpr int kExitInvalid = 2;  // spec, trace or IO error

/// Runs one command; `args` excludes the program name. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Trace dump: `B=.. H=..`, then `p: <term>` and alternating `T: <datum>` /
/// `p: <term>` lines.
std::string format_trace(const HypSequence& p, Nat B, std::size_t H);

struct Trace {
    HypSequence hyps;
    Nat B = kDefaultBound;
    std::size_t H = 0;
};

/// Throws std::invalid_argument with a line number on malformed input.
Trace parse_trace(std::string_view text);

/// Machine-readable dump of reports (JSON).
std::string reports_json(const std::vector<RunReport>& reports);

} // namespace lim
