#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "limlearn/harness.hpp"

namespace lim {

/// Diagnostic codes of the experiment-spec parser.
enum class DiagCode {
    Syntax,         // E001
    UnknownName,    // E002
    KindMismatch,   // E003
    DuplicateBinding,  // E004
    UnknownTag,     // E005
    BadValue,       // E006
};

std::string_view diag_code_name(DiagCode c);

struct Diagnostic {
    DiagCode code = DiagCode::Syntax;
    std::size_t line = 1;
    std::size_t column = 1;
    std::string message;
    std::vector<std::string> expected;

    /// `spec:LINE:COL: E00x message (expected: a, b)`
    std::string render() const;
};

struct Value;
using ValueList = std::vector<Value>;

/// NAME, INT or a list of those.
struct Value {
    std::variant<std::string, std::uint64_t, ValueList> v;
    friend bool operator==(const Value&, const Value&) = default;
};

struct KeyValue {
    std::string key;
    Value value;
    friend bool operator==(const KeyValue&, const KeyValue&) = default;
};

/// NAME, NAME(chain) or NAME(kv, ...).
struct ChainNode {
    std::string name;
    std::vector<ChainNode> inner;  // zero or one element
    std::vector<KeyValue> args;
    friend bool operator==(const ChainNode&, const ChainNode&) = default;
};

struct FamilyBinding {
    std::string name;
    ChainNode ctor;
    friend bool operator==(const FamilyBinding&, const FamilyBinding&) = default;
};

struct LearnerBinding {
    std::string name;
    ChainNode chain;
    friend bool operator==(const LearnerBinding&, const LearnerBinding&) = default;
};

struct RunBlock {
    std::vector<KeyValue> settings;
    friend bool operator==(const RunBlock&, const RunBlock&) = default;
};

struct ExperimentSpec {
    std::vector<FamilyBinding> families;
    std::vector<LearnerBinding> learners;
    std::vector<RunBlock> runs;
    /// Resolved jobs, one per run block.
    std::vector<Job> jobs;

    friend bool operator==(const ExperimentSpec& a, const ExperimentSpec& b) {
        return a.families == b.families && a.learners == b.learners && a.runs == b.runs;
    }
};

struct ParseResult {
    std::optional<ExperimentSpec> spec;
    std::optional<Diagnostic> error;
};

/// Parses and resolves a spec. Never throws on malformed input.
ParseResult parse_spec(std::string_view text);

/// Canonical text form; parse_spec(pretty_print(s)) gives a spec equal to s.
std::string pretty_print(const ExperimentSpec& spec);

} // namespace lim
