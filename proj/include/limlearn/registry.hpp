#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "limlearn/family.hpp"
#include "limlearn/learner.hpp"

namespace lim {

/// Process-wide, append-only name tables for learners and families.
///
/// Terms refer to learners and families by name in their canonical form; the
/// registry is what parse_term resolves those names against. Registering an
/// existing name keeps the first entry and returns it.
class Registry {
public:
    static Registry& global();

    Learner add(Learner h);
    FamilyPtr add(FamilyPtr f);

    Learner learner(std::string_view id) const;  // ConfigError if absent
    FamilyPtr family(std::string_view name) const;
    bool has_learner(std::string_view id) const;
    bool has_family(std::string_view name) const;

    std::vector<std::string> learner_ids() const;
    std::vector<std::string> family_names() const;

private:
    Registry() = default;
    struct State;
    State& state() const;
};

} // namespace lim
