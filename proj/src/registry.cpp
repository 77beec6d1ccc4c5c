#include "limlearn/registry.hpp"

#include <map>
#include <mutex>

#include "limlearn/errors.hpp"

namespace lim {

struct Registry::State {
    mutable std::mutex mu;
    std::map<std::string, Learner, std::less<>> learners;
    std::map<std::string, FamilyPtr, std::less<>> families;
};

Registry& Registry::global() {
    static Registry r;
    return r;
}

Registry::State& Registry::state() const {
    static State s;
    return s;
}

Learner Registry::add(Learner h) {
    auto& s = state();
    std::lock_guard lock(s.mu);
    auto [it, inserted] = s.learners.emplace(h->id, h);
    return it->second;
}

FamilyPtr Registry::add(FamilyPtr f) {
    auto& s = state();
    std::lock_guard lock(s.mu);
    auto [it, inserted] = s.families.emplace(f->name, f);
    return it->second;
}

Learner Registry::learner(std::string_view id) const {
    auto& s = state();
    std::lock_guard lock(s.mu);
    auto it = s.learners.find(id);
    if (it == s.learners.end()) throw ConfigError("unknown learner '" + std::string(id) + "'");
    return it->second;
}

FamilyPtr Registry::family(std::string_view name) const {
    auto& s = state();
    std::lock_guard lock(s.mu);
    auto it = s.families.find(name);
    if (it == s.families.end()) throw ConfigError("unknown family '" + std::string(name) + "'");
    return it->second;
}

bool Registry::has_learner(std::string_view id) const {
    auto& s = state();
    std::lock_guard lock(s.mu);
    return s.learners.find(id) != s.learners.end();
}

bool Registry::has_family(std::string_view name) const {
    auto& s = state();
    std::lock_guard lock(s.mu);
    return s.families.find(name) != s.families.end();
}

std::vector<std::string> Registry::learner_ids() const {
    auto& s = state();
    std::lock_guard lock(s.mu);
    std::vector<std::string> out;
    for (const auto& [k, v] : s.learners) out.push_back(k);
    return out;
}

std::vector<std::string> Registry::family_names() const {
    auto& s = state();
    std::lock_guard lock(s.mu);
    std::vector<std::string> out;
    for (const auto& [k, v] : s.families) out.push_back(k);
    return out;
}

} // namespace lim
