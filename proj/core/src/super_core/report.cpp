#include "sivhs/report.hpp"

#include "sivhs/errors.hpp"

namespace sivhs {

void Report::add(std::string name, bool pass, std::string witness) {
    checks_.push_back({std::move(name), pass, pass ? std::string{} : std::move(witness)});
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.pass, c.witness});
}

bool Report::all_pass() const {
    for (const auto& c : checks_)
        if (!c.pass) return false;
    return true;
}

const Check* Report::find(const std::string& name) const {
    for (const auto& c : checks_)
        if (c.name == name) return &c;
    return nullptr;
}

bool Report::passed(const std::string& name) const {
    const Check* c = find(name);
    if (!c) throw ArgumentError("super_core", "no check named '" + name + "'");
    return c->pass;
}

std::string Report::summary() const {
    std::string s = title_ + ":";
    for (const auto& c : checks_) {
        s += "\n  " + std::string(c.pass ? "pass " : "FAIL ") + c.name;
        if (!c.pass && !c.witness.empty()) s += " [" + c.witness + "]";
    }
    return s;
}

} // namespace sivhs
