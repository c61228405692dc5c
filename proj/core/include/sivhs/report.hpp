#pragma once

#include <string>
#include <vector>

namespace sivhs {

struct Check {
    std::string name;
    bool pass = true;
    std::string witness;
};

// Ordered list of named verdicts.
class Report {
public:
    Report() = default;
    explicit Report(std::string title) : title_(std::move(title)) {}

    void add(std::string name, bool pass, std::string witness = {});
    void merge(const Report& other, const std::string& prefix = {});
    bool all_pass() const;
    const std::vector<Check>& checks() const { return checks_; }
    const std::string& title() const { return title_; }
    const Check* find(const std::string& name) const;
    bool passed(const std::string& name) const;
    std::string summary() const;

private:
    std::string title_;
    std::vector<Check> checks_;
};

} // namespace sivhs
