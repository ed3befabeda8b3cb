#pragma once

#include <string>
#include <vector>

namespace qchar {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

// Ordered list of named checks produced by the validators.
class Report {
public:
    void add(std::string name, bool passed, std::string detail = {}) {
        checks_.push_back({std::move(name), passed, std::move(detail)});
    }
    void merge(const Report& o) { checks_.insert(checks_.end(), o.checks_.begin(), o.checks_.end()); }
    bool ok() const {
        for (const auto& c : checks_)
            if (!c.passed) return false;
        return true;
    }
    const std::vector<CheckResult>& checks() const { return checks_; }
    bool failed(const std::string& name) const {
        for (const auto& c : checks_)
            if (c.name == name && !c.passed) return true;
        return false;
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& c : checks_)
            if (!c.passed) out.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
        return out;
    }

private:
    std::vector<CheckResult> checks_;
};

}  // namespace qchar
