#pragma once

#include <string>
#include <vector>

namespace padic {

enum class CheckStatus { pass, fail, skipped, finding };

std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status;
    std::string detail;
};

/// Ordered list of named check outcomes.  `ok` means nothing FAILED;
/// findings and skips are allowed.
struct Certificate {
    std::vector<CheckResult> checks;

    void add(std::string name, CheckStatus status, std::string detail = "") {
        checks.push_back({std::move(name), status, std::move(detail)});
    }
    void pass(std::string name, std::string detail = "") {
        add(std::move(name), CheckStatus::pass, std::move(detail));
    }
    void fail(std::string name, std::string detail = "") {
        add(std::move(name), CheckStatus::fail, std::move(detail));
    }
    void skip(std::string name, std::string detail = "") {
        add(std::move(name), CheckStatus::skipped, std::move(detail));
    }
    void finding(std::string name, std::string detail = "") {
        add(std::move(name), CheckStatus::finding, std::move(detail));
    }
    void check(std::string name, bool okay, std::string detail = "") {
        add(std::move(name), okay ? CheckStatus::pass : CheckStatus::fail, std::move(detail));
    }

    void merge(const Certificate& other, const std::string& prefix = "") {
        for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.status, c.detail});
    }

    bool ok() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::fail) return false;
        return true;
    }
};

}  // namespace padic
