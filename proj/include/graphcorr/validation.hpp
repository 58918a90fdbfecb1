#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace graphcorr {

// Outcome of one validated clause. `where` names the first offending index
// combination; `residual` is the worst violation magnitude seen for the clause
// (0 when the clause holds exactly).
struct Check {
    std::string name;
    bool ok = true;
    double residual = 0.0;
    std::string where;
};

struct Report {
    std::string subject;
    bool accepted = true;
    std::vector<Check> checks;

    void add(Check check) {
        accepted = accepted && check.ok;
        checks.push_back(std::move(check));
    }

    const Check* find(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }

    double max_residual() const {
        double r = 0.0;
        for (const auto& c : checks) r = std::max(r, c.residual);
        return r;
    }

    // One-line digest of the failing clauses, for exception messages.
    std::string summary() const;
};

} // namespace graphcorr
