#include "graphcorr/validation.hpp"

namespace graphcorr {

std::string Report::summary() const {
    if (accepted) return subject + ": accepted";
    std::string s = subject + ": rejected (";
    bool first = true;
    for (const auto& c : checks) {
        if (c.ok) continue;
        if (!first) s += "; ";
        first = false;
        s += c.name;
        if (!c.where.empty()) s += " at " + c.where;
        s += ", residual " + std::to_string(c.residual);
    }
    return s + ")";
}

} // namespace graphcorr
