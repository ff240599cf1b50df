#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace sweepout {

// One recorded inequality: lhs <= rhs (or lhs < rhs when strict), with the
// slack ratio lhs/rhs kept for reporting.
struct Certificate {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
    double slack = 0.0;
    std::string note;
};

inline Certificate make_le_certificate(std::string name, double lhs, double rhs,
                                       double rel_tol = 0.0, std::string note = {}) {
    Certificate c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.pass = lhs <= rhs * (1.0 + rel_tol) + 1e-300;
    c.slack = rhs != 0.0 ? lhs / rhs
                         : (lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    c.note = std::move(note);
    return c;
}

inline Certificate make_lt_certificate(std::string name, double lhs, double rhs,
                                       std::string note = {}) {
    Certificate c = make_le_certificate(std::move(name), lhs, rhs, 0.0, std::move(note));
    c.pass = lhs < rhs;
    return c;
}

inline Certificate make_eq_certificate(std::string name, double lhs, double rhs,
                                       double rel_tol = 1e-9, std::string note = {}) {
    Certificate c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
    c.pass = std::fabs(lhs - rhs) <= rel_tol * scale;
    c.slack = rhs != 0.0 ? lhs / rhs : 1.0;
    c.note = std::move(note);
    return c;
}

inline bool all_pass(const std::vector<Certificate>& certs) {
    for (const auto& c : certs)
        if (!c.pass) return false;
    return true;
}

}  // namespace sweepout
