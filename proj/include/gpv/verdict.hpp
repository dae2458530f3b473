#pragma once

#include <string>

namespace gpv {

// Uniform outcome of one inequality instance. `pass` is lhs <= rhs + tolerance
// where tolerance is the check's stated slack (0 for discretely exact checks).
struct InequalityVerdict {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs / max(rhs, 1e-300)
    double constant_used = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline InequalityVerdict make_verdict(std::string name, double lhs, double rhs,
                                      double constant_used = 0.0,
                                      double tolerance = 0.0) {
    InequalityVerdict v;
    v.name = std::move(name);
    v.lhs = lhs;
    v.rhs = rhs;
    v.ratio = lhs / (rhs > 1e-300 ? rhs : 1e-300);
    v.constant_used = constant_used;
    v.tolerance = tolerance;
    v.pass = lhs <= rhs + tolerance;
    return v;
}

}  // namespace gpv
