#pragma once

#include <numbers>

#include "schubert/error.hpp"

namespace schubert {

// Thresholds for the numeric side. tol_zero is relative to the norm of the
// vector being inspected; tol_residual bounds reconstruction and membership
// residuals; tol_angle decides when an angle counts as 0 mod 2pi.
struct ToleranceConfig {
    double tol_zero = 1e-12;
    double tol_residual = 1e-9;
    double tol_angle = 1e-8;

    // Values within [tol, ambiguity_factor * tol) are resolved by the
    // threshold but reported as boundary-ambiguous.
    double ambiguity_factor = 1e3;

    void validate() const {
        if (!(tol_zero > 0.0 && tol_zero <= tol_residual && tol_residual < 1.0))
            fail(ErrorKind::invalid_argument, "tolerances must satisfy 0 < tol_zero <= tol_residual < 1");
        if (!(tol_angle > 0.0 && tol_angle < std::numbers::pi / 2))
            fail(ErrorKind::invalid_argument, "tol_angle must lie in (0, pi/2)");
        if (!(ambiguity_factor >= 1.0))
            fail(ErrorKind::invalid_argument, "ambiguity_factor must be >= 1");
    }

    bool zero_ambiguous(double rel) const { return rel > tol_zero && rel < ambiguity_factor * tol_zero; }
    bool angle_ambiguous(double a) const { return a >= tol_angle && a < ambiguity_factor * tol_angle; }
};

} // namespace schubert
