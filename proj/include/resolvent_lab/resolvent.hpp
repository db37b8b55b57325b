#pragma once

#include <vector>

#include "resolvent_lab/grid.hpp"
#include "resolvent_lab/herglotz.hpp"

namespace resolvent_lab {

/// One solved node of the resolvent equation w + r f(w) = z.
struct ResolventValue {
    Complex w;        // G_r(z)
    Complex deriv;    // G_r'(z) = 1 / (1 + r f'(w))
    double residual;  // |w + r f(w) - z| at acceptance
    int iterations;   // Newton iterations summed over continuation segments
};

/// Univalent-extension radius (sqrt(2x) - sqrt(x-1))^2 of the resolvent for
/// x = r Re q > 2.  Equals 1 at x = 2 and grows with x; throws BelowThreshold
/// for x <= 2.
double extension_radius(double x);

/// Largest |w| the extended resolvent attains on the disk of radius
/// extension_radius(x): sqrt(2x/(x-1)) - 1.  Throws BelowThreshold for x <= 2.
double distortion_bound(double x);

/// Solve w + r f(w) = z by damped Newton with segment continuation from 0.
/// Admissible z: |z| < 1 always; additionally |z| <= extension_radius(x) - 1e-6
/// when x = r Re q > 2.  tol bounds both the residual and the last step.
ResolventValue solve_resolvent(const Generator& gen, double r, Complex z, double tol = 1e-12);

/// Solve on every grid node, row-major radius-then-angle.
std::vector<ResolventValue> resolvent_grid(const Generator& gen, double r, const Grid& grid,
                                           double tol = 1e-12);

} // namespace resolvent_lab
