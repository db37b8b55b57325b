#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "resolvent_lab/grid.hpp"
#include "resolvent_lab/herglotz.hpp"

namespace resolvent_lab {

struct FlowOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
};

/// Map u -> g(u) used as the right-hand side of du/ds = -e^{i phi} g(u).
using VectorField = std::function<Complex(Complex)>;

/// Terminal value of the Cauchy problem du/ds = -e^{i phi} g(u), u(0) = z,
/// integrated over s in [0, |t|] with phi = arg t (rotated-ray parameterization
/// of complex time).  Embedded adaptive Runge-Kutta; an accepted step leaving
/// |u| > 1 - 1e-12 throws DomainEscape, a step below machine resolution throws
/// StepUnderflow.
Complex flow_field(const VectorField& g, Complex t, Complex z, const FlowOptions& opts = {});

/// Semigroup of the generator: flow_field with g = f.
Complex flow(const Generator& gen, Complex t, Complex z, const FlowOptions& opts = {});

struct Trajectory {
    std::string generator_id;
    Complex start;
    double ray_angle;
    std::vector<std::pair<double, Complex>> samples;  // (s, u(s)), s in [0, |t|]
};

Trajectory sample_trajectory(const VectorField& g, Complex t, Complex z, int n_samples,
                             const FlowOptions& opts = {}, const std::string& id = "");

/// n-fold iterate of the resolvent at parameter t/n, approximating the
/// semigroup: u(t, z) = lim_n (G_{t/n})^{[n]}(z).
Complex exponential_formula(const Generator& gen, double t, Complex z, int n, double tol = 1e-12);

struct SqueezeCertificate {
    double kappa;
    double worst_ratio;  // max over samples of |u(t,z)| e^{kappa t} / |z|
    bool pass;           // worst_ratio <= 1 + 1e-8
    double min_re_p;     // grid minimum of Re p, the exactness side of the bound
};

/// Exponential squeezing certificate |u(t,z)| <= |z| e^{-kappa t} for the
/// semigroup of `gen`, tested on the given (t, z) samples (t > 0, z != 0).
SqueezeCertificate squeezing_margin(const Generator& gen, double kappa,
                                    const std::vector<std::pair<double, Complex>>& samples,
                                    const FlowOptions& opts = {});

struct SectorEstimate {
    double alpha_max;  // clamp(pi/2 + inf arg p, 0, pi/2)
    double beta_max;   // clamp(pi/2 - sup arg p, 0, pi/2)
};

/// Admissible sector (-alpha, beta) of ray directions along which the
/// semigroup stays in the disk, estimated from arg p over the grid.
SectorEstimate sector_estimate(const Generator& gen, const Grid& grid);

struct RayProbe {
    double angle;
    bool escaped;
    double max_abs;  // largest |u| seen along the probe trajectories
};

struct ResolventSemigroupReport {
    double x;                 // r Re q
    double squeeze_exponent;  // (1 - A)/(1 + A)
    double kappa;             // (Re (1+rq)^{1/g})^{g} / (2^{1-g} |1+rq|^2), g the exponent
    double kappa_real_q;      // 1 / (2^{1-g} (1 + r q)) when Im q = 0, else NaN
    SqueezeCertificate squeeze;
    double min_re_p;            // grid minimum of Re G_r(z)/z
    RayProbe ray_plus;          // angle arg(1+rq) + (pi g / 2 - 0.05)
    RayProbe ray_minus;         // angle arg(1+rq) - (pi g / 2 - 0.05)
    RayProbe ray_outside_plus;  // angle arg(1+rq) + (pi g / 2 + 0.3); no guarantee either way
    RayProbe ray_outside_minus; // the mirror ray; recorded for the report only
    double boundary_min_abs;    // min |G_r| on the circle |z| = 1 - 1e-3
};

/// Squeezing and sector diagnostics for the semigroup generated by the
/// resolvent G_r itself, for x = r Re q >= 6.  Throws BranchAmbiguous when
/// Re (1+rq)^{1/g} <= 0 and the printed kappa is undefined.
ResolventSemigroupReport resolvent_semigroup_check(
    const Generator& gen, double r, const std::vector<std::pair<double, Complex>>& samples,
    const FlowOptions& opts = {}, double tol = 1e-12);

} // namespace resolvent_lab
