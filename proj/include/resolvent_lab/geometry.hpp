#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "resolvent_lab/grid.hpp"
#include "resolvent_lab/herglotz.hpp"

namespace resolvent_lab {

/// Amplitude 6x(1+x) / ((1+x)^3 - 3(5x-1)) governing the shape-ratio disk.
double amplitude(double x);

/// True when the denominator is positive and amplitude(x) lies in (0,1).
bool amplitude_in_range(double x);

/// Largest real root of amplitude(x) = 1, i.e. of x^3 - 3x^2 - 18x + 4 = 0.
/// Computed in closed form and confirmed by bisection on the cubic.
double containment_threshold();

/// Shape ratio S(z) = z G_r'(z) / G_r(z), evaluated through the Herglotz
/// factor: S = (1 + r p(w)) / (1 + r (p(w) + w p'(w))) at w = G_r(z).
Complex shape_ratio(const Generator& gen, double r, Complex z, double tol = 1e-12);

struct TheoreticalOrders {
    double amplitude;                      // A(x)
    double starlike_order;                 // 1 / (1 + A)
    double strong_order;                   // (2/pi) asin A
    double squeeze_exponent;               // (1 - A) / (1 + A)
    double quasiconformal_constant;        // A
    std::optional<double> spirallike_order;  // (cos t - A) / ((1 - A^2) cos t), x >= 6
};

/// Orders implied by the amplitude bound at x = r Re q > containment_threshold().
/// The spirallike entry exists for x >= 6 and |theta| <= acos(6/x); a theta
/// outside that range throws ThetaOutOfRange.
TheoreticalOrders theoretical_orders(double x, double theta = 0.0);

struct ClassRadii {
    double M;
    double R;   // univalence/starlikeness radius
    double R1;  // distortion bound sup |h| on the R-disk
    double R2;  // covered disk radius
};

/// Univalence, distortion and covering radii for inverses of maps F with
/// F(0) = 0, F'(0) = beta and Re[(F(z)/z - beta)/alpha] > -1/2, where
/// Re(alpha conj(beta)) > 0:
///   M = 1 - Re(beta/alpha),
///   R = |alpha| (1/2 - M) and R1 = 1              when Re(beta/alpha) > 3/4,
///   R = |alpha| (1 - sqrt(M))^2, R1 = 1/sqrt(M)-1 otherwise,
///   R2 = R R1 / (R1 |beta| + sqrt(R1^2 |beta|^2 - R^2)).
ClassRadii class_radii(Complex alpha, Complex beta);

struct ResolventRadii {
    double x;     // r Re q
    double rho;   // univalent extension radius           (x > 2)
    double rho1;  // sup |G_r| on the rho-disk            (x > 2)
    double rho2;  // disk covered by G_r(D_rho)           (x > 2)
    double rho3;  // sup |G_r| on the unit disk           (x > 2)
    double rho4;  // disk covered by G_r(D)               (any r)
    bool extended;  // whether the x > 2 entries are defined (else NaN)
};

ResolventRadii resolvent_radii(double r, Complex q);

using MapEvaluator = std::function<Eval(Complex)>;

/// Evaluator adapters for estimate_orders.
MapEvaluator resolvent_evaluator(const Generator& gen, double r, double tol = 1e-12);
MapEvaluator reference_evaluator(const StarlikeReference& ref);

struct OrderEstimate {
    double starlike_order;    // min Re z h'/h over the grid
    double strong_order;      // (2/pi) max |arg z h'/h|
    double spirallike_order;  // min Re(e^{-i theta} z h'/h) / cos theta
    double theta;
    Grid grid;
};

/// Grid estimates of starlike/strongly-starlike/spirallike orders of a map
/// h with h(0) = 0.  The origin is never evaluated; h must not vanish at any
/// other node (ZeroDivision otherwise).
OrderEstimate estimate_orders(const MapEvaluator& h, const Grid& grid, double theta = 0.0);

/// Signed containment margin of the shape-ratio disk
///   min over nodes of  A/(1-A^2) - |S(z) - 1/(1-A^2)|,
/// for x = r Re q > containment_threshold().
double check_disk_containment(const Generator& gen, double r, const Grid& grid,
                              double tol = 1e-12);

/// Winding number of a closed curve about `probe`, with angle unwrapping and
/// midpoint refinement until every step turns less than pi/2.  `curve` maps a
/// parameter in [0, 2 pi) to a point; initial_samples >= 4 evaluations seed
/// the walk.  WindingAmbiguous if the curve approaches the probe within 1e-9.
struct WindingResult {
    int winding;
    double raw;       // accumulated angle / 2 pi before rounding
    double min_dist;  // closest approach to the probe
    int evaluations;
};
WindingResult winding_number(const std::function<Complex(double)>& curve, Complex probe,
                             int initial_samples = 4096);

/// Same walk against many probes, sharing one set of base curve samples.
std::vector<WindingResult> winding_numbers(const std::function<Complex(double)>& curve,
                                           const std::vector<Complex>& probes,
                                           int initial_samples = 4096);

struct DistortionCoveringReport {
    double x;
    double rho, rho1, rho2, rho3, rho4;
    double sup_abs_extended;      // sup |G_r| on the grid over D_{rho - 1e-6}
    double distortion_margin;     // rho1 - sup_abs_extended
    double sup_abs_disk;          // sup |G_r| on the unit-disk grid
    double shrink_margin;         // rho3 - sup_abs_disk
    int winding_min_extended;     // over probes at radius 0.99 rho2
    int winding_max_extended;
    int winding_min_disk;         // over probes at radius 0.99 rho4
    int winding_max_disk;
    double min_probe_distance;    // closest curve/probe approach seen
    bool covering_ok;             // every winding equals 1
};

/// Distortion, shrink and covering diagnostics for x = r Re q > 2.  The
/// extended-domain sup uses a grid with the same node counts as `grid` but
/// max radius extension_radius(x) - 1e-6; boundary curves are sampled at
/// radius (1 - 1e-3) * domain bound with at least 4096 points; 64 probes sit
/// on each covered circle at 0.99 of the covering radius.
DistortionCoveringReport check_distortion_covering(const Generator& gen, double r,
                                                   const Grid& grid, double tol = 1e-12);

/// Half-plane margin min Re [ ((1+rq) G_r(z)/z)^{1/(1-squeeze_exponent)} ] - 1/2
/// over the grid, for x = r Re q >= 6.  The power uses the principal branch;
/// a base with nonpositive real part throws BranchAmbiguous.
double check_half_plane(const Generator& gen, double r, const Grid& grid, double tol = 1e-12);

} // namespace resolvent_lab
