#include "resolvent_lab/resolvent.hpp"

#include <cmath>
#include <string>

namespace resolvent_lab {

namespace {

constexpr double kEscapeRadius = 1.0 - 1e-12;
constexpr int kMaxNewtonIterations = 100;
constexpr int kMaxSubdivisions = 1 << 20;

std::string describe(Complex z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

struct NewtonOutcome {
    bool converged = false;
    Complex w;
    double residual = 0.0;
    int iterations = 0;
};

// Damped Newton for F(w) = w + r f(w) - target, accepting only iterates that
// keep |w| inside the escape radius and reduce |F|.
NewtonOutcome newton_segment(const Generator& gen, double r, Complex target, Complex seed,
                             double tol) {
    NewtonOutcome out;
    Complex w = seed;
    if (std::abs(w) >= kEscapeRadius) return out;
    Eval fe = gen.f(w);
    double res = std::abs(w + r * fe.value - target);
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
        ++out.iterations;
        const Complex F = w + r * fe.value - target;
        const Complex Fp = 1.0 + r * fe.deriv;
        if (Fp == Complex(0.0, 0.0)) return out;
        const Complex step = -F / Fp;
        if (res <= tol && std::abs(step) <= tol * (1.0 + std::abs(w))) {
            out.converged = true;
            out.w = w;
            out.residual = res;
            return out;
        }
        double lambda = 1.0;
        bool advanced = false;
        for (int halvings = 0; halvings < 30; ++halvings, lambda *= 0.5) {
            const Complex trial = w + lambda * step;
            if (std::abs(trial) >= kEscapeRadius) continue;
            const Eval trial_fe = gen.f(trial);
            const double trial_res = std::abs(trial + r * trial_fe.value - target);
            if (trial_res < res || trial_res <= tol) {
                w = trial;
                fe = trial_fe;
                res = trial_res;
                advanced = true;
                break;
            }
        }
        if (!advanced) return out;
    }
    // The residual may already satisfy the tolerance even though the paired
    // step-size condition never fired inside the loop.
    if (res <= tol) {
        out.converged = true;
        out.w = w;
        out.residual = res;
    }
    return out;
}

} // namespace

double extension_radius(double x) {
    if (!(x > 2.0))
        throw BelowThreshold("extension radius needs r Re q > 2, got " + std::to_string(x));
    const double d = std::sqrt(2.0 * x) - std::sqrt(x - 1.0);
    return d * d;
}

double distortion_bound(double x) {
    if (!(x > 2.0))
        throw BelowThreshold("distortion bound needs r Re q > 2, got " + std::to_string(x));
    return std::sqrt(2.0 * x / (x - 1.0)) - 1.0;
}

ResolventValue solve_resolvent(const Generator& gen, double r, Complex z, double tol) {
    if (!(r > 0.0))
        throw OutsideDomain("the resolvent parameter must be positive, got " + std::to_string(r));
    if (!(tol > 0.0))
        throw OutsideDomain("tolerance must be positive");
    const double x = r * gen.q().real();
    const double az = std::abs(z);
    if (az >= 1.0) {
        const bool extended_ok =
            x > 2.0 && az <= extension_radius(x) - 1e-6 + 1e-12;
        if (!extended_ok)
            throw OutsideDomain("z = " + describe(z) + " is outside the solvable domain at x = " +
                                std::to_string(x));
    }

    int total_iterations = 0;
    for (int segments = 1; segments <= kMaxSubdivisions; segments *= 2) {
        Complex w(0.0, 0.0);
        bool ok = true;
        int iterations = 0;
        for (int k = 1; k <= segments; ++k) {
            const Complex target = z * (static_cast<double>(k) / segments);
            const Complex seed = (k == 1) ? target / (1.0 + r * gen.q()) : w;
            const NewtonOutcome out = newton_segment(gen, r, target, seed, tol);
            iterations += out.iterations;
            if (!out.converged) {
                ok = false;
                break;
            }
            w = out.w;
        }
        total_iterations += iterations;
        if (ok) {
            if (std::abs(w) > 1.0 - 1e-10)
                throw DomainEscape("resolvent value touched the unit circle at z = " + describe(z));
            const Eval fe = gen.f(w);
            const double residual = std::abs(w + r * fe.value - z);
            return {w, 1.0 / (1.0 + r * fe.deriv), residual, total_iterations};
        }
    }
    throw NoConvergence("continuation exhausted " + std::to_string(kMaxSubdivisions) +
                        " subdivisions at z = " + describe(z));
}

std::vector<ResolventValue> resolvent_grid(const Generator& gen, double r, const Grid& grid,
                                           double tol) {
    std::vector<ResolventValue> values;
    values.reserve(grid.size());
    for (int k = 0; k < grid.radius_count; ++k) {
        for (int j = 0; j < grid.angle_count; ++j) {
            const Complex z = grid.node(k, j);
            const std::string at =
                " at node (k=" + std::to_string(k) + ", j=" + std::to_string(j) + ")";
            try {
                values.push_back(solve_resolvent(gen, r, z, tol));
            } catch (const OutsideDomain& e) {
                throw OutsideDomain(e.what() + at);
            } catch (const DomainEscape& e) {
                throw DomainEscape(e.what() + at);
            } catch (const NoConvergence& e) {
                throw NoConvergence(e.what() + at);
            }
        }
    }
    return values;
}

} // namespace resolvent_lab
