#include "resolvent_lab/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "resolvent_lab/geometry.hpp"
#include "resolvent_lab/resolvent.hpp"

namespace resolvent_lab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEscapeRadius = 1.0 - 1e-12;

// Dormand-Prince 5(4) pair, FSAL.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

class RotatedFlow {
public:
    RotatedFlow(const VectorField& g, double phi, Complex z, const FlowOptions& opts)
        : g_(g), rotation_(std::polar(1.0, phi)), opts_(opts), u_(z) {
        max_abs_ = std::abs(z);
        k1_ = field(u_);
        h_ = 0.1 / (1.0 + std::abs(k1_));
    }

    Complex field(Complex u) { return -rotation_ * g_(u); }

    // Integrate from the current arclength to s_target, invoking `observe`
    // (when set) after every accepted step.
    template <typename Observer>
    void advance_to(double s_target, Observer&& observe) {
        while (s_ < s_target) {
            const double remaining = s_target - s_;
            double h = std::min(h_, remaining);
            if (h < 1e-15 * std::max(1.0, s_target))
                throw StepUnderflow("step size collapsed at s = " + std::to_string(s_));
            bool stage_failed = false;
            Complex u5, k7;
            double err_abs = 0.0;
            try {
                const Complex k2 = field(u_ + h * (kA21 * k1_));
                const Complex k3 = field(u_ + h * (kA31 * k1_ + kA32 * k2));
                const Complex k4 = field(u_ + h * (kA41 * k1_ + kA42 * k2 + kA43 * k3));
                const Complex k5 = field(u_ + h * (kA51 * k1_ + kA52 * k2 + kA53 * k3 + kA54 * k4));
                const Complex k6 = field(
                    u_ + h * (kA61 * k1_ + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
                u5 = u_ + h * (kB1 * k1_ + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
                k7 = field(u5);
                const Complex err =
                    h * (kE1 * k1_ + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
                err_abs = std::abs(err);
            } catch (const OutsideDisk&) {
                stage_failed = true;
            } catch (const OutsideDomain&) {
                stage_failed = true;
            }
            if (stage_failed) {
                h_ = 0.5 * h;
                continue;
            }
            const double scale =
                opts_.abs_tol + opts_.rel_tol * std::max(std::abs(u_), std::abs(u5));
            const double e = err_abs / scale;
            if (e <= 1.0) {
                if (std::abs(u5) > kEscapeRadius)
                    throw DomainEscape("trajectory left the disk at s = " +
                                       std::to_string(s_ + h) + " after " +
                                       std::to_string(steps_) + " accepted steps");
                u_ = u5;
                k1_ = k7;
                s_ += h;
                ++steps_;
                max_abs_ = std::max(max_abs_, std::abs(u_));
                const double grow = e > 0.0 ? 0.9 * std::pow(e, -0.2) : 5.0;
                h_ = h * std::clamp(grow, 0.2, 5.0);
                observe();
            } else {
                h_ = h * std::clamp(0.9 * std::pow(e, -0.2), 0.1, 1.0);
            }
        }
    }

    Complex state() const { return u_; }
    double arclength() const { return s_; }
    double max_abs() const { return max_abs_; }
    int steps() const { return steps_; }

private:
    const VectorField& g_;
    Complex rotation_;
    FlowOptions opts_;
    Complex u_;
    Complex k1_;
    double s_ = 0.0;
    double h_ = 0.0;
    double max_abs_ = 0.0;
    int steps_ = 0;
};

struct FlowStats {
    Complex u;
    double max_abs;
    int steps;
};

FlowStats flow_field_stats(const VectorField& g, Complex t, Complex z, const FlowOptions& opts) {
    const double length = std::abs(t);
    if (length == 0.0) return {z, std::abs(z), 0};
    RotatedFlow stepper(g, std::arg(t), z, opts);
    stepper.advance_to(length, [] {});
    return {stepper.state(), stepper.max_abs(), stepper.steps()};
}

VectorField generator_field(const Generator& gen) {
    return [&gen](Complex u) { return gen.f(u).value; };
}

} // namespace

Complex flow_field(const VectorField& g, Complex t, Complex z, const FlowOptions& opts) {
    return flow_field_stats(g, t, z, opts).u;
}

Complex flow(const Generator& gen, Complex t, Complex z, const FlowOptions& opts) {
    const auto g = generator_field(gen);
    return flow_field_stats(g, t, z, opts).u;
}

Trajectory sample_trajectory(const VectorField& g, Complex t, Complex z, int n_samples,
                             const FlowOptions& opts, const std::string& id) {
    if (n_samples < 1) throw BadOrder("a trajectory needs at least one sample");
    Trajectory traj;
    traj.generator_id = id;
    traj.start = z;
    traj.ray_angle = std::arg(t);
    traj.samples.push_back({0.0, z});
    const double length = std::abs(t);
    if (length == 0.0) return traj;
    RotatedFlow stepper(g, traj.ray_angle, z, opts);
    for (int i = 1; i <= n_samples; ++i) {
        const double s = length * static_cast<double>(i) / n_samples;
        stepper.advance_to(s, [] {});
        traj.samples.push_back({s, stepper.state()});
    }
    return traj;
}

Complex exponential_formula(const Generator& gen, double t, Complex z, int n, double tol) {
    if (!(t > 0.0)) throw OutsideDomain("the exponential formula needs t > 0");
    if (n < 1) throw BadOrder("the iteration count must be at least 1");
    Complex w = z;
    const double step = t / n;
    for (int i = 0; i < n; ++i) w = solve_resolvent(gen, step, w, tol).w;
    return w;
}

SqueezeCertificate squeezing_margin(const Generator& gen, double kappa,
                                    const std::vector<std::pair<double, Complex>>& samples,
                                    const FlowOptions& opts) {
    if (!(kappa > 0.0)) throw BadOrder("the squeezing rate must be positive");
    double worst = 0.0;
    for (const auto& [t, z] : samples) {
        if (!(t > 0.0)) throw OutsideDomain("squeezing samples need t > 0");
        const double az = std::abs(z);
        if (!(az > 0.0) || az >= 1.0)
            throw OutsideDomain("squeezing samples need 0 < |z| < 1");
        const Complex u = flow(gen, t, z, opts);
        worst = std::max(worst, std::abs(u) * std::exp(kappa * t) / az);
    }
    const Grid grid{64, 256, 0.999};
    double min_re_p = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid.radius_count; ++k)
        for (int j = 0; j < grid.angle_count; ++j)
            min_re_p = std::min(min_re_p, gen.p(grid.node(k, j)).value.real());
    return {kappa, worst, worst <= 1.0 + 1e-8, min_re_p};
}

SectorEstimate sector_estimate(const Generator& gen, const Grid& grid) {
    double inf_arg = std::numeric_limits<double>::infinity();
    double sup_arg = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid.radius_count; ++k) {
        for (int j = 0; j < grid.angle_count; ++j) {
            const double a = std::arg(gen.p(grid.node(k, j)).value);
            inf_arg = std::min(inf_arg, a);
            sup_arg = std::max(sup_arg, a);
        }
    }
    return {std::clamp(kPi / 2.0 + inf_arg, 0.0, kPi / 2.0),
            std::clamp(kPi / 2.0 - sup_arg, 0.0, kPi / 2.0)};
}

ResolventSemigroupReport resolvent_semigroup_check(
    const Generator& gen, double r, const std::vector<std::pair<double, Complex>>& samples,
    const FlowOptions& opts, double tol) {
    const double x = r * gen.q().real();
    if (!(x >= 6.0))
        throw BelowThreshold("the resolvent-semigroup bound needs r Re q >= 6");
    ResolventSemigroupReport report{};
    report.x = x;
    const double a = amplitude(x);
    const double g = (1.0 - a) / (1.0 + a);
    report.squeeze_exponent = g;
    const Complex b = 1.0 + r * gen.q();
    const double re_power = std::pow(b, 1.0 / g).real();
    if (!(re_power > 0.0))
        throw BranchAmbiguous("Re (1+rq)^{1/g} <= 0: the closed-form rate is undefined here");
    report.kappa = std::pow(re_power, g) / (std::pow(2.0, 1.0 - g) * std::norm(b));
    report.kappa_real_q = gen.q().imag() == 0.0
                              ? 1.0 / (std::pow(2.0, 1.0 - g) * (1.0 + x))
                              : std::numeric_limits<double>::quiet_NaN();

    const VectorField field = [&gen, r, tol](Complex u) {
        return solve_resolvent(gen, r, u, tol).w;
    };

    double worst = 0.0;
    for (const auto& [t, z] : samples) {
        if (!(t > 0.0)) throw OutsideDomain("squeezing samples need t > 0");
        const double az = std::abs(z);
        if (!(az > 0.0) || az >= 1.0)
            throw OutsideDomain("squeezing samples need 0 < |z| < 1");
        const Complex u = flow_field(field, Complex(t, 0.0), z, opts);
        worst = std::max(worst, std::abs(u) * std::exp(report.kappa * t) / az);
    }

    const Grid grid{64, 256, 0.999};
    double min_re = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid.radius_count; ++k) {
        for (int j = 0; j < grid.angle_count; ++j) {
            const Complex z = grid.node(k, j);
            min_re = std::min(min_re, std::real(solve_resolvent(gen, r, z, tol).w / z));
        }
    }
    report.min_re_p = min_re;
    report.squeeze = {report.kappa, worst, worst <= 1.0 + 1e-8, min_re};

    const double delta = std::max(0.0, kPi * g / 2.0 - 0.05);
    const auto probe_ray = [&](double angle) {
        RayProbe probe{angle, false, 0.0};
        for (int j = 0; j < 8; ++j) {
            const Complex z0 = std::polar(0.9, 2.0 * kPi * j / 8.0);
            try {
                const FlowStats st =
                    flow_field_stats(field, std::polar(10.0, angle), z0, opts);
                probe.max_abs = std::max(probe.max_abs, st.max_abs);
            } catch (const DomainEscape&) {
                probe.escaped = true;
                probe.max_abs = 1.0;
            }
        }
        return probe;
    };
    const double center = std::arg(b);
    report.ray_plus = probe_ray(center + delta);
    report.ray_minus = probe_ray(center - delta);
    const double outside = kPi * g / 2.0 + 0.3;
    report.ray_outside_plus = probe_ray(center + outside);
    report.ray_outside_minus = probe_ray(center - outside);

    double boundary_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 512; ++j) {
        const Complex z = std::polar(1.0 - 1e-3, 2.0 * kPi * j / 512.0);
        boundary_min = std::min(boundary_min, std::abs(solve_resolvent(gen, r, z, tol).w));
    }
    report.boundary_min_abs = boundary_min;
    return report;
}

} // namespace resolvent_lab
