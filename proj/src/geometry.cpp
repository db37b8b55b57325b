#include "resolvent_lab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "resolvent_lab/resolvent.hpp"

namespace resolvent_lab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWindingGuard = 1e-9;

double cubic(double x) { return ((x - 3.0) * x - 18.0) * x + 4.0; }

} // namespace

double amplitude(double x) {
    const double num = 6.0 * x * (1.0 + x);
    const double den = (1.0 + x) * (1.0 + x) * (1.0 + x) - 3.0 * (5.0 * x - 1.0);
    return num / den;
}

bool amplitude_in_range(double x) {
    const double den = (1.0 + x) * (1.0 + x) * (1.0 + x) - 3.0 * (5.0 * x - 1.0);
    if (!(den > 0.0)) return false;
    const double a = amplitude(x);
    return a > 0.0 && a < 1.0;
}

double containment_threshold() {
    static const double value = [] {
        const double closed =
            1.0 + 2.0 * std::sqrt(7.0) * std::cos(std::atan(3.0 * std::sqrt(31.0) / 8.0) / 3.0);
        // amplitude(x) = 1 reduces to the cubic x^3 - 3x^2 - 18x + 4 = 0,
        // whose largest root sits in (5, 7).
        double lo = 5.0, hi = 7.0;
        while (hi - lo > 5e-14) {
            const double mid = 0.5 * (lo + hi);
            if (cubic(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        const double bisected = 0.5 * (lo + hi);
        if (std::abs(closed - bisected) > 1e-10)
            throw Error("closed form and bisection disagree for the amplitude root");
        return closed;
    }();
    return value;
}

Complex shape_ratio(const Generator& gen, double r, Complex z, double tol) {
    const ResolventValue rv = solve_resolvent(gen, r, z, tol);
    const Eval pe = gen.p(rv.w);
    return (1.0 + r * pe.value) / (1.0 + r * (pe.value + rv.w * pe.deriv));
}

TheoreticalOrders theoretical_orders(double x, double theta) {
    if (!(x > containment_threshold()))
        throw BelowThreshold("orders need r Re q above " + std::to_string(containment_threshold()) +
                             ", got " + std::to_string(x));
    const double a = amplitude(x);
    TheoreticalOrders out;
    out.amplitude = a;
    out.starlike_order = 1.0 / (1.0 + a);
    out.strong_order = 2.0 / kPi * std::asin(a);
    out.squeeze_exponent = (1.0 - a) / (1.0 + a);
    out.quasiconformal_constant = a;
    if (x >= 6.0) {
        const double theta_max = std::acos(std::min(1.0, 6.0 / x));
        if (std::abs(theta) > theta_max + 1e-15)
            throw ThetaOutOfRange("|theta| exceeds acos(6/x) = " + std::to_string(theta_max));
        out.spirallike_order = (std::cos(theta) - a) / ((1.0 - a * a) * std::cos(theta));
    }
    return out;
}

ClassRadii class_radii(Complex alpha, Complex beta) {
    if (!(std::real(alpha * std::conj(beta)) > 0.0))
        throw BadClass("class parameters need Re(alpha conj(beta)) > 0");
    const double t = std::real(beta / alpha);
    const double M = 1.0 - t;
    const double aa = std::abs(alpha);
    const double ab = std::abs(beta);
    double R, R1;
    if (t > 0.75) {
        R = aa * (0.5 - M);
        R1 = 1.0;
    } else {
        const double s = std::sqrt(M);
        R = aa * (1.0 - s) * (1.0 - s);
        R1 = 1.0 / s - 1.0;
    }
    const double under = std::max(0.0, R1 * R1 * ab * ab - R * R);
    const double R2 = R * R1 / (R1 * ab + std::sqrt(under));
    return {M, R, R1, R2};
}

ResolventRadii resolvent_radii(double r, Complex q) {
    if (!(r > 0.0))
        throw OutsideDomain("the resolvent parameter must be positive");
    if (!(q.real() > 0.0))
        throw BadQ("resolvent radii need Re q > 0");
    ResolventRadii out;
    out.x = r * q.real();
    const Complex b = 1.0 + r * q;
    const double ab = std::abs(b);
    out.rho4 = 1.0 / (ab + std::sqrt(ab * ab - 1.0));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (out.x > 2.0) {
        out.rho = extension_radius(out.x);
        out.rho1 = distortion_bound(out.x);
        out.rho2 = out.rho / (ab + std::sqrt(2.0 + out.x + r * r * std::norm(q)));
        out.rho3 = 3.0 / (1.0 + out.x);
        out.extended = true;
    } else {
        out.rho = out.rho1 = out.rho2 = out.rho3 = nan;
        out.extended = false;
    }
    return out;
}

MapEvaluator resolvent_evaluator(const Generator& gen, double r, double tol) {
    return [gen, r, tol](Complex z) {
        const ResolventValue rv = solve_resolvent(gen, r, z, tol);
        return Eval{rv.w, rv.deriv};
    };
}

MapEvaluator reference_evaluator(const StarlikeReference& ref) {
    return [ref](Complex z) { return ref.eval(z); };
}

OrderEstimate estimate_orders(const MapEvaluator& h, const Grid& grid, double theta) {
    if (!(std::abs(theta) < kPi / 2.0))
        throw ThetaOutOfRange("the spiral angle must satisfy |theta| < pi/2");
    const Complex rot = std::polar(1.0, -theta);
    const double ct = std::cos(theta);
    double min_re = std::numeric_limits<double>::infinity();
    double max_arg = 0.0;
    double min_spiral = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid.radius_count; ++k) {
        for (int j = 0; j < grid.angle_count; ++j) {
            const Complex z = grid.node(k, j);
            const Eval e = h(z);
            if (e.value == Complex(0.0, 0.0))
                throw ZeroDivision("the map vanishes at a nonzero grid node");
            const Complex s = z * e.deriv / e.value;
            min_re = std::min(min_re, s.real());
            max_arg = std::max(max_arg, std::abs(std::arg(s)));
            min_spiral = std::min(min_spiral, std::real(rot * s) / ct);
        }
    }
    return {min_re, 2.0 / kPi * max_arg, min_spiral, theta, grid};
}

double check_disk_containment(const Generator& gen, double r, const Grid& grid, double tol) {
    const double x = r * gen.q().real();
    if (!(x > containment_threshold()))
        throw BelowThreshold("containment needs r Re q above the amplitude root");
    const double a = amplitude(x);
    const double center = 1.0 / (1.0 - a * a);
    const double radius = a / (1.0 - a * a);
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid.radius_count; ++k) {
        for (int j = 0; j < grid.angle_count; ++j) {
            const Complex s = shape_ratio(gen, r, grid.node(k, j), tol);
            margin = std::min(margin, radius - std::abs(s - center));
        }
    }
    return margin;
}

namespace {

struct WindingWalk {
    const std::function<Complex(double)>* curve;
    Complex probe;
    double total = 0.0;
    double min_dist2 = std::numeric_limits<double>::infinity();
    int evaluations = 0;

    // Offset from the probe, with the proximity guard applied.
    Complex rel(Complex w) {
        const Complex d = w - probe;
        const double d2 = std::norm(d);
        min_dist2 = std::min(min_dist2, d2);
        if (d2 < kWindingGuard * kWindingGuard)
            throw WindingAmbiguous("curve passes within 1e-9 of a probe point");
        return d;
    }

    // a, b are curve values already shifted by -probe.  Each accepted segment
    // turns by at most pi/2, so the branch of the angle increment is forced.
    void advance(double ta, Complex a, double tb, Complex b, int depth) {
        const double delta = std::atan2(a.real() * b.imag() - a.imag() * b.real(),
                                        a.real() * b.real() + a.imag() * b.imag());
        if (std::abs(delta) <= kPi / 2.0) {
            total += delta;
            return;
        }
        if (depth > 48)
            throw WindingAmbiguous("step refinement failed to settle below pi/2");
        const double tm = 0.5 * (ta + tb);
        const Complex wm = (*curve)(tm);
        ++evaluations;
        const Complex m = rel(wm);
        advance(ta, a, tm, m, depth + 1);
        advance(tm, m, tb, b, depth + 1);
    }
};

WindingResult winding_from_samples(const std::function<Complex(double)>& curve,
                                   const std::vector<double>& params,
                                   const std::vector<Complex>& values, Complex probe) {
    WindingWalk walk;
    walk.curve = &curve;
    walk.probe = probe;
    const std::size_t n = values.size();
    std::vector<Complex> shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = walk.rel(values[i]);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t next = (i + 1) % n;
        const double tb = next == 0 ? params[0] + 2.0 * kPi : params[next];
        walk.advance(params[i], shifted[i], tb, shifted[next], 0);
    }
    const double raw = walk.total / (2.0 * kPi);
    const int winding = static_cast<int>(std::lround(raw));
    if (std::abs(raw - winding) > 1e-6)
        throw WindingAmbiguous("accumulated angle is not an integer multiple of 2 pi");
    return {winding, raw, std::sqrt(walk.min_dist2), walk.evaluations};
}

} // namespace

std::vector<WindingResult> winding_numbers(const std::function<Complex(double)>& curve,
                                           const std::vector<Complex>& probes,
                                           int initial_samples) {
    const int n = std::max(4, initial_samples);
    std::vector<double> params(n);
    std::vector<Complex> values(n);
    for (int i = 0; i < n; ++i) {
        params[i] = 2.0 * kPi * static_cast<double>(i) / n;
        values[i] = curve(params[i]);
    }
    std::vector<WindingResult> results;
    results.reserve(probes.size());
    bool first = true;
    for (const Complex& probe : probes) {
        WindingResult w = winding_from_samples(curve, params, values, probe);
        if (first) {
            w.evaluations += n;
            first = false;
        }
        results.push_back(w);
    }
    return results;
}

WindingResult winding_number(const std::function<Complex(double)>& curve, Complex probe,
                             int initial_samples) {
    return winding_numbers(curve, {probe}, initial_samples).front();
}

DistortionCoveringReport check_distortion_covering(const Generator& gen, double r,
                                                   const Grid& grid, double tol) {
    const ResolventRadii radii = resolvent_radii(r, gen.q());
    if (!radii.extended)
        throw BelowThreshold("distortion/covering diagnostics need r Re q > 2");
    DistortionCoveringReport report{};
    report.x = radii.x;
    report.rho = radii.rho;
    report.rho1 = radii.rho1;
    report.rho2 = radii.rho2;
    report.rho3 = radii.rho3;
    report.rho4 = radii.rho4;

    Grid extended = grid;
    extended.max_radius = radii.rho - 1e-6;
    double sup_ext = 0.0;
    for (const ResolventValue& rv : resolvent_grid(gen, r, extended, tol))
        sup_ext = std::max(sup_ext, std::abs(rv.w));
    report.sup_abs_extended = sup_ext;
    report.distortion_margin = radii.rho1 - sup_ext;

    double sup_disk = 0.0;
    for (const ResolventValue& rv : resolvent_grid(gen, r, grid, tol))
        sup_disk = std::max(sup_disk, std::abs(rv.w));
    report.sup_abs_disk = sup_disk;
    report.shrink_margin = radii.rho3 - sup_disk;

    const int curve_samples = std::max(4096, grid.angle_count);
    const int probe_count = 64;
    report.min_probe_distance = std::numeric_limits<double>::infinity();
    report.covering_ok = true;

    const auto run_covering = [&](double curve_radius, double probe_radius, int& wmin, int& wmax) {
        const auto curve = [&](double t) {
            return solve_resolvent(gen, r, std::polar(curve_radius, t), tol).w;
        };
        std::vector<Complex> probes(probe_count);
        for (int j = 0; j < probe_count; ++j)
            probes[j] = std::polar(probe_radius, 2.0 * kPi * j / probe_count);
        wmin = std::numeric_limits<int>::max();
        wmax = std::numeric_limits<int>::min();
        for (const WindingResult& w : winding_numbers(curve, probes, curve_samples)) {
            wmin = std::min(wmin, w.winding);
            wmax = std::max(wmax, w.winding);
            report.min_probe_distance = std::min(report.min_probe_distance, w.min_dist);
            if (w.winding != 1) report.covering_ok = false;
        }
    };

    run_covering((1.0 - 1e-3) * radii.rho, 0.99 * radii.rho2, report.winding_min_extended,
                 report.winding_max_extended);
    run_covering(1.0 - 1e-3, 0.99 * radii.rho4, report.winding_min_disk, report.winding_max_disk);
    return report;
}

double check_half_plane(const Generator& gen, double r, const Grid& grid, double tol) {
    const double x = r * gen.q().real();
    if (!(x >= 6.0))
        throw BelowThreshold("the half-plane bound needs r Re q >= 6");
    const double a = amplitude(x);
    const double g = (1.0 - a) / (1.0 + a);
    const double exponent = 1.0 / (1.0 - g);
    const Complex b = 1.0 + r * gen.q();
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid.radius_count; ++k) {
        for (int j = 0; j < grid.angle_count; ++j) {
            const Complex z = grid.node(k, j);
            const Complex w = solve_resolvent(gen, r, z, tol).w;
            const Complex base = b * w / z;
            if (!(base.real() > 0.0))
                throw BranchAmbiguous("half-plane base left the right half plane");
            const Complex value = std::pow(base, exponent);
            margin = std::min(margin, value.real() - 0.5);
        }
    }
    return margin;
}

} // namespace resolvent_lab
