#include "resolvent_lab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <thread>
#include <utility>

#include "json.hpp"

#include "resolvent_lab/errors.hpp"
#include "resolvent_lab/geometry.hpp"
#include "resolvent_lab/grid.hpp"
#include "resolvent_lab/json_io.hpp"
#include "resolvent_lab/resolvent.hpp"
#include "resolvent_lab/semigroup.hpp"

namespace resolvent_lab {

namespace {

constexpr double kPi = std::numbers::pi;

using Params = std::map<std::string, std::string>;

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void put(Params& p, const std::string& key, double v) { p[key] = format_double(v); }
void put(Params& p, const std::string& key, const std::string& v) { p[key] = v; }
void put(Params& p, const std::string& key, int v) { p[key] = std::to_string(v); }

Complex suite_q(std::int64_t seed) {
    static const double ims[5] = {0.0, 0.3, -0.5, 0.2, -0.35};
    const int k = static_cast<int>(((seed - 1) % 5 + 5) % 5);
    return {1.0, ims[k]};
}

int suite_atoms(std::int64_t seed) {
    return 1 + static_cast<int>(((seed - 1) % 5 + 5) % 5);
}

Generator suite_gen(std::int64_t seed) {
    return sample_generator(static_cast<std::uint64_t>(seed), suite_atoms(seed), suite_q(seed));
}

std::vector<Complex> disk_points(std::uint64_t seed, int n, double rmax) {
    std::mt19937_64 rng(seed);
    std::vector<Complex> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double u = u01(rng);
        const double v = u01(rng);
        pts.push_back(std::polar(rmax * std::sqrt(u), 2.0 * kPi * v));
    }
    return pts;
}

// Root of a w^2 + b w + c = 0 with |w| < 1, using the cancellation-free split.
Complex disk_root(Complex a, Complex b, Complex c) {
    if (a == Complex(0.0, 0.0)) {
        if (b == Complex(0.0, 0.0)) throw ZeroDivision("degenerate quadratic");
        return -c / b;
    }
    Complex s = std::sqrt(b * b - 4.0 * a * c);
    if (std::real(std::conj(b) * s) > 0.0) s = -s;
    const Complex num = -b + s;
    if (num == Complex(0.0, 0.0)) return {0.0, 0.0};
    const Complex w_big = num / (2.0 * a);
    const Complex w_small = 2.0 * c / num;
    const Complex w = std::abs(w_small) <= std::abs(w_big) ? w_small : w_big;
    if (!(std::abs(w) < 1.0)) throw NoConvergence("no quadratic root inside the disk");
    return w;
}

// Resolvent of w (1 + w)/(1 - w) scaled by z: (r-1) w^2 + (1+r+z) w - z = 0.
Complex cusp_resolvent(double r, Complex z) {
    return disk_root(Complex(r - 1.0, 0.0), 1.0 + r + z, -z);
}

// Semigroup of the same field via its conserved quantity u/(1+u)^2 = e^{-t} z/(1+z)^2.
Complex cusp_flow(double t, Complex z) {
    const Complex c = std::exp(-t) * z / ((1.0 + z) * (1.0 + z));
    return disk_root(c, 2.0 * c - 1.0, c);
}

struct SFieldStats {
    double min_re = std::numeric_limits<double>::infinity();
    double max_abs_arg = 0.0;
    double min_spiral = std::numeric_limits<double>::infinity();
    double max_center_dev = 0.0;
};

// One pass over the grid collecting statistics of S(z) = z G_r'(z)/G_r(z).
SFieldStats s_field(const Generator& gen, double r, const Grid& grid, double tol, double theta,
                    double center) {
    SFieldStats st;
    const Complex rot = std::polar(1.0, -theta);
    const double ct = std::cos(theta);
    for (int k = 0; k < grid.radius_count; ++k) {
        for (int j = 0; j < grid.angle_count; ++j) {
            const ResolventValue rv = solve_resolvent(gen, r, grid.node(k, j), tol);
            const Eval pe = gen.p(rv.w);
            const Complex s = (1.0 + r * pe.value) * rv.deriv;
            st.min_re = std::min(st.min_re, s.real());
            st.max_abs_arg = std::max(st.max_abs_arg, std::abs(std::arg(s)));
            st.min_spiral = std::min(st.min_spiral, std::real(rot * s) / ct);
            st.max_center_dev = std::max(st.max_center_dev, std::abs(s - center));
        }
    }
    return st;
}

struct Job {
    std::string check_id;
    std::int64_t seed;
    std::function<double(Params&)> body;
};

template <typename T>
std::vector<T> take(const std::vector<T>& v, std::size_t k) {
    return {v.begin(), v.begin() + std::min(k, v.size())};
}

std::vector<Job> build_jobs(const SuiteConfig& cfg, const std::set<std::string>& want) {
    std::vector<Job> jobs;
    const Grid grid{cfg.grid_radii, cfg.grid_angles, 0.999};
    const double tol = cfg.tol;
    const auto add = [&](const char* id, std::int64_t seed, std::function<double(Params&)> body) {
        if (want.count(id)) jobs.push_back({id, seed, std::move(body)});
    };

    add("r0", 0, [](Params& p) {
        const double root = containment_threshold();
        const double a = amplitude(root);
        put(p, "x", root);
        put(p, "amplitude_at_root", a);
        return std::min(5e-5 - std::abs(root - 5.92434), 1e-10 - std::abs(a - 1.0));
    });

    add("class-radii-unit", 0, [](Params& p) {
        const ClassRadii cr = class_radii(1.0, 1.0);
        const double r2 = 1.0 / (2.0 + std::sqrt(3.0));
        put(p, "M", cr.M);
        put(p, "R", cr.R);
        put(p, "R1", cr.R1);
        put(p, "R2", cr.R2);
        return 1e-12 - std::max({std::abs(cr.R - 0.5), std::abs(cr.R1 - 1.0),
                                 std::abs(cr.R2 - r2)});
    });

    {
        static const char* families[4] = {"linear-real", "linear-complex", "atom-axis",
                                          "atom-rotated"};
        for (int fam = 0; fam < 4; ++fam) {
            for (const double r : {0.5, 1.0, 3.0, 10.0}) {
                add("resolvent-oracle", 0, [fam, r, tol](Params& p) {
                    const Complex qc(1.0, 0.5);
                    const Complex zeta = std::polar(1.0, 2.0);
                    Generator gen = [&] {
                        switch (fam) {
                            case 0: return Generator::omega(1.0, 0.0, 1);
                            case 1: return Generator::omega(qc, 0.0, 1);
                            case 2: return Generator::herglotz(make_herglotz({{0.0, 1.0}}));
                            default: return Generator::herglotz(make_herglotz({{2.0, 1.0}}));
                        }
                    }();
                    const auto exact = [&](Complex z) {
                        switch (fam) {
                            case 0: return z / (1.0 + r);
                            case 1: return z / (1.0 + r * qc);
                            case 2: return cusp_resolvent(r, z);
                            default: return zeta * cusp_resolvent(r, std::conj(zeta) * z);
                        }
                    };
                    double max_err = 0.0;
                    for (const Complex z : disk_points(1000 + fam * 41 + int(r * 10), 1000, 0.999))
                        max_err = std::max(max_err,
                                           std::abs(solve_resolvent(gen, r, z, tol).w - exact(z)));
                    put(p, "family", std::string(families[fam]));
                    put(p, "r", r);
                    put(p, "points", 1000);
                    put(p, "max_err", max_err);
                    return 1e-10 - max_err;
                });
            }
        }
    }

    const auto sweep = [&](const char* id, const std::vector<double>& xs,
                           std::function<double(const Generator&, double, double, Params&)> body) {
        for (const double x : xs) {
            for (const std::int64_t seed : cfg.seeds) {
                add(id, seed, [x, seed, body](Params& p) {
                    const Generator gen = suite_gen(seed);
                    const double r = x / gen.q().real();
                    put(p, "x", x);
                    put(p, "r", r);
                    put(p, "q_im", gen.q().imag());
                    put(p, "n_atoms", suite_atoms(seed));
                    return body(gen, r, x, p);
                });
            }
        }
    };

    sweep("distortion", cfg.xs, [grid, tol](const Generator& gen, double r, double x, Params& p) {
        const ResolventRadii radii = resolvent_radii(r, gen.q());
        Grid ext = grid;
        ext.max_radius = radii.rho - 1e-6;
        double sup = 0.0;
        for (const ResolventValue& rv : resolvent_grid(gen, r, ext, tol))
            sup = std::max(sup, std::abs(rv.w));
        put(p, "rho", radii.rho);
        put(p, "rho1", radii.rho1);
        put(p, "sup_abs", sup);
        (void)x;
        return radii.rho1 - sup;
    });

    sweep("shrink", cfg.xs, [grid, tol](const Generator& gen, double r, double x, Params& p) {
        double sup = 0.0;
        for (const ResolventValue& rv : resolvent_grid(gen, r, grid, tol))
            sup = std::max(sup, std::abs(rv.w));
        const double rho3 = 3.0 / (1.0 + x);
        put(p, "rho3", rho3);
        put(p, "sup_abs", sup);
        return rho3 - sup;
    });

    const auto covering = [grid, tol](const Generator& gen, double r, Params& p,
                                      double curve_radius, double probe_radius) {
        const auto curve = [&](double t) {
            return solve_resolvent(gen, r, std::polar(curve_radius, t), tol).w;
        };
        std::vector<Complex> probes(64);
        for (int j = 0; j < 64; ++j) probes[j] = std::polar(probe_radius, 2.0 * kPi * j / 64.0);
        int wmin = std::numeric_limits<int>::max();
        int wmax = std::numeric_limits<int>::min();
        double min_dist = std::numeric_limits<double>::infinity();
        int evals = 0;
        for (const WindingResult& w :
             winding_numbers(curve, probes, std::max(4096, grid.angle_count))) {
            wmin = std::min(wmin, w.winding);
            wmax = std::max(wmax, w.winding);
            min_dist = std::min(min_dist, w.min_dist);
            evals += w.evaluations;
        }
        put(p, "curve_radius", curve_radius);
        put(p, "probe_radius", probe_radius);
        put(p, "winding_min", wmin);
        put(p, "winding_max", wmax);
        put(p, "min_probe_distance", min_dist);
        put(p, "curve_evaluations", evals);
        return wmin == 1 && wmax == 1 ? min_dist
                                      : -static_cast<double>(std::max(std::abs(wmin - 1),
                                                                      std::abs(wmax - 1)));
    };

    sweep("covering-extended", cfg.xs,
          [covering](const Generator& gen, double r, double x, Params& p) {
              const ResolventRadii radii = resolvent_radii(r, gen.q());
              const ClassRadii cr = class_radii(2.0 * x, 1.0 + r * gen.q());
              put(p, "rho2", radii.rho2);
              put(p, "class_R2", cr.R2);
              return covering(gen, r, p, (1.0 - 1e-3) * radii.rho, 0.99 * radii.rho2);
          });

    sweep("covering-disk", cfg.xs, [covering](const Generator& gen, double r, double x, Params& p) {
        const ResolventRadii radii = resolvent_radii(r, gen.q());
        put(p, "rho4", radii.rho4);
        (void)x;
        return covering(gen, r, p, 1.0 - 1e-3, 0.99 * radii.rho4);
    });

    sweep("containment", cfg.xs_containment,
          [grid, tol](const Generator& gen, double r, double x, Params& p) {
              const double a = amplitude(x);
              const double center = 1.0 / (1.0 - a * a);
              const double radius = a / (1.0 - a * a);
              const SFieldStats st = s_field(gen, r, grid, tol, 0.0, center);
              put(p, "amplitude", a);
              put(p, "center", center);
              put(p, "radius", radius);
              put(p, "max_center_dev", st.max_center_dev);
              put(p, "min_re_s", st.min_re);
              return radius - st.max_center_dev;
          });

    sweep("starlike-half", cfg.xs, [grid, tol](const Generator& gen, double r, double x, Params& p) {
        const SFieldStats st = s_field(gen, r, grid, tol, 0.0, 0.0);
        put(p, "min_re_s", st.min_re);
        (void)x;
        return st.min_re - 0.5;
    });

    sweep("order-bound", cfg.xs_containment,
          [grid, tol](const Generator& gen, double r, double x, Params& p) {
              const SFieldStats st = s_field(gen, r, grid, tol, 0.0, 0.0);
              const double bound = x / (6.0 + x);
              put(p, "min_re_s", st.min_re);
              put(p, "bound", bound);
              return st.min_re - bound;
          });

    {
        const auto seeds = take(cfg.seeds, 10);
        for (const double x : {8.0, 50.0}) {
            for (const std::int64_t seed : seeds) {
                add("order-consistency", seed, [x, seed, grid, tol](Params& p) {
                    const Generator gen = suite_gen(seed);
                    const double r = x / gen.q().real();
                    const double theta = 0.2;
                    const TheoreticalOrders th = theoretical_orders(x, theta);
                    const SFieldStats st = s_field(gen, r, grid, tol, theta, 0.0);
                    const double m1 = st.min_re - th.starlike_order;
                    const double m2 = std::asin(th.amplitude) - st.max_abs_arg;
                    const double m3 = st.min_spiral - *th.spirallike_order;
                    put(p, "x", x);
                    put(p, "starlike_order", th.starlike_order);
                    put(p, "strong_order", th.strong_order);
                    put(p, "spirallike_order", *th.spirallike_order);
                    put(p, "theta", theta);
                    put(p, "min_re_s", st.min_re);
                    put(p, "max_abs_arg_s", st.max_abs_arg);
                    put(p, "min_spiral", st.min_spiral);
                    return std::min({m1, m2, m3});
                });
            }
        }
    }

    sweep("half-plane", cfg.xs_containment,
          [grid, tol](const Generator& gen, double r, double x, Params& p) {
              (void)x;
              return check_half_plane(gen, r, grid, tol);
          });

    add("order-calibration", 0, [grid](Params& p) {
        const StarlikeReference ref = make_starlike_reference(0.5, {{0.0, 1.0}});
        const OrderEstimate est = estimate_orders(reference_evaluator(ref), grid);
        put(p, "family", std::string("half-plane-map"));
        put(p, "starlike_order", est.starlike_order);
        put(p, "strong_order", est.strong_order);
        return 1e-3 - std::abs(est.starlike_order - 0.5);
    });
    add("order-calibration", 0, [grid, tol](Params& p) {
        const Generator gen = Generator::herglotz(make_herglotz({{0.0, 1.0}}));
        const OrderEstimate est = estimate_orders(resolvent_evaluator(gen, 1.0, tol), grid);
        put(p, "family", std::string("unit-atom-resolvent"));
        put(p, "starlike_order", est.starlike_order);
        put(p, "strong_order", est.strong_order);
        return std::min(1e-3 - std::abs(est.starlike_order - 2.0 / 3.0),
                        1e-3 - std::abs(est.strong_order - 1.0 / 3.0));
    });

    add("expo-accuracy", 0, [tol](Params& p) {
        const Generator gen = Generator::herglotz(make_herglotz({{0.0, 1.0}}));
        double err = 0.0;
        for (const Complex z : disk_points(777, 100, 0.9))
            err = std::max(err,
                           std::abs(exponential_formula(gen, 1.0, z, 256, tol) - cusp_flow(1.0, z)));
        put(p, "n", 256);
        put(p, "max_err", err);
        return 1e-2 - err;
    });

    add("expo-trend", 0, [tol](Params& p) {
        const Generator gen = Generator::herglotz(make_herglotz({{0.0, 1.0}}));
        const auto pts = disk_points(777, 100, 0.9);
        const int ns[6] = {16, 32, 64, 128, 256, 512};
        double errs[6];
        for (int k = 0; k < 6; ++k) {
            double err = 0.0;
            for (const Complex z : pts)
                err = std::max(err, std::abs(exponential_formula(gen, 1.0, z, ns[k], tol) -
                                             cusp_flow(1.0, z)));
            errs[k] = err;
            put(p, "err_" + std::to_string(ns[k]), err);
        }
        double margin = errs[0] - errs[5];
        for (int k = 0; k + 1 < 6; ++k) margin = std::min(margin, 1.1 * errs[k] - errs[k + 1]);
        return margin;
    });

    add("squeeze-iff-pass", 0, [](Params& p) {
        const Generator gen = Generator::omega(1.0, 0.6, 1);
        const double kappa = 0.999 * 0.25;
        std::vector<std::pair<double, Complex>> samples;
        for (const double t : {0.5, 2.0, 10.0, 30.0})
            for (const Complex z : {Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(-0.7, 0.0),
                                    std::polar(0.8, 2.0)})
                samples.push_back({t, z});
        const SqueezeCertificate cert = squeezing_margin(gen, kappa, samples);
        put(p, "kappa", kappa);
        put(p, "worst_ratio", cert.worst_ratio);
        put(p, "min_re_p", cert.min_re_p);
        return std::min(1.0 - cert.worst_ratio, cert.min_re_p - kappa);
    });

    add("squeeze-iff-fail", 0, [](Params& p) {
        const Generator gen = Generator::herglotz(make_herglotz({{2.0, 1.0}}));
        const double kappa = 0.1;
        const Complex zeta = std::polar(1.0, 2.0);
        std::vector<std::pair<double, Complex>> samples;
        for (const double t : {2.0, 5.0, 10.0, 20.0, 50.0})
            for (const double m : {0.995, 0.9, 0.5}) samples.push_back({t, -m * zeta});
        const SqueezeCertificate cert = squeezing_margin(gen, kappa, samples);
        put(p, "kappa", kappa);
        put(p, "worst_ratio", cert.worst_ratio);
        put(p, "min_re_p", cert.min_re_p);
        // A rate above inf Re p + 0.05 must be caught violating the decay bound.
        return std::min(cert.worst_ratio - 1.0, kappa - 0.05 - cert.min_re_p);
    });

    add("squeeze-kappa", 0, [](Params& p) {
        const double x = 10.0;
        const double a = amplitude(x);
        const double g = (1.0 - a) / (1.0 + a);
        const Complex b = 1.0 + 10.0 * Complex(1.0, 0.0);
        const double kappa = std::pow(std::pow(b, 1.0 / g).real(), g) /
                             (std::pow(2.0, 1.0 - g) * std::norm(b));
        const double kappa_real = 1.0 / (std::pow(2.0, 1.0 - g) * (1.0 + x));
        const Complex b2 = 1.0 + 12.0 * Complex(1.0, 0.5);
        const double g2 = [&] {
            const double a2 = amplitude(12.0);
            return (1.0 - a2) / (1.0 + a2);
        }();
        const double kappa2 = std::pow(std::pow(b2, 1.0 / g2).real(), g2) /
                              (std::pow(2.0, 1.0 - g2) * std::norm(b2));
        put(p, "x", x);
        put(p, "gamma", g);
        put(p, "kappa", kappa);
        put(p, "kappa_real_q", kappa_real);
        put(p, "kappa_tilted_x12", kappa2);
        return std::min({1e-12 - std::abs(kappa - kappa_real),
                         1e-5 - std::abs(kappa - 0.0553480),
                         1e-5 - std::abs(g - 0.2841660)});
    });

    {
        struct SqueezeConfig {
            const char* name;
            Complex q;
            double r;
        };
        static const SqueezeConfig configs[2] = {{"axis", {1.0, 0.0}, 10.0},
                                                 {"tilted", {1.0, 0.5}, 12.0}};
        for (const auto& sc : configs) {
            for (const std::int64_t seed : take(cfg.seeds, 3)) {
                add("resolvent-squeeze", seed, [sc, seed, tol](Params& p) {
                    const Generator gen = sample_generator(static_cast<std::uint64_t>(seed),
                                                           suite_atoms(seed), sc.q);
                    std::mt19937_64 rng(9000 + static_cast<std::uint64_t>(seed));
                    std::vector<std::pair<double, Complex>> samples;
                    for (int i = 0; i < 100; ++i) {
                        const double t = 0.05 + 19.95 * u01(rng);
                        const double rad = 0.05 + 0.9 * u01(rng);
                        samples.push_back({t, std::polar(rad, 2.0 * kPi * u01(rng))});
                    }
                    const ResolventSemigroupReport rep =
                        resolvent_semigroup_check(gen, sc.r, samples, {}, tol);
                    const bool escaped = rep.ray_plus.escaped || rep.ray_minus.escaped;
                    const double ray_margin =
                        escaped ? -1.0
                                : 0.999 - std::max(rep.ray_plus.max_abs, rep.ray_minus.max_abs);
                    put(p, "config", std::string(sc.name));
                    put(p, "x", rep.x);
                    put(p, "kappa", rep.kappa);
                    put(p, "squeeze_exponent", rep.squeeze_exponent);
                    put(p, "worst_ratio", rep.squeeze.worst_ratio);
                    put(p, "min_re_ratio", rep.min_re_p);
                    put(p, "boundary_min_abs", rep.boundary_min_abs);
                    put(p, "ray_plus_angle", rep.ray_plus.angle);
                    put(p, "ray_minus_angle", rep.ray_minus.angle);
                    put(p, "ray_max_abs",
                        std::max(rep.ray_plus.max_abs, rep.ray_minus.max_abs));
                    put(p, "ray_outside_plus_escaped",
                        std::string(rep.ray_outside_plus.escaped ? "true" : "false"));
                    put(p, "ray_outside_minus_escaped",
                        std::string(rep.ray_outside_minus.escaped ? "true" : "false"));
                    put(p, "ray_outside_max_abs",
                        std::max(rep.ray_outside_plus.max_abs, rep.ray_outside_minus.max_abs));
                    return std::min({1.0 - rep.squeeze.worst_ratio, ray_margin, rep.min_re_p,
                                     rep.boundary_min_abs});
                });
            }
        }
        for (const auto& sc : configs) {
            for (const std::int64_t seed : take(cfg.seeds, 2)) {
                add("resolvent-uniform", seed, [sc, seed, tol](Params& p) {
                    const Generator gen = sample_generator(static_cast<std::uint64_t>(seed),
                                                           suite_atoms(seed), sc.q);
                    const double x = sc.r * sc.q.real();
                    const double a = amplitude(x);
                    const double g = (1.0 - a) / (1.0 + a);
                    const Complex b = 1.0 + sc.r * sc.q;
                    const double kappa = std::pow(std::pow(b, 1.0 / g).real(), g) /
                                         (std::pow(2.0, 1.0 - g) * std::norm(b));
                    const double horizon = 3.0 / kappa;
                    const VectorField field = [&gen, &sc, tol](Complex u) {
                        return solve_resolvent(gen, sc.r, u, tol).w;
                    };
                    double worst = 0.0;
                    for (int j = 0; j < 16; ++j) {
                        const Complex z = std::polar(1.0 - 1e-3, 2.0 * kPi * j / 16.0);
                        worst = std::max(worst, std::abs(flow_field(field, horizon, z)));
                    }
                    put(p, "config", std::string(sc.name));
                    put(p, "x", x);
                    put(p, "kappa", kappa);
                    put(p, "horizon", horizon);
                    put(p, "max_terminal_abs", worst);
                    return 0.05 - worst;
                });
            }
        }
    }

    add("sector-generator", 0, [grid](Params& p) {
        const Generator gen = Generator::omega(std::polar(1.0, kPi / 4.0), 0.0, 1);
        const SectorEstimate est = sector_estimate(gen, grid);
        const double est_margin = 1e-9 - std::max(std::abs(est.alpha_max - kPi / 2.0),
                                                  std::abs(est.beta_max - kPi / 4.0));
        double ray_margin = 1.0;
        for (const double phi : {-(est.alpha_max - 0.05), est.beta_max - 0.05}) {
            for (int k = 0; k < 4; ++k) {
                try {
                    const Complex u =
                        flow(gen, std::polar(10.0, phi), std::polar(0.9, kPi * k / 2.0));
                    ray_margin = std::min(ray_margin, 0.999 - std::abs(u));
                } catch (const DomainEscape&) {
                    ray_margin = -1.0;
                }
            }
        }
        put(p, "family", std::string("rotated-linear"));
        put(p, "alpha_max", est.alpha_max);
        put(p, "beta_max", est.beta_max);
        return std::min(est_margin, ray_margin);
    });
    add("sector-generator", 0, [grid](Params& p) {
        const Generator gen = Generator::omega(std::polar(1.0, kPi / 4.0), 0.5, 2);
        const SectorEstimate est = sector_estimate(gen, grid);
        put(p, "family", std::string("tilted-disk"));
        put(p, "alpha_max", est.alpha_max);
        put(p, "beta_max", est.beta_max);
        if (std::min(est.alpha_max, est.beta_max) < 0.06)
            return std::min(est.alpha_max, est.beta_max) - 0.06;
        double ray_margin = 1.0;
        for (const double phi : {-(est.alpha_max - 0.05), est.beta_max - 0.05}) {
            for (int k = 0; k < 4; ++k) {
                try {
                    const Complex u =
                        flow(gen, std::polar(10.0, phi), std::polar(0.9, kPi * k / 2.0));
                    ray_margin = std::min(ray_margin, 0.999 - std::abs(u));
                } catch (const DomainEscape&) {
                    ray_margin = -1.0;
                }
            }
        }
        return ray_margin;
    });

    for (const std::int64_t seed : take(cfg.seeds, 5)) {
        add("normalized-limit", seed, [seed, tol](Params& p) {
            const Generator gen = suite_gen(seed);
            const Complex q = gen.q();
            const Grid coarse{16, 64, 0.9};
            const double rs[4] = {10.0, 100.0, 1000.0, 10000.0};
            double ds[4];
            for (int k = 0; k < 4; ++k) {
                double d = 0.0;
                for (int i = 0; i < coarse.radius_count; ++i) {
                    for (int j = 0; j < coarse.angle_count; ++j) {
                        const Complex z = coarse.node(i, j);
                        const Complex w = solve_resolvent(gen, rs[k], z, tol).w;
                        d = std::max(d, std::abs((1.0 + rs[k] * q) * w - z));
                    }
                }
                ds[k] = d;
                put(p, "dev_r" + std::to_string(static_cast<int>(rs[k])), d);
            }
            double margin = 1e-3 - ds[3];
            for (int k = 0; k + 1 < 4; ++k) margin = std::min(margin, ds[k] - ds[k + 1]);
            return margin;
        });
    }

    for (int fam = 0; fam < 3; ++fam) {
        add("semigroup-law", fam, [fam](Params& p) {
            const Generator gen = fam == 0
                                      ? Generator::herglotz(make_herglotz({{0.0, 1.0}}))
                                      : suite_gen(fam);
            std::mt19937_64 rng(4242 + static_cast<std::uint64_t>(fam));
            double max_diff = 0.0;
            for (int i = 0; i < 20; ++i) {
                const double t = 0.1 + 4.9 * u01(rng);
                const double s = 0.1 + 4.9 * u01(rng);
                const Complex z = std::polar(0.85 * u01(rng), 2.0 * kPi * u01(rng));
                const Complex once = flow(gen, t + s, z);
                const Complex twice = flow(gen, t, flow(gen, s, z));
                max_diff = std::max(max_diff, std::abs(once - twice));
            }
            put(p, "family", fam == 0 ? std::string("atom-axis")
                                      : "sampled-" + std::to_string(fam));
            put(p, "max_diff", max_diff);
            return 1e-8 - max_diff;
        });
    }

    for (int which = 0; which < 2; ++which) {
        add("trivial-flow", which, [which](Params& p) {
            const Complex q = which == 0 ? Complex(1.0, 0.0) : std::polar(1.0, kPi / 4.0);
            const Generator gen = Generator::omega(q, 0.0, 1);
            double max_diff = 0.0;
            for (const double phi : {0.0, 0.7, -0.7}) {
                const Complex t = std::polar(5.0, phi);
                for (int k = 0; k < 4; ++k) {
                    const Complex z = std::polar(0.9, kPi * k / 2.0 + 0.3);
                    const Complex u = flow(gen, t, z);
                    max_diff = std::max(max_diff, std::abs(u - z * std::exp(-q * t)));
                }
            }
            put(p, "q_re", q.real());
            put(p, "q_im", q.imag());
            put(p, "max_diff", max_diff);
            return 1e-8 - max_diff;
        });
    }

    return jobs;
}

} // namespace

Generator sample_generator(std::uint64_t seed, int n_atoms, Complex q) {
    if (n_atoms < 1) throw BadOrder("a sampled generator needs at least one atom");
    if (!(q.real() > 0.0)) throw BadQ("sampled generators need Re q > 0");
    std::mt19937_64 rng(seed);
    std::vector<BoundaryAtom> atoms(n_atoms);
    for (auto& a : atoms) a.angle = 2.0 * kPi * u01(rng);
    double sum = 0.0;
    std::vector<double> weights(n_atoms);
    for (auto& w : weights) {
        w = std::max(-std::log1p(-u01(rng)), 1e-12);
        sum += w;
    }
    for (int i = 0; i < n_atoms; ++i) atoms[i].mass = q.real() * weights[i] / sum;
    return Generator::herglotz(make_herglotz(atoms, q.imag()));
}

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> ids = {
        "r0",           "class-radii-unit", "resolvent-oracle",  "distortion",
        "shrink",       "covering-extended", "covering-disk",    "containment",
        "starlike-half", "order-bound",      "order-consistency", "half-plane",
        "order-calibration", "expo-accuracy", "expo-trend",      "squeeze-iff-pass",
        "squeeze-iff-fail", "squeeze-kappa", "resolvent-squeeze", "resolvent-uniform",
        "sector-generator", "normalized-limit", "semigroup-law", "trivial-flow"};
    return ids;
}

std::vector<VerificationReport> run_suite(const SuiteConfig& config) {
    std::set<std::string> want;
    if (config.checks.empty()) {
        want.insert(known_checks().begin(), known_checks().end());
    } else {
        const auto& known = known_checks();
        for (const std::string& id : config.checks) {
            if (std::find(known.begin(), known.end(), id) == known.end())
                throw Error("unknown check id \"" + id + "\"");
            want.insert(id);
        }
    }
    std::vector<Job> jobs = build_jobs(config, want);
    std::vector<VerificationReport> reports(jobs.size());
    const auto run_one = [&](std::size_t i) {
        const Job& job = jobs[i];
        VerificationReport rep;
        rep.check_id = job.check_id;
        rep.seed = job.seed;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            rep.margin = job.body(rep.parameters);
        } catch (const std::exception& e) {
            rep.margin = -1e300;
            rep.parameters["error"] = e.what();
        }
        rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        rep.pass = rep.margin >= -1e-8;
        reports[i] = std::move(rep);
    };
    const int workers =
        std::max(1, std::min<int>(worker_count(config.threads), static_cast<int>(jobs.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
                    run_one(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    return reports;
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["check_id"] = report.check_id;
    j["seed"] = report.seed;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.parameters) params[k] = v;
    j["parameters"] = std::move(params);
    j["margin"] = report.margin;
    j["pass"] = report.pass;
    j["runtime_ms"] = report.runtime_ms;
    return j.dump();
}

VerificationReport report_from_json(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("bad report JSON: ") + e.what());
    }
    VerificationReport rep;
    rep.check_id = j.at("check_id").get<std::string>();
    rep.seed = j.at("seed").get<std::int64_t>();
    if (j.contains("parameters"))
        for (const auto& [k, v] : j.at("parameters").items())
            rep.parameters[k] = v.get<std::string>();
    rep.margin = j.at("margin").get<double>();
    rep.pass = j.at("pass").get<bool>();
    rep.runtime_ms = j.value("runtime_ms", std::int64_t(0));
    return rep;
}

void write_json_lines(std::ostream& out, const std::vector<VerificationReport>& reports) {
    for (const auto& rep : reports) out << report_to_json(rep) << "\n";
}

void write_csv_summary(std::ostream& out, const std::vector<VerificationReport>& reports) {
    out << "check_id,seed,x,margin,pass\n";
    for (const auto& rep : reports) {
        const auto it = rep.parameters.find("x");
        out << rep.check_id << "," << rep.seed << ","
            << (it == rep.parameters.end() ? "" : it->second) << "," << format_double(rep.margin)
            << "," << (rep.pass ? "true" : "false") << "\n";
    }
}

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RESOLVENT_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace resolvent_lab
