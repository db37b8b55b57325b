#include <cmath>
#include <complex>

#include "doctest.h"

#include "resolvent_lab/errors.hpp"
#include "resolvent_lab/geometry.hpp"
#include "resolvent_lab/grid.hpp"
#include "resolvent_lab/semigroup.hpp"
#include "resolvent_lab/verify.hpp"

namespace rl = resolvent_lab;
using rl::Complex;

namespace {
const double kPi = std::acos(-1.0);

double dist(Complex a, Complex b) { return std::abs(a - b); }

// Root of c u^2 + (2c - 1) u + c = 0 inside the disk, c = e^{-t} z/(1+z)^2:
// the conserved quantity of the flow of f(z) = z (1+z)/(1-z).
Complex cusp_flow(double t, Complex z) {
    const Complex c = std::exp(-t) * z / ((1.0 + z) * (1.0 + z));
    const Complex b = 2.0 * c - 1.0;
    const Complex d = std::sqrt(b * b - 4.0 * c * c);
    const Complex s = (std::real(std::conj(b) * d) >= 0.0) ? d : -d;
    const Complex big = (-b - s) / (2.0 * c);
    return 1.0 / big;  // the two roots multiply to 1
}
} // namespace

TEST_CASE("linear generator flows exponentially") {
    const Complex q(2.0, 1.0);
    const auto gen = rl::Generator::omega(q, 0.0, 1);
    const Complex z(0.5, -0.2);

    const Complex u = rl::flow(gen, 1.5, z);
    CHECK(dist(u, z * std::exp(-q * 1.5)) < 1e-9);

    // complex time along a ray
    const Complex t = std::polar(2.0, kPi / 3.0);
    CHECK(dist(rl::flow(gen, t, z), z * std::exp(-q * t)) < 1e-9);

    // zero time is the identity
    CHECK(dist(rl::flow(gen, 0.0, z), z) == 0.0);
}

TEST_CASE("one-atom flow matches its conserved quantity") {
    const auto gen = rl::Generator::herglotz(rl::make_herglotz({{0.0, 1.0}}));
    for (const double t : {0.3, 1.0, 2.5}) {
        for (const Complex z : {Complex(0.5, 0.0), Complex(0.2, 0.4), Complex(-0.3, 0.1)}) {
            const Complex expected = cusp_flow(t, z);
            CHECK(dist(rl::flow(gen, t, z), expected) < 1e-8);
        }
    }
    // frozen spot value
    CHECK(dist(rl::flow(gen, 1.0, 0.5), Complex(0.0986817452778563, 0.0)) < 1e-8);
}

TEST_CASE("flows compose as a semigroup") {
    const auto gen = rl::sample_generator(2, 3, Complex(1.0, 0.3));
    const Complex z(0.5, -0.3);
    const double t = 0.7, s = 1.3;
    const Complex once = rl::flow(gen, t + s, z);
    const Complex twice = rl::flow(gen, t, rl::flow(gen, s, z));
    CHECK(dist(once, twice) < 1e-8);
}

TEST_CASE("trajectories sample the ray uniformly") {
    const auto gen = rl::Generator::omega(1.0, 0.0, 1);
    const rl::VectorField g = [&gen](Complex u) { return gen.f(u).value; };
    const Complex t = std::polar(2.0, 0.4);
    const rl::Trajectory traj = rl::sample_trajectory(g, t, 0.5, 4, {}, "linear");
    CHECK(traj.generator_id == "linear");
    CHECK(traj.ray_angle == doctest::Approx(0.4));
    REQUIRE(traj.samples.size() == 5);
    CHECK(traj.samples.front().first == 0.0);
    CHECK(dist(traj.samples.front().second, 0.5) == 0.0);
    CHECK(traj.samples.back().first == doctest::Approx(2.0));
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& [s, u] = traj.samples[i];
        CHECK(s == doctest::Approx(2.0 * i / 4.0));
        CHECK(dist(u, 0.5 * std::exp(-std::polar(1.0, 0.4) * s)) < 1e-9);
    }
    CHECK_THROWS_AS(rl::sample_trajectory(g, t, 0.5, 0), rl::BadOrder);
}

TEST_CASE("an outward field escapes the disk") {
    const rl::VectorField outward = [](Complex u) { return -u; };  // du/ds = +u
    CHECK_THROWS_AS(rl::flow_field(outward, 1.0, 0.5), rl::DomainEscape);
    // short time stays inside
    CHECK(dist(rl::flow_field(outward, 0.5, 0.5), 0.5 * std::exp(0.5)) < 1e-9);
}

TEST_CASE("exponential formula for the linear generator") {
    const auto gen = rl::Generator::omega(1.0, 0.0, 1);
    const Complex z(0.5, 0.0);

    const Complex u100 = rl::exponential_formula(gen, 1.0, z, 100);
    CHECK(dist(u100, z / std::pow(1.01, 100.0)) < 1e-10);

    const Complex exact = z * std::exp(-1.0);
    const double err100 = std::abs(u100 - exact);
    const double err10 = std::abs(rl::exponential_formula(gen, 1.0, z, 10) - exact);
    CHECK(err100 < 1e-2);
    CHECK(err10 > err100);

    CHECK_THROWS_AS(rl::exponential_formula(gen, 0.0, z, 10), rl::OutsideDomain);
    CHECK_THROWS_AS(rl::exponential_formula(gen, 1.0, z, 0), rl::BadOrder);
}

TEST_CASE("squeezing certificate for the linear generator") {
    const auto gen = rl::Generator::omega(1.0, 0.0, 1);
    const std::vector<std::pair<double, Complex>> samples{
        {1.0, Complex(0.5, 0.0)}, {2.0, Complex(0.3, 0.1)}, {0.5, Complex(0.0, -0.4)}};

    const rl::SqueezeCertificate good = rl::squeezing_margin(gen, 0.9, samples);
    CHECK(good.pass);
    CHECK(good.worst_ratio <= 1.0 + 1e-8);
    CHECK(good.min_re_p == doctest::Approx(1.0).epsilon(1e-12));

    const rl::SqueezeCertificate bad = rl::squeezing_margin(gen, 1.2, samples);
    CHECK_FALSE(bad.pass);
    CHECK(bad.worst_ratio > 1.0);

    CHECK_THROWS_AS(rl::squeezing_margin(gen, 0.0, samples), rl::BadOrder);
    CHECK_THROWS_AS(rl::squeezing_margin(gen, 0.5, {{-1.0, Complex(0.5, 0.0)}}),
                    rl::OutsideDomain);
    CHECK_THROWS_AS(rl::squeezing_margin(gen, 0.5, {{1.0, Complex(0.0, 0.0)}}),
                    rl::OutsideDomain);
}

TEST_CASE("sector estimates from the argument of p") {
    const rl::Grid grid{16, 64, 0.999};

    // constant p = e^{i pi/4}: one side clamps at pi/2, the other is pi/4
    const auto tilted = rl::Generator::omega(std::polar(1.0, kPi / 4.0), 0.0, 1);
    const rl::SectorEstimate a = rl::sector_estimate(tilted, grid);
    CHECK(a.alpha_max == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(a.beta_max == doctest::Approx(kPi / 4.0).epsilon(1e-12));

    const auto mirrored = rl::Generator::omega(std::polar(1.0, -kPi / 4.0), 0.0, 1);
    const rl::SectorEstimate b = rl::sector_estimate(mirrored, grid);
    CHECK(b.alpha_max == doctest::Approx(kPi / 4.0).epsilon(1e-12));
    CHECK(b.beta_max == doctest::Approx(kPi / 2.0).epsilon(1e-12));

    // one real atom: symmetric sector, thin but nonempty at this grid radius
    const auto atom = rl::Generator::herglotz(rl::make_herglotz({{0.0, 1.0}}));
    const rl::SectorEstimate c = rl::sector_estimate(atom, grid);
    CHECK(c.alpha_max == doctest::Approx(c.beta_max).epsilon(1e-10));
    CHECK(c.alpha_max > 0.0);
    CHECK(c.alpha_max < 0.1);
}

TEST_CASE("resolvent semigroup diagnostics on the axis") {
    const auto gen = rl::Generator::omega(1.0, 0.0, 1);
    const std::vector<std::pair<double, Complex>> samples{
        {1.0, Complex(0.5, 0.0)}, {5.0, Complex(0.2, 0.3)}, {15.0, Complex(-0.4, 0.1)}};
    const rl::ResolventSemigroupReport rep = rl::resolvent_semigroup_check(gen, 10.0, samples);

    CHECK(rep.x == doctest::Approx(10.0));
    CHECK(rep.squeeze_exponent == doctest::Approx(131.0 / 461.0).epsilon(1e-12));
    CHECK(rep.kappa == doctest::Approx(rep.kappa_real_q).epsilon(1e-10));
    CHECK(rep.squeeze.pass);
    // the linear resolvent has G/z identically 1/(1 + r q) = 1/11
    CHECK(rep.min_re_p == doctest::Approx(1.0 / 11.0).epsilon(1e-10));

    CHECK_FALSE(rep.ray_plus.escaped);
    CHECK_FALSE(rep.ray_minus.escaped);
    CHECK(rep.ray_plus.max_abs < 1.0);
    CHECK(rep.boundary_min_abs > 0.05);
}

TEST_CASE("resolvent semigroup guards") {
    const auto gen = rl::Generator::omega(1.0, 0.0, 1);
    CHECK_THROWS_AS(rl::resolvent_semigroup_check(gen, 5.0, {}), rl::BelowThreshold);

    // arg(1 + r q)/g exceeds pi/2 here, so the closed-form rate has no branch
    const auto tilted = rl::Generator::omega(Complex(1.0, 0.5), 0.0, 1);
    CHECK_THROWS_AS(rl::resolvent_semigroup_check(tilted, 8.0, {}), rl::BranchAmbiguous);
}
