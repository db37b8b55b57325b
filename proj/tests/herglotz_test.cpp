#include <cmath>
#include <complex>

#include "doctest.h"

#include "resolvent_lab/errors.hpp"
#include "resolvent_lab/herglotz.hpp"
#include "resolvent_lab/verify.hpp"

namespace rl = resolvent_lab;
using rl::Complex;

namespace {
const double kPi = std::acos(-1.0);

double dist(Complex a, Complex b) { return std::abs(a - b); }
} // namespace

TEST_CASE("single boundary atom at 1") {
    const auto gen = rl::Generator::herglotz(rl::make_herglotz({{0.0, 1.0}}));
    CHECK(dist(gen.q(), 1.0) == 0.0);

    // p(z) = (1+z)/(1-z), p'(z) = 2/(1-z)^2
    const rl::Eval p = gen.p(0.5);
    CHECK(dist(p.value, 3.0) < 1e-14);
    CHECK(dist(p.deriv, 8.0) < 1e-14);

    // f = z p, f' = p + z p'
    const rl::Eval f = gen.f(0.5);
    CHECK(dist(f.value, 1.5) < 1e-14);
    CHECK(dist(f.deriv, 7.0) < 1e-14);
}

TEST_CASE("two symmetric atoms cancel the odd part") {
    const auto gen = rl::Generator::herglotz(rl::make_herglotz({{0.0, 0.5}, {kPi, 0.5}}));
    CHECK(dist(gen.q(), 1.0) < 1e-15);
    const rl::Eval p = gen.p(Complex(0.0, 0.5));
    CHECK(dist(p.value, 0.6) < 1e-14);
}

TEST_CASE("gamma shifts p by a constant imaginary part") {
    const auto base = rl::Generator::herglotz(rl::make_herglotz({{1.2, 0.7}}));
    const auto shifted = rl::Generator::herglotz(rl::make_herglotz({{1.2, 0.7}}, 0.25));
    const Complex z(0.3, -0.4);
    CHECK(dist(shifted.p(z).value, base.p(z).value + Complex(0.0, 0.25)) < 1e-14);
    CHECK(dist(shifted.p(z).deriv, base.p(z).deriv) < 1e-14);
    CHECK(dist(shifted.q(), Complex(0.7, 0.25)) < 1e-15);
}

TEST_CASE("one atom equals the moebius form") {
    const double angle = 0.7;
    const double mass = 0.8;
    const auto atomic = rl::Generator::herglotz(rl::make_herglotz({{angle, mass}}));
    const auto moebius = rl::Generator::omega(mass, std::polar(1.0, -angle), 1);
    for (const Complex z : {Complex(0.4, 0.1), Complex(-0.2, 0.6), Complex(0.0, -0.85)}) {
        CHECK(dist(atomic.p(z).value, moebius.p(z).value) < 1e-13);
        CHECK(dist(atomic.p(z).deriv, moebius.p(z).deriv) < 1e-13);
        CHECK(dist(atomic.f(z).value, moebius.f(z).value) < 1e-13);
        CHECK(dist(atomic.f(z).deriv, moebius.f(z).deriv) < 1e-13);
    }
}

TEST_CASE("even inner map gives an even p") {
    const auto gen = rl::Generator::omega(1.0, 0.9, 2);
    const Complex z(0.3, 0.22);
    CHECK(dist(gen.p(z).value, gen.p(-z).value) < 1e-14);
    CHECK(dist(gen.p(z).deriv, -gen.p(-z).deriv) < 1e-14);
}

TEST_CASE("derivatives match central differences") {
    const auto gen = rl::sample_generator(3, 3, Complex(1.0, 0.2));
    const Complex z(0.4, 0.1);
    const double h = 1e-6;
    const Complex dp = (gen.p(z + h).value - gen.p(z - h).value) / (2.0 * h);
    const Complex df = (gen.f(z + h).value - gen.f(z - h).value) / (2.0 * h);
    CHECK(dist(gen.p(z).deriv, dp) < 1e-6);
    CHECK(dist(gen.f(z).deriv, df) < 1e-6);

    // same along the imaginary direction: the derivative is complex-linear
    const Complex ih(0.0, h);
    const Complex dpi = (gen.p(z + ih).value - gen.p(z - ih).value) / (2.0 * ih);
    CHECK(dist(gen.p(z).deriv, dpi) < 1e-6);
}

TEST_CASE("rotating every atom rotates the argument") {
    const double theta = 0.9;
    const auto base = rl::Generator::herglotz(rl::make_herglotz({{0.4, 0.6}, {2.2, 0.9}}));
    const auto rotated =
        rl::Generator::herglotz(rl::make_herglotz({{0.4 + theta, 0.6}, {2.2 + theta, 0.9}}));
    const Complex z(0.3, -0.2);
    const Complex spin = std::polar(1.0, -theta);
    CHECK(dist(rotated.p(z).value, base.p(z * spin).value) < 1e-13);
}

TEST_CASE("construction rejects bad measures") {
    CHECK_THROWS_AS(rl::make_herglotz({}), rl::EmptyMeasure);
    CHECK_THROWS_AS(rl::make_herglotz({{0.0, -1.0}}), rl::NegativeMass);
    CHECK_THROWS_AS(rl::Generator::omega(Complex(0.0, 1.0), 0.5, 1), rl::BadQ);
    CHECK_THROWS_AS(rl::Generator::omega(1.0, Complex(1.2, 0.0), 1), rl::OutsideDisk);
    CHECK_THROWS_AS(rl::Generator::omega(1.0, 0.5, 0), rl::BadOrder);
}

TEST_CASE("evaluation stays inside the open disk") {
    const auto gen = rl::Generator::herglotz(rl::make_herglotz({{0.0, 1.0}}));
    CHECK_THROWS_AS(gen.p(Complex(1.0, 0.0)), rl::OutsideDisk);
    CHECK_THROWS_AS(gen.f(Complex(0.8, 0.8)), rl::OutsideDisk);
}

TEST_CASE("starlike reference of order one half is the half-plane map") {
    const rl::StarlikeReference ref = rl::make_starlike_reference(0.5, {{0.0, 1.0}});
    // h(z) = z/(1-z), h'(z) = 1/(1-z)^2
    const rl::Eval e = ref.eval(0.5);
    CHECK(dist(e.value, 1.0) < 1e-14);
    CHECK(dist(e.deriv, 4.0) < 1e-14);
    const rl::Eval e2 = ref.eval(Complex(0.2, -0.3));
    const Complex expected = Complex(0.2, -0.3) / (1.0 - Complex(0.2, -0.3));
    CHECK(dist(e2.value, expected) < 1e-14);
}

TEST_CASE("starlike reference validates its inputs") {
    CHECK_THROWS_AS(rl::make_starlike_reference(0.0, {{0.0, 1.0}}), rl::BadOrder);
    CHECK_THROWS_AS(rl::make_starlike_reference(1.0, {{0.0, 1.0}}), rl::BadOrder);
    CHECK_THROWS_AS(rl::make_starlike_reference(0.5, {}), rl::EmptyMeasure);
    CHECK_THROWS_AS(rl::make_starlike_reference(0.5, {{0.0, 0.7}}), rl::NotProbability);
}

TEST_CASE("sampled generators are deterministic and normalized") {
    const Complex q(1.3, -0.4);
    const auto a = rl::sample_generator(11, 4, q);
    const auto b = rl::sample_generator(11, 4, q);
    REQUIRE(a.is_herglotz_form());
    const auto& pa = a.herglotz_form();
    const auto& pb = b.herglotz_form();
    REQUIRE(pa.atoms().size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(pa.atoms()[k].angle == pb.atoms()[k].angle);
        CHECK(pa.atoms()[k].mass == pb.atoms()[k].mass);
    }
    double total = 0.0;
    for (const auto& atom : pa.atoms()) total += atom.mass;
    CHECK(std::abs(total - q.real()) < 1e-12);
    CHECK(pa.gamma() == q.imag());
    CHECK(dist(a.q(), q) < 1e-12);

    const auto c = rl::sample_generator(12, 4, q);
    CHECK(pa.atoms()[0].angle != c.herglotz_form().atoms()[0].angle);

    CHECK_THROWS_AS(rl::sample_generator(1, 0, q), rl::BadOrder);
    CHECK_THROWS_AS(rl::sample_generator(1, 2, Complex(0.0, 1.0)), rl::BadQ);
}
