#include "resolvent_lab/herglotz.hpp"

#include <cmath>
#include <utility>

namespace resolvent_lab {

namespace {

void require_inside_disk(Complex z) {
    if (std::abs(z) >= 1.0)
        throw OutsideDisk("evaluation point |z| >= 1: |z| = " + std::to_string(std::abs(z)));
}

} // namespace

HerglotzFn::HerglotzFn(std::vector<BoundaryAtom> atoms, double gamma)
    : atoms_(std::move(atoms)), gamma_(gamma) {
    if (atoms_.empty())
        throw EmptyMeasure("a Herglotz function needs at least one boundary atom");
    double total = 0.0;
    for (const auto& atom : atoms_) {
        if (!(atom.mass > 0.0))
            throw NegativeMass("atom masses must be positive, got " + std::to_string(atom.mass));
        total += atom.mass;
    }
    q_ = Complex(total, gamma_);
}

Eval HerglotzFn::eval(Complex z) const {
    require_inside_disk(z);
    Complex value(0.0, gamma_);
    Complex deriv(0.0, 0.0);
    for (const auto& atom : atoms_) {
        const Complex cbar = std::polar(1.0, -atom.angle);
        const Complex den = 1.0 - z * cbar;
        value += atom.mass * (1.0 + z * cbar) / den;
        deriv += atom.mass * 2.0 * cbar / (den * den);
    }
    return {value, deriv};
}

HerglotzFn make_herglotz(std::vector<BoundaryAtom> atoms, double gamma) {
    return HerglotzFn(std::move(atoms), gamma);
}

Generator Generator::herglotz(HerglotzFn p) {
    const Complex q = p.value_at_zero();
    return Generator(std::variant<HerglotzFn, OmegaForm>(std::move(p)), q);
}

Generator Generator::omega(Complex q, Complex c, int m) {
    if (!(q.real() > 0.0))
        throw BadQ("the value at zero must have positive real part");
    if (std::abs(c) > 1.0)
        throw OutsideDisk("|c| > 1 pushes the inner map outside the disk");
    if (m < 1)
        throw BadOrder("the inner-map power must be a positive integer");
    return Generator(std::variant<HerglotzFn, OmegaForm>(OmegaForm{q, c, m}), q);
}

namespace {

Complex int_pow(Complex z, int m) {
    Complex acc(1.0, 0.0);
    for (int i = 0; i < m; ++i) acc *= z;
    return acc;
}

} // namespace

Eval Generator::p(Complex z) const {
    if (const auto* fn = std::get_if<HerglotzFn>(&form_)) return fn->eval(z);
    const auto& om = std::get<OmegaForm>(form_);
    require_inside_disk(z);
    const Complex zm1 = int_pow(z, om.m - 1);
    const Complex w = om.c * zm1 * z;
    const Complex wd = om.c * static_cast<double>(om.m) * zm1;
    const Complex den = 1.0 - w;
    const Complex value = (om.q + std::conj(om.q) * w) / den;
    const Complex deriv = 2.0 * om.q.real() * wd / (den * den);
    return {value, deriv};
}

Eval Generator::f(Complex z) const {
    const Eval pe = p(z);
    return {z * pe.value, pe.value + z * pe.deriv};
}

StarlikeReference::StarlikeReference(double order, std::vector<BoundaryAtom> atoms)
    : order_(order), atoms_(std::move(atoms)) {
    if (!(order_ > 0.0) || !(order_ < 1.0))
        throw BadOrder("the order must lie strictly between 0 and 1");
    if (atoms_.empty())
        throw EmptyMeasure("the direction measure needs at least one atom");
    double total = 0.0;
    for (const auto& atom : atoms_) {
        if (!(atom.mass > 0.0))
            throw NegativeMass("direction masses must be positive");
        total += atom.mass;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw NotProbability("direction masses must sum to 1, got " + std::to_string(total));
}

Eval StarlikeReference::eval(Complex z) const {
    require_inside_disk(z);
    const double factor = 2.0 * (1.0 - order_);
    Complex g(0.0, 0.0);
    Complex gd(0.0, 0.0);
    for (const auto& atom : atoms_) {
        const Complex cbar = std::polar(1.0, -atom.angle);
        const Complex den = 1.0 - z * cbar;
        g -= factor * atom.mass * std::log(den);
        gd += factor * atom.mass * cbar / den;
    }
    const Complex e = std::exp(g);
    return {z * e, e * (1.0 + z * gd)};
}

StarlikeReference make_starlike_reference(double order, std::vector<BoundaryAtom> atoms) {
    return StarlikeReference(order, std::move(atoms));
}

} // namespace resolvent_lab
