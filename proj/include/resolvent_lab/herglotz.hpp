#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "resolvent_lab/errors.hpp"

namespace resolvent_lab {

using Complex = std::complex<double>;

/// Value and first derivative of a holomorphic function at one point.
struct Eval {
    Complex value;
    Complex deriv;
};

/// Unit-mass point on the unit circle: the atom exp(i*angle) carrying `mass`.
struct BoundaryAtom {
    double angle = 0.0;
    double mass = 0.0;
};

/// Finite-atomic Herglotz function
///   p(z) = sum_k mass_k (1 + z conj(zeta_k)) / (1 - z conj(zeta_k)) + i gamma,
/// zeta_k = exp(i angle_k).  Re p >= 0 on the disk, p(0) = sum mass_k + i gamma.
class HerglotzFn {
public:
    HerglotzFn(std::vector<BoundaryAtom> atoms, double gamma);

    const std::vector<BoundaryAtom>& atoms() const { return atoms_; }
    double gamma() const { return gamma_; }
    Complex value_at_zero() const { return q_; }

    /// p(z) and p'(z); throws OutsideDisk for |z| >= 1.
    Eval eval(Complex z) const;

private:
    std::vector<BoundaryAtom> atoms_;
    double gamma_;
    Complex q_;
};

HerglotzFn make_herglotz(std::vector<BoundaryAtom> atoms, double gamma = 0.0);

inline Eval eval_p(const HerglotzFn& p, Complex z) { return p.eval(z); }

/// Infinitesimal generator f(z) = z p(z) with p of positive real part and
/// p(0) = q.  Two constructions: an atomic Herglotz p, or the Moebius form
///   p(z) = (q + conj(q) w(z)) / (1 - w(z)),   w(z) = c z^m,  |c| <= 1.
class Generator {
public:
    static Generator herglotz(HerglotzFn p);
    static Generator omega(Complex q, Complex c, int m);

    Complex q() const { return q_; }

    /// p(z), p'(z).
    Eval p(Complex z) const;
    /// f(z) = z p(z), f'(z) = p(z) + z p'(z).
    Eval f(Complex z) const;

    bool is_herglotz_form() const { return std::holds_alternative<HerglotzFn>(form_); }
    const HerglotzFn& herglotz_form() const { return std::get<HerglotzFn>(form_); }

    struct OmegaForm {
        Complex q;
        Complex c;
        int m;
    };
    const OmegaForm& omega_form() const { return std::get<OmegaForm>(form_); }

private:
    explicit Generator(std::variant<HerglotzFn, OmegaForm> form, Complex q)
        : form_(std::move(form)), q_(q) {}

    std::variant<HerglotzFn, OmegaForm> form_;
    Complex q_;
};

inline Eval eval_f(const Generator& gen, Complex z) { return gen.f(z); }

/// Starlike map of order `order` with the critical directions of the measure:
///   h(z) = z exp(-2 (1 - order) sum_k nu_k Log(1 - z conj(zeta_k))),
/// nu a probability measure on the circle.  eval returns h and h'.
class StarlikeReference {
public:
    StarlikeReference(double order, std::vector<BoundaryAtom> atoms);

    double order() const { return order_; }
    const std::vector<BoundaryAtom>& atoms() const { return atoms_; }

    Eval eval(Complex z) const;

private:
    double order_;
    std::vector<BoundaryAtom> atoms_;
};

StarlikeReference make_starlike_reference(double order, std::vector<BoundaryAtom> atoms);

} // namespace resolvent_lab
