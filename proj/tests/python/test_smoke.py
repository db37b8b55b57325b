import cmath
import math

import pytest

import resolvent_lab as rl


def test_linear_resolvent_closed_form():
    gen = rl.Generator.omega(1.0, 0.0, 1)
    rv = rl.solve_resolvent(gen, 2.0, 0.6)
    assert abs(rv.w - 0.2) < 1e-12
    assert abs(rv.deriv - 1.0 / 3.0) < 1e-12
    assert rv.residual <= 1e-12
    assert rv.iterations >= 1


def test_atom_resolvent_and_shape_ratio():
    gen = rl.Generator.herglotz([(0.0, 1.0)])
    assert abs(rl.solve_resolvent(gen, 1.0, 0.5).w - 0.2) < 1e-12
    assert abs(rl.shape_ratio(gen, 1.0, 0.5) - 0.8) < 1e-11
    p = gen.p(0.5)
    assert abs(p.value - 3.0) < 1e-13
    assert abs(p.deriv - 8.0) < 1e-13


def test_radii_closed_forms():
    rad = rl.resolvent_radii(8.0, 1.0)
    assert rad.extended
    assert abs(rad.rho - (23.0 - 8.0 * math.sqrt(7.0))) < 1e-12
    assert abs(rad.rho3 - 1.0 / 3.0) < 1e-13
    assert abs(rad.rho4 - 1.0 / (9.0 + math.sqrt(80.0))) < 1e-13
    assert abs(rl.extension_radius(8.0) - rad.rho) < 1e-14
    assert abs(rl.amplitude(10.0) - 165.0 / 296.0) < 1e-14
    assert abs(rl.containment_threshold() - 5.92434) <= 5e-5


def test_orders_and_class_radii():
    th = rl.theoretical_orders(10.0)
    assert abs(th.starlike_order - 296.0 / 461.0) < 1e-13
    assert abs(th.squeeze_exponent - 131.0 / 461.0) < 1e-13
    assert th.spirallike_order is not None

    cr = rl.class_radii(1.0, 1.0)
    assert abs(cr.R - 0.5) < 1e-12
    assert abs(cr.R2 - 1.0 / (2.0 + math.sqrt(3.0))) < 1e-12

    est = rl.estimate_resolvent_orders(rl.Generator.herglotz([(0.0, 1.0)]), 1.0,
                                       radii=32, angles=128)
    assert abs(est.starlike_order - 2.0 / 3.0) < 1e-3


def test_flow_and_exponential_formula():
    gen = rl.Generator.omega(1.0, 0.0, 1)
    u = rl.flow(gen, 1.5, 0.5)
    assert abs(u - 0.5 * cmath.exp(-1.5)) < 1e-9
    approx = rl.exponential_formula(gen, 1.0, 0.5, 100)
    assert abs(approx - 0.5 / 1.01 ** 100) < 1e-10
    assert abs(approx - 0.5 * math.exp(-1.0)) < 1e-2


def test_generator_json_round_trip():
    gen = rl.Generator.omega(complex(1.0, 0.25), 0.5, 2)
    back = rl.Generator.from_json(gen.to_json())
    z = complex(0.3, -0.2)
    assert abs(back.p(z).value - gen.p(z).value) < 1e-15
    assert back.q == gen.q


def test_errors_surface_as_python_exceptions():
    with pytest.raises(rl.ResolventError):
        rl.Generator.omega(complex(0.0, 1.0), 0.0, 1)
    with pytest.raises(rl.ResolventError):
        rl.extension_radius(2.0)
    gen = rl.Generator.omega(1.0, 0.0, 1)
    with pytest.raises(rl.ResolventError):
        rl.solve_resolvent(gen, 1.0, complex(1.5, 0.0))


def test_run_checks():
    assert "r0" in rl.known_checks()
    reports = rl.run_checks(["r0", "class-radii-unit"])
    assert len(reports) == 2
    for rep in reports:
        assert rep["pass"] is True
        assert rep["margin"] >= -1e-8
        assert isinstance(rep["parameters"], dict)
