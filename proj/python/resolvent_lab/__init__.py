"""Nonlinear resolvents of holomorphic semigroup generators on the unit disk."""

from ._core import (
    BoundaryAtom,
    ClassRadii,
    Eval,
    Generator,
    OrderEstimate,
    ResolventError,
    ResolventRadii,
    ResolventValue,
    TheoreticalOrders,
    amplitude,
    amplitude_in_range,
    class_radii,
    containment_threshold,
    distortion_bound,
    estimate_resolvent_orders,
    exponential_formula,
    extension_radius,
    flow,
    known_checks,
    resolvent_radii,
    run_checks,
    shape_ratio,
    solve_resolvent,
    theoretical_orders,
)

__all__ = [
    "BoundaryAtom",
    "ClassRadii",
    "Eval",
    "Generator",
    "OrderEstimate",
    "ResolventError",
    "ResolventRadii",
    "ResolventValue",
    "TheoreticalOrders",
    "amplitude",
    "amplitude_in_range",
    "class_radii",
    "containment_threshold",
    "distortion_bound",
    "estimate_resolvent_orders",
    "exponential_formula",
    "extension_radius",
    "flow",
    "known_checks",
    "resolvent_radii",
    "run_checks",
    "shape_ratio",
    "solve_resolvent",
    "theoretical_orders",
]
