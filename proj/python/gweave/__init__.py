"""g-frames on finite-dimensional Hilbert spaces and their weavings."""

from ._gweave import (
    GFrame,
    GWeaveError,
    bounds,
    canonical_dual,
    check_dual_weaving,
    check_induced_operator_identity,
    check_sqrt_inv_weaving,
    classify,
    compose_right,
    examples,
    frame_operator,
    run_suite,
    transform_sqrt_inv,
    universal_bounds,
    weave,
    woven,
)

__all__ = [
    "GFrame",
    "GWeaveError",
    "bounds",
    "canonical_dual",
    "check_dual_weaving",
    "check_induced_operator_identity",
    "check_sqrt_inv_weaving",
    "classify",
    "compose_right",
    "examples",
    "frame_operator",
    "run_suite",
    "transform_sqrt_inv",
    "universal_bounds",
    "weave",
    "woven",
]
