"""Sketch-preconditioned normal-equation least-squares solvers."""

from ._sketchls import (
    SketchlsError,
    condition_number,
    estimate_log10_condition,
    eta1,
    evaluate_bounds,
    generate_problem,
    householder_qr,
    orthogonal_transform,
    round_to,
    run_benchmark,
    run_sweep,
    select_precision,
    singular_values,
    sketch,
    solve,
    sweep_columns,
    unit_roundoff,
)

__all__ = [
    "SketchlsError",
    "condition_number",
    "estimate_log10_condition",
    "eta1",
    "evaluate_bounds",
    "generate_problem",
    "householder_qr",
    "orthogonal_transform",
    "round_to",
    "run_benchmark",
    "run_sweep",
    "select_precision",
    "singular_values",
    "sketch",
    "solve",
    "sweep_columns",
    "unit_roundoff",
]
