"""Truncated 3-mode Fock-space backend."""

from .basis import (
    DEFAULT_BUDGET,
    FockCutoff,
    FockState,
    ModeOperator,
    OperatorExpr,
    as_cutoff,
    basis_state,
    build_mode_operator,
    coherent_state,
    expectation,
    fidelity,
    flat_index,
    mode_operators,
    multi_index,
    vacuum,
)
from .expaction import DEFAULT_TOL, apply_s3_numeric, displace, expm_action, plan_steps
from .normal_order import apply_s3_normal_ordered
from .operators import build_s3_generator
from .states import (
    DEFAULT_EPS_TRUNC,
    DEFAULT_MAX_TAIL,
    EIGEN_RESIDUAL_CONSTANT,
    auto_cutoff,
    check_eigen_relations,
    s3_on_coherent,
    squeezed_vacuum_analytic,
)

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_EPS_TRUNC",
    "DEFAULT_MAX_TAIL",
    "DEFAULT_TOL",
    "EIGEN_RESIDUAL_CONSTANT",
    "FockCutoff",
    "FockState",
    "ModeOperator",
    "OperatorExpr",
    "apply_s3_normal_ordered",
    "apply_s3_numeric",
    "as_cutoff",
    "auto_cutoff",
    "basis_state",
    "build_mode_operator",
    "build_s3_generator",
    "check_eigen_relations",
    "coherent_state",
    "displace",
    "expectation",
    "expm_action",
    "fidelity",
    "flat_index",
    "mode_operators",
    "multi_index",
    "plan_steps",
    "s3_on_coherent",
    "squeezed_vacuum_analytic",
    "vacuum",
]
