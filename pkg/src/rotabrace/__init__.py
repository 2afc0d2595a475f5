"""Rota-Baxter operators, dual weak braces and set-theoretic Yang-Baxter
solutions on finite Clifford semigroups."""

from .clifford import (
    CliffordSemigroup,
    StrongSemilatticeSpec,
    Verdict,
    build_strong_semilattice,
    cyclic_group,
    decompose_to_strong_semilattice,
    direct_product,
    verify_clifford,
)
from .kernels import BACKEND
from .rota_baxter import (
    RotaBaxterOperator,
    enumerate_rota_baxter,
    is_rota_baxter,
    opposite_operator,
)
from .weak_brace import (
    DualWeakBrace,
    brace_from_operator,
    enumerate_ideals,
    quotient_brace,
    socle,
    verify_dual_weak_brace,
)
from .ybe import SolutionMap, check_braid, regularity_report, solution_from_brace, solutions_equivalent
from .catalog import load_carrier, run_pipeline

__all__ = [
    "BACKEND",
    "CliffordSemigroup",
    "DualWeakBrace",
    "RotaBaxterOperator",
    "SolutionMap",
    "StrongSemilatticeSpec",
    "Verdict",
    "brace_from_operator",
    "build_strong_semilattice",
    "check_braid",
    "cyclic_group",
    "decompose_to_strong_semilattice",
    "direct_product",
    "enumerate_ideals",
    "enumerate_rota_baxter",
    "is_rota_baxter",
    "load_carrier",
    "opposite_operator",
    "quotient_brace",
    "regularity_report",
    "run_pipeline",
    "socle",
    "solution_from_brace",
    "solutions_equivalent",
    "verify_clifford",
    "verify_dual_weak_brace",
]
