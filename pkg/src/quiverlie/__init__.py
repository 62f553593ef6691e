"""Nilpotent Lie algebras of acyclic quivers and their Ricci soliton metrics."""

from .dsl import certificate_to_json, export_dot, parse, serialize
from .lie import QuiverLieAlgebra, build_algebra, bracket, is_derivation, nilpotency_step
from .quiver import (
    Arrow,
    ArrowPermutation,
    Quiver,
    automorphisms,
    enumerate_paths,
    partition,
    quiver_length,
    reduced_quiver,
    starting_set,
    validate,
)
from .ricci import DiagonalMetric, ricci_diagonal_nice, ricci_form
from .soliton import (
    construct_soliton_metric,
    diagonal_soliton_feasibility,
    soliton_certificate,
    verify_certificate,
)

__version__ = "0.1.0"
