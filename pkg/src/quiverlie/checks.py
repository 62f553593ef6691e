"""The full invariant suite run on a single quiver.

Used by ``quiverlie random --verify`` and by the acceptance tests.  Every
check is exact; a failing check carries the exception text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import dsl
from .lie import (
    bracket,
    build_algebra,
    check_graded_bracket,
    check_jacobi,
    is_derivation,
    is_nice_basis,
    length_grading,
    nilpotency_step,
)
from .quiver import (
    Quiver,
    apply_automorphism,
    automorphism_generators,
    check_reduction,
    enumerate_paths,
    is_automorphism,
    quiver_length,
    reduced_quiver,
    restrict_to_reduced,
    starting_set,
)
from .ricci import ricci_decomposition_check, ricci_diagonal_nice, ricci_form
from .soliton import construct_soliton_metric, soliton_certificate, soliton_tower


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


class _Fail(Exception):
    pass


def _expect(cond: bool, msg: str):
    if not cond:
        raise _Fail(msg)


def _aut_compatibility(q: Quiver):
    gens = automorphism_generators(q)
    for f in gens:
        _expect(is_automorphism(q, f), f"generator {f} is not an automorphism")
    paths = enumerate_paths(q)
    for f in gens:
        for x in paths:
            for y in paths:
                lhs = bracket(q, apply_automorphism(f, x), apply_automorphism(f, y))
                rhs = bracket(q, x, y)
                if rhs is not None:
                    rhs = (rhs[0], apply_automorphism(f, rhs[1]))
                _expect(lhs == rhs, f"{f} does not respect [{x}, {y}]")
    if quiver_length(q) < 2:
        return
    S = set(starting_set(q))
    qp = reduced_quiver(q)
    for f in gens:
        _expect({f(a) for a in S} == S, f"{f} does not preserve S")
        g = restrict_to_reduced(q, qp, f)
        _expect(is_automorphism(qp, g), f"restriction of {f} is not in Aut(Q')")


def _ricci_routes(q: Quiver):
    alg = build_algebra(q, verify=False)
    g = construct_soliton_metric(q)
    res = ricci_form(alg, g)
    _expect(res.diagonal is not None, "Ricci operator has off-diagonal entries")
    _expect(res.diagonal == ricci_diagonal_nice(alg, g), "general and nice-basis Ricci disagree")


def _certificate(q: Quiver):
    cert = soliton_certificate(q)
    failed = [k for k, ok in cert.checks.items() if not ok]
    _expect(not failed, f"certificate checks failed: {failed}")
    _expect(all(x == -1 + d for x, d in zip(cert.ricci, cert.derivation)), "Ric != -id + D")


def suite(q: Quiver) -> list[tuple[str, Callable[[], object]]]:
    alg = build_algebra(q, verify=False)
    m = quiver_length(q)
    checks = [
        ("jacobi", lambda: check_jacobi(alg)),
        ("nice_basis", lambda: is_nice_basis(alg)),
        ("step_equals_length", lambda: _expect(nilpotency_step(alg) == m, "step != length")),
        ("graded_bracket", lambda: check_graded_bracket(alg)),
        ("length_grading_derivation", lambda: _expect(is_derivation(alg, length_grading(alg)), "")),
        ("aut_compatibility", lambda: _aut_compatibility(q)),
        ("ricci_routes_agree", lambda: _ricci_routes(q)),
        ("soliton_tower", lambda: soliton_tower(q)),
        ("certificate", lambda: _certificate(q)),
        ("dsl_roundtrip", lambda: _expect(dsl.parse(dsl.serialize(q)) == q, "round trip changed quiver")),
    ]
    if m >= 2:
        checks += [
            ("reduction", lambda: check_reduction(q, reduced_quiver(q, check=False))),
            ("ricci_decomposition", lambda: ricci_decomposition_check(q, construct_soliton_metric(q), alg)),
        ]
    return checks


def run_invariant_suite(q: Quiver) -> list[CheckResult]:
    out = []
    for name, fn in suite(q):
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - every failure is reported, not raised
            out.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
        else:
            out.append(CheckResult(name, True))
    return out
