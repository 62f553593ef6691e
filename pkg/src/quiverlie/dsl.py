"""Quiver text format, metric files, DOT export and certificate JSON.

Quiver files are line based::

    # comments and blank lines are ignored
    vertex w
    arrow a : v1 -> v2

Arrow endpoints declare their vertices implicitly; ``vertex`` lines are only
needed for isolated vertices.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Optional

from .errors import (
    DslSyntaxError,
    DuplicateArrowName,
    DuplicateVertexDeclaration,
    MetricSyntaxError,
)
from .lie import QuiverLieAlgebra
from .quiver import Arrow, Path, Quiver
from .ricci import DiagonalMetric

IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_VERTEX = re.compile(rf"vertex\s+({IDENT})")
_ARROW = re.compile(rf"arrow\s+({IDENT})\s*:\s*({IDENT})\s*->\s*({IDENT})")
_METRIC = re.compile(r"([^=\s][^=]*?)\s*=\s*(\S+)")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse(text: str) -> Quiver:
    vertices: list[str] = []
    declared: set[str] = set()
    arrows: list[Arrow] = []
    names: set[str] = set()
    for lineno, line in _content_lines(text):
        if m := _VERTEX.fullmatch(line):
            v = m.group(1)
            if v in declared:
                raise DuplicateVertexDeclaration(lineno, v)
            declared.add(v)
            vertices.append(v)
        elif m := _ARROW.fullmatch(line):
            name, src, tgt = m.groups()
            if name in names:
                raise DuplicateArrowName(lineno, name)
            names.add(name)
            arrows.append(Arrow(name, src, tgt))
        elif line.split()[0] in ("vertex", "arrow"):
            raise DslSyntaxError(lineno, f"malformed {line.split()[0]} statement: {line!r}")
        else:
            raise DslSyntaxError(lineno, f"expected 'vertex' or 'arrow', got {line!r}")
    return Quiver.from_arrows(arrows, vertices)


def serialize(q: Quiver) -> str:
    touched = {v for a in q.arrows for v in (a.source, a.target)}
    lines = [f"vertex {v}" for v in q.vertices if v not in touched]
    lines += [f"arrow {a.name} : {a.source} -> {a.target}" for a in q.arrows]
    return "".join(line + "\n" for line in lines)


def export_dot(q: Quiver) -> str:
    body = [f'  "{v}";' for v in q.vertices]
    body += [f'  "{a.source}" -> "{a.target}" [label="{a.name}"];' for a in q.arrows]
    if not body:
        return "digraph Q { }\n"
    return "digraph Q {\n" + "\n".join(body) + "\n}\n"


def resolve_path_name(q: Quiver, name: str) -> Optional[Path]:
    """Read a path written as ``a.b.e`` or, with one-letter arrow names, ``abe``."""
    if "." in name:
        parts = tuple(p.strip() for p in name.split("."))
    elif name in q.arrow_by_name:
        parts = (name,)
    else:
        parts = tuple(name)
    return parts if q.is_path(parts) else None


def parse_metric(text: str, q: Quiver, alg: QuiverLieAlgebra) -> DiagonalMetric:
    """Metric file: ``<path> = <p>/<q>`` per line; unlisted paths get 1."""
    values: dict[Path, Fraction] = {}
    for lineno, line in _content_lines(text):
        m = _METRIC.fullmatch(line)
        if not m:
            raise MetricSyntaxError(lineno, f"expected '<path> = <p>/<q>', got {line!r}")
        path = resolve_path_name(q, m.group(1))
        if path is None:
            raise MetricSyntaxError(lineno, f"{m.group(1)!r} is not a path of the quiver")
        if path in values:
            raise MetricSyntaxError(lineno, f"duplicate entry for {m.group(1)!r}")
        try:
            value = Fraction(m.group(2))
        except (ValueError, ZeroDivisionError):
            raise MetricSyntaxError(lineno, f"bad rational {m.group(2)!r}") from None
        if value <= 0:
            raise MetricSyntaxError(lineno, f"squared norm must be positive, got {value}")
        values[path] = value
    return DiagonalMetric(tuple(values.get(p, Fraction(1)) for p in alg.basis))


def format_metric(alg: QuiverLieAlgebra, g: DiagonalMetric) -> str:
    return "".join(f"{alg.name(i)} = {g[i]}\n" for i in range(alg.dim))


def rational(x: Fraction) -> str:
    # Fraction keeps lowest terms with a positive denominator
    return str(Fraction(x))


def _rationals(xs) -> list[str]:
    return [rational(x) for x in xs]


def certificate_to_dict(cert) -> dict:
    checks = {
        "derivation": cert.checks["D_is_derivation"],
        "diagonal": cert.checks["operator_diagonal"],
        "aut_invariant": cert.checks["aut_invariant"],
        "residual_zero": cert.checks["ric_equals_minus_id_plus_D"],
    }
    for key, ok in cert.checks.items():
        if key not in ("D_is_derivation", "operator_diagonal", "aut_invariant", "ric_equals_minus_id_plus_D"):
            checks[key] = ok
    out = {
        "paths": cert.paths,
        "norms_squared": _rationals(cert.metric.norms_squared),
        "ricci_eigenvalues": _rationals(cert.ricci),
        "c": rational(cert.c),
        "derivation_diagonal": _rationals(cert.derivation),
        "checks": checks,
    }
    if cert.a is not None:
        out["decomposition"] = {
            "extended_derivation": _rationals(cert.extended),
            "a_operator": _rationals(cert.a),
        }
    if cert.level_data is not None:
        out["levels"] = [
            {"vertex": b.vertex, "starting": b.n_starting, "p1": b.n_p1, "N": rational(b.n_j)}
            for b in cert.level_data.blocks
        ]
    return out


def certificate_to_json(cert) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2)
