"""Diagonal metrics and exact Ricci curvature.

Everything is computed on the unnormalized path basis.  If ``g_i = |x_i|^2``
and ``[x_i, x_j] = sum_k c_ij^k x_k``, the Ricci form is

    <Ric x_a, x_b> = -1/2 sum_{i,j} c_ai^j c_bi^j g_j / g_i
                     +1/4 sum_{i,j} c_ij^a c_ij^b g_a g_b / (g_i g_j)

which only involves squared norms, so the result is rational.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import DecompositionFailure, DimensionMismatch, MathCheckFailure, NonPositiveNorm, NormMismatch
from .lie import QuiverLieAlgebra, build_algebra
from .quiver import Path, Quiver, enumerate_paths, partition, reduced_quiver

Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class DiagonalMetric:
    """Squared norms of the basis paths; the paths are mutually orthogonal."""

    norms_squared: tuple[Fraction, ...]

    def __post_init__(self):
        norms = tuple(Fraction(v) for v in self.norms_squared)
        for v in norms:
            if v <= 0:
                raise NonPositiveNorm(f"squared norm {v} is not positive")
        object.__setattr__(self, "norms_squared", norms)

    def __len__(self):
        return len(self.norms_squared)

    def __getitem__(self, i: int) -> Fraction:
        return self.norms_squared[i]

    @classmethod
    def ones(cls, n: int) -> "DiagonalMetric":
        return cls((Fraction(1),) * n)

    def scaled(self, factor) -> "DiagonalMetric":
        return DiagonalMetric(tuple(v * factor for v in self.norms_squared))


def metric_from_mapping(alg: QuiverLieAlgebra, values: Mapping[Path, Fraction]) -> DiagonalMetric:
    """Metric with the given squared norms; paths not mentioned get 1."""
    unknown = set(values) - set(alg.index)
    if unknown:
        raise DimensionMismatch(f"not basis paths: {sorted(unknown)}")
    return DiagonalMetric(tuple(Fraction(values.get(p, 1)) for p in alg.basis))


def restrict_metric(alg: QuiverLieAlgebra, g: DiagonalMetric, sub: QuiverLieAlgebra) -> DiagonalMetric:
    """The metric on a subalgebra spanned by a subset of the paths (matched by word)."""
    return DiagonalMetric(tuple(g[alg.word_index[w]] for w in sub.words))


def _check_dims(alg: QuiverLieAlgebra, g: DiagonalMetric):
    if len(g) != alg.dim:
        raise DimensionMismatch(f"metric has {len(g)} entries, algebra has dimension {alg.dim}")


@dataclass(frozen=True)
class RicciResult:
    form: Matrix  # form[a][b] = <Ric x_a, x_b>
    operator: Matrix  # G^-1 form; column k holds the coordinates of Ric(x_k)
    diagonal: Optional[tuple[Fraction, ...]]

    @property
    def is_diagonal(self) -> bool:
        return self.diagonal is not None

    def scalar_curvature(self, g: DiagonalMetric) -> Fraction:
        """Trace of the Ricci form taken with respect to the metric."""
        return sum((self.form[i][i] / g[i] for i in range(len(g))), Fraction(0))


def ricci_form(alg: QuiverLieAlgebra, g: DiagonalMetric) -> RicciResult:
    """Full Ricci form from the general nilpotent formula.

    Works from the ordered structure constants and never assumes a nice
    basis, so it serves as the cross-check for `ricci_diagonal_nice`.
    """
    _check_dims(alg, g)
    n = alg.dim
    c = alg.structure_constants()
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    form = [[Fraction(0)] * n for _ in range(n)]

    # -1/2 term: group c_ai^j by (i, j)
    by_ij: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for (a, i), out in c.items():
        for j, coef in out.items():
            by_ij[(i, j)].append((a, coef))
    for (i, j), terms in by_ij.items():
        w = g[j] / g[i]
        for a, ca in terms:
            for b, cb in terms:
                form[a][b] -= half * ca * cb * w

    # +1/4 term over ordered pairs (i, j)
    for (i, j), out in c.items():
        w = 1 / (g[i] * g[j])
        for a, ca in out.items():
            for b, cb in out.items():
                form[a][b] += quarter * ca * cb * g[a] * g[b] * w

    operator = [[form[r][k] / g[r] for k in range(n)] for r in range(n)]
    diagonal = None
    if all(operator[r][k] == 0 for r in range(n) for k in range(n) if r != k):
        diagonal = tuple(operator[k][k] for k in range(n))
    return RicciResult(form, operator, diagonal)


def ricci_diagonal_nice(alg: QuiverLieAlgebra, g: DiagonalMetric) -> tuple[Fraction, ...]:
    """Ricci eigenvalues for an orthogonal nice basis.

    With normalized paths the squared structure constant of ``[x_k, x_i] = ±x_j``
    is ``g_j / (g_k g_i)``.
    """
    _check_dims(alg, g)
    r = [Fraction(0)] * alg.dim
    for (i, j), (k, _) in alg.table.items():
        # [x_i, x_j] = ±x_k: x_i and x_j each lose, x_k gains
        coef2 = g[k] / (g[i] * g[j])
        r[i] -= coef2 / 2
        r[j] -= coef2 / 2
        r[k] += coef2 / 2
    return tuple(r)


def bracket_norm_coefficient(alg: QuiverLieAlgebra, g: DiagonalMetric, a: Path, x: Path) -> Fraction:
    """Squared coefficient of the normalized ``[a, x]`` along the normalized ``ax``.

    Requires ``|x| = |ax|``, in which case the value is ``1/|a|^2``.
    """
    _check_dims(alg, g)
    ia, ix, iax = alg.index[a], alg.index[x], alg.index[a + x]
    if alg.br(ia, ix) != (iax, 1):
        raise MathCheckFailure(f"[{a}, {x}] != {a + x}")
    if g[ix] != g[iax]:
        raise NormMismatch(f"|{x}|^2 = {g[ix]} but |{a + x}|^2 = {g[iax]}")
    coef2 = g[iax] / (g[ia] * g[ix])
    if coef2 != 1 / g[ia]:
        raise MathCheckFailure("coefficient^2 != 1/|a|^2")
    return coef2


def ricci_decomposition_check(
    q: Quiver,
    g: DiagonalMetric,
    alg: Optional[QuiverLieAlgebra] = None,
) -> None:
    """Compare Ric on n_Q with Ric on the reduced algebra, path by path.

    Starting arrows only lose curvature to the paths they begin; paths of P1
    lose to the starting arrows in front of them; paths of P2 gain from their
    unique split a·y; everything else matches the reduced algebra exactly.
    """
    if alg is None:
        alg = build_algebra(q)
    _check_dims(alg, g)
    qp = reduced_quiver(q)
    part = partition(q, qp)
    alg_p = build_algebra(qp)
    g_p = restrict_metric(alg, g, alg_p)

    full = ricci_form(alg, g)
    sub = ricci_form(alg_p, g_p)
    if full.diagonal is None or sub.diagonal is None:
        raise MathCheckFailure("Ricci operator is not diagonal")
    r, r_p = full.diagonal, sub.diagonal

    S = set(part.starting_set)
    s_paths = {(a,) for a in S}
    paths = enumerate_paths(q)

    def coef2(u: Path, v: Path) -> Fraction:
        return g[alg.index[u + v]] / (g[alg.index[u]] * g[alg.index[v]])

    for k, x in enumerate(alg.basis):
        kind, _ = part.block_of(x)
        if kind == "S":
            lhs = r[k]
            rhs = -sum((coef2(x, y) for y in paths if q.target(x) == q.source(y)), Fraction(0)) / 2
        else:
            lhs = r[k] - r_p[alg_p.word_index[alg.words[k]]]
            if kind == "P1":
                rhs = -sum(
                    (coef2((a,), x) for a in S if q.arrow_by_name[a].target == q.source(x)),
                    Fraction(0),
                ) / 2
            elif kind == "P2":
                splits = [(x[:i], x[i:]) for i in range(1, len(x)) if x[:i] in s_paths]
                if len(splits) != 1:
                    raise DecompositionFailure(3, x, f"{len(splits)} factorizations", "exactly 1")
                b, c = splits[0]
                rhs = coef2(b, c) / 2
            else:
                rhs = Fraction(0)
        if lhs != rhs:
            raise DecompositionFailure({"S": 1, "P1": 2, "P2": 3, "P0": 4}[kind], x, lhs, rhs)
