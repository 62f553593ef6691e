"""The nilpotent Lie algebra spanned by the paths of an acyclic quiver.

The bracket of two paths is ``x·y - y·x`` where ``·`` is concatenation; at
most one of the two products survives, so every structure constant is 0 or
±1 with a single output index per pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    BothProductsNonzero,
    EmptyQuiver,
    GradedBracketFailure,
    HypothesisViolated,
    JacobiFailure,
    MathCheckFailure,
    NiceBasisViolation,
)
from .quiver import Path, Quiver, apply_automorphism, automorphism_generators, enumerate_paths

DiagonalMap = tuple[Fraction, ...]


def concat_product(q: Quiver, x: Path, y: Path) -> Optional[Path]:
    """``x·y`` in the path algebra, or None for zero."""
    if q.target(x) != q.source(y):
        return None
    xy = x + y
    # composable paths in an acyclic quiver never repeat an arrow
    return xy if len(set(xy)) == len(xy) else None


def bracket(q: Quiver, x: Path, y: Path) -> Optional[tuple[int, Path]]:
    """``[x, y]`` as ``(sign, path)``, or None for zero."""
    xy = concat_product(q, x, y)
    yx = concat_product(q, y, x)
    if xy is not None and yx is not None:
        raise BothProductsNonzero(f"both {x}·{y} and {y}·{x} are paths")
    if xy is not None:
        return 1, xy
    if yx is not None:
        return -1, yx
    return None


@dataclass(frozen=True)
class QuiverLieAlgebra:
    quiver: Quiver
    basis: tuple[Path, ...]
    # (i, j) with i < j  ->  (k, sign) meaning [x_i, x_j] = sign * x_k
    table: Mapping[tuple[int, int], tuple[int, int]]

    @cached_property
    def index(self) -> dict[Path, int]:
        return {p: i for i, p in enumerate(self.basis)}

    @cached_property
    def words(self) -> tuple[tuple[str, ...], ...]:
        return tuple(self.quiver.word(p) for p in self.basis)

    @cached_property
    def word_index(self) -> dict[tuple[str, ...], int]:
        return {w: i for i, w in enumerate(self.words)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.basis)

    @cached_property
    def grading(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, n in enumerate(self.lengths):
            out.setdefault(n, []).append(i)
        return {n: tuple(ix) for n, ix in sorted(out.items())}

    def grading_dims(self) -> tuple[int, ...]:
        top = max(self.grading, default=0)
        return tuple(len(self.grading.get(n, ())) for n in range(1, top + 1))

    def br(self, i: int, j: int) -> Optional[tuple[int, int]]:
        """``[x_i, x_j]`` as ``(k, sign)`` with antisymmetry applied."""
        if i < j:
            return self.table.get((i, j))
        if i > j:
            hit = self.table.get((j, i))
            return None if hit is None else (hit[0], -hit[1])
        return None

    @cached_property
    def products(self) -> tuple[tuple[int, int, int, int], ...]:
        """Every nonzero ordered bracket as ``(i, j, k, sign)``."""
        out = []
        for (i, j), (k, s) in sorted(self.table.items()):
            out.append((i, j, k, s))
            out.append((j, i, k, -s))
        return tuple(sorted(out))

    def structure_constants(self) -> dict[tuple[int, int], dict[int, int]]:
        """Ordered-pair form ``c[(i, j)] = {k: c_ij^k}`` of the nonzero constants."""
        return {(i, j): {k: s} for i, j, k, s in self.products}

    def name(self, i: int) -> str:
        return self.quiver.path_name(self.basis[i])


def build_algebra(q: Quiver, verify: bool = True) -> QuiverLieAlgebra:
    if q.is_empty:
        raise EmptyQuiver("the Lie algebra of an arrowless quiver is zero")
    basis = tuple(enumerate_paths(q))
    index = {p: i for i, p in enumerate(basis)}
    table = {}
    for i, j in combinations(range(len(basis)), 2):
        hit = bracket(q, basis[i], basis[j])
        if hit is not None:
            sign, p = hit
            table[(i, j)] = (index[p], sign)
    alg = QuiverLieAlgebra(q, basis, table)
    if verify:
        check_jacobi(alg)
        is_nice_basis(alg)
    return alg


def _vec_bracket(alg: QuiverLieAlgebra, i: int, j: int) -> dict[int, int]:
    hit = alg.br(i, j)
    return {} if hit is None else {hit[0]: hit[1]}


def _bracket_vec_basis(alg: QuiverLieAlgebra, v: dict[int, int], k: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, c in v.items():
        hit = alg.br(i, k)
        if hit is not None:
            out[hit[0]] = out.get(hit[0], 0) + c * hit[1]
    return out


def check_jacobi(alg: QuiverLieAlgebra) -> None:
    """Exhaustive Jacobi identity on basis triples, exact integers."""
    n = alg.dim
    nonzero_with = [set() for _ in range(n)]
    for i, j, _, _ in alg.products:
        nonzero_with[i].add(j)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                # all three inner brackets zero: nothing to check
                if j not in nonzero_with[i] and k not in nonzero_with[j] and i not in nonzero_with[k]:
                    continue
                total: dict[int, int] = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for idx, coef in _bracket_vec_basis(alg, _vec_bracket(alg, a, b), c).items():
                        total[idx] = total.get(idx, 0) + coef
                if any(total.values()):
                    raise JacobiFailure(f"Jacobi fails on ({alg.name(i)}, {alg.name(j)}, {alg.name(k)})")


def descending_central_series(alg: QuiverLieAlgebra) -> list[frozenset[int]]:
    """C^0, C^1, ... down to the first zero term, each as a set of basis indices.

    Brackets of basis vectors are ± basis vectors, so every term is a
    coordinate subspace and can be tracked by its index set exactly.
    """
    series = [frozenset(range(alg.dim))]
    while series[-1]:
        prev = series[-1]
        nxt = set()
        for i in prev:
            for j in range(alg.dim):
                hit = alg.br(i, j)
                if hit is not None:
                    nxt.add(hit[0])
        series.append(frozenset(nxt))
    return series


def nilpotency_step(alg: QuiverLieAlgebra) -> int:
    series = descending_central_series(alg)
    for k, term in enumerate(series):
        expected = {i for i, n in enumerate(alg.lengths) if n >= k + 1}
        if set(term) != expected:
            raise MathCheckFailure(f"C^{k} is not spanned by paths of length >= {k + 1}")
    return len(series) - 1


def check_graded_bracket(alg: QuiverLieAlgebra) -> None:
    """[n^i, n^j] = n^{i+j} for every i, j."""
    m = max(alg.lengths)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            lhs = set()
            for a in alg.grading.get(i, ()):
                for b in alg.grading.get(j, ()):
                    hit = alg.br(a, b)
                    if hit is not None:
                        lhs.add(hit[0])
            rhs = set(alg.grading.get(i + j, ()))
            if not lhs <= rhs:
                raise GradedBracketFailure(i, j, f"bracket lands outside degree {i + j}")
            for z in rhs:
                x, y = alg.basis[z][:i], alg.basis[z][i:]
                if alg.br(alg.index[x], alg.index[y]) != (z, 1):
                    raise GradedBracketFailure(i, j, f"{alg.name(z)} != [{x}, {y}]")
            if lhs != rhs:
                raise GradedBracketFailure(i, j, sorted(rhs - lhs))


def is_nice_basis(alg: QuiverLieAlgebra) -> None:
    """Raise unless (1) each [x_i, x_j] has at most one nonzero coefficient and
    (2) for each (i, k) at most one j has c_ij^k != 0.

    The constants are recomputed from concatenation rather than read from the
    table, so this also audits the table.
    """
    q = alg.quiver
    partners: dict[tuple[int, int], int] = {}
    for i, x in enumerate(alg.basis):
        for j, y in enumerate(alg.basis):
            coeffs: dict[int, int] = {}
            for prod, sign in ((concat_product(q, x, y), 1), (concat_product(q, y, x), -1)):
                if prod is not None:
                    k = alg.index[prod]
                    coeffs[k] = coeffs.get(k, 0) + sign
            ks = [k for k, c in coeffs.items() if c]
            expect = (ks[0], coeffs[ks[0]]) if len(ks) == 1 else None
            if len(ks) <= 1 and i != j and alg.br(i, j) != expect:
                raise NiceBasisViolation(f"table entry for [{alg.name(i)}, {alg.name(j)}] is {alg.br(i, j)}")
            if len(ks) > 1:
                raise NiceBasisViolation(f"[{alg.name(i)}, {alg.name(j)}] has outputs {ks}")
            for k in ks:
                if abs(coeffs[k]) != 1:
                    raise NiceBasisViolation(f"c_{i}{j}^{k} = {coeffs[k]}")
                if (i, k) in partners:
                    raise NiceBasisViolation(
                        f"c_ij^k nonzero for i={i}, k={k}, j in {{{partners[(i, k)]}, {j}}}"
                    )
                partners[(i, k)] = j


def is_derivation(alg: QuiverLieAlgebra, d: Sequence) -> bool:
    """A diagonal map is a derivation iff eigenvalues add along every bracket."""
    if len(d) != alg.dim:
        raise ValueError(f"map has {len(d)} entries, algebra has dimension {alg.dim}")
    return all(d[k] == d[i] + d[j] for (i, j), (k, _) in alg.table.items())


def length_grading(alg: QuiverLieAlgebra) -> DiagonalMap:
    return tuple(Fraction(n) for n in alg.lengths)


def is_orbit_constant(alg: QuiverLieAlgebra, d: Sequence, gens: Optional[Iterable] = None) -> bool:
    """Whether a diagonal map commutes with every automorphism of the quiver.

    For a diagonal map this is constancy on orbits of paths; checking the
    generators suffices.
    """
    if gens is None:
        gens = automorphism_generators(alg.quiver)
    for f in gens:
        for i, p in enumerate(alg.basis):
            if d[alg.index[apply_automorphism(f, p)]] != d[i]:
                return False
    return True


def extend_derivation(
    alg_parent: QuiverLieAlgebra,
    alg_reduced: QuiverLieAlgebra,
    d_prime: Sequence,
    starting: Iterable[str],
) -> DiagonalMap:
    """Extend a diagonal derivation of the reduced algebra by zero on the
    starting arrows.

    The extension is a derivation when ``d_prime`` is one and commutes with
    Aut of the reduced quiver; both hypotheses are checked.
    """
    if not is_derivation(alg_reduced, d_prime):
        raise HypothesisViolated("d' is not a derivation of the reduced algebra")
    if not is_orbit_constant(alg_reduced, d_prime):
        raise HypothesisViolated("d' is not constant on Aut(Q')-orbits")
    starting = set(starting)
    out = []
    for p, w in zip(alg_parent.basis, alg_parent.words):
        if len(p) == 1 and p[0] in starting:
            out.append(Fraction(0))
        else:
            out.append(Fraction(d_prime[alg_reduced.word_index[w]]))
    out = tuple(out)
    if not is_derivation(alg_parent, out):
        raise HypothesisViolated("extension is not a derivation (should be impossible)")
    return out
