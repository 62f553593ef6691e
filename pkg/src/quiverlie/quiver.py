"""Finite quivers, their paths, the starting-set reduction and arrow automorphisms.

A path is a tuple of arrow names.  Every arrow also carries a ``word``: the
sequence of original arrows it stands for.  Arrows of a user-supplied quiver
have one-letter words; the composite arrows created by `reduced_quiver` have
longer ones, so paths on different reduction levels can be compared by
flattening them to words.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    CycleFound,
    DanglingEndpoint,
    DuplicateIdentifier,
    EmptyQuiver,
    LengthOne,
    MathCheckFailure,
    NotComposable,
)

Path = tuple[str, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    word: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.word:
            object.__setattr__(self, "word", (self.name,))


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise DuplicateIdentifier(f"duplicate vertex in {self.vertices}")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise DuplicateIdentifier(f"duplicate arrow {dup!r}")
        vs = set(self.vertices)
        for a in self.arrows:
            for v in (a.source, a.target):
                if v not in vs:
                    raise DanglingEndpoint(f"arrow {a.name!r} uses undeclared vertex {v!r}")
        # canonical order: first appearance along the arrows, then isolated vertices
        touched = dict.fromkeys(v for a in self.arrows for v in (a.source, a.target))
        order = tuple(touched) + tuple(v for v in self.vertices if v not in touched)
        object.__setattr__(self, "vertices", order)

    @classmethod
    def from_arrows(cls, arrows: Iterable[Sequence[str]], vertices: Iterable[str] = ()) -> "Quiver":
        """Build a quiver from ``(name, source, target)`` triples.

        Vertices are collected in order of first appearance, after any listed
        explicitly.
        """
        arrows = [Arrow(*a) if not isinstance(a, Arrow) else a for a in arrows]
        vs = list(dict.fromkeys(vertices))
        seen = set(vs)
        for a in arrows:
            for v in (a.source, a.target):
                if v not in seen:
                    seen.add(v)
                    vs.append(v)
        return cls(tuple(vs), tuple(arrows))

    @cached_property
    def arrow_by_name(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def out_arrows(self) -> dict[str, tuple[Arrow, ...]]:
        out = defaultdict(list)
        for a in self.arrows:
            out[a.source].append(a)
        return {v: tuple(out[v]) for v in self.vertices}

    def source(self, path: Path) -> str:
        return self.arrow_by_name[path[0]].source

    def target(self, path: Path) -> str:
        return self.arrow_by_name[path[-1]].target

    def word(self, path: Path) -> tuple[str, ...]:
        """Flatten a path to the original arrows it is made of."""
        return tuple(x for name in path for x in self.arrow_by_name[name].word)

    def is_path(self, seq: Sequence[str]) -> bool:
        if not seq or any(n not in self.arrow_by_name for n in seq):
            return False
        return all(
            self.arrow_by_name[x].target == self.arrow_by_name[y].source
            for x, y in zip(seq, seq[1:])
        )

    def path_name(self, path: Path) -> str:
        return path_label(path, self)

    @property
    def is_empty(self) -> bool:
        return not self.arrows


def path_label(path: Path, q: Quiver) -> str:
    """Human-readable name: juxtaposition when all arrow names are single
    characters (``abe``), dot-joined otherwise (``a1.b1``)."""
    if all(len(a.name) == 1 for a in q.arrows):
        return "".join(path)
    return ".".join(path)


def find_cycle(q: Quiver) -> Optional[Path]:
    """Return the arrows of some directed cycle, or None if the quiver is acyclic."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(q.vertices, WHITE)
    # arrow used to enter each grey vertex, for reconstructing the witness
    via: dict[str, Arrow] = {}

    for root in q.vertices:
        if color[root] != WHITE:
            continue
        color[root] = GREY
        stack: list[tuple[str, Iterator[Arrow]]] = [(root, iter(q.out_arrows[root]))]
        while stack:
            v, it = stack[-1]
            a = next(it, None)
            if a is None:
                color[v] = BLACK
                stack.pop()
                continue
            w = a.target
            if color[w] == GREY:
                cycle = [a.name]
                u = v
                while u != w:
                    cycle.append(via[u].name)
                    u = via[u].source
                return tuple(reversed(cycle))
            if color[w] == WHITE:
                color[w] = GREY
                via[w] = a
                stack.append((w, iter(q.out_arrows[w])))
    return None


def validate(q: Quiver) -> None:
    # re-run the structural checks in case q was built around __post_init__
    Quiver.__post_init__(q)
    cycle = find_cycle(q)
    if cycle is not None:
        raise CycleFound(cycle)


def enumerate_paths(q: Quiver) -> list[Path]:
    """All paths of length >= 1, ordered by length, then lexicographically by
    arrow declaration index."""
    validate(q)
    level = [(a.name,) for a in q.arrows]
    paths = []
    while level:
        paths.extend(level)
        level = [p + (a.name,) for p in level for a in q.out_arrows[q.target(p)]]
    return paths


def quiver_length(q: Quiver) -> int:
    if q.is_empty:
        raise EmptyQuiver("quiver has no arrows")
    return len(enumerate_paths(q)[-1])


def starting_set(q: Quiver) -> tuple[str, ...]:
    """Arrows that begin a path of maximal length.

    For a quiver of length 1 every arrow is returned (each arrow is itself a
    maximal path); the soliton recursion never asks for this case.
    """
    m = quiver_length(q)
    firsts = {p[0] for p in enumerate_paths(q) if len(p) == m}
    return tuple(a.name for a in q.arrows if a.name in firsts)


def reduced_quiver(q: Quiver, check: bool = True) -> Quiver:
    """The quiver on the same vertices with the starting arrows removed and
    each composite ``a.b`` (a starting, b any arrow) added as a new arrow."""
    m = quiver_length(q)
    if m < 2:
        raise LengthOne("reduction needs a quiver of length >= 2")
    S = set(starting_set(q))
    kept = [a for a in q.arrows if a.name not in S]
    composites = [
        Arrow(f"{a.name}.{b.name}", a.source, b.target, a.word + b.word)
        for a in q.arrows
        if a.name in S
        for b in q.out_arrows[a.target]
    ]
    qp = Quiver(q.vertices, tuple(kept + composites))
    if check:
        check_reduction(q, qp)
    return qp


def check_reduction(q: Quiver, qp: Quiver) -> None:
    """Path(Q) = S ⊔ Path(Q') as words, and the length drops by exactly one."""
    S = starting_set(q)
    words = [q.word(p) for p in enumerate_paths(q)]
    s_words = [q.arrow_by_name[a].word for a in S]
    qp_words = [qp.word(p) for p in enumerate_paths(qp)]
    if len(set(qp_words)) != len(qp_words) or set(s_words) & set(qp_words):
        raise MathCheckFailure("S and Path(Q') are not disjoint")
    if sorted(words) != sorted(s_words + qp_words):
        raise MathCheckFailure("Path(Q) != S ⊔ Path(Q')")
    if quiver_length(qp) != quiver_length(q) - 1:
        raise MathCheckFailure("reduced quiver length is not m - 1")


@dataclass(frozen=True)
class PartitionBlock:
    vertex: str
    starting: tuple[Path, ...]
    p1: tuple[Path, ...]
    p2: tuple[Path, ...]


@dataclass(frozen=True)
class QuiverPartition:
    """Path(Q) split into S, P1, P2, P0; paths are in Q's own arrow names."""

    starting_set: tuple[str, ...]
    reduced: Quiver
    blocks: tuple[PartitionBlock, ...]
    p0: tuple[Path, ...]

    @property
    def target_vertices(self) -> tuple[str, ...]:
        return tuple(b.vertex for b in self.blocks)

    @property
    def p1(self) -> tuple[Path, ...]:
        return tuple(p for b in self.blocks for p in b.p1)

    @property
    def p2(self) -> tuple[Path, ...]:
        return tuple(p for b in self.blocks for p in b.p2)

    def block_of(self, path: Path) -> tuple[str, Optional[PartitionBlock]]:
        """Which part ('S', 'P1', 'P2', 'P0') a path lies in, and its block."""
        for b in self.blocks:
            if path in b.starting:
                return "S", b
            if path in b.p1:
                return "P1", b
            if path in b.p2:
                return "P2", b
        return "P0", None


def lift_paths(q: Quiver, qp: Quiver) -> dict[Path, Path]:
    """Map each path of the reduced quiver to the same path written in Q's arrows."""
    by_word = {q.word(p): p for p in enumerate_paths(q)}
    return {p: by_word[qp.word(p)] for p in enumerate_paths(qp)}


def partition(q: Quiver, qp: Optional[Quiver] = None) -> QuiverPartition:
    if qp is None:
        qp = reduced_quiver(q)
    S = starting_set(q)
    lift = lift_paths(q, qp)
    qp_paths = [lift[p] for p in enumerate_paths(qp)]

    v_s = list(dict.fromkeys(q.arrow_by_name[a].target for a in S))
    blocks = []
    for v in v_s:
        s_j = tuple((a,) for a in S if q.arrow_by_name[a].target == v)
        p1_j = tuple(x for x in qp_paths if q.source(x) == v)
        p1_set = set(p1_j)
        p2_j = tuple(
            x for x in qp_paths if (x[0],) in s_j and x[1:] in p1_set
        )
        blocks.append(PartitionBlock(v, s_j, p1_j, p2_j))
    used = {x for b in blocks for x in b.p1 + b.p2}
    p0 = tuple(x for x in qp_paths if x not in used)
    part = QuiverPartition(S, qp, tuple(blocks), p0)
    _check_partition(q, part)
    return part


def _check_partition(q: Quiver, part: QuiverPartition) -> None:
    pieces = [(a,) for a in part.starting_set] + list(part.p1) + list(part.p2) + list(part.p0)
    if len(pieces) != len(set(pieces)) or set(pieces) != set(enumerate_paths(q)):
        raise MathCheckFailure("S, P1, P2, P0 do not partition Path(Q)")
    for b in part.blocks:
        p1 = set(b.p1)
        for x in b.p2:
            factorizations = [
                k for k in range(1, len(x)) if x[:k] in b.starting and x[k:] in p1
            ]
            if factorizations != [1]:
                raise MathCheckFailure(f"{x} does not factor uniquely as a·y")


@dataclass(frozen=True)
class ArrowPermutation:
    """A bijection of the arrow set, stored as (arrow, image) pairs."""

    pairs: tuple[tuple[str, str], ...]

    @classmethod
    def from_dict(cls, q: Quiver, mapping: dict[str, str]) -> "ArrowPermutation":
        return cls(tuple((a.name, mapping.get(a.name, a.name)) for a in q.arrows))

    @classmethod
    def identity(cls, q: Quiver) -> "ArrowPermutation":
        return cls.from_dict(q, {})

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.pairs)

    def __call__(self, arrow: str) -> str:
        return self.mapping[arrow]

    def compose(self, other: "ArrowPermutation") -> "ArrowPermutation":
        """``self ∘ other``."""
        return ArrowPermutation(tuple((a, self(b)) for a, b in other.pairs))

    def inverse(self) -> "ArrowPermutation":
        inv = {b: a for a, b in self.pairs}
        return ArrowPermutation(tuple((a, inv[a]) for a, _ in self.pairs))

    @property
    def is_identity(self) -> bool:
        return all(a == b for a, b in self.pairs)

    def cycles(self) -> list[tuple[str, ...]]:
        """Nontrivial cycles, each starting at its first arrow in declaration order."""
        seen, out = set(), []
        for a, _ in self.pairs:
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = self(a)
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self(b)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + " ".join(c) + ")" for c in cyc)


def _relation(q: Quiver) -> list[list[bool]]:
    """rel[i][j] is True iff arrow j can follow arrow i."""
    return [[a.target == b.source for b in q.arrows] for a in q.arrows]


def _search(rel: list[list[bool]], colors: Sequence) -> Iterator[list[int]]:
    """Backtracking over bijections that preserve ``rel`` and ``colors``."""
    n = len(rel)
    outdeg = [sum(r) for r in rel]
    indeg = [sum(rel[i][j] for i in range(n)) for j in range(n)]
    sig = [(colors[i], outdeg[i], indeg[i], rel[i][i]) for i in range(n)]
    # most constrained arrows first
    order = sorted(range(n), key=lambda i: (-(outdeg[i] + indeg[i]), i))
    image = [-1] * n
    used = [False] * n

    def extend(depth):
        if depth == n:
            yield list(image)
            return
        i = order[depth]
        for c in range(n):
            if used[c] or sig[c] != sig[i]:
                continue
            ok = True
            for d in range(depth):
                j = order[d]
                fj = image[j]
                if rel[i][j] != rel[c][fj] or rel[j][i] != rel[fj][c]:
                    ok = False
                    break
            if not ok:
                continue
            image[i] = c
            used[c] = True
            yield from extend(depth + 1)
            used[c] = False
            image[i] = -1

    yield from extend(0)


def is_automorphism(q: Quiver, f: ArrowPermutation) -> bool:
    names = [a.name for a in q.arrows]
    if sorted(f.mapping) != sorted(names) or sorted(f.mapping.values()) != sorted(names):
        return False
    ab = q.arrow_by_name
    return all(
        (ab[x].target == ab[y].source) == (ab[f(x)].target == ab[f(y)].source)
        for x in names
        for y in names
    )


def automorphisms(q: Quiver, limit: Optional[int] = None) -> list[ArrowPermutation]:
    """Every arrow bijection preserving composability in both directions.

    The group can be factorially large (parallel arrows); pass ``limit`` to
    raise instead of enumerating past that many elements.
    """
    names = [a.name for a in q.arrows]
    out = []
    for img in _search(_relation(q), [0] * len(names)):
        out.append(ArrowPermutation(tuple((names[i], names[img[i]]) for i in range(len(names)))))
        if limit is not None and len(out) > limit:
            raise OverflowError(f"more than {limit} automorphisms")
    out.sort(key=lambda f: (not f.is_identity, [q.arrow_index[b] for _, b in f.pairs]))
    return out


def _twin_classes(q: Quiver) -> list[list[int]]:
    """Arrows with identical rows and columns in the composability relation.

    Swapping two such arrows is always an automorphism.
    """
    rel = _relation(q)
    n = len(rel)
    classes: dict[tuple, list[int]] = {}
    for i in range(n):
        key = (tuple(rel[i]), tuple(rel[j][i] for j in range(n)))
        classes.setdefault(key, []).append(i)
    return list(classes.values())


def _quotient_automorphisms(q: Quiver) -> tuple[list[list[int]], list[list[int]]]:
    classes = _twin_classes(q)
    rel = _relation(q)
    reps = [c[0] for c in classes]
    qrel = [[rel[a][b] for b in reps] for a in reps]
    return classes, list(_search(qrel, [len(c) for c in classes]))


def automorphism_group_order(q: Quiver) -> int:
    """|Aut(Q)| = (product of twin-class factorials) × |automorphisms of the quotient|."""
    classes, quotient = _quotient_automorphisms(q)
    return math.prod(math.factorial(len(c)) for c in classes) * len(quotient)


def automorphism_generators(q: Quiver) -> list[ArrowPermutation]:
    """A generating set of Aut(Q): adjacent transpositions inside each twin
    class, plus a lift of every automorphism of the twin quotient.

    Invariance under these is equivalent to invariance under the whole group,
    which is what the certificate checks use when the group is large.
    """
    names = [a.name for a in q.arrows]
    classes, quotient = _quotient_automorphisms(q)
    gens = []
    for c in classes:
        for i, j in zip(c, c[1:]):
            gens.append(ArrowPermutation.from_dict(q, {names[i]: names[j], names[j]: names[i]}))
    for perm in quotient:
        mapping = {}
        for k, c in enumerate(classes):
            for i, j in zip(c, classes[perm[k]]):
                mapping[names[i]] = names[j]
        f = ArrowPermutation.from_dict(q, mapping)
        if not f.is_identity:
            gens.append(f)
    return gens


def apply_automorphism(f: ArrowPermutation, x: Path) -> Path:
    return tuple(f(a) for a in x)


def swap_automorphism(qp: Quiver, a: Arrow, x: Path) -> ArrowPermutation:
    """The involution of the reduced quiver exchanging x₁ and a·x₁, which
    sends the path x = x₁⋯x_r to a·x.

    ``a`` is a starting arrow of the parent quiver; ``x`` is a path of ``qp``.
    """
    if not qp.is_path(x):
        raise NotComposable(f"{x} is not a path of the reduced quiver")
    if a.target != qp.source(x):
        raise NotComposable(f"t({a.name}) = {a.target} but s(x) = {qp.source(x)}")
    x1 = qp.arrow_by_name[x[0]]
    want = a.word + x1.word
    partner = next((b for b in qp.arrows if b.word == want), None)
    if partner is None:
        raise NotComposable(f"{a.name}·{x1.name} is not an arrow of the reduced quiver")
    return ArrowPermutation.from_dict(qp, {x1.name: partner.name, partner.name: x1.name})


def close_group(q: Quiver, gens: Iterable[ArrowPermutation], limit: int = 100_000) -> set[ArrowPermutation]:
    """Group generated by ``gens`` (breadth-first closure)."""
    gens = list(gens)
    ident = ArrowPermutation.identity(q)
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = h.compose(g)
                if k not in group:
                    group.add(k)
                    nxt.append(k)
                    if len(group) > limit:
                        raise OverflowError(f"group larger than {limit}")
        frontier = nxt
    return group


def restrict_to_reduced(q: Quiver, qp: Quiver, f: ArrowPermutation) -> ArrowPermutation:
    """The permutation of Q' arrows induced by an automorphism of Q.

    Raises MathCheckFailure if f does not map the arrows of Q' onto arrows of Q'.
    """
    by_word = {q.word(p): p for p in enumerate_paths(q)}
    qp_by_word = {a.word: a.name for a in qp.arrows}
    mapping = {}
    for b in qp.arrows:
        image = q.word(apply_automorphism(f, by_word[b.word]))
        if image not in qp_by_word:
            raise MathCheckFailure(f"{f} sends arrow {b.name} of Q' outside E'")
        mapping[b.name] = qp_by_word[image]
    return ArrowPermutation.from_dict(qp, mapping)
