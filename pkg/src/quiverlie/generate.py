"""Pseudo-random acyclic quivers.

Vertices are shuffled into a random topological order and every arrow points
forward along it, so acyclicity holds by construction.  Parallel arrows are
allowed.
"""

import random
import string
from fractions import Fraction

from .quiver import Arrow, Quiver


def _arrow_names(m: int) -> list[str]:
    if m <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:m])
    return [f"e{i}" for i in range(1, m + 1)]


def random_quiver(rng: random.Random, n_vertices: int, n_arrows: int) -> Quiver:
    if n_vertices < 1 or n_arrows < 0:
        raise ValueError("need at least one vertex and a non-negative arrow count")
    if n_arrows and n_vertices < 2:
        raise ValueError("an acyclic quiver with arrows needs at least two vertices")
    vertices = [f"v{i}" for i in range(1, n_vertices + 1)]
    order = vertices[:]
    rng.shuffle(order)
    arrows = []
    for name in _arrow_names(n_arrows):
        i, j = sorted(rng.sample(range(n_vertices), 2))
        arrows.append(Arrow(name, order[i], order[j]))
    return Quiver(tuple(vertices), tuple(arrows))


def random_corpus(count: int, max_vertices: int = 6, max_arrows: int = 10, seed: int = 0) -> list[Quiver]:
    """``count`` quivers with sizes drawn uniformly from [2, max_vertices] × [1, max_arrows]."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, max_vertices)
        m = rng.randint(1, max_arrows)
        out.append(random_quiver(rng, n, m))
    return out


def random_metric_values(rng: random.Random, n: int, max_num: int = 9, max_den: int = 5):
    return tuple(Fraction(rng.randint(1, max_num), rng.randint(1, max_den)) for _ in range(n))
