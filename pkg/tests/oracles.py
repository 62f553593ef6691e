"""Brute-force oracles.  They share no code paths with the library beyond
the Quiver container itself."""

from itertools import permutations

import numpy as np


def composable(q, seq):
    ab = {a.name: a for a in q.arrows}
    return all(ab[x].target == ab[y].source for x, y in zip(seq, seq[1:]))


def all_paths_brute(q):
    """Every composable sequence of distinct arrows (acyclic: no repeats possible)."""
    names = [a.name for a in q.arrows]
    out = set()
    for k in range(1, len(names) + 1):
        for seq in permutations(names, k):
            if composable(q, seq):
                out.add(seq)
    return out


def automorphisms_brute(q):
    names = [a.name for a in q.arrows]
    ab = {a.name: a for a in q.arrows}
    out = []
    for img in permutations(names):
        f = dict(zip(names, img))
        if all(
            (ab[x].target == ab[y].source) == (ab[f[x]].target == ab[f[y]].source)
            for x in names
            for y in names
        ):
            out.append(f)
    return out


def bracket_brute(q, x, y):
    """[x, y] straight from the definition x·y - y·x on sequences."""
    ab = {a.name: a for a in q.arrows}
    terms = {}
    if ab[x[-1]].target == ab[y[0]].source:
        terms[x + y] = terms.get(x + y, 0) + 1
    if ab[y[-1]].target == ab[x[0]].source:
        terms[y + x] = terms.get(y + x, 0) - 1
    return {k: v for k, v in terms.items() if v}


def levi_civita_ricci(basis, brackets, norms_squared):
    """Ricci operator in the orthonormal basis x_i/|x_i|, in floats, from the
    Koszul formula and R(X,Y) = [∇_X, ∇_Y] - ∇_[X,Y], Ric(X) = Σ R(X,e_i)e_i.

    ``brackets`` maps (i, j) -> {k: coeff} for the unnormalized basis.
    """
    n = len(basis)
    norms = np.sqrt(np.array([float(v) for v in norms_squared]))
    C = np.zeros((n, n, n))
    for (i, j), out in brackets.items():
        for k, c in out.items():
            C[i, j, k] = c * norms[k] / (norms[i] * norms[j])
    # Γ[i, j, k] = <∇_{e_i} e_j, e_k>
    G = 0.5 * (C + np.einsum("kij->ijk", C) + np.einsum("kji->ijk", C))
    L = [G[i].T for i in range(n)]  # L[i] @ e_j = ∇_{e_i} e_j
    ric = np.zeros((n, n))
    for a in range(n):
        for i in range(n):
            R = L[a] @ L[i] - L[i] @ L[a] - sum(C[a, i, c] * L[c] for c in range(n))
            ric[:, a] += R[:, i]
    return ric
