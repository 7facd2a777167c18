"""Independent reference computations used only by the tests."""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement, permutations
from math import gcd

import numpy as np


def det(m) -> int:
    """Exact integer determinant by permutation expansion (small matrices only)."""
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for a, b in combinations(perm, 2) if a > b)
        prod = 1
        for i, j in enumerate(perm):
            prod *= m[i][j]
        total += -prod if inv % 2 else prod
    return total


def invariant_factors(m) -> list[int]:
    """Invariant factors from determinantal divisors d_k = gcd of k x k minors."""
    rows, cols = len(m), (len(m[0]) if m else 0)
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def _circle_triangles(w: int) -> list[frozenset]:
    """Maximal simplices of a wedge of w hollow triangles glued at vertex 0."""
    edges = []
    for t in range(w):
        a, b = 2 * t + 1, 2 * t + 2
        edges += [frozenset({0, a}), frozenset({a, b}), frozenset({0, b})]
    return edges


def _simplices(maximal, m: int) -> list[tuple[int, ...]]:
    """m-simplices of the simplicial set of an ordered simplicial complex."""
    verts = sorted(set().union(*maximal)) if maximal else [0]
    out = set()
    for seq in combinations_with_replacement(verts, m + 1):
        if any(set(seq) <= s for s in maximal) or len(set(seq)) == 1:
            out.add(seq)
    return sorted(out)


def _degenerate(ms) -> bool:
    m = len(ms[0]) - 1
    return any(all(x[i] == x[i + 1] for x in ms) for i in range(m))


def _face(ms, i):
    return tuple(sorted(x[:i] + x[i + 1:] for x in ms))


def symmetric_product_betti(w: int, n: int) -> list[int]:
    """Rational Betti numbers of SP^n of a wedge of w circles, by brute force.

    SP^n of a simplicial set has m-simplices the multisets of n m-simplices;
    homology comes from the normalized chain complex.
    """
    maximal = _circle_triangles(w)
    top = n + 1
    cells = {}
    for m in range(top + 1):
        simp = _simplices(maximal, m)
        cells[m] = [ms for ms in combinations_with_replacement(simp, n)
                    if not _degenerate(ms)]
    index = {m: {c: i for i, c in enumerate(cs)} for m, cs in cells.items()}
    ranks = {}
    for m in range(1, top + 1):
        mat = np.zeros((len(cells[m - 1]), len(cells[m])))
        for j, ms in enumerate(cells[m]):
            for i in range(m + 1):
                f = _face(ms, i)
                if f in index[m - 1]:
                    mat[index[m - 1][f], j] += (-1) ** i
        ranks[m] = int(np.linalg.matrix_rank(mat)) if mat.size else 0
    ranks[0] = 0
    ranks[top + 1] = 0
    return [len(cells[q]) - ranks[q] - ranks[q + 1] for q in range(n + 1)]
