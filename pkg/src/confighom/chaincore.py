"""Exact homology of finite chain complexes.

Boundary matrices hold Python integers (numpy ``object`` arrays) so that
elimination never overflows.  Homology over the integers goes through the
Smith normal form; over prime fields and the rationals only ranks are needed.

Example: the cellular complex of RP^2 (one cell per degree, d(sigma^2) =
2 sigma^1)::

    >>> c = ChainComplex.from_matrices(
    ...     {0: ["a"], 1: ["b"], 2: ["c"]}, {2: [[2]]})
    >>> homology(c, Z).describe()
    'H_0 = Z, H_1 = Z/2'
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import MalformedComplexError

__all__ = [
    "Coefficients",
    "Z",
    "Q",
    "F2",
    "Fp",
    "GradedGroup",
    "ChainComplex",
    "smith_normal_form",
    "matrix_rank",
    "homology",
    "relative_homology",
    "direct_sum",
    "tensor",
    "shift",
    "table_algebra",
    "point",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Coefficients:
    """Coefficient ring: the integers, the rationals or a prime field."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"Fp needs a prime characteristic, got {self.p}")
        elif self.p is not None:
            raise ValueError(f"{self.kind} takes no characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    def __str__(self) -> str:
        return f"Fp:{self.p}" if self.kind == "Fp" else self.kind

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        """Parse ``Z``, ``Q``, ``F2``, ``Fp:5`` or ``F5``."""
        t = text.strip()
        if t in ("Z", "Q"):
            return cls(t)
        if t.startswith("Fp:"):
            return cls("Fp", int(t[3:]))
        if t.startswith("F") and t[1:].isdigit():
            return cls("Fp", int(t[1:]))
        raise ValueError(f"cannot parse coefficients {text!r}")

    def pretty(self) -> str:
        return f"F{self.p}" if self.kind == "Fp" else self.kind


Z = Coefficients("Z")
Q = Coefficients("Q")
F2 = Coefficients("Fp", 2)


def Fp(p: int) -> Coefficients:
    return Coefficients("Fp", p)


def _prime_powers(n: int) -> list[tuple[int, int]]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 1
    if n > 1:
        out.append((n, 1))
    return out


def _invariant_factor_form(torsion: Iterable[int]) -> tuple[int, ...]:
    # split into elementary divisors, then regroup so each factor divides the next
    by_prime: dict[int, list[int]] = {}
    for t in torsion:
        t = int(t)
        if t < 2:
            raise ValueError(f"torsion coefficients must be >= 2, got {t}")
        for prime, e in _prime_powers(t):
            by_prime.setdefault(prime, []).append(e)
    if not by_prime:
        return ()
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for prime, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for i, e in enumerate(exps):
            factors[length - 1 - i] *= prime**e
    return tuple(f for f in factors if f > 1)


@dataclass(frozen=True)
class GradedGroup:
    """Finitely supported graded group: ``degree -> (free rank, torsion)``.

    Over a field the torsion lists are empty and the rank is a dimension.
    ``reduced`` records whether degree 0 carries reduced homology.
    """

    entries: Mapping[int, tuple[int, tuple[int, ...]]]
    coefficients: Coefficients = Z
    reduced: bool = False

    def __post_init__(self):
        clean: dict[int, tuple[int, tuple[int, ...]]] = {}
        for deg, val in self.entries.items():
            if isinstance(val, int):
                rank, tors = val, ()
            else:
                rank, tors = val
            deg, rank = int(deg), int(rank)
            if deg < 0:
                raise ValueError(f"negative degree {deg}")
            if rank < 0:
                raise ValueError(f"negative rank in degree {deg}")
            tors = _invariant_factor_form(tors)
            if tors and self.coefficients.is_field:
                raise ValueError("torsion is not allowed over a field")
            if rank or tors:
                clean[deg] = (rank, tors)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def from_dims(cls, dims: Mapping[int, int] | Sequence[int],
                  coefficients: Coefficients = F2, reduced: bool = False
                  ) -> "GradedGroup":
        if not isinstance(dims, Mapping):
            dims = dict(enumerate(dims))
        return cls({q: (r, ()) for q, r in dims.items()}, coefficients, reduced)

    def rank(self, q: int) -> int:
        return self.entries.get(q, (0, ()))[0]

    dim = rank

    def torsion(self, q: int) -> tuple[int, ...]:
        return self.entries.get(q, (0, ()))[1]

    def degrees(self) -> list[int]:
        return list(self.entries)

    def dims(self) -> dict[int, int]:
        return {q: r for q, (r, _) in self.entries.items()}

    def as_list(self, top: int | None = None) -> list[int]:
        """Ranks in degrees ``0..top`` (default: the top nonzero degree)."""
        if top is None:
            top = self.top_degree()
        if top is None:
            return []
        return [self.rank(q) for q in range(top + 1)]

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def total_rank(self) -> int:
        return sum(r for r, _ in self.entries.values())

    def top_degree(self) -> int | None:
        return max(self.entries) if self.entries else None

    def bottom_degree(self) -> int | None:
        return min(self.entries) if self.entries else None

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * r for q, (r, _) in self.entries.items())

    def with_coefficients(self, coefficients: Coefficients) -> "GradedGroup":
        return GradedGroup(self.entries, coefficients, self.reduced)

    def to_reduced(self) -> "GradedGroup":
        """Drop one copy of the ground ring from degree 0."""
        if self.reduced:
            return self
        entries = dict(self.entries)
        rank, tors = entries.get(0, (0, ()))
        if rank < 1:
            raise ValueError("no degree-0 class to remove")
        entries[0] = (rank - 1, tors)
        return GradedGroup(entries, self.coefficients, True)

    def describe(self, symbol: str = "H_") -> str:
        if not self.entries:
            return "0"
        ring = self.coefficients.pretty()
        parts = []
        for q, (r, tors) in self.entries.items():
            summands = []
            if r == 1:
                summands.append(ring)
            elif r > 1:
                summands.append(f"{ring}^{r}")
            summands += [f"Z/{t}" for t in tors]
            parts.append(f"{symbol}{q} = " + " + ".join(summands))
        return ", ".join(parts)

    # serialization

    def to_dict(self) -> dict:
        return {
            "coefficients": str(self.coefficients),
            "reduced": self.reduced,
            "entries": [
                {"degree": q, "rank": r, "torsion": list(t)}
                for q, (r, t) in self.entries.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "GradedGroup":
        coeffs = Coefficients.parse(data["coefficients"])
        entries = {}
        for item in data.get("entries", []):
            q = int(item["degree"])
            if q in entries:
                raise ValueError(f"duplicate degree {q} in table")
            entries[q] = (int(item["rank"]), tuple(item.get("torsion", [])))
        return cls(entries, coeffs, bool(data.get("reduced", False)))

    @classmethod
    def from_json(cls, text: str) -> "GradedGroup":
        return cls.from_dict(json.loads(text))


def point(coefficients: Coefficients = F2) -> GradedGroup:
    """Homology (or cohomology) of a point."""
    return GradedGroup({0: (1, ())}, coefficients)


def _as_int_matrix(m, rows: int, cols: int) -> np.ndarray:
    a = np.array(m, dtype=object) if not isinstance(m, np.ndarray) else m.astype(object)
    if a.size == 0:
        a = np.zeros((rows, cols), dtype=object)
    a = a.reshape(rows, cols)
    return np.vectorize(int, otypes=[object])(a) if a.size else a


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Finite chain complex with labelled bases and integer boundary maps.

    ``boundaries[q]`` has shape ``(len(basis[q-1]), len(basis[q]))``; missing
    degrees are zero maps.  Construction checks shapes and d∘d = 0.
    """

    basis: Mapping[int, tuple]
    boundaries: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        basis = {int(q): tuple(b) for q, b in self.basis.items() if len(b)}
        for q in basis:
            if q < 0:
                raise MalformedComplexError(f"negative degree {q}")
        bds = {}
        for q, m in self.boundaries.items():
            q = int(q)
            rows, cols = len(basis.get(q - 1, ())), len(basis.get(q, ()))
            a = np.asarray(m, dtype=object)
            if a.size == 0:
                continue
            if a.shape != (rows, cols):
                raise MalformedComplexError(
                    f"boundary in degree {q} has shape {a.shape}, expected {(rows, cols)}")
            if any(v != 0 for v in a.flat):
                bds[q] = _as_int_matrix(a, rows, cols)
        object.__setattr__(self, "basis", dict(sorted(basis.items())))
        object.__setattr__(self, "boundaries", bds)
        for q in bds:
            if q + 1 in bds:
                comp = bds[q].dot(bds[q + 1])
                if any(v != 0 for v in comp.flat):
                    raise MalformedComplexError(f"d o d != 0 from degree {q + 1}")

    @classmethod
    def from_matrices(cls, basis: Mapping[int, Sequence],
                      boundaries: Mapping[int, Sequence]) -> "ChainComplex":
        return cls(basis, {q: np.array(m, dtype=object) for q, m in boundaries.items()})

    def size(self, q: int) -> int:
        return len(self.basis.get(q, ()))

    def labels(self, q: int) -> tuple:
        return self.basis.get(q, ())

    def degrees(self) -> list[int]:
        return list(self.basis)

    def boundary(self, q: int) -> np.ndarray:
        """Boundary matrix from degree ``q`` to ``q - 1`` (zero if unset)."""
        if q in self.boundaries:
            return self.boundaries[q]
        return np.zeros((self.size(q - 1), self.size(q)), dtype=object)

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * len(b) for q, b in self.basis.items())

    def cell_counts(self) -> dict[int, int]:
        return {q: len(b) for q, b in self.basis.items()}

    def subcomplex_closed(self, sub: Mapping[int, Iterable]) -> bool:
        """True if the boundary of every cell in ``sub`` is supported on ``sub``."""
        for q, cells in sub.items():
            cells = set(cells)
            if not cells or q - 1 not in self.basis:
                continue
            below = set(sub.get(q - 1, ()))
            d = self.boundary(q)
            lab_lo = self.labels(q - 1)
            for j, lab in enumerate(self.labels(q)):
                if lab not in cells:
                    continue
                for i, v in enumerate(d[:, j]):
                    if v != 0 and lab_lo[i] not in below:
                        return False
        return True

    def quotient(self, sub: Mapping[int, Iterable]) -> "ChainComplex":
        """Quotient by the subcomplex spanned by ``sub`` (must be closed)."""
        known = {q: set(b) for q, b in self.basis.items()}
        for q, cells in sub.items():
            missing = set(cells) - known.get(q, set())
            if missing:
                raise MalformedComplexError(f"unknown cells in degree {q}: {sorted(map(str, missing))}")
        if not self.subcomplex_closed(sub):
            raise MalformedComplexError("sub-basis is not closed under the boundary")
        keep = {}
        for q, labs in self.basis.items():
            drop = set(sub.get(q, ()))
            keep[q] = [i for i, lab in enumerate(labs) if lab not in drop]
        basis = {q: [self.basis[q][i] for i in idx] for q, idx in keep.items()}
        bds = {}
        for q, m in self.boundaries.items():
            bds[q] = m[np.ix_(keep.get(q - 1, []), keep.get(q, []))]
        return ChainComplex(basis, bds)


def smith_normal_form(m) -> tuple[list[int], int]:
    """Invariant factors of an integer matrix.

    Returns ``(diagonal, rank)`` where ``diagonal`` has ``min(rows, cols)``
    non-negative entries with d_1 | d_2 | ... and the nonzero ones first.

    >>> smith_normal_form([[2, 4], [6, 8]])
    ([2, 4], 2)
    """
    a = np.asarray(m, dtype=object)
    if a.ndim != 2:
        a = a.reshape(0, 0) if a.size == 0 else a.reshape(1, -1)
    rows, cols = a.shape
    A = [[int(x) for x in row] for row in a.tolist()]
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            Ai = A[i]
            for j in range(t, cols):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                v = A[i][t]
                if v:
                    q = v // p
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, cols):
                            Ai[j] -= q * At[j]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, cols):
                v = A[t][j]
                if v:
                    q = v // p
                    if q:
                        for row in A[t:]:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                break
            # a smaller remainder exists in row/column t: move it to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, cols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, pi, pj = best
            A[t], A[pi] = A[pi], A[t]
            if pj != t:
                for row in A:
                    row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    rank = len(diag)
    # restore the divisibility chain with gcd/lcm swaps
    for i in range(rank):
        for j in range(i + 1, rank):
            g = math.gcd(diag[i], diag[j])
            if g != diag[i]:
                diag[i], diag[j] = g, diag[i] * diag[j] // g
    return diag + [0] * (min(rows, cols) - rank), rank


def _rank_mod_p(a: np.ndarray, p: int) -> int:
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return 0
    M = np.array([[int(x) % p for x in row] for row in a.tolist()], dtype=np.int64)
    rank = 0
    for c in range(cols):
        nz = np.nonzero(M[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, c]), -1, p)
        M[rank] = (M[rank] * inv) % p
        others = np.nonzero(M[:, c])[0]
        others = others[others != rank]
        if others.size:
            M[others] = (M[others] - np.outer(M[others, c], M[rank])) % p
        rank += 1
        if rank == rows:
            break
    return rank


def matrix_rank(m, coefficients: Coefficients = Q) -> int:
    """Exact rank over Q (or Z) or over a prime field."""
    a = np.asarray(m, dtype=object)
    if a.size == 0:
        return 0
    if coefficients.kind == "Fp":
        return _rank_mod_p(a, coefficients.p)
    return smith_normal_form(a)[1]


def homology(c: ChainComplex, coeffs: Coefficients = Z) -> GradedGroup:
    """Homology ``ker d_q / im d_{q+1}`` of a finite complex."""
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    for q in c.boundaries:
        d = c.boundary(q)
        if coeffs.kind == "Fp":
            ranks[q] = _rank_mod_p(d, coeffs.p)
        else:
            diag, rk = smith_normal_form(d)
            ranks[q] = rk
            if coeffs.kind == "Z":
                torsion[q - 1] = tuple(x for x in diag[:rk] if x > 1)
    entries = {}
    for q in c.degrees():
        free = c.size(q) - ranks.get(q, 0) - ranks.get(q + 1, 0)
        entries[q] = (free, torsion.get(q, ()))
    return GradedGroup(entries, coeffs)


def relative_homology(c: ChainComplex, sub_basis: Mapping[int, Iterable],
                      coeffs: Coefficients = Z) -> GradedGroup:
    """Homology of the quotient of ``c`` by the subcomplex on ``sub_basis``."""
    return homology(c.quotient(sub_basis), coeffs)


# graded table arithmetic

def _check_same_ring(a: GradedGroup, b: GradedGroup) -> None:
    if a.coefficients != b.coefficients:
        raise ValueError(f"coefficient mismatch: {a.coefficients} vs {b.coefficients}")


def direct_sum(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    _check_same_ring(a, b)
    entries = {}
    for q in set(a.entries) | set(b.entries):
        entries[q] = (a.rank(q) + b.rank(q), a.torsion(q) + b.torsion(q))
    return GradedGroup(entries, a.coefficients, a.reduced and b.reduced)


def tensor(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    """Graded tensor product; over Z only torsion-free tables (no Tor terms)."""
    _check_same_ring(a, b)
    if a.coefficients.kind == "Z" and any(
            t for g in (a, b) for _, t in g.entries.values()):
        raise ValueError("tensor over Z with torsion would need Tor terms")
    entries: dict[int, int] = {}
    for i, (ra, _) in a.entries.items():
        for j, (rb, _) in b.entries.items():
            entries[i + j] = entries.get(i + j, 0) + ra * rb
    return GradedGroup({q: (r, ()) for q, r in entries.items()},
                       a.coefficients, a.reduced or b.reduced)


def shift(a: GradedGroup, k: int) -> GradedGroup:
    """Raise every degree by ``k``; entries pushed below degree 0 vanish."""
    return GradedGroup({q + k: v for q, v in a.entries.items() if q + k >= 0},
                       a.coefficients, a.reduced)


def table_algebra(a: GradedGroup, b: GradedGroup | None, op) -> GradedGroup:
    """Dispatch ``direct_sum``, ``tensor`` or ``("shift", k)``."""
    if op == "direct_sum":
        return direct_sum(a, b)
    if op == "tensor":
        return tensor(a, b)
    if isinstance(op, tuple) and op[0] == "shift":
        return shift(a, op[1])
    raise ValueError(f"unknown table operation {op!r}")
