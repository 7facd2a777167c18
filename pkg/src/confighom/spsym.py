"""Symmetric products of two-dimensional complexes.

For X a bouquet of ``w`` circles with ``r`` discs attached, SP^n(X) has a
multiplicative cellular model generated under the star product by a 0-cell
``v0``, 1-cells ``e_1..e_w`` and 2s-cells ``SP^s D_j``, subject to

    e_i * e_j = -e_j * e_i,   e_i * e_i = 0,
    SP^s D_j * SP^t D_j = binom(s+t, t) SP^(s+t) D_j.

A cell of SP^n(X) is ``v0^rho * e_I * prod SP^(s_j) D_j`` with total weight
``rho + |I| + sum s_j = n`` and degree ``|I| + 2 sum s_j``.  Boundaries extend
from the generators by the graded Leibniz rule.  ``d e_i = 0`` because X has
a single 0-cell; ``d SP^s D_j`` is supplied by :class:`BoundaryData`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .chaincore import F2, ChainComplex, Coefficients, GradedGroup, Z, homology
from .errors import HypothesisError, MalformedComplexError

__all__ = [
    "SymCell",
    "BoundaryData",
    "TwoComplexPresentation",
    "enumerate_cells",
    "star_product",
    "cell_boundary",
    "sp_chain_complex",
    "sp_homology",
    "mattuck_reduced_sp",
    "steenrod_monotonicity_check",
    "preset",
    "parse_cell",
    "multiplicative_power_rule",
]

Chain = dict  # SymCell -> int


@dataclass(frozen=True, order=True)
class SymCell:
    """``v0^rho * e_{i1} * ... * e_{it} * SP^{s1} D_{j1} * ...``.

    ``e_indices`` is strictly increasing; ``disc_powers`` is a tuple of
    ``(disc, power)`` pairs with increasing disc index and power >= 1.
    """

    rho: int = 0
    e_indices: tuple[int, ...] = ()
    disc_powers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError("rho must be non-negative")
        e = tuple(self.e_indices)
        if any(b <= a for a, b in zip(e, e[1:])):
            raise ValueError(f"e indices must be strictly increasing: {e}")
        dp = tuple((int(j), int(s)) for j, s in self.disc_powers)
        if any(s < 1 for _, s in dp):
            raise ValueError("disc powers must be >= 1")
        if any(b[0] <= a[0] for a, b in zip(dp, dp[1:])):
            raise ValueError(f"disc indices must be strictly increasing: {dp}")
        object.__setattr__(self, "e_indices", e)
        object.__setattr__(self, "disc_powers", dp)

    @property
    def weight(self) -> int:
        return self.rho + len(self.e_indices) + sum(s for _, s in self.disc_powers)

    @property
    def degree(self) -> int:
        return len(self.e_indices) + 2 * sum(s for _, s in self.disc_powers)

    @property
    def label(self) -> str:
        parts = [f"v0^{self.rho}"] if self.rho else []
        parts += [f"e{i}" for i in self.e_indices]
        parts += [f"SP{s}D{j}" for j, s in self.disc_powers]
        return "·".join(parts) if parts else "1"

    def __str__(self) -> str:
        return self.label

    def sort_key(self):
        return (self.degree, -self.rho, self.e_indices, self.disc_powers)


_TOKEN = re.compile(r"^(?:v0\^(\d+)|v0|e(\d+)|SP(\d+)D(\d+)|1)$")


def parse_cell(label: str) -> SymCell:
    """Inverse of :attr:`SymCell.label` (also accepts ``*`` or ``.`` separators)."""
    rho, es, discs = 0, [], {}
    for tok in re.split(r"[·*.]", label.strip()):
        m = _TOKEN.match(tok.strip())
        if not m:
            raise ValueError(f"bad cell token {tok!r} in {label!r}")
        if tok.startswith("v0"):
            rho += int(m.group(1) or 1)
        elif m.group(2):
            es.append(int(m.group(2)))
        elif m.group(3):
            j = int(m.group(4))
            if j in discs:
                raise ValueError(f"disc {j} repeated in {label!r}")
            discs[j] = int(m.group(3))
    if len(set(es)) != len(es) or es != sorted(es):
        raise ValueError(f"e indices in {label!r} must be increasing and distinct")
    return SymCell(rho, tuple(es), tuple(sorted(discs.items())))


def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for a, b in combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def _cell_product(a: SymCell, b: SymCell) -> tuple[int, SymCell | None]:
    es = a.e_indices + b.e_indices
    if len(set(es)) != len(es):
        return 0, None
    sign = _perm_sign(es)
    coeff = sign
    discs = dict(a.disc_powers)
    for j, t in b.disc_powers:
        s = discs.get(j, 0)
        if s:
            coeff *= comb(s + t, t)
        discs[j] = s + t
    return coeff, SymCell(a.rho + b.rho, tuple(sorted(es)), tuple(sorted(discs.items())))


Operand = Union[SymCell, Mapping[SymCell, int]]


def _as_chain(x: Operand) -> Chain:
    return {x: 1} if isinstance(x, SymCell) else dict(x)


def star_product(a: Operand, b: Operand) -> Chain:
    """Bilinear star product of cells or chains (zero terms dropped)."""
    out: Chain = {}
    for ca, xa in _as_chain(a).items():
        if not xa:
            continue
        for cb, xb in _as_chain(b).items():
            if not xb:
                continue
            coeff, cell = _cell_product(ca, cb)
            if coeff:
                out[cell] = out.get(cell, 0) + coeff * xa * xb
    return {c: v for c, v in out.items() if v}


@dataclass(frozen=True)
class BoundaryData:
    """Boundaries of the disc-power generators.

    ``disc_attach[j-1][i-1]`` is the coefficient of ``e_i`` in d(D_j).  With
    ``higher_power_rule == "zero"`` every d SP^s D_j (s >= 2) vanishes, which is
    only consistent when all attaching chains are zero.  Otherwise
    ``higher_power_rule`` maps ``(j, s)`` to the chain d SP^s D_j, a chain of
    weight s in degree 2s - 1; unlisted ``(j, s)`` are zero.
    """

    disc_attach: tuple[tuple[int, ...], ...] = ()
    higher_power_rule: Union[str, Mapping[tuple[int, int], Mapping[SymCell, int]]] = "zero"

    def __post_init__(self):
        object.__setattr__(self, "disc_attach",
                           tuple(tuple(int(x) for x in row) for row in self.disc_attach))
        rule = self.higher_power_rule
        if isinstance(rule, str):
            if rule != "zero":
                raise ValueError(f"unknown higher_power_rule {rule!r}")
        else:
            table = {}
            for (j, s), chain in rule.items():
                ch = {(parse_cell(c) if isinstance(c, str) else c): int(v)
                      for c, v in dict(chain).items() if v}
                table[(int(j), int(s))] = ch
            object.__setattr__(self, "higher_power_rule", table)

    @property
    def is_zero_rule(self) -> bool:
        return isinstance(self.higher_power_rule, str)


@dataclass(frozen=True)
class TwoComplexPresentation:
    """X = wedge of ``w`` circles with ``disc_count`` 2-cells attached."""

    w: int
    disc_count: int = 0
    boundary_data: BoundaryData = field(default_factory=BoundaryData)
    name: str = ""

    def __post_init__(self):
        if self.w < 0 or self.disc_count < 0:
            raise ValueError("w and disc_count must be non-negative")
        attach = self.boundary_data.disc_attach
        if not attach:
            attach = tuple((0,) * self.w for _ in range(self.disc_count))
            object.__setattr__(self, "boundary_data", BoundaryData(
                attach, self.boundary_data.higher_power_rule))
        if len(attach) != self.disc_count:
            raise ValueError(f"{len(attach)} attaching chains for {self.disc_count} discs")
        if any(len(row) != self.w for row in attach):
            raise ValueError(f"each attaching chain needs {self.w} coefficients")

    @property
    def is_point(self) -> bool:
        return self.w == 0 and self.disc_count == 0

    def to_dict(self) -> dict:
        rule = self.boundary_data.higher_power_rule
        if not isinstance(rule, str):
            rule = {"table": [
                {"disc": j, "power": s,
                 "chain": [[v, c.label] for c, v in sorted(ch.items(), key=lambda x: x[0].sort_key())]}
                for (j, s), ch in sorted(rule.items())]}
        return {
            "w": self.w,
            "discs": [{"attach": list(row)} for row in self.boundary_data.disc_attach],
            "higher_power_rule": rule,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "TwoComplexPresentation":
        w = int(data["w"])
        discs = data.get("discs", [])
        attach = [tuple(d.get("attach", [0] * w)) for d in discs]
        rule = data.get("higher_power_rule", "zero")
        if not isinstance(rule, str):
            table = {}
            for entry in rule["table"]:
                chain = {}
                for item in entry["chain"]:
                    if isinstance(item, Mapping):
                        coeff, lab = item["coeff"], item["cell"]
                    else:
                        coeff, lab = item
                    cell = parse_cell(lab)
                    chain[cell] = chain.get(cell, 0) + int(coeff)
                table[(int(entry["disc"]), int(entry["power"]))] = chain
            rule = table
        return cls(w, len(discs), BoundaryData(tuple(attach), rule))

    @classmethod
    def load(cls, path) -> "TwoComplexPresentation":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def multiplicative_power_rule(disc_attach: Sequence[Sequence[int]], max_power: int
                              ) -> dict[tuple[int, int], Chain]:
    """d SP^s D_j = d D_j * SP^(s-1) D_j for 2 <= s <= max_power.

    Over a torsion-free chain group this is the only choice compatible with
    D_j^(*s) = s! SP^s D_j and the Leibniz rule.
    """
    table = {}
    for j, row in enumerate(disc_attach, start=1):
        dd = {SymCell(0, (i,)): c for i, c in enumerate(row, start=1) if c}
        if not dd:
            continue
        for s in range(2, max_power + 1):
            table[(j, s)] = star_product(dd, SymCell(0, (), ((j, s - 1),)))
    return table


def preset(name: str) -> TwoComplexPresentation:
    """Built-in presentations: ``s2``, ``circle``, ``point``, ``wedge:<w>``."""
    if name == "s2":
        return TwoComplexPresentation(0, 1, name="s2")
    if name == "circle":
        return TwoComplexPresentation(1, 0, name="circle")
    if name == "point":
        return TwoComplexPresentation(0, 0, name="point")
    if name.startswith("wedge:"):
        w = int(name.split(":", 1)[1])
        return TwoComplexPresentation(w, 0, name=name)
    raise ValueError(f"unknown preset {name!r} (s2, circle, point, wedge:<w>)")


def _compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_cells(p: TwoComplexPresentation, n: int,
                    include_reduced_only: bool = False) -> list[SymCell]:
    """All weight-``n`` cells, sorted by degree; ``rho = 0`` only if reduced."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cells = []
    for t in range(min(p.w, n) + 1):
        for es in combinations(range(1, p.w + 1), t):
            for rest in range(n - t + 1):
                rho = n - t - rest
                if include_reduced_only and rho:
                    continue
                for powers in _compositions(rest, p.disc_count):
                    dp = tuple((j + 1, s) for j, s in enumerate(powers) if s)
                    cells.append(SymCell(rho, es, dp))
    cells.sort(key=SymCell.sort_key)
    return cells


def _generator_boundary(p: TwoComplexPresentation, j: int, s: int) -> Chain:
    bd = p.boundary_data
    if s == 1:
        return {SymCell(0, (i + 1,)): c for i, c in enumerate(bd.disc_attach[j - 1]) if c}
    if bd.is_zero_rule:
        return {}
    return dict(bd.higher_power_rule.get((j, s), {}))


def cell_boundary(p: TwoComplexPresentation, cell: SymCell) -> Chain:
    """Leibniz boundary: sum over disc factors, sign (-1)^(degree to the left)."""
    out: Chain = {}
    t = len(cell.e_indices)
    left = SymCell(cell.rho, cell.e_indices)
    for idx, (j, s) in enumerate(cell.disc_powers):
        dgen = _generator_boundary(p, j, s)
        if not dgen:
            continue
        before = SymCell(0, (), cell.disc_powers[:idx])
        after = SymCell(0, (), cell.disc_powers[idx + 1:])
        sign = -1 if t % 2 else 1
        term = star_product(star_product(star_product(left, before), dgen), after)
        for c, v in term.items():
            out[c] = out.get(c, 0) + sign * v
    return {c: v for c, v in out.items() if v}


def _validate(p: TwoComplexPresentation) -> None:
    bd = p.boundary_data
    if bd.is_zero_rule:
        if any(any(row) for row in bd.disc_attach):
            raise HypothesisError(
                "higher_power_rule 'zero' requires every disc to attach trivially; "
                "supply a user table for d SP^s D", "star-product cell model")
        return
    for (j, s), chain in bd.higher_power_rule.items():
        if not 1 <= j <= p.disc_count:
            raise MalformedComplexError(f"user table names disc {j}, have {p.disc_count}")
        if s < 2:
            raise MalformedComplexError("user table entries start at power 2")
        for c in chain:
            if c.degree != 2 * s - 1 or c.weight != s:
                raise MalformedComplexError(
                    f"d SP{s}D{j} term {c.label} must have degree {2 * s - 1} and weight {s}")
            if any(i > p.w for i in c.e_indices) or any(k > p.disc_count for k, _ in c.disc_powers):
                raise MalformedComplexError(f"term {c.label} uses generators outside X")


def sp_chain_complex(p: TwoComplexPresentation, n: int,
                     reduced: bool = False) -> ChainComplex:
    """Cellular complex of SP^n(X), or of SP^n(X)/SP^(n-1)(X) when ``reduced``.

    Raises if the boundary data are inconsistent (d∘d != 0 included).
    """
    _validate(p)
    cells = enumerate_cells(p, n, include_reduced_only=reduced)
    by_deg: dict[int, list[SymCell]] = {}
    for c in cells:
        by_deg.setdefault(c.degree, []).append(c)
    index = {q: {c: i for i, c in enumerate(cs)} for q, cs in by_deg.items()}
    bds = {}
    for q, cs in by_deg.items():
        if q == 0 or not any(cell.disc_powers for cell in cs):
            continue
        rows = index.get(q - 1, {})
        m = np.zeros((len(rows), len(cs)), dtype=object)
        for col, cell in enumerate(cs):
            for face, v in cell_boundary(p, cell).items():
                if reduced and face.rho:
                    continue
                if face not in rows:
                    raise MalformedComplexError(
                        f"boundary of {cell.label} leaves SP^{n}: {face.label}")
                m[rows[face], col] += v
        bds[q] = m
    basis = {q: [c.label for c in cs] for q, cs in by_deg.items()}
    return ChainComplex(basis, bds)


def sp_homology(p: TwoComplexPresentation, n: int, coeffs: Coefficients = Z,
                reduced: bool = False) -> GradedGroup:
    g = homology(sp_chain_complex(p, n, reduced), coeffs)
    return GradedGroup(g.entries, g.coefficients, reduced)


def mattuck_reduced_sp(g: int, n: int, field: Coefficients = F2) -> GradedGroup:
    """H~_*(SP^n(S)/SP^(n-1)(S)) for a closed genus-g surface, n >= 2g.

    The quotient is the Thom space of a fibration over the Jacobian, so its
    reduced homology is that of the 2g-torus shifted up by 2n - 2g.
    """
    if g < 1:
        raise ValueError("genus must be >= 1")
    if n < 2 * g:
        raise HypothesisError(
            f"the Jacobian description of SP^n of a genus-{g} surface needs n >= {2 * g}, got {n}",
            "Mattuck fibration over the Jacobian")
    base = 2 * n - 2 * g
    return GradedGroup({base + q: (comb(2 * g, q), ()) for q in range(2 * g + 1)},
                       field, reduced=True)


@dataclass
class MonotonicityReport:
    results: dict[tuple[int, int], bool] = field(default_factory=dict)
    tables: list[GradedGroup] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    @property
    def failures(self) -> list[tuple[int, int]]:
        return sorted(k for k, ok in self.results.items() if not ok)


def steenrod_monotonicity_check(p: TwoComplexPresentation, n_max: int,
                                field: Coefficients = F2) -> MonotonicityReport:
    """Check dim H_q(SP^(n-1)) <= dim H_q(SP^n) for all q and 1 <= n <= n_max."""
    if not field.is_field:
        raise ValueError("monotonicity is checked on field dimensions")
    report = MonotonicityReport()
    report.tables = [sp_homology(p, n, field) for n in range(n_max + 1)]
    for n in range(1, n_max + 1):
        prev, cur = report.tables[n - 1], report.tables[n]
        for q in sorted(set(prev.entries) | set(cur.entries)):
            report.results[(q, n)] = prev.dim(q) <= cur.dim(q)
    return report
