"""Truncated symmetric products.

The circle is the one space with a built-in cell model: TP^n(S^1) has one
cell sigma^k in each degree k <= n with d(sigma^k) = (1 + (-1)^k) sigma^(k-1),
i.e. the cellular complex of RP^n.  Every other space enters through
user-supplied reduced tables, combined with :func:`wedge_reduced_tp`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .chaincore import (
    F2,
    ChainComplex,
    Coefficients,
    GradedGroup,
    direct_sum,
    homology,
    relative_homology,
    tensor,
)

__all__ = [
    "ReducedTPTable",
    "tp_circle_complex",
    "circle_cell",
    "tp_circle_homology",
    "reduced_tp_circle",
    "circle_reduced_family",
    "wedge_reduced_tp",
    "wedge_reduced_family",
    "SplittingReport",
    "mod2_tp_splitting_check",
    "circle_relative",
]


@dataclass(frozen=True)
class ReducedTPTable:
    """Reduced homology of TP^n(X)/TP^(n-1)(X) over a field, tagged by level."""

    table: GradedGroup
    level: int

    def __post_init__(self):
        if not self.table.coefficients.is_field:
            raise ValueError("reduced TP tables need field coefficients")
        if self.level < 0:
            raise ValueError("level must be non-negative")
        if not self.table.reduced:
            object.__setattr__(self, "table", GradedGroup(
                self.table.entries, self.table.coefficients, True))
        # level 0 is S^0, whose reduced homology sits in degree 0
        if self.level >= 1 and self.table.rank(0):
            raise ValueError("reduced table at level >= 1 must vanish in degree 0")

    @property
    def coefficients(self) -> Coefficients:
        return self.table.coefficients

    def to_dict(self) -> dict:
        d = self.table.to_dict()
        d["level"] = self.level
        d["reduced"] = True
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "ReducedTPTable":
        return cls(GradedGroup.from_dict({**data, "reduced": True}), int(data["level"]))

    @classmethod
    def from_json(cls, text: str) -> "ReducedTPTable":
        return cls.from_dict(json.loads(text))


def circle_cell(k: int) -> str:
    return f"sigma^{k}"


def tp_circle_complex(n: int) -> ChainComplex:
    """Cellular chain complex of TP^n(S^1), one cell per degree 0..n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    basis = {k: [circle_cell(k)] for k in range(n + 1)}
    bds = {k: [[1 + (-1) ** k]] for k in range(1, n + 1)}
    return ChainComplex.from_matrices(basis, bds)


def tp_circle_homology(n: int, coeffs: Coefficients = F2) -> GradedGroup:
    return homology(tp_circle_complex(n), coeffs)


def _sphere_table(n: int, field: Coefficients) -> GradedGroup:
    return GradedGroup({n: (1, ())}, field, reduced=True)


def reduced_tp_circle(n: int, field: Coefficients = F2) -> ReducedTPTable:
    """H~_*(TP^n(S^1)/TP^(n-1)(S^1)) = H~_*(S^n); level 0 is S^0."""
    if not field.is_field:
        raise ValueError("reduced TP tables need field coefficients")
    if n < 0:
        raise ValueError("n must be non-negative")
    return ReducedTPTable(_sphere_table(n, field), n)


def circle_reduced_family(n: int, field: Coefficients = F2) -> list[ReducedTPTable]:
    return [reduced_tp_circle(k, field) for k in range(n + 1)]


def _s0(field: Coefficients) -> GradedGroup:
    return _sphere_table(0, field)


FactorFamily = Sequence[ReducedTPTable] | Callable[[int], ReducedTPTable]


def _level(factor: FactorFamily, k: int) -> ReducedTPTable:
    t = factor(k) if callable(factor) else factor[k]
    if t.level != k:
        raise ValueError(f"factor table at position {k} reports level {t.level}")
    return t


def _convolve(a: list[GradedGroup], b: list[GradedGroup], n: int,
              field: Coefficients) -> list[GradedGroup]:
    out = []
    for m in range(n + 1):
        acc = GradedGroup({}, field, True)
        for r in range(m + 1):
            acc = direct_sum(acc, tensor(a[r], b[m - r]))
        out.append(acc)
    return out


def wedge_reduced_family(factor_tables: Sequence[FactorFamily], n: int,
                         field: Coefficients = F2) -> list[ReducedTPTable]:
    """Reduced TP tables of a wedge for every level ``0..n``.

    TP-bar^m of a wedge is the wedge, over compositions of m, of smashes of
    the factors' TP-bar tables; over a field smash becomes tensor.
    """
    if not field.is_field:
        raise ValueError("wedge assembly needs field coefficients")
    if not factor_tables:
        raise ValueError("at least one factor is required")
    fams = []
    for f in factor_tables:
        fam = []
        for k in range(n + 1):
            t = _level(f, k)
            if t.coefficients != field:
                raise ValueError(
                    f"factor table over {t.coefficients} does not match field {field}")
            fam.append(t.table)
        fams.append(fam)
    acc = fams[0]
    for fam in fams[1:]:
        acc = _convolve(acc, fam, n, field)
    return [ReducedTPTable(t, m) for m, t in enumerate(acc)]


def wedge_reduced_tp(factor_tables: Sequence[FactorFamily], n: int,
                     field: Coefficients = F2) -> ReducedTPTable:
    return wedge_reduced_family(factor_tables, n, field)[n]


@dataclass
class SplittingReport:
    """Per-(q, k) outcome of the mod-2 splitting check."""

    results: dict[tuple[int, int], bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    @property
    def failures(self) -> list[tuple[int, int]]:
        return sorted(qk for qk, ok in self.results.items() if not ok)

    def __bool__(self) -> bool:
        return self.passed


def mod2_tp_splitting_check(full_tables: Sequence[GradedGroup],
                            reduced_tables: Sequence[ReducedTPTable | GradedGroup]
                            ) -> SplittingReport:
    """Check dim H_q(TP^k) = dim H_q(TP^(k-1)) + dim H~_q(TP-bar^k) over F_2.

    ``full_tables[k]`` is H_*(TP^k; F_2) for k = 0..n and ``reduced_tables[k]``
    the reduced table of level k (index 0 is ignored).
    """
    report = SplittingReport()
    n = len(full_tables) - 1
    for k in range(1, n + 1):
        red = reduced_tables[k]
        red = red.table if isinstance(red, ReducedTPTable) else red
        cur, prev = full_tables[k], full_tables[k - 1]
        for g in (cur, prev, red):
            if g.coefficients != F2:
                raise ValueError("the splitting check is over F_2")
        degrees = set(cur.entries) | set(prev.entries) | set(red.entries)
        for q in sorted(degrees):
            report.results[(q, k)] = cur.dim(q) == prev.dim(q) + red.dim(q)
    return report


def circle_relative(level: int, lower: int, coeffs: Coefficients = F2) -> GradedGroup:
    """H_*(TP^level(S^1), TP^lower(S^1)) from the cell model (lower may be < 0)."""
    c = tp_circle_complex(level)
    sub = {k: [circle_cell(k)] for k in range(0, max(lower, -1) + 1)}
    return relative_homology(c, sub, coeffs)
