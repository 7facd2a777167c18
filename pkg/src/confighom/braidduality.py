"""Cohomology of braid spaces B(M - U, k) through truncated products.

Duality identifies H^i(B(M-U, k)) with H_{kd-i} of the pair
(TP^k(Mbar), TP^(k-1)(Mbar)) when U or the boundary is nonempty, and of
(TP^k(M), TP^(k-2)(M)) for closed unpunctured M.  Integral (or odd
characteristic) statements need M even dimensional and orientable; otherwise
only F_2 is honest and the request is rejected rather than approximated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Mapping, Protocol, Sequence

from .chaincore import (
    F2,
    Coefficients,
    GradedGroup,
    direct_sum,
    point,
    shift,
)
from .errors import HypothesisError, UnsupportedSpaceError
from .tsp import (
    ReducedTPTable,
    circle_relative,
    circle_reduced_family,
    wedge_reduced_family,
)

__all__ = [
    "SpaceDescriptor",
    "CoefficientGate",
    "coefficient_gate",
    "TPSource",
    "CircleTP",
    "WedgeTP",
    "UserTP",
    "duality_flip",
    "braid_cohomology",
    "ordered_partition_count",
    "puncture_split_mod2",
    "multi_puncture_split",
    "EulerReport",
    "les_euler_check",
]

DUALITY = "Poincaré–Lefschetz duality with truncated products"
SPLITTING = "puncture splitting of braid space cohomology"


class TPSource(Protocol):
    """Supplies relative homology of truncated products of the quotient Mbar."""

    def relative(self, level: int, lower: int, field: Coefficients) -> GradedGroup:
        """H_*(TP^level, TP^lower) (``lower = -1`` means absolute)."""
        ...


class CircleTP:
    """Mbar = S^1, read off the RP^n cell model."""

    name = "circle"

    def relative(self, level, lower, field):
        return circle_relative(level, lower, field)


def _split_relative(reduced: Sequence[ReducedTPTable], level: int, lower: int,
                    field: Coefficients) -> GradedGroup:
    # over F_2, H(TP^k, TP^j) is the sum of the reduced layers j+1..k
    if field != F2 and level - lower > 1:
        raise UnsupportedSpaceError(
            "relative groups spanning more than one level need an explicit table "
            "unless the coefficients are F_2")
    acc = GradedGroup({}, field)
    for m in range(max(lower + 1, 0), level + 1):
        t = reduced[m].table
        if m == 0:
            # TP^0 is a point: unreduced class in degree 0
            t = point(field)
        acc = direct_sum(acc, GradedGroup(t.entries, field))
    return acc


class WedgeTP:
    """Mbar = wedge of ``w`` circles, assembled from the wedge formula."""

    def __init__(self, w: int):
        if w < 1:
            raise ValueError("wedge needs at least one circle")
        self.w = w
        self.name = f"wedge:{w}"

    def relative(self, level, lower, field):
        fams = [circle_reduced_family(level, field) for _ in range(self.w)]
        reduced = wedge_reduced_family(fams, level, field)
        return _split_relative(reduced, level, lower, field)


class UserTP:
    """Tables read from JSON.

    Schema::

        {"reduced": [ReducedTPTable JSON, ...],
         "relative": [{"level": k, "lower": j, "table": GradedGroup JSON}, ...]}

    Explicit ``relative`` entries win; otherwise F_2 relative groups are
    assembled from the reduced layers.
    """

    def __init__(self, reduced: Sequence[ReducedTPTable] = (),
                 relative: Mapping[tuple[int, int], GradedGroup] | None = None,
                 name: str = "user"):
        self.reduced = {t.level: t for t in reduced}
        self.explicit = dict(relative or {})
        self.name = name

    @classmethod
    def from_dict(cls, data: Mapping, name: str = "user") -> "UserTP":
        reduced = [ReducedTPTable.from_dict(d) for d in data.get("reduced", [])]
        rel = {(int(e["level"]), int(e["lower"])): GradedGroup.from_dict(e["table"])
               for e in data.get("relative", [])}
        return cls(reduced, rel, name)

    @classmethod
    def load(cls, path) -> "UserTP":
        with open(path) as fh:
            return cls.from_dict(json.load(fh), name=f"user:{path}")

    def relative(self, level, lower, field):
        key = (level, lower)
        if key in self.explicit:
            t = self.explicit[key]
            if t.coefficients != field:
                raise UnsupportedSpaceError(
                    f"table for TP^{level}/TP^{lower} is over {t.coefficients}, need {field}")
            return t
        needed = range(max(lower + 1, 0), level + 1)
        missing = [m for m in needed if m not in self.reduced]
        if missing:
            raise UnsupportedSpaceError(
                f"no table for H_*(TP^{level}, TP^{lower}); supply a 'relative' entry "
                f"or reduced tables for levels {missing}")
        layers = [self.reduced.get(m) or ReducedTPTable(GradedGroup({}, field, True), m)
                  for m in range(level + 1)]
        for m in needed:
            if layers[m].coefficients != field:
                raise UnsupportedSpaceError(
                    f"reduced table at level {m} is over {layers[m].coefficients}, need {field}")
        return _split_relative(layers, level, lower, field)


def _source_from_name(name: str | None):
    if name is None:
        return None
    if name == "circle":
        return CircleTP()
    if name.startswith("wedge:"):
        return WedgeTP(int(name.split(":", 1)[1]))
    if name.startswith("user:"):
        return UserTP.load(name.split(":", 1)[1])
    raise ValueError(f"unknown quotient model {name!r}")


@dataclass(frozen=True)
class SpaceDescriptor:
    """A compact manifold M of dimension d, with boundary or punctures U.

    ``quotient_connectivity`` is the connectivity r of Mbar = M/(U ∪ ∂M)
    (of M itself when closed and unpunctured).  Connectedness of M - U is the
    caller's responsibility.
    """

    d: int
    closed: bool = True
    punctures: int = 0
    has_boundary: bool = False
    orientable: bool = True
    quotient_connectivity: int = 0
    quotient_model: object = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("manifold dimension must be >= 1")
        if self.closed and self.has_boundary:
            raise ValueError("a closed manifold has no boundary")
        if self.punctures < 0:
            raise ValueError("punctures must be non-negative")
        if isinstance(self.quotient_model, str):
            object.__setattr__(self, "quotient_model_name", self.quotient_model)
            object.__setattr__(self, "quotient_model", _source_from_name(self.quotient_model))
        else:
            object.__setattr__(self, "quotient_model_name",
                               getattr(self.quotient_model, "name", None))

    @property
    def removed_nonempty(self) -> bool:
        """True when U ∪ ∂M is nonempty (selects the duality case)."""
        return self.punctures > 0 or self.has_boundary

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "closed": self.closed,
            "punctures": self.punctures,
            "has_boundary": self.has_boundary,
            "orientable": self.orientable,
            "quotient_connectivity": self.quotient_connectivity,
            "quotient_model": self.quotient_model_name,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SpaceDescriptor":
        return cls(
            d=int(data["d"]),
            closed=bool(data.get("closed", True)),
            punctures=int(data.get("punctures", 0)),
            has_boundary=bool(data.get("has_boundary", False)),
            orientable=bool(data.get("orientable", True)),
            quotient_connectivity=int(data.get("quotient_connectivity", 0)),
            quotient_model=data.get("quotient_model"),
        )


PRESETS = {
    "closed-circle": dict(d=1, closed=True, quotient_model="circle"),
    "punctured-circle": dict(d=1, closed=True, punctures=1, quotient_model="circle"),
    "interval": dict(d=1, closed=False, has_boundary=True, quotient_model="circle"),
}


def preset_descriptor(name: str) -> SpaceDescriptor:
    try:
        return SpaceDescriptor(**PRESETS[name])
    except KeyError:
        raise ValueError(f"unknown space preset {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class CoefficientGate:
    requested: Coefficients
    verdict: str  # "allowed" | "f2_only" | "twisted_required"

    @property
    def allowed(self) -> bool:
        return self.verdict == "allowed"


def coefficient_gate(coeffs: Coefficients, d: int, orientable: bool,
                     purpose: str = "duality") -> CoefficientGate:
    """Decide whether ``coeffs`` are legitimate for duality or splitting.

    F_2 always passes.  Anything else needs d even and M orientable; failing
    that, duality reports ``twisted_required`` (the honest answer lives in
    the orientation sheaf) and splitting reports ``f2_only``.
    """
    if coeffs == F2 or (d % 2 == 0 and orientable):
        return CoefficientGate(coeffs, "allowed")
    return CoefficientGate(coeffs, "twisted_required" if purpose == "duality" else "f2_only")


def duality_flip(table: GradedGroup, top: int) -> GradedGroup:
    """Reindex ``i -> top - i``; an involution on tables supported in 0..top."""
    bad = [q for q in table.entries if q > top]
    if bad:
        raise ValueError(f"degrees {bad} exceed the duality range 0..{top}")
    return GradedGroup({top - q: v for q, v in table.entries.items()},
                       table.coefficients, False)


def braid_cohomology(desc: SpaceDescriptor, k: int, coeffs: Coefficients = F2) -> GradedGroup:
    """H^*(B(M - U, k)) via H^i = H_{kd-i}(TP^k, TP^(k-1 or k-2))."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return point(coeffs)  # B(X, 0) is the basepoint
    gate = coefficient_gate(coeffs, desc.d, desc.orientable, "duality")
    if not gate.allowed:
        raise HypothesisError(
            f"{coeffs} coefficients need the orientation sheaf ±Z when d={desc.d} "
            f"{'and M is non-orientable' if not desc.orientable else 'is odd'}; "
            "twisted coefficients are not computed (use F2)", DUALITY)
    if desc.quotient_model is None:
        raise UnsupportedSpaceError(
            "no truncated-product tables for Mbar: pass quotient_model='circle', "
            "'wedge:<w>' or a user table file with H_*(TP^k, TP^(k-1)) "
            "(or TP^(k-2) for closed M)")
    lower = k - 1 if desc.removed_nonempty else k - 2
    rel = desc.quotient_model.relative(k, lower, coeffs)
    return duality_flip(rel, k * desc.d)


def ordered_partition_count(r: int, s: int) -> int:
    """Number of ordered r-tuples of non-negative integers summing to s."""
    if r < 0 or s < 0:
        raise ValueError("r and s must be non-negative")
    if r == 0:
        if s:
            raise ValueError("no 0-tuple sums to a positive integer")
        return 1
    return comb(s + r - 1, r - 1)


def _base_level(base: Mapping[int, GradedGroup], m: int, field: Coefficients) -> GradedGroup:
    if m < 0:
        return GradedGroup({}, field)
    if m in base:
        t = base[m]
        if t.coefficients != field:
            raise ValueError(f"base table at level {m} is over {t.coefficients}, need {field}")
        return t
    if m == 0:
        return point(field)
    raise ValueError(f"missing base table for B(M-p, {m})")


def puncture_split_mod2(base: Mapping[int, GradedGroup], d: int, n: int) -> GradedGroup:
    """H^j(B(M,n)) = H^j(B(M-p,n)) ⊕ H^(j-d)(B(M-p,n-1)) over F_2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    top = _base_level(base, n, F2)
    below = _base_level(base, n - 1, F2)
    return direct_sum(top, shift(below, d))


def multi_puncture_split(base: Mapping[int, GradedGroup], d: int, k: int, n: int,
                         field: Coefficients = F2, orientable: bool = True) -> GradedGroup:
    """H^*(B(M - {p_1..p_k}, n)) from the once-punctured tables ``base[r]``.

    Sum over r of base_r shifted up by (n-r)(d-1), with multiplicity
    p(k-1, n-r).
    """
    if k < 1:
        raise ValueError("at least one puncture is required")
    gate = coefficient_gate(field, d, orientable, "splitting")
    if not gate.allowed:
        raise HypothesisError(
            f"the multi-puncture splitting over {field} needs M even dimensional and "
            f"orientable (d={d}); use F2", SPLITTING)
    acc = GradedGroup({}, field)
    for r in range(n + 1):
        mult = ordered_partition_count(k - 1, n - r) if k > 1 else int(r == n)
        if not mult:
            continue
        term = shift(_base_level(base, r, field), (n - r) * (d - 1))
        for _ in range(mult):
            acc = direct_sum(acc, term)
    return acc


@dataclass
class EulerReport:
    closed: int
    punctured_n: int
    punctured_n_minus_1: int
    sign: int
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.closed == self.punctured_n + self.sign * self.punctured_n_minus_1

    def __bool__(self):
        return self.passed


def les_euler_check(closed_table: GradedGroup, punctured_n_table: GradedGroup,
                    punctured_nminus1_table: GradedGroup, d: int,
                    field: Coefficients | None = None) -> EulerReport:
    """χ(B(M,n)) = χ(B(M-p,n)) + (-1)^d χ(B(M-p,n-1)).

    The cofiber of B(M-p,n) -> B(M,n) is the d-fold suspension of
    B(M-p,n-1)_+, which fixes the sign.
    """
    tables = (closed_table, punctured_n_table, punctured_nminus1_table)
    if field is not None and any(t.coefficients != field for t in tables):
        raise ValueError("all tables must share the field")
    return EulerReport(closed_table.euler_characteristic(),
                       punctured_n_table.euler_characteristic(),
                       punctured_nminus1_table.euler_characteristic(),
                       (-1) ** d)
