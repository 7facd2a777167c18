"""Connectivity, cohomological-dimension and stability bounds.

Every function returns a :class:`BoundResult` and rejects parameters outside
the hypotheses of the underlying result instead of clamping them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .chaincore import Coefficients, GradedGroup, point, tensor
from .errors import HypothesisError

__all__ = [
    "INFINITE",
    "BoundResult",
    "BigradedTable",
    "cohdim_bound",
    "cohdim_from_connectivity",
    "connectivity_formulas",
    "mod2_cohdim_disc",
    "binary_weight",
    "bcm_e1_assemble",
    "e1_connectivity_bound",
    "e1_cohdim_bound",
    "surface_e1_envelope",
    "stability_ranges",
    "ANCHORS",
]

# connectivity of a contractible space; deliberately not an int
INFINITE = math.inf

ANCHORS = {
    "cohdim": "cohomological dimension of braid spaces: (d-1)k-r+1 closed, (d-1)k-r otherwise",
    "cohdim_from_R": "duality: cohdim B(M-U,k) = dk - R_k - 1",
    "nakaoka": "Nakaoka connectivity of (Y^(k)/fat diagonal)/S_k: r+k-1",
    "reduced_sp": "connectivity of reduced symmetric products of r-connected complexes: 2n+r-2",
    "reduced_sp_2complex": "connectivity of reduced symmetric products of 2-complexes: 2n-min(w,n)-1",
    "R_lower": "connectivity of TP^k/TP^(k-1) (k+r-1) and TP^k/TP^(k-2) (k+r-2)",
    "mod2_disc": "mod-2 cohomological dimension of B(R^d,k): (k-alpha(k))(d-1)",
    "e1": "E^1 connectivity of the truncated-product spectral sequence",
    "surface": "surface braid spaces: H^i = 0 for i >= k+1 (punctured) or i > k+1 (closed)",
    "arnold": "Arnold stability: homology equivalence up to degree [k/2]",
    "riemann_surface": "punctured Riemann surface stability: equivalence up to degree k-1",
    "scanning": "scanning B(M,k) -> sections is homologically s(k-1)-connected",
}

KINDS = ("upper_bound_cohdim", "lower_bound_connectivity", "stability_range")


@dataclass(frozen=True)
class BoundResult:
    value: int | float
    kind: str
    source: str
    hypotheses: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")
        if not self.source:
            raise ValueError("a bound needs a source")
        if self.value != INFINITE and (not isinstance(self.value, int) or self.value < -1):
            raise ValueError(f"bound value must be an integer >= -1, got {self.value!r}")
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))

    def to_dict(self) -> dict:
        value = "infinite" if self.value == INFINITE else self.value
        return {"value": value, "kind": self.kind, "source": self.source,
                "hypotheses": list(self.hypotheses)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "BoundResult":
        value = INFINITE if data["value"] == "infinite" else int(data["value"])
        return cls(value, data["kind"], data["source"], tuple(data.get("hypotheses", ())))


def _require(cond: bool, message: str, anchor: str) -> None:
    if not cond:
        raise HypothesisError(message, ANCHORS[anchor])


def cohdim_bound(d: int, k: int, r: int, punctured_or_boundary: bool) -> BoundResult:
    """Upper bound for cohdim B(M-U, k); ``r`` is the connectivity of Mbar."""
    _require(d >= 1, f"manifold dimension must be >= 1, got {d}", "cohdim")
    _require(k >= 2, f"needs k >= 2, got {k}", "cohdim")
    _require(r >= 0, f"needs 0 <= r < infinity, got {r}", "cohdim")
    value = (d - 1) * k - r + (0 if punctured_or_boundary else 1)
    hyps = [f"d={d}", f"k={k}", f"r={r}",
            "U ∪ ∂M nonempty" if punctured_or_boundary else "M closed, U empty"]
    _require(value >= 0, f"r={r} exceeds what a {d}-manifold quotient allows", "cohdim")
    return BoundResult(value, "upper_bound_cohdim", ANCHORS["cohdim"], tuple(hyps))


def cohdim_from_connectivity(d: int, k: int, R: int) -> BoundResult:
    """cohdim = dk - R_k - 1 from the connectivity R_k of the TP quotient."""
    return BoundResult(d * k - R - 1, "upper_bound_cohdim", ANCHORS["cohdim_from_R"],
                       (f"d={d}", f"k={k}", f"R_k={R}"))


def connectivity_formulas(name: str, **params) -> BoundResult:
    """Named connectivity lower bounds.

    ``nakaoka(r, k)``, ``reduced_sp(r, n)``, ``reduced_sp_2complex(w, n)`` and
    ``R_lower(k, r, punctured_or_boundary)``.
    """
    kind = "lower_bound_connectivity"
    if name == "nakaoka":
        r, k = params["r"], params["k"]
        _require(r >= 0, f"Y must be r-connected with r >= 0, got r={r}", "nakaoka")
        _require(k >= 1, f"needs k >= 1, got {k}", "nakaoka")
        return BoundResult(r + k - 1, kind, ANCHORS["nakaoka"], (f"r={r}", f"k={k}"))
    if name == "reduced_sp":
        r, n = params["r"], params["n"]
        _require(r >= 1, f"X must be simply connected (r >= 1), got r={r}", "reduced_sp")
        _require(n >= 1, f"needs n >= 1, got {n}", "reduced_sp")
        return BoundResult(2 * n + r - 2, kind, ANCHORS["reduced_sp"], (f"r={r}", f"n={n}"))
    if name == "reduced_sp_2complex":
        w, n = params["w"], params["n"]
        _require(w >= 0, f"needs w >= 0, got {w}", "reduced_sp_2complex")
        _require(n >= 1, f"needs n >= 1, got {n}", "reduced_sp_2complex")
        return BoundResult(2 * n - min(w, n) - 1, kind, ANCHORS["reduced_sp_2complex"],
                           (f"w={w}", f"n={n}"))
    if name == "R_lower":
        k, r = params["k"], params["r"]
        pb = params["punctured_or_boundary"]
        # Nakaoka's estimate holds for r >= 0, which is all this uses
        _require(r >= 0, f"needs r >= 0, got {r}", "R_lower")
        _require(k >= 1, f"needs k >= 1, got {k}", "R_lower")
        value = k + r - 1 if pb else k + r - 2
        return BoundResult(value, kind, ANCHORS["R_lower"],
                           (f"k={k}", f"r={r}", "U ∪ ∂M nonempty" if pb else "M closed"))
    raise ValueError(f"unknown connectivity formula {name!r}")


def binary_weight(k: int) -> int:
    return bin(k).count("1")


def mod2_cohdim_disc(d: int, k: int) -> BoundResult:
    """F_2 cohomological dimension of B(R^d, k): (k - alpha(k))(d - 1)."""
    _require(d >= 2, f"needs d >= 2, got {d}", "mod2_disc")
    _require(k >= 1, f"needs k >= 1, got {k}", "mod2_disc")
    return BoundResult((k - binary_weight(k)) * (d - 1), "upper_bound_cohdim",
                       ANCHORS["mod2_disc"], (f"d={d}", f"k={k}", "F2 coefficients"))


@dataclass(frozen=True)
class BigradedTable:
    """Dimensions indexed by (filtration index i, total degree q)."""

    entries: Mapping[tuple[int, int], int]
    field: Coefficients

    def __post_init__(self):
        clean = {}
        for (i, q), v in self.entries.items():
            if v < 0:
                raise ValueError("dimensions must be non-negative")
            if v:
                clean[(int(i), int(q))] = int(v)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def total(self) -> GradedGroup:
        dims: dict[int, int] = {}
        for (_, q), v in self.entries.items():
            dims[q] = dims.get(q, 0) + v
        return GradedGroup.from_dims(dims, self.field)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def lowest_degree(self) -> int | None:
        return min((q for _, q in self.entries), default=None)


def _level_table(tables, level: int, field: Coefficients, what: str) -> GradedGroup:
    if level == 0:
        # SP^0 is the basepoint and SP^-1 is empty
        return point(field)
    try:
        t = tables[level]
    except (KeyError, IndexError):
        raise ValueError(f"missing {what} table at level {level}") from None
    if t is None:
        raise ValueError(f"missing {what} table at level {level}")
    if t.coefficients != field:
        raise ValueError(f"{what} table at level {level} is over {t.coefficients}, need {field}")
    return GradedGroup(t.entries, field)


def bcm_e1_assemble(sp_rel_X, sp_rel_SX, n: int, field: Coefficients) -> BigradedTable:
    """E^1 = sum over i + 2j = n of H_*(SP^i X, SP^(i-1) X) ⊗ H_*(SP^j ΣX, SP^(j-1) ΣX).

    Entries are keyed by (i, total degree).  No differential is applied.
    """
    if not field.is_field:
        raise ValueError("the E^1 term is assembled over a field")
    entries: dict[tuple[int, int], int] = {}
    for j in range(n // 2 + 1):
        i = n - 2 * j
        a = _level_table(sp_rel_X, i, field, "SP(X)")
        b = _level_table(sp_rel_SX, j, field, "SP(ΣX)")
        for q, dim in tensor(a, b).dims().items():
            entries[(i, q)] = entries.get((i, q), 0) + dim
    return BigradedTable(entries, field)


def e1_connectivity_bound(e1: BigradedTable) -> BoundResult:
    """Connectivity lower bound: lowest nonzero total degree minus one."""
    low = e1.lowest_degree()
    value = INFINITE if low is None else low - 1
    return BoundResult(value, "lower_bound_connectivity", ANCHORS["e1"],
                       (f"E1 over {e1.field}",))


def e1_cohdim_bound(e1: BigradedTable, k: int, d: int = 2,
                    closed_surface: bool = False) -> BoundResult:
    """Dual cohdim bound d*k - conn - 1, raised by one for closed surfaces."""
    conn = e1_connectivity_bound(e1).value
    if conn == INFINITE:
        return BoundResult(-1, "upper_bound_cohdim", ANCHORS["e1"], ("E1 vanishes",))
    value = d * k - conn - 1 + (1 if closed_surface else 0)
    return BoundResult(value, "upper_bound_cohdim", ANCHORS["surface"],
                       (f"d={d}", f"k={k}", f"E1 connectivity {conn}",
                        "closed" if closed_surface else "Q ∪ ∂S nonempty"))


def surface_e1_envelope(k: int, w: int, field: Coefficients) -> BigradedTable:
    """Lowest possible E^1 entries for a surface quotient with w one-cells.

    Each summand is placed at one above the connectivity guaranteed by the
    bounds for reduced symmetric products of 2-complexes and of the simply
    connected suspension.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    entries: dict[tuple[int, int], int] = {}
    for j in range(k // 2 + 1):
        i = k - 2 * j
        if i:
            a_low = connectivity_formulas("reduced_sp_2complex", w=w, n=i).value + 1
        else:
            a_low = 0
        b_low = connectivity_formulas("reduced_sp", r=1, n=j).value + 1 if j else 0
        entries[(i, a_low + b_low)] = 1
    return BigradedTable(entries, field)


def stability_ranges(kind: str, k: int, s: str | None = None) -> BoundResult:
    """Homological stability ranges: ``arnold``, ``riemann_surface``, ``scanning``."""
    if k < 1:
        raise HypothesisError(f"needs k >= 1, got {k}", ANCHORS.get(kind, kind))

    def range_of(name: str, m: int) -> int:
        if name == "arnold":
            return m // 2
        if name == "riemann_surface":
            return m - 1
        raise ValueError(f"unknown stability function {name!r}")

    if kind in ("arnold", "riemann_surface"):
        return BoundResult(range_of(kind, k), "stability_range", ANCHORS[kind], (f"k={k}",))
    if kind == "scanning":
        if s is None:
            raise ValueError("scanning needs an s-function: arnold or riemann_surface")
        return BoundResult(range_of(s, k - 1), "stability_range", ANCHORS["scanning"],
                           (f"k={k}", f"s={s}", "M closed, d >= 2"))
    raise ValueError(f"unknown stability range {kind!r}")
