"""Known homotopy types and homology values, kept apart from computed output.

Entries live in ``data/known_values.json`` (or ``$CONFIGHOM_CORPUS_DIR``);
:func:`expected_table` turns an entry plus its parameter into a table.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from math import comb
from pathlib import Path

from .chaincore import Coefficients, GradedGroup, Z, point

ENV_VAR = "CONFIGHOM_CORPUS_DIR"
FILENAME = "known_values.json"


def corpus_path(corpus_dir: str | os.PathLike | None = None) -> Path:
    base = corpus_dir or os.environ.get(ENV_VAR)
    if base:
        return Path(base) / FILENAME
    return Path(str(resources.files("confighom") / "data" / FILENAME))


def load_registry(corpus_dir=None) -> dict[str, dict]:
    with open(corpus_path(corpus_dir)) as fh:
        data = json.load(fh)
    return {e["id"]: e for e in data["entries"]}


def rp_homology(n: int, coeffs: Coefficients) -> GradedGroup:
    """H_*(RP^n)."""
    if coeffs.kind == "Z":
        entries = {0: (1, ())}
        for q in range(1, n + 1):
            if q % 2 and q < n:
                entries[q] = (0, (2,))
            elif q == n and n % 2:
                entries[q] = (1, ())
        return GradedGroup(entries, coeffs)
    if coeffs.characteristic == 2:
        return GradedGroup.from_dims([1] * (n + 1), coeffs)
    # odd characteristic or Q: a point, plus the top class when n is odd
    dims = {0: 1}
    if n % 2:
        dims[n] = 1
    return GradedGroup.from_dims(dims, coeffs)


def rp_cohomology_f2(n: int, coeffs: Coefficients) -> GradedGroup:
    if coeffs.characteristic != 2:
        raise ValueError("registry RP tables are stored over F2")
    return GradedGroup.from_dims([1] * (n + 1), coeffs)


def sphere(n: int, coeffs: Coefficients, reduced: bool = False) -> GradedGroup:
    dims = {n: 1} if reduced else ({0: 2} if n == 0 else {0: 1, n: 1})
    return GradedGroup({q: (r, ()) for q, r in dims.items()}, coeffs, reduced)


def cp_homology(n: int, coeffs: Coefficients) -> GradedGroup:
    return GradedGroup({2 * q: (1, ()) for q in range(n + 1)}, coeffs)


def torus(rank: int, coeffs: Coefficients) -> GradedGroup:
    return GradedGroup({q: (comb(rank, q), ()) for q in range(rank + 1)}, coeffs)


def artin_rational(r: int, coeffs: Coefficients) -> GradedGroup:
    """H^*(B(C, r); Q)."""
    return GradedGroup.from_dims({0: 1, 1: 1} if r >= 2 else {0: 1}, coeffs)


def expected_table(entry: dict, value: int) -> GradedGroup:
    """Table predicted by a registry entry at parameter ``value``."""
    lo, hi = entry["valid"]["min"], entry["valid"]["max"]
    if not lo <= value <= hi:
        raise ValueError(f"{entry['id']} is recorded for {entry['parameter']} in [{lo}, {hi}]")
    coeffs = Coefficients.parse(entry["coefficients"])
    family = entry["family"]
    if family == "rp":
        return rp_cohomology_f2(value + entry.get("offset", 0), coeffs)
    if family == "sphere":
        return sphere(entry["dimension"], coeffs)
    if family == "point":
        return point(coeffs)
    if family == "cp":
        return cp_homology(value, coeffs)
    if family == "reduced_sphere":
        return sphere(entry.get("scale", 1) * value, coeffs, reduced=True)
    if family == "artin_rational":
        return artin_rational(value, coeffs)
    raise ValueError(f"entry {entry['id']} has no table form (family {family!r})")


def surface_h1(genus: int) -> GradedGroup:
    """The degree-1 group Z/2 + Z^(2g) recorded for closed surfaces."""
    return GradedGroup({1: (2 * genus, (2,))}, Z)
