"""Generalized path geometries in dimension five.

The homogeneous model is sl(4) with P the stabilizer of a line (node 1
crossed) and Q the stabilizer of a line inside a plane (nodes 1 and 2
crossed).  A relative BGG sequence is determined by a weight (a, b, c) that is
dominant and integral for the Levi factor of P, written as
a = w + k, b = ℓ, c = k.  Everything in this module is closed-form weight
arithmetic; :func:`validate_against_engine` compares it with the homology
engine.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import List, Optional, Tuple

from .homology import complex_for, homology
from .parabolic import build_pair
from .qmatrix import as_rational, fmt_rational
from .rootdata import Weight, build_root_system, character_is_regular, singular_roots, weight

RANK = 3
CROSSED_P = (1,)
CROSSED_Q = (1, 2)

CASES = ("case-A", "case-B", "case-C", "case-D")

NOTES = {
    "relative_bgg": "the relative BGG sequence of an involutive path geometry is a complex and a fine resolution",
    "tensor_bundle": "on a correspondence space (or locally on a path geometry) the kernel sheaf is the tensor bundle below",
    "orders": "operator orders come from a symbol argument; nonvanishing of the operators is not computed here",
}


@dataclass(frozen=True)
class PathGeomCase:
    w: Q
    k: int
    l: int

    def __post_init__(self):
        object.__setattr__(self, "w", as_rational(self.w))
        for name in ("k", "l"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def abc(self) -> Tuple[Q, int, int]:
        return (self.w + self.k, self.l, self.k)

    def to_json(self) -> dict:
        return {"w": fmt_rational(self.w), "k": self.k, "l": self.l}


@dataclass(frozen=True)
class BundleName:
    """S^c V*(A, B): a symmetric power of V* twisted by the line bundle (A, B)."""

    c: int
    A: Q
    B: Q

    def weight(self) -> Weight:
        return weight(self.A + self.c, self.B - 2 * self.c, self.c)

    @classmethod
    def from_weight(cls, lam: Weight) -> "BundleName":
        a, b, c = lam.coords
        if c != int(c) or c < 0:
            raise ValueError(f"{lam} is not the weight of a symmetric power of V*")
        c = int(c)
        return cls(c, a - c, b + 2 * c)

    def __str__(self) -> str:
        return f"S^{self.c}V*({_num(self.A)},{_num(self.B)})"

    @classmethod
    def parse(cls, s: str) -> "BundleName":
        m = re.fullmatch(r"\s*S\^(\d+)V\*\(\s*([-\d/]+)\s*,\s*([-\d/]+)\s*\)\s*", s)
        if not m:
            raise ValueError(f"cannot parse bundle name {s!r}")
        return cls(int(m.group(1)), Q(m.group(2)), Q(m.group(3)))


@dataclass
class PathSequence:
    case: PathGeomCase
    weights: Tuple[Weight, Weight, Weight]
    bundles: Tuple[BundleName, BundleName, BundleName]
    orders: Tuple[int, int]

    def to_json(self) -> dict:
        return {
            "weights": [w.to_json() for w in self.weights],
            "dynkin": [w.dynkin(CROSSED_Q) for w in self.weights],
            "bundles": [str(b) for b in self.bundles],
            "orders": list(self.orders),
        }


def path_sequence(case: PathGeomCase) -> PathSequence:
    w, k, l = case.w, case.k, case.l
    weights = (
        weight(w + k, l, k),
        weight(w + k + l + 1, -l - 2, k + l + 1),
        weight(w + 2 * k + l + 2, -k - l - 3, l),
    )
    bundles = (
        BundleName(k, w, 2 * k + l),
        BundleName(k + l + 1, w, 2 * k + l),
        BundleName(l, w + 2 * k + 2, l - k - 3),
    )
    return PathSequence(case, weights, bundles, (l + 1, k + 1))


def classify_subsequence(case: PathGeomCase) -> str:
    """Which of the four relative subsequences of a standard BGG sequence, if any."""
    if case.w.denominator != 1:
        return "none"
    a, b, c = case.abc
    hits = [a >= 0, a <= -2 and a + b >= -1, a + b <= -3 and a + b + c >= -2, a + b + c <= -4]
    if sum(hits) > 1:
        raise AssertionError(f"classifier conditions overlap at {case}")
    for name, hit in zip(CASES, hits):
        if hit:
            return name
    return "none"


def classify_in_w(case: PathGeomCase) -> str:
    """The same classification written directly in terms of (w, k, ℓ)."""
    if case.w.denominator != 1:
        return "none"
    w, k, l = case.w, case.k, case.l
    if w + k >= 0:
        return "case-A"
    if w + k <= -2 and w + k + l >= -1:
        return "case-B"
    if w + k + l <= -3 and w + 2 * k + l >= -2:
        return "case-C"
    if w + 2 * k + l <= -4:
        return "case-D"
    return "none"


WALLS = {
    1: lambda c: -1 - c.k,
    2: lambda c: -2 - c.k - c.l,
    3: lambda c: -3 - 2 * c.k - c.l,
}


def singular_character(case: PathGeomCase) -> Tuple[bool, List[int]]:
    walls = [i for i, f in WALLS.items() if case.w == f(case)]
    return bool(walls), walls


def engine_singularity(case: PathGeomCase) -> dict:
    rs = build_root_system(RANK)
    lam = weight(*case.abc)
    return {
        "regular": character_is_regular(rs, lam),
        "singular_roots": [list(p) for p in singular_roots(rs, lam)],
    }


def _num(x: Q) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def density(m) -> Weight:
    """Weight of the density bundle E[m] over the twistor space."""
    return weight(as_rational(m), 0, 0)


@dataclass
class TensorBundle:
    k: int
    l: int
    density: Q

    @property
    def label(self) -> str:
        return f"T^{self.k}_{self.l}[{_num(self.density)}]"

    @property
    def plain(self) -> str:
        if self.k == 0 and self.l == 0:
            return f"E[{_num(self.density)}]"
        if self.k == 0:
            return f"S^{self.l}T*N[{_num(self.density)}]"
        if self.l == 0:
            return f"S^{self.k}TN[{_num(self.density)}]"
        return f"ker(S^{self.l}T*N⊗S^{self.k}TN → S^{self.l - 1}T*N⊗S^{self.k - 1}TN)[{_num(self.density)}]"

    def base_weight(self) -> Weight:
        """Highest weight of S^ℓ(g/p)* ⊗ S^k(g/p), without the density."""
        return weight(self.k - 2 * self.l, self.l, self.k)

    def weight(self) -> Weight:
        return self.base_weight() + density(self.density)

    def to_json(self) -> dict:
        return {"label": self.label, "plain": self.plain, "weight": self.weight().to_json()}


def tensor_bundle(case: PathGeomCase) -> TensorBundle:
    return TensorBundle(case.k, case.l, case.w + 2 * case.l)


G_MOD_P = weight(1, 0, 1)
G_MOD_P_DUAL = weight(-2, 1, 0)


@dataclass
class EngineReport:
    case: PathGeomCase
    expected: List[Weight]
    computed: List[List[Weight]]

    @property
    def ok(self) -> bool:
        return all(c == [e] for c, e in zip(self.computed, self.expected)) and len(self.computed) == 3

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "expected": [w.to_json() for w in self.expected],
            "computed": [[w.to_json() for w in ws] for ws in self.computed],
        }


def validate_against_engine(case: PathGeomCase) -> EngineReport:
    pair = build_pair(RANK, CROSSED_P, CROSSED_Q)
    cx = complex_for(pair, weight(*case.abc))
    summary = homology(cx)
    computed = [sorted(summary.weights(i).elements(), key=lambda w: w.coords) for i in range(cx.top + 1)]
    return EngineReport(case, list(path_sequence(case).weights), computed)


def report(case: PathGeomCase, validate: bool = False) -> dict:
    seq = path_sequence(case)
    singular, walls = singular_character(case)
    out = {
        "case": case.to_json(),
        **seq.to_json(),
        "classification": classify_subsequence(case),
        "singular": singular,
        "walls": walls,
        "tensor_bundle": tensor_bundle(case).to_json(),
        "notes": NOTES,
    }
    if validate:
        out["engine"] = validate_against_engine(case).to_json()
    return out


def grid(ws, ks, ls) -> List[PathGeomCase]:
    return [PathGeomCase(w, k, l) for w in ws for k in ks for l in ls]


def partition_check(ws=range(-12, 5), ks=range(5), ls=range(5)) -> Optional[str]:
    """None if the classifier is consistent on the grid, else a description."""
    for c in grid(ws, ks, ls):
        x, y = classify_subsequence(c), classify_in_w(c)
        if x != y:
            return f"{c}: {x} vs {y}"
    return None
