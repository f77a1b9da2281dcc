"""Nested parabolic pairs q ⊂ p ⊂ sl(n+1) described by crossed nodes.

Realization convention
----------------------
The nilradicals are indexed by positive roots, but the element of q₊
indexed by alpha = eps_i - eps_j is realized by the lowering matrix unit
E_{ji}.  This is the image of the familiar upper triangular picture under
the Chevalley involution.  With this choice q₊ consists of negative weight
vectors, so homology of q₊ is computed from highest weight vectors and every
Dynkin label used in the geometric literature is an honest highest weight.
The dual nilpotent algebra g_- is spanned by the raising units E_{ij}; the
trace form pairs E_{ji} with E_{ij} to 1.

The grading element E is the Cartan element in the semisimple part of the
Levi of p with alpha_j(E) = 1 for j crossed in q but not in p and
alpha_j(E) = 0 for the other Levi nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .qmatrix import QMatrix, fmt_rational
from .rootdata import (
    RootSystem,
    Weight,
    build_root_system,
    levi_blocks,
    levi_pairs,
    root_of_pair,
    simple_coefficients,
)

Pair = Tuple[int, int]
MatUnit = Dict[Tuple[int, int], Q]


class NestingError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sl(n+1) as explicit matrices


def unit(a: int, b: int) -> MatUnit:
    return {(a, b): Q(1)}


def cartan_h(m: int) -> MatUnit:
    return {(m, m): Q(1), (m + 1, m + 1): Q(-1)}


def mat_mul(x: MatUnit, y: MatUnit) -> MatUnit:
    out: MatUnit = {}
    for (a, b), u in x.items():
        for (c, d), v in y.items():
            if b == c:
                nv = out.get((a, d), 0) + u * v
                if nv:
                    out[(a, d)] = nv
                else:
                    out.pop((a, d), None)
    return out


def mat_bracket(x: MatUnit, y: MatUnit) -> MatUnit:
    out = mat_mul(x, y)
    for k, v in mat_mul(y, x).items():
        nv = out.get(k, 0) - v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def trace_form(x: MatUnit, y: MatUnit) -> Q:
    p = mat_mul(x, y)
    return sum((v for (a, b), v in p.items() if a == b), Q(0))


def sl_basis(rank: int) -> List[Tuple[str, MatUnit]]:
    """Labelled basis: root vectors E_ab (a != b) then Cartan H_1..H_n."""
    n1 = rank + 1
    out = [(f"E{a}{b}", unit(a, b)) for a in range(1, n1 + 1) for b in range(1, n1 + 1) if a != b]
    out += [(f"H{m}", cartan_h(m)) for m in range(1, rank + 1)]
    return out


def sl_coordinates(rank: int, x: MatUnit) -> Dict[int, Q]:
    """Coordinates of a traceless matrix in the basis of :func:`sl_basis`."""
    n1 = rank + 1
    idx = {}
    k = 0
    for a in range(1, n1 + 1):
        for b in range(1, n1 + 1):
            if a != b:
                idx[(a, b)] = k
                k += 1
    out: Dict[int, Q] = {}
    diag = [Q(0)] * (n1 + 1)
    for (a, b), v in x.items():
        if a == b:
            diag[a] = v
        else:
            out[idx[(a, b)]] = v
    if sum(diag) != 0:
        raise ValueError("matrix is not traceless")
    acc = Q(0)
    for m in range(1, rank + 1):
        acc += diag[m]
        if acc:
            out[k + m - 1] = acc
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LeviSubsystem:
    """Semisimple part of a Levi factor together with its embedding."""

    nodes: Tuple[int, ...]
    components: Tuple[Tuple[int, ...], ...]
    relative_crossed: Tuple[int, ...]
    positive_pairs: Tuple[Pair, ...]

    @property
    def cartan_type(self) -> str:
        return "x".join(f"A{len(c)}" for c in self.components)

    @property
    def rank(self) -> int:
        return len(self.nodes)

    def cartan_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        ns = self.nodes
        return tuple(
            tuple(2 if a == b else (-1 if abs(a - b) == 1 else 0) for b in ns) for a in ns
        )


@dataclass(frozen=True)
class ParabolicPair:
    rs: RootSystem
    crossed_p: FrozenSet[int]
    crossed_q: FrozenSet[int]
    basis_q_plus: Tuple[Pair, ...]
    basis_p_plus: Tuple[Pair, ...]
    basis_rel: Tuple[Pair, ...]
    grading: Tuple[Tuple[Pair, int], ...]
    bracket_table: Tuple[Tuple[int, int, int, int], ...]
    _grading_coeffs: Tuple[Q, ...]

    # -- descriptions --------------------------------------------------
    @property
    def rank(self) -> int:
        return self.rs.rank

    def __str__(self) -> str:
        return pair_string(self)

    @property
    def levi_p_nodes(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.rank + 1) if i not in self.crossed_p)

    @property
    def levi_q_nodes(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.rank + 1) if i not in self.crossed_q)

    def grade(self, pair: Pair) -> int:
        c = simple_coefficients(self.rank, *pair)
        return sum(c[m - 1] for m in self.crossed_q)

    def nil_weight(self, pair: Pair) -> Weight:
        """Weight of the realized nilradical element (the negative root)."""
        return -root_of_pair(self.rank, *pair)

    def grading_value(self, mu: Weight) -> Q:
        """mu(E) for the grading element E."""
        return sum((c * m for c, m in zip(self._grading_coeffs, mu.coords)), Q(0))

    # -- brackets on the nilradical ---------------------------------------
    def nil_bracket(self, a: Pair, b: Pair) -> Optional[Tuple[int, Pair]]:
        """[X_a, X_b] for nilradical elements realized by E_{ji}, E_{lk}."""
        i, j = a
        k, l = b
        if i == l:
            return (1, (k, j))
        if k == j:
            return (-1, (i, l))
        return None

    def rel_bracket(self, a: Pair, b: Pair) -> Optional[Tuple[int, Pair]]:
        """Induced bracket on q₊/p₊ (terms landing in p₊ are dropped)."""
        r = self.nil_bracket(a, b)
        if r is None or r[1] in self._p_set:
            return None
        return r

    @property
    def _p_set(self) -> FrozenSet[Pair]:
        return frozenset(self.basis_p_plus)

    def dual_bracket(self, a: Pair, b: Pair) -> Optional[Tuple[int, Pair]]:
        """[Y_a, Y_b] in g_- realized by raising units E_{ij}, E_{kl}."""
        i, j = a
        k, l = b
        if j == k:
            return (1, (i, l))
        if l == i:
            return (-1, (k, j))
        return None

    def nil_matrix(self, pair: Pair) -> MatUnit:
        return unit(pair[1], pair[0])

    # -- checks -----------------------------------------------------------
    def check_invariants(self) -> List[str]:
        problems = []
        qset, pset = set(self.basis_q_plus), set(self.basis_p_plus)
        if not pset <= qset:
            problems.append("p+ is not contained in q+")
        p_roots = _parabolic_roots(self.rank, self.crossed_p)
        for b in self.basis_p_plus:
            for r in p_roots:
                x = mat_bracket(self.nil_matrix(b), unit(*r))
                for (u, v), c in x.items():
                    if u == v:
                        problems.append(f"[p+, p] has Cartan part for {b},{r}")
                    elif (v, u) not in pset:
                        problems.append(f"[p+, p] leaves p+ for {b},{r}")
        for a in self.basis_rel:
            for b in self.basis_rel:
                base = self.rel_bracket(a, b)
                for pp in self.basis_p_plus:
                    x = mat_bracket(mat_add(self.nil_matrix(a), self.nil_matrix(pp)), self.nil_matrix(b))
                    x = {k: v for k, v in x.items() if (k[1], k[0]) not in pset}
                    want = {} if base is None else {(base[1][1], base[1][0]): Q(base[0])}
                    if x != want:
                        problems.append(f"induced bracket depends on representative {a},{b},{pp}")
        for a in self.basis_q_plus:
            for b in self.basis_q_plus:
                r = self.nil_bracket(a, b)
                if r is not None and self.grade(r[1]) != self.grade(a) + self.grade(b):
                    problems.append(f"grading incompatible for {a},{b}")
        return problems

    def levi(self, which: str = "p") -> LeviSubsystem:
        nodes = self.levi_p_nodes if which == "p" else self.levi_q_nodes
        comps, cur = [], []
        for i in nodes:
            if cur and i != cur[-1] + 1:
                comps.append(tuple(cur))
                cur = []
            cur.append(i)
        if cur:
            comps.append(tuple(cur))
        rel = tuple(sorted(set(self.crossed_q) - set(self.crossed_p))) if which == "p" else ()
        return LeviSubsystem(tuple(nodes), tuple(comps), rel, tuple(levi_pairs(self.rank, nodes)))

    def to_json(self) -> dict:
        return {
            "type": f"A{self.rank}",
            "crossed_p": sorted(self.crossed_p),
            "crossed_q": sorted(self.crossed_q),
            "q_plus": [list(r) for r in self.basis_q_plus],
            "p_plus": [list(r) for r in self.basis_p_plus],
            "rel": [list(r) for r in self.basis_rel],
            "grading": [[list(r), g] for r, g in self.grading],
            "brackets": [list(t) for t in self.bracket_table],
            "grading_element": [fmt_rational(c) for c in self._grading_coeffs],
        }


def mat_add(x: MatUnit, y: MatUnit) -> MatUnit:
    out = dict(x)
    for k, v in y.items():
        nv = out.get(k, 0) + v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _parabolic_roots(rank: int, crossed: Iterable[int]) -> List[Pair]:
    """All roots (a, b) whose realized vector lies in the parabolic.

    In the realization above the parabolic contains the Levi and the
    lowering units of the nilradical, so (a, b) qualifies when the root
    eps_a - eps_b has non-positive crossed coefficients.
    """
    crossed = set(crossed)
    out = []
    for a in range(1, rank + 2):
        for b in range(1, rank + 2):
            if a == b:
                continue
            lo, hi = min(a, b), max(a, b)
            tot = sum(1 for m in crossed if lo <= m < hi)
            sign = 1 if a < b else -1
            if sign * tot <= 0:
                out.append((a, b))
    return out


def _grading_coefficients(rank: int, crossed_p, crossed_q) -> Tuple[Q, ...]:
    nodes = [i for i in range(1, rank + 1) if i not in crossed_p]
    target = [Q(1) if i in crossed_q else Q(0) for i in nodes]
    coeffs = [Q(0)] * rank
    if nodes:
        a = QMatrix.from_dense(
            [[2 if x == y else (-1 if abs(x - y) == 1 else 0) for y in nodes] for x in nodes]
        )
        sol = a.solve(QMatrix.from_dense([[t] for t in target]))
        for n, i in enumerate(nodes):
            coeffs[i - 1] = sol[n, 0]
    return tuple(coeffs)


def _parse_nodes(nodes, rank: int) -> FrozenSet[int]:
    s = frozenset(int(x) for x in nodes)
    bad = [x for x in s if not 1 <= x <= rank]
    if bad:
        raise NestingError(f"nodes {sorted(bad)} outside 1..{rank}")
    return s


@lru_cache(maxsize=None)
def _build(rank: int, crossed_p: FrozenSet[int], crossed_q: FrozenSet[int]) -> ParabolicPair:
    rs = build_root_system(rank)

    def key(pr):
        return (sum(simple_coefficients(rank, *pr)[m - 1] for m in crossed_q),
                simple_coefficients(rank, *pr))

    pos = rs.positive_pairs
    qp = tuple(sorted((r for r in pos if any(simple_coefficients(rank, *r)[m - 1] for m in crossed_q)), key=key))
    pp = tuple(r for r in qp if any(simple_coefficients(rank, *r)[m - 1] for m in crossed_p))
    rel = tuple(r for r in qp if r not in pp)
    grading = tuple((r, key(r)[0]) for r in qp)
    index = {r: n for n, r in enumerate(qp)}
    pair = ParabolicPair(rs, crossed_p, crossed_q, qp, pp, rel, grading, (), _grading_coefficients(rank, crossed_p, crossed_q))
    table = []
    for a in qp:
        for b in qp:
            r = pair.nil_bracket(a, b)
            if r is not None:
                table.append((index[a], index[b], r[0], index[r[1]]))
    object.__setattr__(pair, "bracket_table", tuple(table))
    return pair


def build_pair(rs_or_rank, crossed_p: Iterable[int], crossed_q: Iterable[int]) -> ParabolicPair:
    rank = rs_or_rank.rank if isinstance(rs_or_rank, RootSystem) else int(rs_or_rank)
    build_root_system(rank)
    cp, cq = _parse_nodes(crossed_p, rank), _parse_nodes(crossed_q, rank)
    if not cp <= cq:
        raise NestingError(
            f"crossed_p {sorted(cp)} must be a subset of crossed_q {sorted(cq)} (q ⊂ p)"
        )
    return _build(rank, cp, cq)


def levi_root_system(pair: ParabolicPair) -> LeviSubsystem:
    return pair.levi("p")


def pair_string(pair: ParabolicPair) -> str:
    p = ",".join(map(str, sorted(pair.crossed_p)))
    q = ",".join(map(str, sorted(pair.crossed_q)))
    return f"A{pair.rank} p={p} q={q}"


def parse_pair_string(text: str) -> ParabolicPair:
    """Parse strings like ``"A3 p=1 q=1,2"`` (``p=`` may be empty)."""
    parts = text.split()
    if not parts or not parts[0].upper().startswith("A"):
        raise ValueError(f"cannot parse pair {text!r}: expected 'A<rank> p=... q=...'")
    try:
        rank = int(parts[0][1:])
    except ValueError:
        raise ValueError(f"bad algebra {parts[0]!r}") from None
    found = {"p": (), "q": ()}
    for tok in parts[1:]:
        if "=" not in tok:
            raise ValueError(f"bad token {tok!r}")
        k, v = tok.split("=", 1)
        if k not in found:
            raise ValueError(f"unknown key {k!r}")
        found[k] = tuple(int(x) for x in v.split(",") if x.strip())
    return build_pair(rank, found["p"], found["q"])


# ---------------------------------------------------------------------------
# Invariant pairing on p/p₊ (identified with the Levi of p)


@dataclass(frozen=True)
class InvariantPairing:
    labels: Tuple[str, ...]
    elements: Tuple[Tuple[Tuple[Tuple[int, int], Q], ...], ...]
    matrix: QMatrix

    def element(self, n: int) -> MatUnit:
        return dict(self.elements[n])

    def is_nondegenerate(self) -> bool:
        return self.matrix.rank() == self.matrix.nrows


def invariant_pairing(pair: ParabolicPair) -> InvariantPairing:
    rank = pair.rank
    labels, elems = [], []
    for i, j in levi_pairs(rank, pair.levi_p_nodes):
        for a, b in ((i, j), (j, i)):
            labels.append(f"E{a}{b}")
            elems.append(unit(a, b))
    for m in range(1, rank + 1):
        labels.append(f"H{m}")
        elems.append(cartan_h(m))
    mat = QMatrix.from_dense([[trace_form(x, y) for y in elems] for x in elems])
    return InvariantPairing(
        tuple(labels), tuple(tuple(sorted(e.items())) for e in elems), mat
    )


def levi_q_part_in_levi_p(pair: ParabolicPair, bp: InvariantPairing) -> List[int]:
    """Indices of the basis of p/p₊ spanning q/p₊ (Cartan plus q-compatible roots)."""
    out = []
    for n, lab in enumerate(bp.labels):
        if lab.startswith("H"):
            out.append(n)
            continue
        a, b = int(lab[1]), int(lab[2])
        lo, hi = min(a, b), max(a, b)
        g = sum(1 for m in pair.crossed_q if lo <= m < hi)
        # realized q contains lowering units of q₊ and the Levi of q
        if g == 0 or a > b:
            out.append(n)
    return out


def rel_dual_weights(pair: ParabolicPair) -> List[Weight]:
    """Weights of (q₊/p₊)^*."""
    return sorted((-pair.nil_weight(r) for r in pair.basis_rel), key=lambda w: w.coords)


def p_mod_q_weights(pair: ParabolicPair) -> List[Weight]:
    """Weights of p/q in the realization (Levi-of-p roots outside q)."""
    out = []
    for i, j in levi_pairs(pair.rank, pair.levi_p_nodes):
        for a, b in ((i, j), (j, i)):
            g = sum(1 for m in pair.crossed_q if min(a, b) <= m < max(a, b))
            if g and a < b:
                out.append(root_of_pair(pair.rank, a, b))
    return sorted(out, key=lambda w: w.coords)
