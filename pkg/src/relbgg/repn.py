"""Explicit finite-dimensional modules with exact action matrices.

A :class:`WeightModule` is acted on by the Chevalley generators e_i, f_i of
the simple nodes listed in ``nodes`` (all nodes for sl(n+1), a subset for a
Levi factor) and by the full Cartan subalgebra through recorded weights.
The remaining Cartan directions are central in the Levi and act through the
weights as well, which is how rational central twists are carried.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from fractions import Fraction as Q
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .qmatrix import Echelon, QMatrix, as_rational, fmt_rational, vec_axpy
from .rootdata import (
    RootSystem,
    Weight,
    build_root_system,
    levi_blocks,
    levi_pairs,
    weyl_dimension,
)

DEFAULT_MAX_DIM = 20000


class RepresentabilityError(ValueError):
    pass


class DimensionError(RuntimeError):
    pass


def max_dim() -> int:
    raw = os.environ.get("BGG_MAX_DIM")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"BGG_MAX_DIM must be an integer, got {raw!r}") from None
    return DEFAULT_MAX_DIM


def guard(dim: int, what: str) -> None:
    cap = max_dim()
    if dim > cap:
        raise DimensionError(f"{what} would have dimension {dim} > {cap} (set BGG_MAX_DIM to override)")


class WeightModule:
    """A module with weight basis and e_i/f_i matrices for the acting nodes."""

    def __init__(
        self,
        rank: int,
        nodes: Iterable[int],
        labels: Sequence[Hashable],
        weights: Sequence[Weight],
        e: Dict[int, QMatrix],
        f: Dict[int, QMatrix],
        highest_weight: Optional[Weight] = None,
        name: str = "",
    ):
        self.rank = rank
        self.nodes = tuple(sorted(nodes))
        self.labels = tuple(labels)
        self.weights = tuple(weights)
        self.e = dict(e)
        self.f = dict(f)
        self.highest_weight = highest_weight
        self.name = name
        self._roots: Dict[Tuple[int, int], QMatrix] = {}
        self.elements = None  # matrices of the basis, for modules that are Lie algebras
        guard(len(self.labels), f"module {name or '?'}")
        if len(self.weights) != len(self.labels):
            raise ValueError("one weight per basis label is required")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def rs(self) -> RootSystem:
        return build_root_system(self.rank)

    @property
    def central_nodes(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.rank + 1) if i not in self.nodes)

    @property
    def central_twist(self) -> Tuple[Q, ...]:
        """Central character read off at the non-acting nodes."""
        if self.highest_weight is None:
            return ()
        return tuple(self.highest_weight[i - 1] for i in self.central_nodes)

    def __repr__(self) -> str:
        return f"WeightModule({self.name or 'anonymous'}, dim={self.dim}, nodes={self.nodes})"

    def h(self, i: int) -> QMatrix:
        return QMatrix.diagonal([w[i - 1] for w in self.weights])

    def root_vector(self, a: int, b: int) -> QMatrix:
        """Action of the matrix unit E_ab (a != b) of the acting algebra."""
        key = (a, b)
        got = self._roots.get(key)
        if got is not None:
            return got
        lo, hi = min(a, b), max(a, b)
        missing = [m for m in range(lo, hi) if m not in self.nodes]
        if missing:
            raise ValueError(f"E{a}{b} is not in the acting algebra (nodes {self.nodes})")
        if a < b:
            got = self.e[a] if b == a + 1 else self.e[a].commutator(self.root_vector(a + 1, b))
        else:
            got = self.f[b] if a == b + 1 else self.root_vector(a, b + 1).commutator(self.f[b])
        self._roots[key] = got
        return got

    def weight_spaces(self) -> Dict[Weight, List[int]]:
        out: Dict[Weight, List[int]] = defaultdict(list)
        for n, w in enumerate(self.weights):
            out[w].append(n)
        return dict(out)

    def character(self) -> Dict[Weight, int]:
        return {w: len(ix) for w, ix in self.weight_spaces().items()}

    def check_relations(self) -> List[str]:
        """Chevalley-Serre relations; returns a list of violations."""
        bad = []
        for i in self.nodes:
            for j in self.nodes:
                c = self.e[i].commutator(self.f[j])
                want = self.h(i) if i == j else QMatrix.zeros(self.dim, self.dim)
                if c != want:
                    bad.append(f"[e{i},f{j}]")
                a_ij = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
                if self.h(i).commutator(self.e[j]) != self.e[j].scale(a_ij):
                    bad.append(f"[h{i},e{j}]")
                if self.h(i).commutator(self.f[j]) != self.f[j].scale(-a_ij):
                    bad.append(f"[h{i},f{j}]")
                if abs(i - j) == 1:
                    for x, nm in ((self.e, "e"), (self.f, "f")):
                        if not x[i].commutator(x[i].commutator(x[j])).is_zero():
                            bad.append(f"serre {nm}{i}{nm}{j}")
                elif i != j:
                    if not self.e[i].commutator(self.e[j]).is_zero():
                        bad.append(f"[e{i},e{j}]")
                    if not self.f[i].commutator(self.f[j]).is_zero():
                        bad.append(f"[f{i},f{j}]")
        return bad

    def highest_weight_vectors(self, nodes: Optional[Iterable[int]] = None) -> Dict[Weight, List[Dict[int, Q]]]:
        """Basis of vectors killed by e_i (i in nodes), grouped by weight."""
        nodes = self.nodes if nodes is None else tuple(nodes)
        out = {}
        for w, idx in sorted(self.weight_spaces().items(), key=lambda t: t[0].coords):
            cols = [[self.e[i].column(n) for n in idx] for i in nodes]
            if not nodes:
                vecs = [{n: Q(1)} for n in idx]
            else:
                rows: Dict[Tuple[int, int], Dict[int, Q]] = {}
                for k, i in enumerate(nodes):
                    for c, col in enumerate(cols[k]):
                        for r, v in col.items():
                            rows.setdefault((k, r), {})[c] = v
                mat = QMatrix.from_rows(len(idx), [rows[k] for k in sorted(rows)])
                vecs = [{idx[c]: v for c, v in ns.items()} for ns in mat.nullspace()]
            if vecs:
                out[w] = vecs
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "nodes": list(self.nodes),
            "highest_weight": None if self.highest_weight is None else self.highest_weight.to_json(),
            "basis": [str(l) for l in self.labels],
            "weights": [w.to_json() for w in self.weights],
            "e": {str(i): self.e[i].to_json() for i in self.nodes},
            "f": {str(i): self.f[i].to_json() for i in self.nodes},
        }


# ---------------------------------------------------------------------------
# construction of irreducibles


def _fund_apply(kind: str, i: int, subset: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    """e_i / f_i on the basis vector e_S of Λ^k of the standard module."""
    s = set(subset)
    if kind == "f":
        if i in s and i + 1 not in s:
            return tuple(sorted((s - {i}) | {i + 1}))
    else:
        if i + 1 in s and i not in s:
            return tuple(sorted((s - {i + 1}) | {i}))
    return None


def _tensor_apply(kind: str, i: int, vec: Dict[tuple, Q]) -> Dict[tuple, Q]:
    out: Dict[tuple, Q] = {}
    for lab, c in vec.items():
        for pos, sub in enumerate(lab):
            new = _fund_apply(kind, i, sub)
            if new is not None:
                nl = lab[:pos] + (new,) + lab[pos + 1:]
                v = out.get(nl, 0) + c
                if v:
                    out[nl] = v
                else:
                    out.pop(nl, None)
    return out


def irrep(rank: int, lam, nodes: Optional[Iterable[int]] = None, name: str = "") -> WeightModule:
    """Irreducible module with highest weight ``lam`` over g or a Levi factor.

    Only the coordinates at ``nodes`` have to be dominant integral; the
    others are a (rational) central character.
    """
    rs = build_root_system(rank)
    lam = lam if isinstance(lam, Weight) else Weight(lam)
    if lam.rank != rank:
        raise RepresentabilityError(f"weight {lam} has {lam.rank} coordinates, expected {rank}")
    nodes = tuple(range(1, rank + 1)) if nodes is None else tuple(sorted(set(nodes)))
    for i in nodes:
        c = lam[i - 1]
        if c.denominator != 1 or c < 0:
            raise RepresentabilityError(
                f"weight {lam} is not dominant integral at node {i} of the acting algebra"
            )
    expected = weyl_dimension(rs, lam, nodes)
    guard(expected, f"irrep {lam}")
    top = tuple(tuple(range(1, i + 1)) for i in nodes for _ in range(int(lam[i - 1])))
    alpha = {i: rs.simple_roots[i - 1] for i in nodes}

    basis: List[Dict[tuple, Q]] = [{top: Q(1)}]
    weights: List[Weight] = [lam]
    spaces: Dict[Weight, Echelon] = defaultdict(lambda: Echelon(track=True))
    members: Dict[Weight, List[int]] = defaultdict(list)
    spaces[lam].add(basis[0], {0: Q(1)})
    members[lam].append(0)
    n = 0
    while n < len(basis):
        v, w = basis[n], weights[n]
        for i in nodes:
            u = _tensor_apply("f", i, v)
            if not u:
                continue
            wt = w - alpha[i]
            idx = len(basis)
            if spaces[wt].add(u, {idx: Q(1)}) is not None:
                basis.append(u)
                weights.append(wt)
                members[wt].append(idx)
        n += 1
    if len(basis) != expected:
        raise AssertionError(f"constructed {len(basis)} vectors, Weyl formula gives {expected}")

    def coords(vec, wt) -> Dict[int, Q]:
        ech = spaces.get(wt)
        if ech is None:
            raise AssertionError("vector left the module")
        rest, tag = ech.reduce(vec, {})
        if rest:
            raise AssertionError("vector left the module")
        return {k: -c for k, c in tag.items()}

    e_rows: Dict[int, Dict[int, Dict[int, Q]]] = {i: {} for i in nodes}
    f_rows: Dict[int, Dict[int, Dict[int, Q]]] = {i: {} for i in nodes}
    for col, (v, w) in enumerate(zip(basis, weights)):
        for i in nodes:
            for kind, rows, wt in (("e", e_rows[i], w + alpha[i]), ("f", f_rows[i], w - alpha[i])):
                u = _tensor_apply(kind, i, v)
                if u:
                    for r, c in coords(u, wt).items():
                        rows.setdefault(r, {})[col] = c
    d = len(basis)
    labels = [f"v{k}" for k in range(d)]
    return WeightModule(
        rank,
        nodes,
        labels,
        weights,
        {i: QMatrix(d, d, e_rows[i]) for i in nodes},
        {i: QMatrix(d, d, f_rows[i]) for i in nodes},
        highest_weight=lam,
        name=name or f"L{lam}",
    )


def trivial(rank: int, nodes: Optional[Iterable[int]] = None, central=None) -> WeightModule:
    nodes = tuple(range(1, rank + 1)) if nodes is None else tuple(nodes)
    lam = [Q(0)] * rank
    if central is not None:
        cn = [i for i in range(1, rank + 1) if i not in nodes]
        for i, c in zip(cn, central):
            lam[i - 1] = as_rational(c)
    return irrep(rank, Weight(lam), nodes, name="trivial")


def standard(rank: int) -> WeightModule:
    return irrep(rank, Weight([1] + [0] * (rank - 1)), name="standard")


def adjoint_module(rank: int, nodes: Optional[Iterable[int]] = None) -> WeightModule:
    """The adjoint module of sl(n+1) (or of a Levi) on its matrix basis.

    Basis: root vectors E_ab of the acting algebra followed by H_1..H_n.
    For a Levi the whole Cartan subalgebra is included, so the module is the
    reductive Levi algebra itself.
    """
    from .parabolic import cartan_h, mat_bracket, unit

    nodes = tuple(range(1, rank + 1)) if nodes is None else tuple(sorted(nodes))
    pairs = []
    for i, j in levi_pairs(rank, nodes):
        pairs += [(i, j), (j, i)]
    elems = [unit(a, b) for a, b in pairs] + [cartan_h(m) for m in range(1, rank + 1)]
    labels = [f"E{a}{b}" for a, b in pairs] + [f"H{m}" for m in range(1, rank + 1)]
    from .rootdata import root_of_pair

    weights = [root_of_pair(rank, a, b) for a, b in pairs] + [Weight([0] * rank)] * rank
    index = {(a, b): n for n, (a, b) in enumerate(pairs)}
    off = len(pairs)

    def coords(x):
        out: Dict[int, Q] = {}
        diag = defaultdict(Q)
        for (a, b), v in x.items():
            if a == b:
                diag[a] += v
            else:
                out[index[(a, b)]] = v
        acc = Q(0)
        for m in range(1, rank + 1):
            acc += diag[m]
            if acc:
                out[off + m - 1] = acc
        return out

    d = len(elems)
    e, f = {}, {}
    for i in nodes:
        for gen, store in ((unit(i, i + 1), e), (unit(i + 1, i), f)):
            cols = [coords(mat_bracket(gen, x)) for x in elems]
            store[i] = QMatrix.from_columns(d, cols)
    theta = None
    if len(nodes) == rank:
        theta = Weight([1] + [0] * (rank - 2) + [1]) if rank > 1 else Weight([2])
    mod = WeightModule(rank, nodes, labels, weights, e, f, highest_weight=theta, name="adjoint")
    mod.elements = elems
    return mod


# ---------------------------------------------------------------------------
# functors


def kron(a: QMatrix, b: QMatrix) -> QMatrix:
    rows: Dict[int, Dict[int, Q]] = {}
    for i, j, v in a.items():
        for k, l, w in b.items():
            rows.setdefault(i * b.nrows + k, {})[j * b.ncols + l] = v * w
    return QMatrix(a.nrows * b.nrows, a.ncols * b.ncols, rows)


def lowest_weight(m: WeightModule) -> Optional[Weight]:
    """The unique extremal-below weight, if there is exactly one."""
    ws = set(m.weights)
    alpha = {i: m.rs.simple_roots[i - 1] for i in m.nodes}
    low = [w for w in ws if all((w - alpha[i]) not in ws for i in m.nodes)]
    return low[0] if len(low) == 1 else None


def dual(m: WeightModule) -> WeightModule:
    low = lowest_weight(m) if m.highest_weight is not None else None
    return WeightModule(
        m.rank,
        m.nodes,
        [f"{l}*" for l in m.labels],
        [-w for w in m.weights],
        {i: -(m.e[i].T) for i in m.nodes},
        {i: -(m.f[i].T) for i in m.nodes},
        highest_weight=None if low is None else -low,
        name=f"dual({m.name})",
    )


def tensor(m1: WeightModule, m2: WeightModule) -> WeightModule:
    if m1.rank != m2.rank or m1.nodes != m2.nodes:
        raise ValueError("tensor factors must be modules over the same algebra")
    guard(m1.dim * m2.dim, "tensor product")
    i1, i2 = QMatrix.identity(m1.dim), QMatrix.identity(m2.dim)
    e = {i: kron(m1.e[i], i2) + kron(i1, m2.e[i]) for i in m1.nodes}
    f = {i: kron(m1.f[i], i2) + kron(i1, m2.f[i]) for i in m1.nodes}
    labels = [(a, b) for a in m1.labels for b in m2.labels]
    weights = [a + b for a in m1.weights for b in m2.weights]
    hw = None
    if m1.highest_weight is not None and m2.highest_weight is not None:
        hw = m1.highest_weight + m2.highest_weight
    return WeightModule(m1.rank, m1.nodes, labels, weights, e, f, hw, f"{m1.name}⊗{m2.name}")


def _functor(m: WeightModule, k: int, symmetric: bool) -> WeightModule:
    d = m.dim
    if symmetric:
        basis = list(itertools.combinations_with_replacement(range(d), k))
    else:
        basis = list(itertools.combinations(range(d), k))
    guard(len(basis), "symmetric power" if symmetric else "exterior power")
    index = {b: n for n, b in enumerate(basis)}

    def induced(x: QMatrix) -> QMatrix:
        cols = x.columns()
        rows: Dict[int, Dict[int, Q]] = {}
        for n, mono in enumerate(basis):
            for pos, a in enumerate(mono):
                for r, c in cols[a].items():
                    new = list(mono)
                    new[pos] = r
                    sign = 1
                    if symmetric:
                        key = tuple(sorted(new))
                    else:
                        if len(set(new)) < k:
                            continue
                        # sign of the sorting permutation
                        inv = sum(1 for s in range(k) for t in range(s + 1, k) if new[s] > new[t])
                        sign = -1 if inv % 2 else 1
                        key = tuple(sorted(new))
                    row = rows.setdefault(index[key], {})
                    v = row.get(n, 0) + sign * c
                    if v:
                        row[n] = v
                    else:
                        row.pop(n)
        return QMatrix(len(basis), len(basis), rows)

    weights = []
    zero = Weight([0] * m.rank)
    for mono in basis:
        w = zero
        for a in mono:
            w = w + m.weights[a]
        weights.append(w)
    labels = [tuple(m.labels[a] for a in mono) for mono in basis]
    hw = None
    if symmetric and m.highest_weight is not None:
        hw = m.highest_weight.scaled(k)
    kind = "S" if symmetric else "Λ"
    return WeightModule(
        m.rank, m.nodes, labels, weights,
        {i: induced(m.e[i]) for i in m.nodes},
        {i: induced(m.f[i]) for i in m.nodes},
        hw, f"{kind}^{k}({m.name})",
    )


def sym_power(m: WeightModule, k: int) -> WeightModule:
    if k < 0:
        raise ValueError("k must be non-negative")
    return _functor(m, k, True)


def ext_power(m: WeightModule, k: int) -> WeightModule:
    if k < 0:
        raise ValueError("k must be non-negative")
    return _functor(m, k, False)


def twist(m: WeightModule, central: Sequence) -> WeightModule:
    """Shift all weights by the central character with the given coordinates."""
    cn = m.central_nodes
    central = [as_rational(c) for c in central]
    if len(central) != len(cn):
        raise ValueError(f"expected {len(cn)} central coordinates (nodes {cn}), got {len(central)}")
    shift = [Q(0)] * m.rank
    for i, c in zip(cn, central):
        shift[i - 1] = c
    nu = Weight(shift)
    hw = None if m.highest_weight is None else m.highest_weight + nu
    out = WeightModule(
        m.rank, m.nodes, m.labels, [w + nu for w in m.weights], m.e, m.f, hw,
        f"{m.name}<{','.join(map(str, central))}>",
    )
    return out


def restrict_nodes(m: WeightModule, nodes: Iterable[int]) -> WeightModule:
    nodes = tuple(sorted(set(nodes)))
    if not set(nodes) <= set(m.nodes):
        raise ValueError("can only restrict to a sub-Levi")
    return WeightModule(
        m.rank, nodes, m.labels, m.weights,
        {i: m.e[i] for i in nodes}, {i: m.f[i] for i in nodes},
        None, f"res({m.name})",
    )


class Restriction:
    """A g-module viewed over the Levi of p with the nilradical actions."""

    def __init__(self, module: WeightModule, nil_actions: Dict[Tuple[int, int], QMatrix],
                 grading: Dict[int, Q]):
        self.module = module
        self.nil_actions = nil_actions
        self.grading = grading

    def blocks(self) -> List[List[int]]:
        """Basis indices grouped by the grading, i.e. the composition series."""
        by = defaultdict(list)
        for n, g in self.grading.items():
            by[g].append(n)
        return [by[g] for g in sorted(by, reverse=True)]


def restrict(m: WeightModule, pair, which: str = "p") -> Restriction:
    """Restrict a g-module to the Levi of p (or q) and record the nilradical action."""
    from .parabolic import build_pair

    if m.nodes != tuple(range(1, m.rank + 1)):
        raise ValueError("restrict expects a module over the whole algebra")
    crossed = pair.crossed_p if which == "p" else pair.crossed_q
    nodes = [i for i in range(1, m.rank + 1) if i not in crossed]
    sub = restrict_nodes(m, nodes)
    grader = build_pair(m.rank, (), crossed)
    nil = {r: m.root_vector(r[1], r[0]) for r in grader.basis_q_plus}
    grading = {n: -grader.grading_value(w) for n, w in enumerate(m.weights)}
    return Restriction(sub, nil, grading)


def coinvariants(m: WeightModule, pairs: Iterable[Tuple[int, int]]) -> Tuple[int, List[Weight]]:
    """Dimension and weights of V / (span of the images of the given lowering units)."""
    img = Echelon()
    for r in pairs:
        x = m.root_vector(r[1], r[0])
        for col in x.columns():
            if col:
                img.add(col)
    piv = set(img.rows)
    # complement spanned by standard basis vectors in non-pivot slots is not
    # canonical in weights; instead count per weight space.
    weights = []
    for w, idx in sorted(m.weight_spaces().items(), key=lambda t: t[0].coords):
        inside = sum(1 for p in piv if p in set(idx))
        weights += [w] * (len(idx) - inside)
    return m.dim - len(img), weights


# ---------------------------------------------------------------------------
# Casimir


def casimir_matrix(m: WeightModule) -> QMatrix:
    """Casimir of the (reductive) acting algebra w.r.t. the trace form."""
    rs = m.rs
    c = QMatrix.diagonal([rs.form(w, w) for w in m.weights])
    for a, b in levi_pairs(m.rank, m.nodes):
        x, y = m.root_vector(a, b), m.root_vector(b, a)
        c = c + x @ y + y @ x
    return c


def casimir_eigenvalue(lam: Weight, nodes: Optional[Iterable[int]] = None) -> Q:
    return build_root_system(lam.rank).casimir(lam, nodes)
