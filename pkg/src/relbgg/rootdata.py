"""Root data, weights and Weyl group combinatorics for type A_n.

Weights live in fundamental-weight coordinates.  Internally the Weyl group
S_{n+1} acts on "epsilon" coordinates: for a weight with Dynkin
coefficients (l_1, ..., l_n) put x_j = l_j + ... + l_n and x_{n+1} = 0,
so that the simple reflection s_i swaps x_i and x_{i+1}.  A permutation w
acts by (w x)_{w(j)} = x_j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .qmatrix import as_rational, fmt_rational

MAX_RANK = 7


class UnsupportedRankError(ValueError):
    pass


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    """A weight given by its coefficients over the fundamental weights."""

    coords: Tuple[Q, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(as_rational(c) for c in coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Q:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def _same(self, other: "Weight") -> None:
        if len(other.coords) != len(self.coords):
            raise ShapeError(f"weights of rank {len(self.coords)} and {len(other.coords)}")

    def __add__(self, other: "Weight") -> "Weight":
        self._same(other)
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        self._same(other)
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Weight":
        return Weight(-a for a in self.coords)

    def scaled(self, c) -> "Weight":
        c = as_rational(c)
        return Weight(c * a for a in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    # predicates -------------------------------------------------------
    def is_dominant(self, nodes: Iterable[int] | None = None) -> bool:
        idx = range(1, self.rank + 1) if nodes is None else nodes
        return all(self.coords[i - 1] >= 0 for i in idx)

    def is_integral(self, nodes: Iterable[int] | None = None) -> bool:
        idx = range(1, self.rank + 1) if nodes is None else nodes
        return all(self.coords[i - 1].denominator == 1 for i in idx)

    def is_p_dominant(self, crossed: Iterable[int]) -> bool:
        crossed = set(crossed)
        return self.is_dominant(i for i in range(1, self.rank + 1) if i not in crossed)

    def is_p_integral(self, crossed: Iterable[int]) -> bool:
        crossed = set(crossed)
        return self.is_integral(i for i in range(1, self.rank + 1) if i not in crossed)

    # coordinates ------------------------------------------------------
    def epsilon(self) -> Tuple[Q, ...]:
        xs = [Q(0)] * (self.rank + 1)
        acc = Q(0)
        for j in range(self.rank - 1, -1, -1):
            acc += self.coords[j]
            xs[j] = acc
        return tuple(xs)

    @staticmethod
    def from_epsilon(xs: Sequence) -> "Weight":
        return Weight(xs[i] - xs[i + 1] for i in range(len(xs) - 1))

    def to_json(self) -> List[str]:
        return [fmt_rational(c) for c in self.coords]

    @staticmethod
    def from_json(obj: Sequence[str]) -> "Weight":
        return Weight(Q(s) for s in obj)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def dynkin(self, crossed: Iterable[int] = ()) -> str:
        """Plain-text Dynkin diagram notation, e.g. ``x[1]-o[0]-o[2]``."""
        crossed = set(crossed)
        return "-".join(
            ("x" if i + 1 in crossed else "o") + f"[{c}]" for i, c in enumerate(self.coords)
        )


def weight(*coords) -> Weight:
    if len(coords) == 1 and not isinstance(coords[0], (int, Q, str)):
        coords = tuple(coords[0])
    return Weight(coords)


def _check_rank(rank: int) -> None:
    if not isinstance(rank, int) or not 1 <= rank <= MAX_RANK:
        raise UnsupportedRankError(f"rank {rank!r} is outside the supported range 1..{MAX_RANK}")


def root_of_pair(rank: int, i: int, j: int) -> Weight:
    """The root eps_i - eps_j (1-based indices) in fundamental coordinates."""
    c = []
    for m in range(1, rank + 1):
        c.append((i == m) - (i == m + 1) - (j == m) + (j == m + 1))
    return Weight(c)


def simple_coefficients(rank: int, i: int, j: int) -> Tuple[int, ...]:
    """Coefficients of eps_i - eps_j (i < j) over the simple roots."""
    return tuple(1 if i <= m < j else 0 for m in range(1, rank + 1))


@dataclass(frozen=True)
class RootSystem:
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    simple_roots: Tuple[Weight, ...]
    positive_roots: Tuple[Weight, ...]
    positive_pairs: Tuple[Tuple[int, int], ...]
    rho: Weight
    _inverse_cartan: Tuple[Tuple[Q, ...], ...] = field(repr=False, compare=False)

    def form(self, mu: Weight, nu: Weight) -> Q:
        """Trace-form pairing; roots have squared length 2."""
        if mu.rank != self.rank or nu.rank != self.rank:
            raise ShapeError("weight rank does not match the root system")
        g = self._inverse_cartan
        tot = Q(0)
        for i, a in enumerate(mu.coords):
            if not a:
                continue
            row = g[i]
            for j, b in enumerate(nu.coords):
                if b:
                    tot += a * b * row[j]
        return tot

    def coroot_pairing(self, lam: Weight, pair: Tuple[int, int]) -> Q:
        """<lam, alpha^vee> for alpha = eps_i - eps_j."""
        x = lam.epsilon()
        return x[pair[0] - 1] - x[pair[1] - 1]

    def zero(self) -> Weight:
        return Weight([0] * self.rank)

    def fundamental(self, i: int) -> Weight:
        return Weight([1 if m == i else 0 for m in range(1, self.rank + 1)])

    def casimir(self, lam: Weight, nodes: Iterable[int] | None = None) -> Q:
        """<lam, lam + 2 rho_L>, rho_L for the Levi with the given simple nodes."""
        rho2 = self.rho.scaled(2) if nodes is None else levi_rho(self, nodes).scaled(2)
        return self.form(lam, lam + rho2)

    @property
    def weyl_order(self) -> int:
        n = 1
        for k in range(2, self.rank + 2):
            n *= k
        return n


@lru_cache(maxsize=None)
def build_root_system(rank: int) -> RootSystem:
    _check_rank(rank)
    n = rank
    cartan = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)) for i in range(n)
    )
    simple = tuple(root_of_pair(n, i, i + 1) for i in range(1, n + 1))
    pairs = sorted(
        ((i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)),
        key=lambda p: (p[1] - p[0], p[0]),
    )
    pos = tuple(root_of_pair(n, i, j) for i, j in pairs)
    inv = tuple(
        tuple(Q(min(i, j) * (n + 1 - max(i, j)), n + 1) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    rho = Weight([1] * n)
    return RootSystem(n, cartan, simple, pos, tuple(pairs), rho, inv)


# ---------------------------------------------------------------------------
# Weyl group


def _reduced_word(perm: Tuple[int, ...]) -> Tuple[int, ...]:
    """Lexicographically smallest reduced word, found greedily."""
    w = list(perm)
    word = []
    while True:
        inv = [0] * len(w)
        for pos, val in enumerate(w):
            inv[val - 1] = pos
        for i in range(1, len(w)):
            if inv[i - 1] > inv[i]:
                break
        else:
            return tuple(word)
        word.append(i)
        # w <- s_i w : relabel values i <-> i+1
        w = [i + 1 if v == i else (i if v == i + 1 else v) for v in w]


@dataclass(frozen=True)
class WeylWord:
    """An element of S_{n+1}, stored in one-line notation w(1), ..., w(n+1)."""

    perm: Tuple[int, ...]

    @staticmethod
    def identity(rank: int) -> "WeylWord":
        return WeylWord(tuple(range(1, rank + 2)))

    @staticmethod
    def from_word(rank: int, word: Sequence[int]) -> "WeylWord":
        w = WeylWord.identity(rank)
        for i in word:
            if not 1 <= i <= rank:
                raise ShapeError(f"simple reflection s{i} does not exist in rank {rank}")
            w = w * WeylWord.simple(rank, i)
        return w

    @staticmethod
    def simple(rank: int, i: int) -> "WeylWord":
        p = list(range(1, rank + 2))
        p[i - 1], p[i] = p[i], p[i - 1]
        return WeylWord(tuple(p))

    @property
    def rank(self) -> int:
        return len(self.perm) - 1

    def __mul__(self, other: "WeylWord") -> "WeylWord":
        # (self o other)(j) = self(other(j))
        return WeylWord(tuple(self.perm[other.perm[j] - 1] for j in range(len(self.perm))))

    def inverse(self) -> "WeylWord":
        inv = [0] * len(self.perm)
        for j, v in enumerate(self.perm):
            inv[v - 1] = j + 1
        return WeylWord(tuple(inv))

    @property
    def length(self) -> int:
        p = self.perm
        return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])

    @property
    def word(self) -> Tuple[int, ...]:
        return _reduced_word(self.perm)

    def act(self, lam: Weight) -> Weight:
        x = lam.epsilon()
        if len(x) != len(self.perm):
            raise ShapeError("weight rank does not match the Weyl group")
        y = [Q(0)] * len(x)
        for j, v in enumerate(self.perm):
            y[v - 1] = x[j]
        shift = y[-1]
        return Weight.from_epsilon([t - shift for t in y])

    def act_on_pair(self, pair: Tuple[int, int]) -> Tuple[int, int]:
        """Image of the root eps_i - eps_j as an (ordered) index pair."""
        return (self.perm[pair[0] - 1], self.perm[pair[1] - 1])

    def to_json(self) -> List[int]:
        return list(self.word)

    def __str__(self) -> str:
        return "".join(f"s{i}" for i in self.word) or "e"


def affine_action(rs: RootSystem, w: WeylWord, lam: Weight) -> Weight:
    if lam.rank != rs.rank or w.rank != rs.rank:
        raise ShapeError("rank mismatch in affine action")
    return w.act(lam + rs.rho) - rs.rho


def character_is_regular(rs: RootSystem, lam: Weight) -> bool:
    if lam.rank != rs.rank:
        raise ShapeError("rank mismatch")
    x = (lam + rs.rho).epsilon()
    return len(set(x)) == len(x)


def singular_roots(rs: RootSystem, lam: Weight) -> List[Tuple[int, int]]:
    """Positive roots (as index pairs) orthogonal to lam + rho."""
    x = (lam + rs.rho).epsilon()
    return [p for p in rs.positive_pairs if x[p[0] - 1] == x[p[1] - 1]]


# ---------------------------------------------------------------------------
# Levi subsystems and Hasse diagrams


def levi_blocks(rank: int, nodes: Iterable[int]) -> List[Tuple[int, ...]]:
    """Partition {1..rank+1} into the blocks joined by the given simple nodes."""
    nodes = set(nodes)
    blocks, cur = [], [1]
    for m in range(1, rank + 1):
        if m in nodes:
            cur.append(m + 1)
        else:
            blocks.append(tuple(cur))
            cur = [m + 1]
    blocks.append(tuple(cur))
    return blocks


def levi_pairs(rank: int, nodes: Iterable[int]) -> List[Tuple[int, int]]:
    out = []
    for b in levi_blocks(rank, nodes):
        out.extend((i, j) for i in b for j in b if i < j)
    return sorted(out, key=lambda p: (p[1] - p[0], p[0]))


def levi_rho(rs: RootSystem, nodes: Iterable[int]) -> Weight:
    tot = rs.zero()
    for i, j in levi_pairs(rs.rank, nodes):
        tot = tot + root_of_pair(rs.rank, i, j)
    return tot.scaled(Q(1, 2))


def weyl_dimension(rs: RootSystem, lam: Weight, nodes: Iterable[int] | None = None) -> int:
    """Weyl dimension formula for the (Levi) algebra with the given simple nodes."""
    nodes = range(1, rs.rank + 1) if nodes is None else list(nodes)
    x = (lam + rs.rho).epsilon()
    r = rs.rho.epsilon()
    num, den = Q(1), Q(1)
    for i, j in levi_pairs(rs.rank, nodes):
        num *= x[i - 1] - x[j - 1]
        den *= r[i - 1] - r[j - 1]
    d = num / den
    if d.denominator != 1:
        raise ValueError("non-integral Weyl dimension; weight is not integral on the nodes")
    return int(d)


def _subgroup(rank: int, nodes: Sequence[int]) -> List[WeylWord]:
    gens = [WeylWord.simple(rank, i) for i in sorted(nodes)]
    seen = {WeylWord.identity(rank)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                u = w * s
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return list(seen)


def hasse_words(rank: int, ambient_nodes: Iterable[int], levi_nodes: Iterable[int]) -> List[List[WeylWord]]:
    """Minimal length representatives of W_L / W_M graded by length.

    W_L is generated by ``ambient_nodes``; W_M by ``levi_nodes`` (a subset).
    A representative w satisfies w^{-1}(alpha_i) > 0 for all i in levi_nodes.
    """
    ambient = sorted(set(ambient_nodes))
    levi = sorted(set(levi_nodes))
    if not set(levi) <= set(ambient):
        raise ValueError("levi nodes must lie inside the ambient nodes")
    keep = []
    for w in _subgroup(rank, ambient):
        inv = w.inverse().perm
        if all(inv[i - 1] < inv[i] for i in levi):
            keep.append(w)
    top = max((w.length for w in keep), default=0)
    graded: List[List[WeylWord]] = [[] for _ in range(top + 1)]
    for w in keep:
        graded[w.length].append(w)
    for g in graded:
        g.sort(key=lambda w: w.word)
    return graded


def hasse_quotient(rs: RootSystem, crossed: Iterable[int]) -> List[List[WeylWord]]:
    crossed = set(crossed)
    if not crossed <= set(range(1, rs.rank + 1)):
        raise ValueError(f"crossed nodes {sorted(crossed)} outside 1..{rs.rank}")
    uncrossed = [i for i in range(1, rs.rank + 1) if i not in crossed]
    return hasse_words(rs.rank, range(1, rs.rank + 1), uncrossed)


def inversion_set(w: WeylWord) -> List[Tuple[int, int]]:
    """Positive roots sent to negative roots by w^{-1}... i.e. by w itself.

    Returns pairs (i, j), i < j, with w(i) > w(j).
    """
    p = w.perm
    return [(i + 1, j + 1) for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]]


def all_weyl_elements(rank: int) -> List[WeylWord]:
    return [WeylWord(p) for p in itertools.permutations(range(1, rank + 2))]
