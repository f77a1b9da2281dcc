"""Immutable sparse matrices over the rationals.

Entries are stored row-wise as ``{row: {col: Fraction}}`` with zeros never
stored.  All elimination routines use the same deterministic pivoting rule
(rows processed in order, pivot = leftmost surviving column), so bases
returned by :meth:`QMatrix.nullspace` and friends are reproducible bit for
bit.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

SparseVec = Dict[int, Q]


def as_rational(x) -> Q:
    """Coerce ints, Fractions and "num/den" strings to a Fraction."""
    if isinstance(x, Q):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Q(x)
    raise TypeError(f"cannot treat {x!r} as an exact rational")


def fmt_rational(x: Q) -> str:
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


def vec_axpy(y: SparseVec, a: Q, x: Mapping[int, Q]) -> None:
    """In place ``y += a*x`` dropping cancelled entries."""
    if not a:
        return
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def vec_scale(x: Mapping[int, Q], a: Q) -> SparseVec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def vec_add(x: Mapping[int, Q], y: Mapping[int, Q]) -> SparseVec:
    out = dict(x)
    vec_axpy(out, Q(1), y)
    return out


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Each stored row has a leading 1 in its pivot column and zeros in every
    other pivot column.  Rows can carry a "tag" vector that is updated with
    the same operations, which lets callers recover coordinates.
    """

    __slots__ = ("rows", "tags", "order", "track")

    def __init__(self, track: bool = False):
        self.rows: Dict[int, SparseVec] = {}
        self.tags: Dict[int, SparseVec] = {}
        self.order: List[int] = []
        self.track = track

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[int, Q], tag: Optional[SparseVec] = None):
        v = dict(vec)
        t = dict(tag) if tag is not None else None
        hits = [p for p in v if p in self.rows]
        for p in hits:
            c = v.get(p)
            if not c:
                continue
            vec_axpy(v, -c, self.rows[p])
            if t is not None:
                vec_axpy(t, -c, self.tags[p])
        return v, t

    def add(self, vec: Mapping[int, Q], tag: Optional[SparseVec] = None) -> Optional[int]:
        """Insert a vector; return the new pivot or None if dependent."""
        v, t = self.reduce(vec, tag)
        if not v:
            return None
        p = min(v)
        inv = 1 / v[p]
        v = vec_scale(v, inv)
        if t is not None:
            t = vec_scale(t, inv)
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                vec_axpy(row, -c, v)
                if t is not None:
                    vec_axpy(self.tags[q], -c, t)
        self.rows[p] = v
        if t is not None:
            self.tags[p] = t
        self.order.append(p)
        return p

    def contains(self, vec: Mapping[int, Q]) -> bool:
        return not self.reduce(vec)[0]

    def pivots(self) -> List[int]:
        return sorted(self.rows)


class QMatrix:
    """An immutable exact rational sparse matrix."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash", "_cols")

    def __init__(self, nrows: int, ncols: int, rows: Optional[Mapping[int, Mapping[int, Q]]] = None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        clean: Dict[int, SparseVec] = {}
        if rows:
            for i, r in rows.items():
                if not 0 <= i < self.nrows:
                    raise IndexError(f"row {i} outside 0..{self.nrows - 1}")
                rr = {}
                for j, v in r.items():
                    if not 0 <= j < self.ncols:
                        raise IndexError(f"column {j} outside 0..{self.ncols - 1}")
                    v = as_rational(v)
                    if v:
                        rr[j] = v
                if rr:
                    clean[i] = rr
        self._rows = clean
        self._hash = None
        self._cols = None

    # ----- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, {i: {i: Q(1)} for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: Optional[int] = None) -> "QMatrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = {}
        for i, r in enumerate(data):
            if len(r) != ncols:
                raise ValueError("ragged dense matrix")
            rows[i] = {j: as_rational(v) for j, v in enumerate(r) if v}
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[Mapping[int, Q]]) -> "QMatrix":
        rows: Dict[int, SparseVec] = {}
        for j, c in enumerate(cols):
            for i, v in c.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls(nrows, len(cols), rows)

    @classmethod
    def from_rows(cls, ncols: int, rows: Sequence[Mapping[int, Q]]) -> "QMatrix":
        return cls(len(rows), ncols, {i: r for i, r in enumerate(rows) if r})

    @classmethod
    def diagonal(cls, entries: Sequence) -> "QMatrix":
        n = len(entries)
        return cls(n, n, {i: {i: as_rational(v)} for i, v in enumerate(entries) if v})

    # ----- basic access -------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: Tuple[int, int]) -> Q:
        i, j = ij
        return self._rows.get(i, {}).get(j, Q(0))

    def row(self, i: int) -> SparseVec:
        return dict(self._rows.get(i, {}))

    def column(self, j: int) -> SparseVec:
        return {i: r[j] for i, r in self._rows.items() if j in r}

    def columns(self) -> List[SparseVec]:
        cols: List[SparseVec] = [dict() for _ in range(self.ncols)]
        for i, r in self._rows.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def items(self) -> Iterable[Tuple[int, int, Q]]:
        for i in sorted(self._rows):
            r = self._rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def dense(self) -> List[List[Q]]:
        out = [[Q(0)] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.items():
            out[i][j] = v
        return out

    def __repr__(self) -> str:
        return f"QMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, tuple(self.items())))
        return self._hash

    # ----- arithmetic ---------------------------------------------------
    def _check_same(self, other: "QMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            tgt = rows.setdefault(i, {})
            vec_axpy(tgt, Q(1), r)
        return QMatrix(self.nrows, self.ncols, rows)

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.nrows, self.ncols, {i: vec_scale(r, Q(-1)) for i, r in self._rows.items()})

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def scale(self, a) -> "QMatrix":
        a = as_rational(a)
        return QMatrix(self.nrows, self.ncols, {i: vec_scale(r, a) for i, r in self._rows.items()})

    def __mul__(self, a) -> "QMatrix":
        return self.scale(a)

    __rmul__ = __mul__

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        out: Dict[int, SparseVec] = {}
        for i, r in self._rows.items():
            acc: SparseVec = {}
            for k, v in r.items():
                rk = orows.get(k)
                if rk:
                    vec_axpy(acc, v, rk)
            if acc:
                out[i] = acc
        return QMatrix(self.nrows, other.ncols, out)

    def apply(self, vec: Mapping[int, Q]) -> SparseVec:
        """Matrix times a sparse column vector."""
        cols = self._col_cache()
        acc: SparseVec = {}
        for j, v in vec.items():
            c = cols.get(j)
            if c:
                vec_axpy(acc, v, c)
        return acc

    def _col_cache(self) -> Dict[int, SparseVec]:
        if self._cols is None:
            cols: Dict[int, SparseVec] = {}
            for i, r in self._rows.items():
                for j, v in r.items():
                    cols.setdefault(j, {})[i] = v
            self._cols = cols
        return self._cols

    @property
    def T(self) -> "QMatrix":
        rows: Dict[int, SparseVec] = {}
        for i, r in self._rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return QMatrix(self.ncols, self.nrows, rows)

    def commutator(self, other: "QMatrix") -> "QMatrix":
        return self @ other - other @ self

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        cmap = {c: n for n, c in enumerate(cols)}
        out = {}
        for n, i in enumerate(rows):
            r = self._rows.get(i)
            if not r:
                continue
            rr = {cmap[j]: v for j, v in r.items() if j in cmap}
            if rr:
                out[n] = rr
        return QMatrix(len(rows), len(cols), out)

    def hstack(self, other: "QMatrix") -> "QMatrix":
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                tgt[j + self.ncols] = v
        return QMatrix(self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.ncols:
            raise ValueError("vstack needs equal column counts")
        rows = dict(self._rows)
        for i, r in other._rows.items():
            rows[i + self.nrows] = r
        return QMatrix(self.nrows + other.nrows, self.ncols, rows)

    # ----- elimination --------------------------------------------------
    def echelon(self) -> Echelon:
        ech = Echelon()
        for i in sorted(self._rows):
            ech.add(self._rows[i])
        return ech

    def rank(self) -> int:
        return len(self.echelon())

    def pivot_columns(self) -> List[int]:
        return self.echelon().pivots()

    def nullspace(self) -> List[SparseVec]:
        """Basis of {x : Ax = 0}, one vector per free column."""
        ech = self.echelon()
        piv = set(ech.rows)
        basis = []
        for f in range(self.ncols):
            if f in piv:
                continue
            v: SparseVec = {f: Q(1)}
            for p, r in ech.rows.items():
                c = r.get(f)
                if c:
                    v[p] = -c
            basis.append(v)
        return basis

    def column_space(self) -> List[SparseVec]:
        """The pivot columns of the matrix itself (a basis of its image)."""
        cols = self._col_cache()
        return [dict(cols.get(p, {})) for p in self.pivot_columns()]

    def solve(self, rhs: "QMatrix") -> Optional["QMatrix"]:
        """A particular X with self @ X = rhs, or None if inconsistent."""
        if rhs.nrows != self.nrows:
            raise ValueError("right-hand side has the wrong height")
        aug = self.hstack(rhs)
        ech = aug.echelon()
        n = self.ncols
        if any(p >= n for p in ech.rows):
            return None
        rows = {}
        for p, r in ech.rows.items():
            rr = {j - n: v for j, v in r.items() if j >= n}
            if rr:
                rows[p] = rr
        return QMatrix(n, rhs.ncols, rows)

    def inverse(self) -> "QMatrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices are invertible")
        x = self.solve(QMatrix.identity(self.nrows))
        if x is None or self.rank() != self.nrows:
            raise ZeroDivisionError("matrix is singular")
        return x

    def is_scalar(self) -> Optional[Q]:
        """Return a if the matrix equals a*I, else None."""
        if self.nrows != self.ncols:
            return None
        if self.nrows == 0:
            return None
        a = self[0, 0]
        for i in range(self.nrows):
            r = self._rows.get(i, {})
            if len(r) > 1 or r.get(i, Q(0)) != a:
                return None
        return a

    # ----- serialization ------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[i, j, fmt_rational(v)] for i, j, v in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "QMatrix":
        rows: Dict[int, SparseVec] = {}
        for i, j, v in obj["entries"]:
            rows.setdefault(int(i), {})[int(j)] = Q(v)
        return cls(obj["rows"], obj["cols"], rows)


def span_basis(vectors: Iterable[Mapping[int, Q]]) -> List[SparseVec]:
    """Keep the vectors that are independent of the earlier ones."""
    ech = Echelon()
    out = []
    for v in vectors:
        if ech.add(v) is not None:
            out.append(dict(v))
    return out


def coordinates(basis: Sequence[Mapping[int, Q]], vec: Mapping[int, Q]) -> Optional[SparseVec]:
    """Coordinates of vec in an independent list of vectors, or None."""
    ech = Echelon(track=True)
    for n, b in enumerate(basis):
        if ech.add(b, {n: Q(1)}) is None:
            raise ValueError("basis vectors are dependent")
    rest, tag = ech.reduce(vec, {})
    if rest:
        return None
    return vec_scale(tag, Q(-1))


class Coordinatizer:
    """Reusable coordinate extraction with respect to a fixed basis."""

    def __init__(self, basis: Sequence[Mapping[int, Q]]):
        self.dim = len(basis)
        self._ech = Echelon(track=True)
        for n, b in enumerate(basis):
            if self._ech.add(b, {n: Q(1)}) is None:
                raise ValueError("basis vectors are dependent")

    def __call__(self, vec: Mapping[int, Q]) -> Optional[SparseVec]:
        rest, tag = self._ech.reduce(vec, {})
        if rest:
            return None
        return vec_scale(tag, Q(-1))
