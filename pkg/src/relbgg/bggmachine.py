"""Splitting operators, Q operators and compressed operators.

Everything here is a statement about finite matrices on the chain spaces of
a :class:`~relbgg.homology.ChainComplex`.  A compressable operator 𝒟 maps
C_k to C_{k+1}, preserves the filtration degree ℓ and agrees with ∂ on the
associated graded.  Writing P = ∂*𝒟 (an endomorphism of C_k), S and Q are
univariate polynomials in P whose coefficients come from the nonzero
eigenvalues of the graded Laplacian.  The polynomials are stored next to
their evaluated matrices so that either can be recomputed from the other.

Two signs in the construction of Q deserve a comment.  The Lagrange
coefficient of Q̃^ℓ is 1/(a_r ∏_{s≠r}(a_r − a_s)), which is what makes
Q̃^ℓ act as 1/a_r on the a_r-eigenspace of the associated graded.  The
correction step reads Q^{ℓ-1} = Q̃^{ℓ-1} + Q^ℓ(id − P Q̃^{ℓ-1}); with a minus
sign in front of the second term P Q^{ℓ-1} would not be the identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

from .homology import ChainComplex, ConsistencyError, hodge_basis, spectrum
from .qmatrix import Echelon, QMatrix, fmt_rational, vec_axpy

Poly = Tuple[Q, ...]  # coefficients of 1, x, x^2, ...


# ---------------------------------------------------------------------------
# polynomial helpers


def poly_trim(p: Sequence[Q]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(p: Sequence[Q], q: Sequence[Q]) -> Poly:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_mul(p: Sequence[Q], q: Sequence[Q]) -> Poly:
    if not p or not q:
        return ()
    out = [Q(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_scale(p: Sequence[Q], c) -> Poly:
    return poly_trim([c * a for a in p])


def poly_eval(p: Sequence[Q], m: QMatrix) -> QMatrix:
    n = m.nrows
    acc = QMatrix.zeros(n, n)
    for c in reversed(p):
        acc = acc @ m
        if c:
            acc = acc + QMatrix.identity(n).scale(c)
    return acc


def linear(a) -> Poly:
    """The polynomial x - a."""
    return poly_trim([Q(-a), Q(1)])


# ---------------------------------------------------------------------------


@dataclass
class FilteredOperator:
    degree: int
    matrix: QMatrix
    label: str = ""

    def to_json(self) -> dict:
        return {"degree": self.degree, "label": self.label, "matrix": self.matrix.to_json()}


def filtration_problems(cx: ChainComplex, op: FilteredOperator) -> List[str]:
    """Violations of filtration compatibility and of gr_0(𝒟) = ∂."""
    k = op.degree
    src, tgt = cx.ell[k], cx.ell[k + 1]
    d = cx.d(k)
    out = []
    for r, c, v in op.matrix.items():
        if tgt[r] < src[c]:
            out.append(f"entry ({r},{c}) lowers the filtration degree")
    diff = op.matrix - d
    for r, c, v in diff.items():
        if tgt[r] == src[c]:
            out.append(f"entry ({r},{c}) changes the degree-zero part")
    return out


def graded_model(cx: ChainComplex, k: int) -> FilteredOperator:
    return FilteredOperator(k, cx.d(k), "∂")


def random_raising(cx: ChainComplex, src: int, tgt: int, rng: random.Random, density: float) -> QMatrix:
    """Random matrix C_src → C_tgt supported on strictly raising entries."""
    ls, lt = cx.ell[src], cx.ell[tgt]
    rows: Dict[int, Dict[int, Q]] = {}
    for r in range(cx.dim(tgt)):
        for c in range(cx.dim(src)):
            if lt[r] > ls[c] and rng.random() < density:
                num = rng.choice((-3, -2, -1, 1, 2, 3))
                den = rng.choice((1, 2))
                rows.setdefault(r, {})[c] = Q(num, den)
    return QMatrix(cx.dim(tgt), cx.dim(src), rows)


def make_compressable(cx: ChainComplex, k: int, seed: Optional[int], density: float = 0.3) -> FilteredOperator:
    """𝒟 = ∂ + N with N a seeded strictly filtration raising perturbation.

    ``seed=None`` gives N = 0.
    """
    if not 0 <= k < cx.top:
        raise ValueError(f"degree {k} has no outgoing differential (top degree {cx.top})")
    if seed is None:
        return graded_model(cx, k)
    rng = random.Random(seed)
    n = random_raising(cx, k, k + 1, rng, density)
    return FilteredOperator(k, cx.d(k) + n, f"∂+N(seed={seed})")


def conjugated_model(cx: ChainComplex, seed: int, density: float = 0.3) -> Dict[int, FilteredOperator]:
    """A square-zero compressable sequence 𝒟_k = G_{k+1} ∂ G_k^{-1}.

    Each G_k = id + U_k with U_k strictly raising, so G_k preserves the
    filtration and is the identity on the associated graded.
    """
    rng = random.Random(seed)
    gs = []
    for k in range(cx.top + 1):
        u = random_raising(cx, k, k, rng, density)
        gs.append(QMatrix.identity(cx.dim(k)) + u)
    out = {}
    for k in range(cx.top):
        m = gs[k + 1] @ cx.d(k) @ gs[k].inverse()
        out[k] = FilteredOperator(k, m, f"conjugated(seed={seed})")
    return out


# ---------------------------------------------------------------------------


@dataclass
class OperatorPolynomial:
    kind: str
    coefficients: Optional[Poly]
    factors: List[dict]
    matrix: QMatrix

    @property
    def degree(self) -> int:
        return max(len(self.coefficients) - 1, 0) if self.coefficients is not None else -1

    def evaluate(self, p: QMatrix) -> QMatrix:
        if self.coefficients is None:
            raise ValueError(f"{self.kind} is not recorded as a polynomial in ∂*𝒟")
        return poly_eval(self.coefficients, p)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "degree": self.degree,
            "coefficients": None if self.coefficients is None else [fmt_rational(c) for c in self.coefficients],
            "factors": self.factors,
        }


def p_operator(cx: ChainComplex, op: FilteredOperator) -> QMatrix:
    return cx.dstar(op.degree + 1) @ op.matrix


def _factor_record(eig: Dict[Q, List[Q]]) -> List[dict]:
    return [{"ell": fmt_rational(l), "eigenvalues": [fmt_rational(a) for a in avals]} for l, avals in eig.items()]


def splitting_polynomial(eig: Dict[Q, List[Q]]) -> Poly:
    poly: Poly = (Q(1),)
    for avals in eig.values():
        j = len(avals)
        c = Q((-1) ** j)
        for a in avals:
            c /= a
        s = (c,)
        for a in avals:
            s = poly_mul(s, linear(a))
        poly = poly_mul(poly, s)
    return poly


def q_tilde_polynomial(avals: Sequence[Q]) -> Poly:
    out: Poly = ()
    for r, ar in enumerate(avals):
        c = Q(1) / ar
        term: Poly = (Q(1),)
        for s, as_ in enumerate(avals):
            if s != r:
                c /= ar - as_
                term = poly_mul(term, linear(as_))
        out = poly_add(out, poly_scale(term, c))
    return out


def q_polynomial(eig: Dict[Q, List[Q]]) -> Poly:
    q: Optional[Poly] = None
    for l in sorted(eig, reverse=True):
        qt = q_tilde_polynomial(eig[l])
        if q is None:
            q = qt
        else:
            corr = poly_add((Q(1),), poly_scale(poly_mul((Q(0), Q(1)), qt), -1))
            q = poly_add(qt, poly_mul(q, corr))
    return q if q is not None else ()


def splitting_operator(cx: ChainComplex, op: FilteredOperator) -> OperatorPolynomial:
    eig = spectrum(cx, op.degree)
    poly = splitting_polynomial(eig)
    return OperatorPolynomial("S", poly, _factor_record(eig), poly_eval(poly, p_operator(cx, op)))


def q_operator(cx: ChainComplex, op: FilteredOperator, method: str = "eigen") -> OperatorPolynomial:
    k = op.degree
    eig = spectrum(cx, k)
    p = p_operator(cx, op)
    if method in ("eigen", "eigen-polynomial"):
        poly = q_polynomial(eig)
        return OperatorPolynomial("Q", poly, _factor_record(eig), poly_eval(poly, p))
    if method != "neumann":
        raise ValueError(f"unknown method {method!r}")
    hb = hodge_basis(cx, k)
    na = len(hb.im_dstar)
    n = cx.dim(k)
    if na == 0:
        return OperatorPolynomial("Q-neumann", None, [{"terms": 0}], QMatrix.zeros(n, n))
    a = QMatrix.from_columns(n, hb.im_dstar)
    lap = cx.laplacian(k)
    r = a.solve(lap @ a)
    if r is None:
        raise ConsistencyError("□ does not preserve im ∂*")
    try:
        rinv = r.inverse()
    except ZeroDivisionError:
        raise ConsistencyError("□ is not invertible on im ∂*") from None
    coords = hb.to_hodge.submatrix(list(range(na)), list(range(n)))
    box_inv = a @ rinv @ coords
    step = box_inv @ (p - lap)
    term = box_inv
    total = box_inv
    levels = len(eig) + 1
    used = 1
    for j in range(1, levels + 2):
        term = step @ term
        if term.is_zero():
            break
        total = total + term.scale((-1) ** j)
        used += 1
    else:
        raise ConsistencyError("Neumann series did not terminate; 𝒟 is not compressable")
    return OperatorPolynomial("Q-neumann", None, [{"terms": used}], total)


# ---------------------------------------------------------------------------
# verification


def _span(vectors) -> Echelon:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e


def _rank(vectors) -> int:
    return len(_span(vectors))


def _as_vectors(m: QMatrix, vecs):
    return [m.apply(v) for v in vecs]


@dataclass
class Verdicts:
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": dict(sorted(self.checks.items())), "notes": self.notes}


def splitting_checks(cx: ChainComplex, op: FilteredOperator, seed: int = 0) -> Verdicts:
    k = op.degree
    s = splitting_operator(cx, op).matrix
    p = p_operator(cx, op)
    hb = hodge_basis(cx, k)
    pi = hb.projection(1)
    w = cx.dstar(k).nullspace()
    wt = hb.im_dstar
    v = Verdicts()
    v.checks["pi_H S = pi_H on ker d*"] = all(pi.apply(s.apply(x)) == pi.apply(x) for x in w)
    v.checks["d*D S = 0 on ker d*"] = all(not p.apply(s.apply(x)) for x in w)
    v.checks["S = 0 on im d*"] = all(not s.apply(x) for x in wt)
    v.checks["S(alpha) in ker d*"] = all(not cx.dstar(k).apply(s.apply(h)) for h in hb.harmonic)
    # uniqueness: only 0 satisfies d* = 0, pi_H = 0 and d*D = 0
    stacked = cx.dstar(k).vstack(p).vstack(pi)
    v.checks["uniqueness (kernel of stacked conditions is 0)"] = stacked.rank() == cx.dim(k)
    v.checks["d*D injective on im d*"] = _rank(_as_vectors(p, wt)) == len(wt)
    rng = random.Random(seed)
    broken = True
    for h in hb.harmonic:
        phi = s.apply(h)
        for _ in range(3):
            if not wt:
                break
            pert = {}
            for b in wt:
                c = Q(rng.randint(-3, 3), rng.choice((1, 2)))
                vec_axpy(pert, c, b)
            if not pert:
                continue
            cand = dict(phi)
            vec_axpy(cand, Q(1), pert)
            if not p.apply(cand):
                broken = False
    v.checks["perturbation by im d* breaks a condition"] = broken
    v.notes["spectrum"] = _factor_record(spectrum(cx, k))
    v.notes["dims"] = {"ker_dstar": len(w), "im_dstar": len(wt), "harmonic": len(hb.harmonic)}
    return v


def q_operator_checks(cx: ChainComplex, op: FilteredOperator) -> Verdicts:
    k = op.degree
    p = p_operator(cx, op)
    qe = q_operator(cx, op, "eigen").matrix
    qn = q_operator(cx, op, "neumann").matrix
    s = splitting_operator(cx, op).matrix
    hb = hodge_basis(cx, k)
    wt = hb.im_dstar
    w = cx.dstar(k).nullspace()
    span_wt = _span(wt)
    v = Verdicts()
    v.checks["d*D Q = id on im d* (eigen)"] = all(p.apply(qe.apply(x)) == x for x in wt)
    v.checks["d*D Q = id on im d* (neumann)"] = all(p.apply(qn.apply(x)) == x for x in wt)
    v.checks["Q maps im d* into im d*"] = all(span_wt.contains(qe.apply(x)) for x in wt)
    v.checks["eigen Q = neumann Q on im d*"] = all(qe.apply(x) == qn.apply(x) for x in wt)
    ok = True
    for x in w:
        lhs = s.apply(x)
        rhs = dict(x)
        vec_axpy(rhs, Q(-1), qe.apply(p.apply(x)))
        if lhs != rhs:
            ok = False
    v.checks["S = id - Q d*D on ker d*"] = ok
    return v


def splitting_via_q_check(cx: ChainComplex, op: FilteredOperator) -> bool:
    """S = id - Q∘∂*𝒟 on ker ∂*, as an exact identity on a kernel basis."""
    s = splitting_operator(cx, op).matrix
    q = q_operator(cx, op, "eigen").matrix
    p = p_operator(cx, op)
    rhs = QMatrix.identity(cx.dim(op.degree)) - q @ p
    return all(s.apply(x) == rhs.apply(x) for x in cx.dstar(op.degree).nullspace())


def compressed_operator(cx: ChainComplex, op: FilteredOperator) -> QMatrix:
    """Matrix of α ↦ π_H(𝒟 S α) in harmonic coordinates (H_k → H_{k+1})."""
    k = op.degree
    s = splitting_operator(cx, op).matrix
    src = hodge_basis(cx, k)
    tgt = hodge_basis(cx, k + 1)
    coords = tgt.harmonic_coordinates()
    cols = [coords.apply(op.matrix.apply(s.apply(h))) for h in src.harmonic]
    return QMatrix.from_columns(len(tgt.harmonic), cols)


def compressed_checks(cx: ChainComplex, op: FilteredOperator) -> Verdicts:
    k = op.degree
    dmat = compressed_operator(cx, op)
    src = hodge_basis(cx, k)
    stacked = op.matrix.vstack(cx.dstar(k))
    both = stacked.nullspace()
    coords = src.harmonic_coordinates()
    images = [coords.apply(x) for x in both]
    v = Verdicts()
    v.checks["pi_H(ker D ∩ ker d*) ⊂ ker D_comp"] = all(not dmat.apply(x) for x in images)
    v.checks["pi_H injective on ker D ∩ ker d*"] = _rank(images) == len(both)
    p = p_operator(cx, op)
    v.checks["d*D injective on im d*"] = _rank(_as_vectors(p, src.im_dstar)) == len(src.im_dstar)
    v.notes["shape"] = list(dmat.shape)
    return v


def sequence_checks(cx: ChainComplex, ops: Dict[int, FilteredOperator]) -> Verdicts:
    """Laplacians of a sequence and the comparison of cohomologies."""
    v = Verdicts()
    comp = {k: compressed_operator(cx, op) for k, op in ops.items()}
    splits = {k: splitting_operator(cx, op).matrix for k, op in ops.items()}
    harm = {k: hodge_basis(cx, k) for k in range(cx.top + 1)}
    dims = {}
    for k in range(cx.top + 1):
        dk = ops[k].matrix if k in ops else QMatrix.zeros(cx.dim(k + 1), cx.dim(k))
        dkm = ops[k - 1].matrix if k - 1 in ops else QMatrix.zeros(cx.dim(k), cx.dim(k - 1))
        box = cx.dstar(k + 1) @ dk + dkm @ cx.dstar(k)
        ker = box.nullspace()
        v.checks[f"ker box^D in ker d* (k={k})"] = all(not cx.dstar(k).apply(x) for x in ker)
        p = cx.dstar(k + 1) @ dk
        both = p.vstack(cx.dstar(k)).nullspace()
        v.checks[f"ker box^D = ker d*D ∩ ker d* (k={k})"] = len(both) == len(ker) and all(
            _span(both).contains(x) for x in ker
        )
        if k in ops and k - 1 in ops:
            if (dk @ dkm).is_zero():
                v.checks[f"D_k D_(k-1) = 0 inherited (k={k})"] = (comp[k] @ comp[k - 1]).is_zero()
            else:
                v.notes[f"k={k}"] = "hypothesis not met"
        # the correction phi - D_{k-1} Q d* phi lies in ker d*
        if k - 1 in ops:
            qm = q_operator(cx, ops[k - 1], "eigen").matrix
            lhs = cx.dstar(k) @ (QMatrix.identity(cx.dim(k)) - dkm @ qm @ cx.dstar(k))
            v.checks[f"d*(phi - D Q d* phi) = 0 (k={k})"] = lhs.is_zero()
        # cohomology comparison when the sequence is a complex around k
        square_zero = all(
            (ops[j + 1].matrix @ ops[j].matrix).is_zero()
            for j in range(k - 2, k + 1)
            if j in ops and j + 1 in ops
        )
        if square_zero:
            ck = comp.get(k, QMatrix.zeros(0, len(harm[k].harmonic)))
            ckm = comp.get(k - 1, QMatrix.zeros(len(harm[k].harmonic), 0))
            h_comp = ck.ncols - ck.rank() - ckm.rank()
            h_orig = cx.dim(k) - dk.rank() - dkm.rank()
            dims[k] = {"compressed": h_comp, "original": h_orig}
            v.checks[f"cohomology dims agree (k={k})"] = h_comp == h_orig
            if k in splits:
                s = splits[k]
                hbasis = harm[k].harmonic
                kerc = ck.nullspace()
                lifts = []
                for c in kerc:
                    vec: Dict[int, Q] = {}
                    for i, a in c.items():
                        vec_axpy(vec, a, hbasis[i])
                    lifts.append(s.apply(vec))
                kerD = dk.nullspace()
                kspan = _span(kerD)
                image = dkm.column_space()
                v.checks[f"S maps ker D_comp into ker D (k={k})"] = all(kspan.contains(x) for x in lifts)
                v.checks[f"S induces a surjection on cohomology (k={k})"] = _rank(lifts + image) == len(kerD)
    v.notes["cohomology"] = {str(k): d for k, d in dims.items()}
    return v


# ---------------------------------------------------------------------------
# insertion stability


@dataclass
class InsertionReport:
    stable: bool
    checked: int
    witness: Optional[dict]

    def to_json(self) -> dict:
        return {"stable": self.stable, "checked": self.checked, "witness": self.witness}


def insertion_value(cx: ChainComplex, phi: Dict[int, Q], k: int, cx_f: ChainComplex, psi: Dict[int, Q]) -> Dict[int, Q]:
    """Alternation of (X_0, ..., X_k) ↦ φ(ψ(X_0, X_1) + q, X_2, ..., X_k) in C_{k+1}."""
    elems = cx_f.coeff.elements
    if elems is None:
        raise ValueError("the F-complex needs coefficients in p/p₊ given by explicit matrices")
    rel = cx.pair.basis_rel
    out: Dict[int, Q] = {}
    base_f = cx_f.bases[2]
    base_e = cx.bases[k]
    idx = cx.index[k + 1]
    for fi, cf in psi.items():
        (a, b), m = base_f[fi]
        y = elems[m]
        proj = [(c, y.get((i, j))) for c, (i, j) in enumerate(rel) if y.get((i, j))]
        for ei, ce in phi.items():
            S, n = base_e[ei]
            for c, yc in proj:
                if c not in S:
                    continue
                pos = S.index(c)
                rest = S[:pos] + S[pos + 1:]
                if a in rest or b in rest:
                    continue
                T = tuple(sorted(rest + (a, b)))
                i, j = T.index(a), T.index(b)
                sign = (-1) ** (i + j + 1) * (-1) ** pos
                key = idx[(T, n)]
                nv = out.get(key, 0) + sign * cf * ce * yc
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
    return out


def insertion_stability(cx: ChainComplex, k: int, e_vectors, cx_f: ChainComplex, f_vectors) -> InsertionReport:
    if cx_f.pair is not cx.pair:
        raise ValueError("E and F must live over the same parabolic pair")
    if k + 1 > cx.top:
        return InsertionReport(True, 0, None)
    span = _span(e_vectors)
    dstar = cx.dstar(k + 1)
    n = 0
    for ei, phi in enumerate(e_vectors):
        for fi, psi in enumerate(f_vectors):
            n += 1
            val = dstar.apply(insertion_value(cx, phi, k, cx_f, psi))
            if not span.contains(val):
                return InsertionReport(False, n, {
                    "e_index": ei, "f_index": fi,
                    "image": {str(i): fmt_rational(c) for i, c in sorted(val.items())},
                })
    return InsertionReport(True, n, None)


def forms_supported_on(cx: ChainComplex, k: int, positions) -> List[Dict[int, Q]]:
    """Basis vectors Z_S ⊗ v with S inside the given rel positions."""
    pos = set(positions)
    return [{m: Q(1)} for m, (S, _) in enumerate(cx.bases[k]) if set(S) <= pos]
