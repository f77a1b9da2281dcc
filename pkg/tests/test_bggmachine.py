from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relbgg import bggmachine as bm
from relbgg import homology as hom
from relbgg.parabolic import build_pair
from relbgg.qmatrix import QMatrix
from relbgg.repn import adjoint_module
from relbgg.rootdata import weight

TWO_LEVELS = (2, (), (1,), (1, 1))
LONG = (2, (), (1, 2), (1, 1))


def _cx(rank, p, q, lam):
    return hom.complex_for(build_pair(rank, p, q), weight(*lam))


def test_polynomial_helpers():
    assert bm.poly_mul(bm.linear(2), bm.linear(-1)) == (Q(-2), Q(-1), Q(1))
    assert bm.poly_add((Q(1), Q(2)), (Q(-1), Q(-2))) == ()
    m = QMatrix.diagonal([2, 3])
    assert bm.poly_eval((Q(1), Q(0), Q(1)), m) == QMatrix.diagonal([5, 10])


def test_q_tilde_inverts_on_its_eigenvalues():
    avals = [Q(-3), Q(-1), Q(2)]
    poly = bm.q_tilde_polynomial(avals)
    for a in avals:
        assert bm.poly_eval(poly, QMatrix.diagonal([a])) == QMatrix.diagonal([1 / a])


def test_splitting_polynomial_vanishes_on_spectrum():
    eig = {Q(1): [Q(-3), Q(-1)], Q(2): [Q(-3)]}
    poly = bm.splitting_polynomial(eig)
    assert poly[0] == 1
    for a in (Q(-3), Q(-1)):
        assert bm.poly_eval(poly, QMatrix.diagonal([a])).is_zero()


@pytest.mark.parametrize("case", [TWO_LEVELS, LONG, (3, (1,), (1, 2), (1, 1, 1))])
def test_graded_model_q_is_inverse_laplacian_on_image(case):
    cx = _cx(*case)
    op = bm.make_compressable(cx, 0, None)
    q = bm.q_operator(cx, op).matrix
    lap = cx.laplacian(0)
    for x in hom.hodge_basis(cx, 0).im_dstar:
        assert q.apply(lap.apply(x)) == x


@settings(max_examples=20)
@given(st.integers(0, 10_000), st.sampled_from([0, 1]))
def test_random_compressable_operators(seed, k):
    cx = _cx(*TWO_LEVELS)
    op = bm.make_compressable(cx, k, seed)
    assert bm.filtration_problems(cx, op) == []
    assert bm.splitting_checks(cx, op, seed).ok
    assert bm.q_operator_checks(cx, op).ok
    assert bm.compressed_checks(cx, op).ok
    assert bm.splitting_via_q_check(cx, op)


@settings(max_examples=8)
@given(st.integers(0, 10_000))
def test_polynomials_reproduce_their_matrices(seed):
    cx = _cx(*LONG)
    op = bm.make_compressable(cx, 1, seed)
    p = bm.p_operator(cx, op)
    for poly in (bm.splitting_operator(cx, op), bm.q_operator(cx, op)):
        assert poly.evaluate(p) == poly.matrix
    with pytest.raises(ValueError):
        bm.q_operator(cx, op, "neumann").evaluate(p)


def test_unknown_q_method():
    cx = _cx(*TWO_LEVELS)
    with pytest.raises(ValueError):
        bm.q_operator(cx, bm.make_compressable(cx, 0, 1), "power")


def test_filtration_violation_is_reported():
    cx = _cx(*TWO_LEVELS)
    op = bm.make_compressable(cx, 0, 3)
    bad = bm.FilteredOperator(0, op.matrix.scale(2), "2D")
    assert bm.filtration_problems(cx, bad)


def _opposite_recursion(eig):
    q = None
    for l in sorted(eig, reverse=True):
        qt = bm.q_tilde_polynomial(eig[l])
        if q is None:
            q = qt
        else:
            corr = bm.poly_add((Q(1),), bm.poly_scale(bm.poly_mul((Q(0), Q(1)), qt), -1))
            q = bm.poly_add(qt, bm.poly_scale(bm.poly_mul(q, corr), -1))
    return q


def _swapped_lagrange(avals):
    out = ()
    for r, ar in enumerate(avals):
        c = Q(1) / ar
        term = (Q(1),)
        for s, as_ in enumerate(avals):
            if s != r:
                c /= as_ - ar
                term = bm.poly_mul(term, bm.linear(as_))
        out = bm.poly_add(out, bm.poly_scale(term, c))
    return out


def _inverts_on_image(cx, op, poly):
    p = bm.p_operator(cx, op)
    q = bm.poly_eval(poly, p)
    return all(p.apply(q.apply(x)) == x for x in hom.hodge_basis(cx, op.degree).im_dstar)


def test_recursion_sign_matters():
    cx = _cx(*TWO_LEVELS)
    op = bm.make_compressable(cx, 0, 5)
    eig = hom.spectrum(cx, 0)
    assert _inverts_on_image(cx, op, bm.q_polynomial(eig))
    assert not _inverts_on_image(cx, op, _opposite_recursion(eig))


def test_lagrange_denominator_sign_matters():
    avals = [Q(-3), Q(-1)]
    good, bad = bm.q_tilde_polynomial(avals), _swapped_lagrange(avals)
    assert bm.poly_eval(good, QMatrix.diagonal([Q(-1)])) == QMatrix.diagonal([Q(-1)])
    assert bm.poly_eval(bad, QMatrix.diagonal([Q(-1)])) != QMatrix.diagonal([Q(-1)])


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_conjugated_sequence(seed):
    cx = _cx(*LONG)
    ops = bm.conjugated_model(cx, seed)
    for op in ops.values():
        assert bm.filtration_problems(cx, op) == []
    v = bm.sequence_checks(cx, ops)
    assert v.ok, {k: c for k, c in v.checks.items() if not c}
    dims = v.notes["cohomology"]
    assert all(d["compressed"] == d["original"] for d in dims.values())
    assert dims


def test_non_square_zero_sequence_is_only_noted():
    cx = _cx(*LONG)
    ops = {k: bm.make_compressable(cx, k, 10 + k, density=0.6) for k in range(cx.top)}
    v = bm.sequence_checks(cx, ops)
    assert "hypothesis not met" in v.notes.values()
    assert not any("inherited" in name for name in v.checks)


def _adjoint_complex():
    pair = build_pair(3, (), (1, 2))
    return pair, hom.build_complex(pair, adjoint_module(3, pair.levi_p_nodes))


def test_insertion_full_and_empty():
    pair, cx = _adjoint_complex()
    full = [{m: Q(1)} for m in range(cx.dim(2))]
    first = [{m: Q(1)} for m in range(cx.dim(2))][:5]
    rep = bm.insertion_stability(cx, 2, full, cx, first)
    assert rep.stable and rep.checked == len(full) * len(first)
    rep = bm.insertion_stability(cx, 2, full, cx, [])
    assert rep.stable and rep.checked == 0


def test_insertion_stable_family():
    pair, cx = _adjoint_complex()
    pos = [i for i, (a, b) in enumerate(pair.basis_rel) if a <= 1 < b]
    vecs = bm.forms_supported_on(cx, 2, pos)
    rep = bm.insertion_stability(cx, 2, vecs, cx, vecs)
    assert rep.stable and rep.checked == len(vecs) ** 2


def test_insertion_unstable_witness():
    pair, cx = _adjoint_complex()
    f = bm.forms_supported_on(cx, 2, [i for i, (a, b) in enumerate(pair.basis_rel) if a <= 1 < b])
    # forms in the second node alone are not preserved
    e = bm.forms_supported_on(cx, 2, [i for i, (a, b) in enumerate(pair.basis_rel) if a == 2])
    rep = bm.insertion_stability(cx, 2, e, cx, f)
    assert not rep.stable
    assert rep.witness is not None and rep.witness["image"]
