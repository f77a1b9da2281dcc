from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relbgg import pathgeom as pg
from relbgg.rootdata import weight


def test_row_w0_k0_l0():
    seq = pg.path_sequence(pg.PathGeomCase(0, 0, 0))
    assert seq.weights == (weight(0, 0, 0), weight(1, -2, 1), weight(2, -3, 0))
    assert [str(b) for b in seq.bundles] == ["S^0V*(0,0)", "S^1V*(0,0)", "S^0V*(2,-3)"]
    assert seq.orders == (1, 1)


def test_row_w0_k1_l0():
    seq = pg.path_sequence(pg.PathGeomCase(0, 1, 0))
    assert [str(b) for b in seq.bundles] == ["S^1V*(0,2)", "S^2V*(0,2)", "S^0V*(4,-4)"]
    assert seq.orders == (1, 2)


cases = st.builds(
    pg.PathGeomCase,
    st.fractions(min_value=-12, max_value=6, max_denominator=4),
    st.integers(0, 6),
    st.integers(0, 6),
)


@given(cases)
def test_bundles_realize_weights(case):
    seq = pg.path_sequence(case)
    for lam, bundle in zip(seq.weights, seq.bundles):
        assert bundle.weight() == lam
        assert pg.BundleName.from_weight(lam) == bundle
        assert pg.BundleName.parse(str(bundle)) == bundle
        assert lam.coords[2] == bundle.c
    assert seq.orders == (case.l + 1, case.k + 1)


@pytest.mark.parametrize("case,expected", [
    ((0, 0, 0), "case-A"),
    ((-2, 0, 1), "case-B"),
    ((Q(1, 2), 3, 3), "none"),
    ((-5, 1, 1), "case-C"),
    ((-10, 1, 1), "case-D"),
    ((-1, 0, 0), "none"),
])
def test_classifier_examples(case, expected):
    assert pg.classify_subsequence(pg.PathGeomCase(*case)) == expected


def test_classifier_partition_on_grid():
    assert pg.partition_check() is None
    seen = {pg.classify_subsequence(c) for c in pg.grid(range(-12, 5), range(5), range(5))}
    assert seen == set(pg.CASES) | {"none"}


@given(cases)
def test_classifier_forms_agree(case):
    assert pg.classify_subsequence(case) == pg.classify_in_w(case)


def test_none_cases_are_walls_when_integral():
    # an integral case outside all four classes sits on a wall
    for c in pg.grid(range(-12, 5), range(5), range(5)):
        if pg.classify_subsequence(c) == "none":
            assert pg.singular_character(c)[0]


@pytest.mark.parametrize("case,walls", [
    ((-1, 0, 0), [1]),
    ((0, 0, 0), []),
    ((-3, 1, 0), [2]),
    ((-5, 1, 1), []),
    ((-7, 1, 2), [3]),
])
def test_singular_character_examples(case, walls):
    singular, got = pg.singular_character(pg.PathGeomCase(*case))
    assert got == walls and singular == bool(walls)


def test_walls_agree_with_regularity_on_grid():
    for c in pg.grid(range(-12, 5), range(5), range(5)):
        singular, _ = pg.singular_character(c)
        assert singular == (not pg.engine_singularity(c)["regular"])


@pytest.mark.parametrize("case", [(w, k, l) for w in (-1, 0, 1) for k in range(3) for l in range(3)])
def test_engine_reproduces_rows(case):
    rep = pg.validate_against_engine(pg.PathGeomCase(*case))
    assert rep.ok, rep.to_json()


def test_engine_with_rational_density():
    assert pg.validate_against_engine(pg.PathGeomCase(Q(1, 3), 1, 1)).ok


@pytest.mark.parametrize("case,label,plain", [
    ((0, 0, 0), "T^0_0[0]", "E[0]"),
    ((0, 1, 1), "T^1_1[2]", None),
    ((2, 0, 1), "T^0_1[4]", "S^1T*N[4]"),
    ((1, 2, 0), "T^2_0[1]", "S^2TN[1]"),
])
def test_tensor_bundle_labels(case, label, plain):
    tb = pg.tensor_bundle(pg.PathGeomCase(*case))
    assert tb.label == label
    if plain is not None:
        assert tb.plain == plain


@given(cases)
def test_tensor_bundle_weight_is_first_weight(case):
    tb = pg.tensor_bundle(case)
    assert tb.weight() == pg.path_sequence(case).weights[0]
    base = weight(0, 0, 0)
    for _ in range(case.l):
        base = base + pg.G_MOD_P_DUAL
    for _ in range(case.k):
        base = base + pg.G_MOD_P
    assert tb.base_weight() == base


def test_invalid_case():
    with pytest.raises(ValueError):
        pg.PathGeomCase(0, -1, 0)
    with pytest.raises(ValueError):
        pg.BundleName.parse("S^xV*(0,0)")


def test_report_shape():
    r = pg.report(pg.PathGeomCase(0, 1, 2), validate=True)
    assert r["classification"] == "case-A"
    assert r["engine"]["ok"]
    assert set(r["notes"]) == {"relative_bgg", "tensor_bundle", "orders"}
