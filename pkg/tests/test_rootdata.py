from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relbgg.rootdata import (
    UnsupportedRankError,
    WeylWord,
    affine_action,
    all_weyl_elements,
    build_root_system,
    character_is_regular,
    hasse_quotient,
    hasse_words,
    weight,
    weyl_dimension,
)

import oracles


@pytest.mark.parametrize("rank,npos,rho,order", [
    (1, 1, (1,), 2),
    (2, 3, (1, 1), 6),
    (3, 6, (1, 1, 1), 24),
])
def test_root_system_shapes(rank, npos, rho, order):
    rs = build_root_system(rank)
    assert len(rs.positive_roots) == npos
    assert rs.rho == weight(*rho)
    assert rs.weyl_order == order
    assert len(all_weyl_elements(rank)) == order


def test_rank_bounds():
    build_root_system(7)
    with pytest.raises(UnsupportedRankError):
        build_root_system(8)
    with pytest.raises(UnsupportedRankError):
        build_root_system(0)


def test_cartan_matrix_a3():
    rs = build_root_system(3)
    assert rs.cartan_matrix == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    # simple roots in fundamental coordinates are the rows of the Cartan matrix
    assert [tuple(a.coords) for a in rs.simple_roots] == [tuple(r) for r in rs.cartan_matrix]


def test_affine_action_examples():
    rs = build_root_system(2)
    e = WeylWord.identity(2)
    s1 = WeylWord.simple(2, 1)
    assert affine_action(rs, e, weight(3, 5)) == weight(3, 5)
    assert affine_action(rs, s1, weight(0, 0)) == weight(-2, 1)
    assert affine_action(rs, s1, weight(-1, 4)) == weight(-1, 4)


@given(st.lists(st.integers(1, 3), max_size=6), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_affine_action_matches_permutation_oracle(word, lam):
    rs = build_root_system(3)
    w = WeylWord.from_word(3, word)
    got = affine_action(rs, w, weight(*lam))
    assert tuple(got.coords) == oracles.dot_action(w.perm, lam)


@given(st.lists(st.integers(1, 3), max_size=6), st.lists(st.integers(1, 3), max_size=6))
def test_word_group_laws(a, b):
    x, y = WeylWord.from_word(3, a), WeylWord.from_word(3, b)
    assert (x * y).length <= x.length + y.length
    assert (x * x.inverse()) == WeylWord.identity(3)
    assert WeylWord.from_word(3, x.word) == x
    assert len(x.word) == x.length == oracles.length(x.perm)


def test_hasse_examples():
    rs2 = build_root_system(2)
    levels = hasse_quotient(rs2, {1})
    assert [[str(w) for w in l] for l in levels] == [["e"], ["s1"], ["s1s2"]]
    assert [[str(w) for w in l] for l in hasse_quotient(build_root_system(3), set())] == [["e"]]
    levels = hasse_quotient(build_root_system(3), {1, 2})
    assert sum(len(l) for l in levels) == 12
    assert len(levels) - 1 == 5


@pytest.mark.parametrize("ambient,levi", [
    ((1, 2, 3), (3,)), ((1, 2, 3), ()), ((2, 3), (3,)), ((1, 2, 3), (1, 3)), ((1, 2), (2,)),
])
def test_hasse_matches_brute_force_cosets(ambient, levi):
    got = {w.perm for level in hasse_words(3, ambient, levi) for w in level}
    assert got == oracles.min_coset_reps(4, ambient, levi)
    for k, level in enumerate(hasse_words(3, ambient, levi)):
        assert all(w.length == k for w in level)


def test_regularity():
    rs = build_root_system(2)
    assert character_is_regular(rs, weight(0, 0))
    assert not character_is_regular(rs, weight(-1, 0))
    rs3 = build_root_system(3)
    for k in range(3):
        assert not character_is_regular(rs3, weight(-1, 2, k))


@pytest.mark.parametrize("lam", [(1, 1), (2, 0), (1, 0, 1), (2, 1, 1), (0, 2, 0), (3, 0, 0)])
def test_weyl_dimension_matches_oracle(lam):
    assert weyl_dimension(build_root_system(len(lam)), weight(*lam)) == oracles.weyl_dimension(lam)


def test_levi_weyl_dimension_with_rational_entry():
    rs = build_root_system(3)
    # only nodes 2 and 3 act: sl(3) with highest weight (1, 2)
    assert weyl_dimension(rs, weight(Q(1, 2), 1, 2), (2, 3)) == 15


def test_casimir_normalization():
    rs = build_root_system(2)
    assert rs.casimir(weight(1, 1)) == 6
    assert build_root_system(1).casimir(weight(1)) == Q(3, 2)


def test_weight_coordinates_round_trip():
    lam = weight(Q(1, 2), -3, 2)
    assert lam.from_epsilon(lam.epsilon()) == lam
    assert lam.from_json(lam.to_json()) == lam
    assert lam.dynkin((1, 2)) == "x[1/2]-x[-3]-o[2]"
    assert lam.is_p_dominant((1,)) is False
    assert lam.is_p_integral((1,))
