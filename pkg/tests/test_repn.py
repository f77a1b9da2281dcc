from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relbgg.parabolic import build_pair
from relbgg.repn import (
    DimensionError,
    RepresentabilityError,
    adjoint_module,
    casimir_eigenvalue,
    casimir_matrix,
    coinvariants,
    dual,
    ext_power,
    irrep,
    restrict,
    standard,
    sym_power,
    tensor,
    trivial,
    twist,
)
from relbgg.rootdata import weight

import oracles


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 0, 1), (0, 2, 0), (1, 1, 1), (3,), (2, 0, 0, 1)])
def test_character_matches_freudenthal(lam):
    m = irrep(len(lam), lam)
    got = {tuple(w.coords): c for w, c in m.character().items()}
    assert got == oracles.freudenthal(lam)
    assert m.check_relations() == []


@settings(max_examples=12)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=3))
def test_irrep_dimension_and_relations(lam):
    m = irrep(len(lam), lam)
    assert m.dim == oracles.weyl_dimension(lam)
    assert m.check_relations() == []
    hw = m.highest_weight_vectors()
    assert list(hw) == [weight(*lam)] and len(hw[weight(*lam)]) == 1


def test_non_dominant_is_rejected():
    with pytest.raises(RepresentabilityError):
        irrep(2, (-1, 0))
    with pytest.raises(RepresentabilityError):
        irrep(2, (Q(1, 2), 0))


def test_dimension_guard(monkeypatch):
    monkeypatch.setenv("BGG_MAX_DIM", "10")
    with pytest.raises(DimensionError):
        irrep(3, (1, 1, 1))


def test_casimir_values():
    m = adjoint_module(2)
    assert casimir_matrix(m).is_scalar() == 6
    assert casimir_eigenvalue(weight(1, 1)) == 6
    for n in range(4):
        c = casimir_matrix(irrep(1, (n,))).is_scalar()
        assert c == Q(n * (n + 2), 2)
        assert c == oracles.sl2_casimir(n)[0][0]


def test_standard_functors():
    v = standard(3)
    assert v.dim == 4
    assert dual(v).highest_weight == weight(0, 0, 1)
    assert sym_power(v, 2).dim == 10
    assert ext_power(v, 2).dim == 6
    assert ext_power(v, 5).dim == 0
    assert tensor(v, dual(v)).dim == 16
    for m in (sym_power(v, 2), ext_power(v, 2), tensor(v, dual(v))):
        assert m.check_relations() == []


def test_ext_square_of_standard_is_irreducible():
    e2 = ext_power(standard(3), 2)
    assert e2.character() == irrep(3, (0, 1, 0)).character()


def test_restriction_blocks_of_standard():
    pair = build_pair(3, {1}, {1, 2})
    blocks = restrict(standard(3), pair, "p").blocks()
    assert sorted(len(b) for b in blocks) == [1, 3]
    blocks = restrict(standard(3), pair, "q").blocks()
    assert sorted(len(b) for b in blocks) == [1, 1, 2]


def test_coinvariants_of_standard():
    pair = build_pair(3, {1}, {1})
    dim, weights = coinvariants(standard(3), pair.basis_p_plus)
    # the lowering units from the nilradical kill everything but the top line
    assert dim == 1
    assert weights == [weight(1, 0, 0)]


def test_twist_of_levi_module():
    m = trivial(3, nodes=(2, 3))
    t = twist(m, [Q(1, 2)])
    assert t.highest_weight == weight(Q(1, 2), 0, 0)
    with pytest.raises(ValueError):
        twist(m, [1, 2])


def test_levi_irrep_with_central_character():
    m = irrep(3, (Q(-5, 2), 1, 0), nodes=(2, 3))
    assert m.dim == 3
    assert m.check_relations() == []
