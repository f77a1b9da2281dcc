import pytest
from hypothesis import given
from hypothesis import strategies as st

from relbgg.parabolic import (
    NestingError,
    build_pair,
    invariant_pairing,
    levi_root_system,
    parse_pair_string,
    rel_dual_weights,
)


def test_a3_dimensions():
    pair = build_pair(3, {1}, {1, 2})
    assert len(pair.basis_q_plus) == 5
    assert len(pair.basis_p_plus) == 3
    assert len(pair.basis_rel) == 2
    assert levi_root_system(pair).cartan_type == "A2"
    assert pair.levi("q").cartan_type == "A1"
    assert pair.check_invariants() == []


def test_grading_on_relative_part():
    pair = build_pair(3, {1}, {1, 2})
    grades = sorted(pair.grade(r) for r in pair.basis_rel)
    assert grades == [1, 1]
    assert all(pair.grade(r) >= 1 for r in pair.basis_q_plus)


def test_nesting_is_enforced():
    with pytest.raises(NestingError):
        build_pair(3, {1, 2}, {1})
    with pytest.raises(ValueError):
        build_pair(3, {4}, {4})


def test_round_trip_string():
    pair = build_pair(4, {2}, {1, 2, 4})
    again = parse_pair_string(str(pair))
    assert again.crossed_p == pair.crossed_p and again.crossed_q == pair.crossed_q


def test_rel_dual_weights_are_positive_roots():
    pair = build_pair(3, {1}, {1, 2})
    roots = {tuple(r.coords) for r in pair.rs.positive_roots}
    assert all(tuple(w.coords) in roots for w in rel_dual_weights(pair))


@st.composite
def nested(draw):
    rank = draw(st.integers(1, 4))
    q = draw(st.sets(st.integers(1, rank), min_size=1))
    p = draw(st.sets(st.sampled_from(sorted(q))))
    return rank, p, q


@given(nested())
def test_invariants_hold_for_all_nested_pairs(data):
    rank, p, q = data
    pair = build_pair(rank, p, q)
    assert pair.check_invariants() == []
    assert set(pair.basis_p_plus) <= set(pair.basis_q_plus)
    assert len(pair.basis_rel) == len(pair.basis_q_plus) - len(pair.basis_p_plus)
    assert invariant_pairing(pair).is_nondegenerate()


@given(nested())
def test_relative_bracket_is_antisymmetric(data):
    pair = build_pair(*data)
    for a in pair.basis_rel:
        for b in pair.basis_rel:
            x, y = pair.rel_bracket(a, b), pair.rel_bracket(b, a)
            assert (x is None) == (y is None)
            if x is not None:
                assert x[1] == y[1] and x[0] == -y[0]
