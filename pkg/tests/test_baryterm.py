import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from baryalg.baryterm import (
    ConvexCombination,
    Leaf,
    Node,
    check_axioms,
    comb_closed_form,
    comb_from_combination,
    comb_weights,
    complement,
    dual_mul,
    eval_term,
    flatten,
    left_comb,
    random_term,
    weighted_mean,
)
from baryalg.errors import (
    LeafIndexOutOfRange,
    NotAConvexCombination,
    UnboundGenerator,
    WeightOutOfRange,
    ZeroCoefficient,
)

weights = st.floats(1e-6, 1 - 1e-6)


def recover_coefficients(term, arity, rng, trials=10):
    """Oracle: evaluate the term at the vertices of random simplices in
    R^(arity-1) and solve the affine system for the coefficients."""
    sols = []
    for _ in range(trials):
        pts = rng.normal(size=(arity, max(arity - 1, 1)))
        value = eval_term(term, {i + 1: pts[i] for i in range(arity)})
        lhs = np.vstack([pts.T, np.ones(arity)])
        rhs = np.append(value, 1.0)
        sols.append(np.linalg.lstsq(lhs, rhs, rcond=None)[0])
    return np.mean(sols, axis=0)


# -- weights ------------------------------------------------------------------

def test_complement_examples():
    assert complement(0.25) == 0.75
    assert complement(0.5) == 0.5


@given(weights)
def test_complement_involution(p):
    assert complement(complement(p)) == pytest.approx(p, abs=1e-16)


def test_dual_mul_examples():
    assert dual_mul(0.5, 0.5) == 0.75
    assert dual_mul(0.5, 1 / 3) == pytest.approx(2 / 3, abs=1e-16)


@given(weights, weights)
def test_dual_mul_identity_and_range(p, r):
    v = dual_mul(p, r)
    assert 0 < v < 1
    assert v == pytest.approx(1 - (1 - p) * (1 - r), abs=1e-15)
    assert p < v and r < v


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_weights_outside_open_interval_rejected(bad):
    with pytest.raises(WeightOutOfRange):
        complement(bad)
    with pytest.raises(WeightOutOfRange):
        Node(bad, Leaf(1), Leaf(2))


def test_weighted_mean_examples():
    assert weighted_mean(0.5, (0, 0), (1, 1)).tolist() == [0.5, 0.5]
    assert weighted_mean(0.25, (0, 0), (4, 0)).tolist() == [1.0, 0.0]
    assert weighted_mean(0.3, (2.5, -1), (2.5, -1)).tolist() == [2.5, -1.0]


# -- convex combinations ------------------------------------------------------

def test_convex_combination_renormalizes():
    cc = ConvexCombination([0.5, 0.5 + 1e-10])
    assert sum(cc) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(NotAConvexCombination):
        ConvexCombination([0.5, 0.6])
    with pytest.raises(NotAConvexCombination):
        ConvexCombination([1.1, -0.1])
    with pytest.raises(NotAConvexCombination):
        ConvexCombination([])
    assert ConvexCombination([1.0 + 1e-13, -1e-13]).tolist() == [1.0, 0.0]


# -- terms --------------------------------------------------------------------

V3 = {1: (0, 0), 2: (1, 0), 3: (1, 1)}


def test_eval_examples():
    assert eval_term(Leaf(1), {1: (3, 4)}).tolist() == [3, 4]
    assert eval_term(Node(0.5, Leaf(1), Leaf(2)), V3).tolist() == [0.5, 0.0]
    t = Node(1 / 3, Node(0.5, Leaf(1), Leaf(2)), Leaf(3))
    assert eval_term(t, V3) == pytest.approx([2 / 3, 1 / 3], abs=1e-15)
    # cross-check through flatten and a dot product
    assert flatten(t, 3).combine([V3[1], V3[2], V3[3]]) == pytest.approx([2 / 3, 1 / 3], abs=1e-15)


def test_eval_accepts_sequence_assignment():
    t = Node(0.25, Leaf(1), Leaf(2))
    assert eval_term(t, [(0, 0), (4, 0)]).tolist() == [1.0, 0.0]


def test_eval_unbound_generator():
    with pytest.raises(UnboundGenerator) as err:
        eval_term(Node(0.5, Leaf(1), Leaf(4)), V3)
    assert err.value.index == 4


def test_flatten_examples(rng):
    assert flatten(Leaf(2), 3).tolist() == [0.0, 1.0, 0.0]
    comb = left_comb([0.5, 1 / 3])
    expected = recover_coefficients(comb, 3, rng)
    assert expected == pytest.approx([1 / 3] * 3, abs=1e-12)
    assert np.asarray(flatten(comb, 3)) == pytest.approx(expected, abs=1e-12)
    assert np.asarray(flatten(comb, 3)) == pytest.approx(comb_closed_form([0.5, 1 / 3]), abs=1e-15)
    assert flatten(Node(0.5, Leaf(1), Leaf(1)), 1).tolist() == [1.0]


def test_flatten_out_of_range():
    with pytest.raises(LeafIndexOutOfRange):
        flatten(Leaf(4), 3)


def test_flatten_matches_oracle_on_random_terms(rng):
    for _ in range(50):
        arity = int(rng.integers(1, 7))
        t = random_term(rng, 6, arity, weight_range=(0.05, 0.95))
        got = np.asarray(flatten(t, arity))
        assert got == pytest.approx(recover_coefficients(t, arity, rng, trials=3), abs=1e-9)


def test_comb_from_combination_examples():
    t = comb_from_combination([1 / 3, 1 / 3, 1 / 3])
    assert comb_weights(t) == pytest.approx([0.5, 1 / 3], abs=1e-16)
    assert np.asarray(flatten(t, 3)) == pytest.approx([1 / 3] * 3, abs=1e-12)
    assert comb_from_combination([0.7, 0.3]) == Node(0.3, Leaf(1), Leaf(2))
    assert comb_from_combination([1.0]) == Leaf(1)


def test_comb_from_combination_with_surviving_indices():
    t = comb_from_combination([0.5, 0.5], indices=[2, 4])
    assert t == Node(0.5, Leaf(2), Leaf(4))
    assert flatten(t, 4).tolist() == [0.0, 0.5, 0.0, 0.5]


def test_comb_from_combination_zero_coefficient():
    with pytest.raises(ZeroCoefficient):
        comb_from_combination([0.5, 0.0, 0.5])


@settings(max_examples=200)
@given(st.lists(st.floats(1e-3, 1.0), min_size=1, max_size=10))
def test_round_trip_from_combination(raw):
    cc = np.asarray(raw) / np.sum(raw)
    back = np.asarray(flatten(comb_from_combination(cc), len(cc)))
    assert np.abs(back - cc).max() <= 1e-12


@settings(max_examples=200)
@given(st.lists(weights, min_size=1, max_size=9))
def test_left_comb_closed_form(ps):
    got = np.asarray(flatten(left_comb(ps), len(ps) + 1))
    assert np.abs(got - comb_closed_form(ps)).max() <= 1e-14


# -- axioms -------------------------------------------------------------------

def test_axioms_worked_example():
    rep = check_axioms(0.5, 1 / 3, np.array([0.0]), np.array([1.0]), np.array([2.0]), 1e-12)
    assert rep.all_passed
    lhs = weighted_mean(0.5, weighted_mean(1 / 3, 0.0, 1.0), 2.0)
    assert float(lhs) == pytest.approx(7 / 6, abs=1e-15)
    assert dual_mul(1 / 3, 0.5) == pytest.approx(2 / 3, abs=1e-15)


@given(weights, weights, st.tuples(st.floats(-10, 10), st.floats(-10, 10)))
def test_axioms_collapse_when_points_coincide(p, r, a):
    rep = check_axioms(p, r, a, a, a, 1e-12)
    assert rep.all_passed


@settings(max_examples=300)
@given(weights, weights, *[st.tuples(st.floats(-10, 10), st.floats(-10, 10))] * 3)
def test_axioms_hold(p, r, a, b, c):
    assert check_axioms(p, r, a, b, c, 1e-10).all_passed


def test_axioms_detect_a_wrong_operation():
    # a broken skew-associativity (inner weight p instead of p/(r o p)) is caught
    p, r = 0.5, 1 / 3
    a, b, c = np.array([0.0]), np.array([1.0]), np.array([2.0])
    lhs = weighted_mean(p, weighted_mean(r, a, b), c)
    wrong = weighted_mean(dual_mul(r, p), a, weighted_mean(p, b, c))
    assert abs(float(lhs[0] - wrong[0])) > 1e-3


def test_random_term_respects_bounds(rng):
    from baryalg.baryterm import depth, leaves
    for _ in range(100):
        t = random_term(rng, 8, 6)
        assert depth(t) <= 8
        assert all(1 <= i <= 6 for i in leaves(t))
