from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birdyn import DegreeSequence, degree_sequence, delta_estimate
from birdyn.errors import ValidationError
from birdyn.families import fa_map, lf_map
from birdyn.families.planar import LinearFractionalParams
from birdyn.projective import HomogeneousMap, cremona, cremona_product

GENERIC = LinearFractionalParams(Fraction(2, 3), Fraction(5, 7))
PLASTIC = 1.324717957244746


def test_cremona_alternates():
    assert list(degree_sequence(cremona(2), 6)) == [2, 1, 2, 1, 2, 1]
    assert list(degree_sequence(cremona(3), 4)) == [3, 1, 3, 1]


def test_linear_map_has_degree_one():
    L = HomogeneousMap.linear([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    seq = degree_sequence(L, 8)
    assert list(seq) == [1] * 8
    assert delta_estimate(seq) == 1.0


def test_generic_lf_growth():
    seq = degree_sequence(lf_map(GENERIC), 20)
    # frozen from the symbolic route for n <= 10 and the line route beyond
    assert list(seq)[:10] == [2, 2, 3, 4, 5, 7, 9, 12, 16, 21]
    assert delta_estimate(seq) == pytest.approx(PLASTIC, abs=0.01)
    assert seq.check_submultiplicative()


def test_line_and_symbolic_routes_agree():
    f = lf_map(GENERIC)
    assert list(degree_sequence(f, 8, method="symbolic")) == list(degree_sequence(f, 8, method="line"))
    g = lf_map(LinearFractionalParams(-1, 0))
    assert list(degree_sequence(g, 8, method="symbolic")) == list(degree_sequence(g, 8))


def test_product_space_multidegrees():
    seq = degree_sequence(cremona_product(1, 2), 4)
    assert seq.is_product
    assert seq.values[0] == [[1, 0], [1, 1]]
    assert list(degree_sequence(cremona_product(1, 2), 4, method="symbolic")) == list(seq)


def test_fa_lies_between_bounds():
    seq = degree_sequence(fa_map(1), 20)
    d = delta_estimate(seq)
    assert 1.0 < d < PLASTIC


def test_time_budget_truncates():
    seq = degree_sequence(lf_map(GENERIC), 40, method="symbolic", time_budget=0.0)
    assert seq.truncated and len(seq) < 40


def test_validation():
    with pytest.raises(ValidationError):
        degree_sequence(lf_map(GENERIC), 0)
    with pytest.raises(ValidationError):
        delta_estimate([2, 3, 4])
    with pytest.raises(ValueError):
        degree_sequence(lf_map(GENERIC), 3, method="nope")


def test_delta_estimate_on_synthetic_sequences():
    assert delta_estimate([1] * 10) == 1.0
    assert delta_estimate([2, 1] * 6) == 1.0
    assert delta_estimate([2 ** n for n in range(1, 16)]) == pytest.approx(2.0, abs=1e-6)
    # quadratic growth has no exponential rate
    assert delta_estimate([n * n + 1 for n in range(1, 25)]) < 1.15


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9), st.integers(1, 9))
def test_degrees_submultiplicative(p, q, r, s):
    seq = degree_sequence(lf_map(LinearFractionalParams(Fraction(p, q), Fraction(-r, s))), 10)
    assert seq.check_submultiplicative()
    assert all(v >= 1 for v in seq)


def test_degree_sequence_container():
    seq = DegreeSequence([2, 3, 4])
    assert seq.ratios() == [1.5, 4 / 3]
    assert seq[1] == 3 and len(seq) == 3
