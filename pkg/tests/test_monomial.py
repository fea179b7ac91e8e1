import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birdyn import degree_sequence, delta_estimate
from birdyn.algebra.matrix import IntMatrix
from birdyn.errors import DimensionError, NonDominantError, ValidationError
from birdyn.monomial import exponent_matrix, exterior_power, monomial_degrees, monomial_map
from birdyn.projective import cremona

GOLDEN = (1 + 5 ** 0.5) / 2


def _corpus(count=50, seed=2024):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(2, 4)
        A = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
        if IntMatrix(A).det() != 0:
            out.append(A)
    return out


def _oracle(A):
    # independent eigenvalues at 40 digits
    with mpmath.workdps(40):
        ev = sorted((abs(z) for z in mpmath.eig(mpmath.matrix(A))[0]), reverse=True)
        out, acc = [1.0], mpmath.mpf(1)
        for v in ev:
            acc *= v
            out.append(float(acc))
    return out


def test_examples():
    assert monomial_degrees([[1, 1], [1, 0]]) == pytest.approx([1, GOLDEN, 1], abs=1e-12)
    assert monomial_degrees([[2, 0], [0, 3]]) == pytest.approx([1, 3, 6], abs=1e-12)
    assert monomial_degrees([[-1, 0], [0, -1]]) == [1.0, 1.0, 1.0]


def test_monomial_map_shapes():
    assert monomial_map([[-1, 0], [0, -1]]) == cremona(2)
    assert monomial_map([[2, 1], [1, 1]]).degree == 3
    with pytest.raises(NonDominantError):
        monomial_map([[1, 2], [2, 4]])


def test_exterior_power():
    A = [[1, 2, 0], [0, 1, 3], [4, 0, 1]]
    assert exterior_power(A, 1) == IntMatrix(A)
    assert exterior_power(A, 3).tolist() == [[IntMatrix(A).det()]]
    with pytest.raises(DimensionError):
        exterior_power(A, 4)


def test_validation():
    with pytest.raises(DimensionError):
        exponent_matrix([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ValidationError):
        exponent_matrix([[1.5, 0], [0, 1]])


def test_corpus_matches_eigenvalue_products():
    for A in _corpus():
        d = monomial_degrees(A)
        ref = _oracle(A)
        assert d == pytest.approx(ref, rel=1e-9, abs=1e-9)
        assert d[0] == 1.0 and d[-1] == abs(IntMatrix(A).det())


def test_corpus_log_concave():
    for A in _corpus():
        d = monomial_degrees(A)
        for l in range(1, len(d) - 1):
            assert d[l] ** 2 >= d[l - 1] * d[l + 1] * (1 - 1e-9)


def _unimodular(rng, k):
    # products of elementary matrices
    m = np.eye(k, dtype=int)
    for _ in range(6):
        i, j = rng.sample(range(k), 2)
        e = np.eye(k, dtype=int)
        e[i, j] = rng.choice([-1, 1])
        m = m @ e
    return m


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 4))
def test_unimodular_duality(seed, k):
    rng = random.Random(seed)
    A = _unimodular(rng, k)
    Ainv = np.round(np.linalg.inv(A)).astype(int)
    d, e = monomial_degrees(A.tolist()), monomial_degrees(Ainv.tolist())
    for l in range(k + 1):
        assert d[l] == pytest.approx(e[k - l], rel=1e-9)


@pytest.mark.parametrize("A, expect", [([[1, 1], [1, 0]], GOLDEN), ([[2, 1], [1, 1]], GOLDEN ** 2)])
def test_consistent_with_degree_growth(A, expect):
    d = monomial_degrees(A)
    assert d[1] == pytest.approx(expect, abs=1e-12)
    est = delta_estimate(degree_sequence(monomial_map(A), 8))
    assert est == pytest.approx(d[1], abs=0.05)
