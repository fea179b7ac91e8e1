import random
from fractions import Fraction

import pytest

from birdyn import degree_sequence
from birdyn.algebra.fields import zeta
from birdyn.errors import FieldError, InvalidParameterError
from birdyn.families import conjugate, fa_inverse, fa_map, iterate_until_identity, lyness8a, lyness8b, period12, verify_period
from birdyn.families.periodic import period12_literal
from birdyn.projective import HomogeneousMap, ProjectivePoint, compose_reduce, evaluate


@pytest.mark.parametrize("build", [lyness8a, lyness8b])
def test_period_eight(build):
    assert verify_period(build(), 8)
    assert not verify_period(build(), 4)


def test_period_twelve_over_zeta6():
    f = period12()
    assert verify_period(f, 12)
    assert iterate_until_identity(f, 12) == 12


def _returns(f, p, n):
    x = p
    for _ in range(n):
        x = evaluate(f, x)
    return x == p


# symbolic iterates of a non-periodic map grow too fast; an exact orbit suffices
def test_literal_period_twelve_shape_is_not_periodic():
    p = ProjectivePoint([1, 2, -1, 3])
    assert not _returns(period12_literal(), p, 12)
    assert _returns(period12(), p, 12)


def test_float_coefficients_rejected():
    f = HomogeneousMap.from_strings(["0.5*x0*x1", "x1*x2", "x1*x3", "x0^2 + x0*x2"])
    with pytest.raises(FieldError):
        verify_period(f, 8)


def test_invalid_period():
    with pytest.raises(InvalidParameterError):
        verify_period(lyness8a(), 0)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_period_is_conjugation_invariant(seed):
    rng = random.Random(seed)
    while True:
        A = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
        try:
            g = conjugate(lyness8a(), A)
            break
        except ZeroDivisionError:
            continue
    assert verify_period(g, 8)


def test_fa_requires_nonzero_parameter():
    with pytest.raises(InvalidParameterError):
        fa_map(0)
    with pytest.raises(InvalidParameterError):
        fa_inverse(0)


def test_fa_is_not_periodic():
    p = ProjectivePoint([1, 2, -1, 3])
    assert not any(_returns(fa_map(1), p, n) for n in range(1, 13))
    assert degree_sequence(fa_map(1), 12)[-1] > 1


def test_fa_inverse_round_trip_exact():
    assert compose_reduce(fa_inverse(1), fa_map(1)).is_identity()
    assert compose_reduce(fa_map(Fraction(2, 3)), fa_inverse(Fraction(2, 3))).is_identity()


def test_fa_inverse_round_trip_numeric():
    f, g = fa_map(1.0), fa_inverse(1.0)
    p = ProjectivePoint([1.0, 0.3, -0.7, 1.9])
    assert evaluate(g, evaluate(f, p)).distance(p) < 1e-12


def test_fa_other_cube_root():
    w2 = zeta(3) ** 2
    assert compose_reduce(fa_inverse(1, w2), fa_map(1, w2)).is_identity()
