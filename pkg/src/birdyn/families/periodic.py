"""Periodic birational maps of P^3 and the non-periodic family F_a."""
from __future__ import annotations

from birdyn.algebra.fields import coerce_coeff, zeta
from birdyn.algebra.multipoly import MultiPoly
from birdyn.errors import FieldError, InvalidParameterError
from birdyn.projective import HomogeneousMap, ambient_vars, compose_reduce, reduce_map


def _third_order_map(a0, a2, a3, scale=1, a1=0):
    """Homogenized (x,y,z) -> (y, z, (a0 + a1 x + a2 y + a3 z) / (scale x)).

    Components: [s x0 x1 : s x1 x2 : s x1 x3 : x0 (a0 x0 + a1 x1 + a2 x2 + a3 x3)].
    """
    vars = ambient_vars(3)
    X = [MultiPoly.var(i, vars) for i in range(4)]
    s = coerce_coeff(scale)
    last = X[0] * (X[0] * a0 + X[1] * a1 + X[2] * a2 + X[3] * a3)
    return HomogeneousMap([X[0] * X[1] * s, X[1] * X[2] * s, X[1] * X[3] * s, last], source=(3,), vars=vars)


def lyness8a():
    """(x, y, z) -> (y, z, (1 + y + z) / x)."""
    return _third_order_map(1, 1, 1)


def lyness8b():
    """(x, y, z) -> (y, z, (-1 - y + z) / x)."""
    return _third_order_map(-1, -1, 1)


def period12(eta=None):
    """(x, y, z) -> (y, z, (1 + eta^2 x + eta y + z) / x) with eta = zeta_6.

    ``period12_literal`` is the shape without the x term in the numerator,
    which is not periodic; see the decisions ledger.
    """
    eta = zeta(6) if eta is None else eta
    return _third_order_map(1, eta, 1, a1=eta * eta)


def period12_literal(eta=None):
    """(x, y, z) -> (y, z, (eta/(1-eta) + eta y + z) / (eta^2 x)), kept for comparison."""
    eta = zeta(6) if eta is None else eta
    c = eta / (1 - eta)
    return _third_order_map(c, eta, 1, scale=eta * eta)


def fa_map(a=1, omega=None):
    """F_a: (x, y, z) -> (y, z, (a + omega y + z) / x), omega a primitive cube root of 1."""
    if a == 0:
        raise InvalidParameterError("F_a needs a != 0")
    omega = zeta(3) if omega is None else omega
    if isinstance(a, (float, complex)):
        omega = complex(omega)
    return _third_order_map(coerce_coeff(a), omega, 1)


def fa_inverse(a=1, omega=None):
    """(X, Y, Z) -> ((a + omega X + Y) / Z, X, Y), homogenized."""
    if a == 0:
        raise InvalidParameterError("F_a needs a != 0")
    omega = zeta(3) if omega is None else omega
    if isinstance(a, (float, complex)):
        omega = complex(omega)
    a = coerce_coeff(a)
    vars = ambient_vars(3)
    X = [MultiPoly.var(i, vars) for i in range(4)]
    first = X[0] * (X[0] * a + X[1] * omega + X[2])
    return HomogeneousMap([X[0] * X[3], first, X[1] * X[3], X[2] * X[3]], source=(3,), vars=vars)


def _require_exact(f):
    for c in f.components:
        for v in c.terms.values():
            if isinstance(v, (float, complex)):
                raise FieldError("period verification needs exact coefficients")


def iterate_until_identity(f, max_n):
    """Smallest n <= max_n with f^n = identity, else None."""
    _require_exact(f)
    g = reduce_map(f)[0]
    for n in range(1, max_n + 1):
        if g.is_identity():
            return n
        if n < max_n:
            g = compose_reduce(f, g)
    return None


def verify_period(f, p):
    """True iff f^p is the identity and no smaller iterate is.

    Reduced iterates are compared with the identity up to a common scalar,
    exactly.  Stopping at the first identity iterate also covers every proper
    divisor of p.
    """
    if p < 1:
        raise InvalidParameterError("period must be >= 1")
    n = iterate_until_identity(f, p)
    return n == p


def conjugate(f, matrix):
    """A o f o A^-1 for an invertible linear A given by exact rows."""
    from birdyn.algebra.matrix import field_inverse

    A = HomogeneousMap.linear(matrix)
    Ainv = HomogeneousMap.linear(field_inverse(matrix))
    return compose_reduce(A, compose_reduce(f, Ainv))
