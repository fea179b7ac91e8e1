"""High-precision refinement and integer-relation recognition (mpmath)."""
from __future__ import annotations

from fractions import Fraction

import mpmath

from birdyn.algebra.fields import FieldElement, NumberField
from birdyn.errors import NoConvergence


def newton_mp(func, x0, dps=80, max_iter=100, tol_digits=None):
    """Newton iteration for func: C^m -> C^m at ``dps`` digits.

    The Jacobian is a central difference with step 10^(-dps/2), which keeps
    about dps/2 correct digits per derivative; quadratic convergence makes up
    the rest within a few steps.
    """
    tol_digits = dps - 10 if tol_digits is None else tol_digits
    with mpmath.workdps(dps):
        x = [mpmath.mpmathify(v) for v in x0]
        m = len(x)
        h = mpmath.mpf(10) ** (-(dps // 2))
        tol = mpmath.mpf(10) ** (-tol_digits)
        for _ in range(max_iter):
            g = func(x)
            if max(abs(v) for v in g) < tol:
                return x
            J = mpmath.matrix(m, m)
            for j in range(m):
                xp = list(x)
                xm = list(x)
                xp[j] += h
                xm[j] -= h
                gp, gm = func(xp), func(xm)
                for i in range(m):
                    J[i, j] = (gp[i] - gm[i]) / (2 * h)
            try:
                d = mpmath.lu_solve(J, mpmath.matrix(g))
            except ZeroDivisionError:
                raise NoConvergence("singular Jacobian in high-precision Newton", {"x": [str(v) for v in x]})
            x = [x[i] - d[i] for i in range(m)]
        raise NoConvergence("high-precision Newton did not converge", {"x": [str(v) for v in x]})


def field_generator_mp(field, dps):
    """The embedded generator of ``field`` to ``dps`` digits."""
    with mpmath.workdps(dps + 10):
        if field.embedding_mp is not None and mpmath.mp.dps <= getattr(field, "_mp_dps", 0):
            return field.embedding_mp
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(field.minpoly)]
        start = field.embedding if field.embedding is not None else 1.0
        r = mpmath.findroot(lambda t: mpmath.polyval(coeffs, t), mpmath.mpc(start))
        if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-(dps // 2)):
            r = mpmath.re(r)
        return r


def recognize_in_field(x, field, dps=100, maxcoeff=10 ** 8):
    """Element of ``field`` equal to the real number ``x`` (an mpf good to ``dps`` digits), or None.

    PSLQ looks for an integer relation c x + sum_i c_i t^i = 0 with t the
    field generator; the answer is -sum_i (c_i / c) t^i.
    """
    with mpmath.workdps(dps):
        t = field_generator_mp(field, dps)
        if isinstance(t, mpmath.mpc) or isinstance(x, mpmath.mpc):
            raise ValueError("recognition is implemented for real embeddings only")
        basis = [mpmath.mpf(1)]
        for _ in range(field.degree - 1):
            basis.append(basis[-1] * t)
        rel = mpmath.pslq([x] + basis, maxcoeff=maxcoeff, maxsteps=10 ** 6)
    if rel is None or rel[0] == 0:
        return None
    c = rel[0]
    return FieldElement(field, [Fraction(-ci, c) for ci in rel[1:]])


def mp_value(c, dps):
    """High-precision complex value of an exact coefficient."""
    with mpmath.workdps(dps):
        if isinstance(c, (int, Fraction)):
            c = Fraction(c)
            return mpmath.mpf(c.numerator) / c.denominator
        if isinstance(c, FieldElement):
            t = field_generator_mp(c.field, dps)
            acc = mpmath.mpf(0)
            for a in reversed(c.coeffs):
                acc = acc * t + mpmath.mpf(a.numerator) / a.denominator
            return acc
        return mpmath.mpmathify(c)


def real_field(minpoly, near, name="t", dps=60):
    """NumberField for the real root of ``minpoly`` (low first) closest to ``near``."""
    field = NumberField(minpoly, name=name, embedding=near)
    r = field_generator_mp(field, dps)
    field.embedding = complex(r)
    field.embedding_mp = r
    field._mp_dps = dps
    return field
