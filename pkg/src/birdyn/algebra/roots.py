"""Complex roots of exact univariate polynomials by Aberth iteration.

Multiplicities are handled exactly: the input is first split into squarefree
factors (Yun), and each factor is solved on its own, so clustered roots never
slow the simultaneous iteration down.
"""
from __future__ import annotations

import cmath
import math

from birdyn.algebra.unipoly import UniPoly, squarefree_decomposition
from birdyn.errors import NoConvergence, UndefinedRootsError

DEFAULT_TOL = 1e-12
MAX_ITER = 500
# fixed irrational offset keeps the start circle off any symmetry axis
_ANGLE_OFFSET = 0.4 * math.sqrt(2.0)


def _horner_with_derivative(c, z):
    p = 0j
    dp = 0j
    for a in c:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def aberth(coeffs_high_first, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """Roots of the monic polynomial with the given float coefficients (highest first)."""
    c = [complex(x) for x in coeffs_high_first]
    n = len(c) - 1
    if n < 1:
        return []
    lead = c[0]
    c = [x / lead for x in c]
    if n == 1:
        return [-c[1]]
    radius = 1.0 + max(abs(x) for x in c[1:])
    zs = [radius * cmath.exp(1j * (2 * math.pi * j / n + _ANGLE_OFFSET)) for j in range(n)]
    scale = [abs(x) for x in c]
    for _ in range(max_iter):
        done = True
        for j in range(n):
            z = zs[j]
            p, dp = _horner_with_derivative(c, z)
            # backward-error style stopping test
            bound = 0.0
            az = abs(z)
            for s in scale:
                bound = bound * az + s
            if abs(p) <= tol * bound:
                continue
            done = False
            ratio = p / dp if dp != 0 else p
            repulse = sum(1.0 / (z - w) for i, w in enumerate(zs) if i != j and z != w)
            denom = 1.0 - ratio * repulse
            step = ratio / denom if denom != 0 else ratio
            zs[j] = z - step
        if done:
            return zs
    raise NoConvergence("Aberth iteration did not converge", {"degree": n, "max_iter": max_iter})


def _polish(c, z, iters=3):
    for _ in range(iters):
        p, dp = _horner_with_derivative(c, z)
        if dp == 0:
            break
        nz = z - p / dp
        if not math.isfinite(abs(nz)):
            break
        z = nz
    return z


def roots(p, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """All complex roots with multiplicity, ordered by descending modulus."""
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    if p.is_zero():
        raise UndefinedRootsError("the zero polynomial has no well-defined roots")
    if p.degree < 1:
        raise UndefinedRootsError("roots need degree >= 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    out = []
    for factor, mult in squarefree_decomposition(p):
        # strip zero roots exactly
        zeros = 0
        while factor.coeffs and factor.coeffs[0] == 0:
            factor = UniPoly(factor.coeffs[1:])
            zeros += 1
        out.extend([0j] * (zeros * mult))
        if factor.degree < 1:
            continue
        c = [float(x) for x in reversed(factor.coeffs)]
        zs = aberth(c, tol, max_iter)
        for z in zs:
            z = _polish(c, z)
            if abs(z.imag) <= 1e-14 * max(1.0, abs(z)):
                z = complex(z.real, 0.0)
            out.extend([z] * mult)
    out.sort(key=lambda z: (-abs(z), -z.real, -z.imag))
    return out


def largest_real_root(p, tol=DEFAULT_TOL):
    real = [z.real for z in roots(p, tol) if abs(z.imag) < 1e-9]
    if not real:
        raise UndefinedRootsError("polynomial has no real root")
    return max(real)


def dominant_root(p, tol=DEFAULT_TOL):
    """The root of largest modulus (the first one in :func:`roots` order)."""
    return roots(p, tol)[0]
