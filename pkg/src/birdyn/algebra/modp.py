"""Reduction of exact coefficients to a prime field F_p.

A number field element is sent to F_p by evaluating its power-basis
representation at a root of the (integral) minimal polynomial mod p, which is
reduction modulo a degree-one prime ideal.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from birdyn import kernels
from birdyn.algebra.fields import FieldElement
from birdyn.errors import FieldError

PRIME_CEILING = 2 ** 31 - 1


def is_prime(n):
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def integral_minpoly(field):
    den = lcm(*(c.denominator for c in field.minpoly))
    return [int(c * den) for c in field.minpoly]


class ModpContext:
    """A prime together with one chosen root mod p for each number field."""

    def __init__(self, p, roots=None):
        self.p = p
        self.roots = dict(roots or {})

    def __repr__(self):
        return f"ModpContext(p={self.p}, fields={len(self.roots)})"

    def fp(self, c):
        p = self.p
        if isinstance(c, int):
            return c % p
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise FieldError(f"denominator of {c} vanishes mod {p}")
            return c.numerator * pow(c.denominator, p - 2, p) % p
        if isinstance(c, FieldElement):
            r = self.roots.get(c.field)
            if r is None:
                raise FieldError(f"no root chosen mod {p} for {c.field}")
            acc = 0
            for a in reversed(c.coeffs):
                acc = (acc * r + self.fp(a)) % p
            return acc
        raise FieldError(f"cannot reduce {type(c).__name__} coefficients mod p")


def find_context(fields, start=PRIME_CEILING, skip=0, bad_values=()):
    """Largest prime below ``start`` at which every field has a root.

    ``skip`` discards that many suitable primes first, which gives independent
    runs; ``bad_values`` are rationals that must stay nonzero mod p.
    """
    fields = [f for f in fields if f is not None]
    n = start
    found = 0
    while n > 3:
        n -= 1
        if not is_prime(n):
            continue
        if any(Fraction(v).numerator % n == 0 or Fraction(v).denominator % n == 0 for v in bad_values):
            continue
        roots = {}
        ok = True
        for f in fields:
            m = integral_minpoly(f)
            if m[-1] % n == 0 or any(c.denominator % n == 0 for c in f.minpoly):
                ok = False
                break
            rs = kernels.roots([c % n for c in m], n)
            if not rs:
                ok = False
                break
            roots[f] = rs[0]
        if not ok:
            continue
        if found < skip:
            found += 1
            continue
        return ModpContext(n, roots)
    raise FieldError("no suitable prime found")
