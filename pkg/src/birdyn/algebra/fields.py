"""Exact coefficient fields: Q, small cyclotomic fields, and simple number fields.

Rationals are :class:`fractions.Fraction`.  A :class:`NumberField` is
``Q[t]/(m(t))`` for an irreducible monic ``m`` together with a chosen complex
embedding of the generator, which is what lets exact parameters be iterated
numerically.  Elements are stored in the power basis of the generator.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from birdyn.errors import FieldError, IncompatibleFieldError

SUPPORTED_CYCLOTOMIC = (1, 3, 4, 6)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdivmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] -= c * y
        a = _trim(a)
    return q, a


class NumberField:
    """``Q(t)`` with ``t`` a root of the monic irreducible ``minpoly``.

    ``minpoly`` lists coefficients lowest degree first.  ``embedding`` is the
    complex value of ``t`` used for numerics; ``embedding_mp`` optionally holds
    a high-precision (mpmath) value of the same root.
    """

    def __init__(self, minpoly, name="t", embedding=None, embedding_mp=None, order=None):
        m = [Fraction(c) for c in _trim(minpoly)]
        if len(m) < 2:
            raise FieldError("minimal polynomial must have degree >= 1")
        lead = m[-1]
        self.minpoly = tuple(c / lead for c in m)
        self.degree = len(self.minpoly) - 1
        self.name = name
        self.embedding = None if embedding is None else complex(embedding)
        self.embedding_mp = embedding_mp
        self.order = order

    def __repr__(self):
        return f"NumberField({list(map(str, self.minpoly))}, name={self.name!r})"

    @property
    def key(self):
        emb = None if self.embedding is None else (round(self.embedding.real, 9), round(self.embedding.imag, 9))
        return (self.minpoly, emb)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __call__(self, coeffs):
        if isinstance(coeffs, (int, Fraction)):
            coeffs = [coeffs]
        return FieldElement(self, coeffs)

    @property
    def gen(self):
        if self.degree == 1:
            return FieldElement(self, [-self.minpoly[0]])
        return FieldElement(self, [0, 1])

    def reduce(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        d = self.degree
        m = self.minpoly
        for top in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[top]
            if c:
                s = top - d
                for i in range(d):
                    coeffs[s + i] -= c * m[i]
            coeffs[top] = Fraction(0)
        coeffs = coeffs[:d] + [Fraction(0)] * (d - len(coeffs))
        return tuple(coeffs)


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = field.reduce(coeffs)

    @classmethod
    def _raw(cls, field, coeffs):
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise IncompatibleFieldError(f"cannot combine {self.field} with {other.field}")
            return other.coeffs
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement._raw(self.field, tuple(a + b for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement._raw(self.field, tuple(a - b for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement._raw(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement._raw(self.field, self.field.reduce(_pmul(self.coeffs, o)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid on (self, minpoly)
        r0, r1 = list(self.field.minpoly), _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            qs = _pmul(q, s1)
            s2 = [Fraction(0)] * max(len(s0), len(qs))
            for i, v in enumerate(s0):
                s2[i] += v
            for i, v in enumerate(qs):
                s2[i] -= v
            r0, r1 = r1, r
            s0, s1 = s1, _trim(s2)
        c = r1[0]
        return FieldElement(self.field, [v / c for v in s1])

    def __truediv__(self, other):
        if isinstance(other, FieldElement):
            self._coerce(other)
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return FieldElement._raw(self.field, tuple(a / other for a in self.coeffs))
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field.key, self.coeffs))

    def rational(self):
        """Return the element as a Fraction, or None if it is irrational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __complex__(self):
        if self.field.embedding is None:
            raise FieldError(f"{self.field} has no complex embedding")
        z = self.field.embedding
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + float(c)
        return acc

    def to_mp(self):
        """Evaluate at the high-precision embedding (mpmath)."""
        import mpmath

        z = self.field.embedding_mp
        if z is None:
            z = mpmath.mpmathify(self.field.embedding)
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        terms = []
        g = self.field.name
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*{g}")
            else:
                terms.append(f"{c}*{g}^{i}")
        return "(" + " + ".join(terms) + ")" if terms else "0"


def cyclotomic_poly_coeffs(m):
    """Integer coefficients (lowest first) of the m-th cyclotomic polynomial."""
    # (t^m - 1) divided by Phi_d for every proper divisor d of m
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, r = _pdivmod(num, [Fraction(c) for c in cyclotomic_poly_coeffs(d)])
            assert not r
    return [int(c) for c in num]


_CYC_NAMES = {1: "1", 3: "w", 4: "i", 6: "z6"}


@lru_cache(maxsize=None)
def cyclotomic(m):
    """The m-th cyclotomic field for m in {1, 3, 4, 6}, embedded with zeta = exp(2 pi i/m)."""
    if m not in SUPPORTED_CYCLOTOMIC:
        raise FieldError(f"cyclotomic order {m} not supported (use one of {SUPPORTED_CYCLOTOMIC})")
    if m == 1:
        return NumberField([-1, 1], name="1", embedding=1.0, order=1)
    return NumberField(
        cyclotomic_poly_coeffs(m), name=_CYC_NAMES[m], embedding=cmath.exp(2j * cmath.pi / m), order=m
    )


def zeta(m):
    """Primitive m-th root of unity as an exact element."""
    return cyclotomic(m).gen


Cyclotomic = FieldElement


def is_exact(c):
    return isinstance(c, (int, Fraction, FieldElement))


def common_field(coeffs):
    """Return the NumberField shared by ``coeffs``, ``None`` for Q, or ``complex``.

    Raises IncompatibleFieldError when two distinct number fields appear.
    Floats force ``complex`` (exact values promote, never the reverse).
    """
    field = None
    numeric = False
    for c in coeffs:
        if isinstance(c, FieldElement):
            if field is None:
                field = c.field
            elif c.field != field:
                raise IncompatibleFieldError(f"coefficients from {field} and {c.field}")
        elif isinstance(c, (int, Fraction)):
            continue
        elif isinstance(c, (float, complex)):
            numeric = True
        else:
            numeric = True
    if numeric:
        return complex
    return field


def to_complex(c):
    return complex(c)


def coerce_coeff(c):
    """Normalize a user coefficient: ints become Fractions, exact rational field
    elements stay elements, floats stay floats."""
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Rational) and not isinstance(c, Fraction):
        return Fraction(c)
    return c
