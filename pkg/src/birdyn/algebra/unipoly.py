"""Dense univariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


def _norm(c):
    c = [x if isinstance(x, Fraction) else Fraction(x) for x in c]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UniPoly:
    """Polynomial in one variable, coefficients stored lowest degree first.

    Coefficients are Fractions internally; :meth:`int_coeffs` returns plain
    ints when the polynomial is integral.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _norm(coeffs)

    @classmethod
    def monomial(cls, n, c=1):
        return cls([0] * n + [c])

    @classmethod
    def from_roots_int(cls, roots):
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _norm([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = UniPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [Fraction(0)] * max(len(r) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        db = len(other.coeffs)
        while len(r) >= db:
            c = r[-1] / lead
            s = len(r) - db
            q[s] = c
            for i, b in enumerate(other.coeffs):
                r[s + i] -= c * b
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if not isinstance(x, (float, complex)) else float(c))
        return acc

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if not self.coeffs:
            return self
        return UniPoly([c / self.coeffs[-1] for c in self.coeffs])

    def primitive(self):
        """Integer primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return UniPoly([v // g for v in ints])

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self):
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def float_coeffs(self):
        return [float(c) for c in self.coeffs]

    def reciprocal(self):
        """Coefficient reversal t^deg p(1/t)."""
        return UniPoly(list(reversed(self.coeffs)))

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.format("t")

    def format(self, var="t"):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mon = var if i == 1 else f"{var}^{i}"
                body = mon if a == 1 else f"{a}*{mon}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _lift(x):
    return x if isinstance(x, UniPoly) else UniPoly([x])


def poly_gcd(a, b):
    """Monic gcd over Q."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p):
    """Yun's algorithm: list of (factor, multiplicity) with monic squarefree factors."""
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        if a.degree >= 1:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """The m-th cyclotomic polynomial, integer coefficients."""
    num = UniPoly([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            num = num // cyclotomic_poly(d)
    return num


def _euler_phi(m):
    return sum(1 for i in range(1, m + 1) if gcd(i, m) == 1)


def cyclotomic_factors(p):
    """Split an integer polynomial into its cyclotomic part and the rest.

    Returns ``(factors, rest)`` where ``factors`` lists ``(m, multiplicity)``.
    Only orders whose degree phi(m) fits are tried, so this terminates.
    """
    rest = p
    factors = []
    deg = p.degree
    # phi(m) <= deg implies m <= 2 deg^2 (crude but safe for small degrees)
    bound = max(2, 2 * deg * deg + 2)
    for m in range(1, bound + 1):
        if _euler_phi(m) > rest.degree:
            continue
        phi = cyclotomic_poly(m)
        mult = 0
        while rest.degree >= phi.degree:
            q, r = divmod(rest, phi)
            if not r.is_zero():
                break
            rest = q
            mult += 1
        if mult:
            factors.append((m, mult))
    return factors, rest


def strip_cyclotomic(p):
    """Remove every cyclotomic factor; returns the primitive non-cyclotomic part."""
    _, rest = cyclotomic_factors(p)
    return rest.primitive() if rest.degree >= 0 else rest


def lehmer_polynomial():
    """The degree-10 Salem polynomial whose largest root is about 1.17628."""
    return UniPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
