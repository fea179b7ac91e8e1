"""Exact integer matrices and characteristic polynomials."""
from __future__ import annotations

from fractions import Fraction

from birdyn.algebra.unipoly import UniPoly
from birdyn.errors import DimensionError


class IntMatrix:
    """Immutable rectangular matrix of Python ints (rationals are tolerated)."""

    __slots__ = ("rows", "_data")

    def __init__(self, rows):
        data = tuple(tuple(int(x) if isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) else x
                           for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionError("matrix dimensions must be positive")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DimensionError("matrix rows have unequal length")
        self._data = data
        self.rows = len(data)

    @property
    def cols(self):
        return len(self._data[0])

    @property
    def shape(self):
        return (self.rows, self.cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def tolist(self):
        return [list(r) for r in self._data]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(r[j] for r in self._data)

    @property
    def T(self):
        return IntMatrix(list(zip(*self._data)))

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self._data == other._data
        return NotImplemented

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"

    def __add__(self, other):
        self._same_shape(other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other):
        self._same_shape(other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self._data])

    def scale(self, c):
        return IntMatrix([[c * a for a in r] for r in self._data])

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._data))
            return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._data])
        vec = list(other)
        if len(vec) != self.cols:
            raise DimensionError("vector length does not match matrix")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._data)

    def __pow__(self, e):
        self.require_square()
        result = IntMatrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def require_square(self):
        if self.rows != self.cols:
            raise DimensionError(f"matrix is {self.rows}x{self.cols}, not square")

    def is_identity(self):
        return self == IntMatrix.identity(self.rows) if self.rows == self.cols else False

    def det(self):
        """Bareiss fraction-free determinant."""
        self.require_square()
        n = self.rows
        a = [list(r) for r in self._data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                    a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def inverse(self):
        """Exact inverse over Q as a list of Fraction rows."""
        self.require_square()
        n = self.rows
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._data)]
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for i in range(n):
                if i != c and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return [r[n:] for r in a]

    def integer_inverse(self):
        inv = self.inverse()
        if any(x.denominator != 1 for r in inv for x in r):
            raise ValueError("inverse is not integral")
        return IntMatrix([[int(x) for x in r] for r in inv])


def field_inverse(rows):
    """Gauss-Jordan inverse for rows over any field (Fraction, FieldElement, complex)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    a = [[Fraction(x) if isinstance(x, int) else x for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        piv = max(range(c, n), key=lambda i: abs(complex(a[i][c])))
        if a[piv][c] == 0:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def as_matrix(m):
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def char_poly(m):
    """Exact det(tI - m) by Hessenberg reduction over Q.

    The result has integer coefficients whenever ``m`` is integral.
    """
    m = as_matrix(m)
    m.require_square()
    n = m.rows
    h = [[Fraction(x) for x in r] for r in m.tolist()]
    # similarity reduction to upper Hessenberg form
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if h[i][c] != 0), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[c + 1], h[piv] = h[piv], h[c + 1]
            for r in h:
                r[c + 1], r[piv] = r[piv], r[c + 1]
        p = h[c + 1][c]
        for i in range(c + 2, n):
            f = h[i][c] / p
            if f:
                h[i] = [x - f * y for x, y in zip(h[i], h[c + 1])]
                for r in h:
                    r[c + 1] += f * r[i]
    # recurrence on leading principal blocks
    polys = [UniPoly([1])]
    for k in range(1, n + 1):
        pk = UniPoly([-h[k - 1][k - 1], 1]) * polys[k - 1]
        prod = Fraction(1)
        for i in range(1, k):
            prod *= h[k - i][k - i - 1]
            if not prod:
                break
            pk = pk - UniPoly([prod * h[k - i - 1][k - 1]]) * polys[k - i - 1]
        polys.append(pk)
    return polys[n]


def poly_at_matrix(p, m):
    """Evaluate the polynomial ``p`` at the square matrix ``m`` (Horner)."""
    m = as_matrix(m)
    n = m.rows
    acc = IntMatrix([[0] * n for _ in range(n)])
    for c in reversed(p.coeffs):
        cc = int(c) if c.denominator == 1 else c
        acc = acc @ m + IntMatrix.identity(n).scale(cc)
    return acc


def spectral_radius(m, tol=1e-12):
    """Largest eigenvalue modulus, from the exact characteristic polynomial."""
    from birdyn.algebra.roots import roots

    rts = roots(char_poly(m), tol)
    return max(abs(z) for z in rts)
