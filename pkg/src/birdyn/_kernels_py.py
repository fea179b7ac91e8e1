"""Pure-Python mod-p univariate polynomial kernels.

Polynomials are lists of ints in ``[0, p)``, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.  The compiled module
``birdyn._kernels`` implements exactly the same functions.
"""
import random

BACKEND = "python"


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pack(a, width):
    return int.from_bytes(b"".join(x.to_bytes(width, "little") for x in a), "little")


def mul(a, b, p):
    """Product mod p via Kronecker substitution into one big integer."""
    if not a or not b:
        return []
    if len(a) < 8 or len(b) < 8:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim([v % p for v in out])
    n = min(len(a), len(b))
    bits = 2 * p.bit_length() + n.bit_length() + 1
    width = (bits + 7) // 8
    prod = _pack(a, width) * _pack(b, width)
    m = len(a) + len(b) - 1
    raw = prod.to_bytes(m * width + width, "little")
    out = [int.from_bytes(raw[i * width:(i + 1) * width], "little") % p for i in range(m)]
    return trim(out)


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    return trim(out)


def scale(a, c, p):
    c %= p
    if not c:
        return []
    return [x * c % p for x in a]


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = len(b)
    if len(r) < db:
        return [], r
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(r) - db + 1)
    for s in range(len(r) - db, -1, -1):
        c = r[s + db - 1] * inv % p
        q[s] = c
        if c:
            for i in range(db):
                r[s + i] = (r[s + i] - c * b[i]) % p
    return trim(q), trim(r[: db - 1])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def exact_div(a, b, p):
    q, r = divmod_(a, b, p)
    if r:
        raise ArithmeticError("inexact polynomial division mod p")
    return q


def monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def gcd(a, b, p):
    a = trim(list(a))
    b = trim(list(b))
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def powmod(base, e, mod, p):
    result = [1]
    base = rem(base, mod, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), mod, p)
    return result


def _split(f, p, rng, out):
    # f is monic, squarefree, and a product of distinct linear factors
    if len(f) == 1:
        return
    if len(f) == 2:
        out.append((-f[0]) % p)
        return
    while True:
        c = rng.randrange(p)
        h = powmod([c, 1], (p - 1) // 2, f, p)
        h = add(h, [p - 1], p)
        g = gcd(f, h, p)
        if 1 < len(g) < len(f):
            _split(g, p, rng, out)
            _split(exact_div(f, g, p), p, rng, out)
            return


def roots(f, p, seed=1):
    """Distinct roots of ``f`` in F_p (odd prime p), sorted."""
    f = trim([x % p for x in f])
    if len(f) < 2:
        return []
    f = monic(f, p)
    out = []
    if f[0] == 0:
        out.append(0)
        while f and f[0] == 0:
            f = f[1:]
    xp = powmod([0, 1], p, f, p) if len(f) > 1 else []
    g = gcd(f, add(xp, [0, p - 1], p), p)
    _split(g, p, random.Random(seed), out)
    return sorted(set(out))
