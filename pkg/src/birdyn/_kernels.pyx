# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p univariate polynomial kernels.

Same contract as ``birdyn._kernels_py``: lists of ints in ``[0, p)``, lowest
degree first, no trailing zeros.  The prime must satisfy ``p < 2**31`` so a
product of two residues fits in 64 bits.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t, int64_t
import random

BACKEND = "cython"

ctypedef uint64_t u64


cdef inline u64 _inv(u64 a, u64 p):
    cdef u64 result = 1, base = a % p, e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


cdef u64* _load(list a, Py_ssize_t n) except NULL:
    cdef u64* buf = <u64*> malloc((n if n > 0 else 1) * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <u64> a[i]
    return buf


cdef list _store(u64* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


cdef Py_ssize_t _trimlen(u64* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return n


def _check_prime(p):
    if p >= 2 ** 31 or p < 3:
        raise ValueError("compiled kernels need 3 <= p < 2**31")


def trim(a):
    while a and a[len(a) - 1] == 0:
        a.pop()
    return a


cdef Py_ssize_t _mul(u64* a, Py_ssize_t na, u64* b, Py_ssize_t nb, u64* out, u64 p):
    cdef Py_ssize_t i, j, m = na + nb - 1
    cdef u64 x
    for i in range(m):
        out[i] = 0
    for i in range(na):
        x = a[i]
        if x:
            for j in range(nb):
                out[i + j] = (out[i + j] + x * b[j]) % p
    return _trimlen(out, m)


def mul(list a, list b, p):
    if not a or not b:
        return []
    _check_prime(p)
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef u64* x = _load(a, na)
    cdef u64* y = _load(b, nb)
    cdef u64* out = <u64*> malloc((na + nb - 1) * sizeof(u64))
    cdef Py_ssize_t m
    try:
        m = _mul(x, na, y, nb, out, p)
        return _store(out, m)
    finally:
        free(x)
        free(y)
        free(out)


def add(list a, list b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] = (out[i] + b[i]) % p
    return trim(out)


def scale(list a, c, p):
    c %= p
    if not c:
        return []
    return [x * c % p for x in a]


cdef Py_ssize_t _rem(u64* r, Py_ssize_t nr, u64* b, Py_ssize_t nb, u64* q, u64 p):
    # in place: r becomes the remainder; q (if not NULL) receives the quotient
    cdef u64 inv = _inv(b[nb - 1], p)
    cdef Py_ssize_t s, i
    cdef u64 c
    if nr < nb:
        return nr
    for s in range(nr - nb, -1, -1):
        c = r[s + nb - 1] * inv % p
        if q != NULL:
            q[s] = c
        if c:
            c = p - c
            for i in range(nb):
                r[s + i] = (r[s + i] + c * b[i]) % p
    return _trimlen(r, nb - 1)


def divmod_(list a, list b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    _check_prime(p)
    cdef Py_ssize_t na = len(a), nb = len(b), nq
    if na < nb:
        return [], list(a)
    nq = na - nb + 1
    cdef u64* r = _load(a, na)
    cdef u64* y = _load(b, nb)
    cdef u64* q = <u64*> malloc(nq * sizeof(u64))
    cdef Py_ssize_t nrem
    try:
        nrem = _rem(r, na, y, nb, q, p)
        return _store(q, nq), _store(r, nrem)
    finally:
        free(r)
        free(y)
        free(q)


def rem(list a, list b, p):
    return divmod_(a, b, p)[1]


def exact_div(list a, list b, p):
    q, r = divmod_(a, b, p)
    if r:
        raise ArithmeticError("inexact polynomial division mod p")
    return q


def monic(list a, p):
    if not a:
        return a
    inv = pow(a[len(a) - 1], p - 2, p)
    return [x * inv % p for x in a]


def gcd(list a, list b, p):
    _check_prime(p)
    a = trim(list(a))
    b = trim(list(b))
    if not b:
        return monic(a, p)
    if not a:
        return monic(b, p)
    cdef Py_ssize_t na = len(a), nb = len(b), nt
    cdef u64* x = _load(a, na)
    cdef u64* y = _load(b, nb)
    cdef u64* t
    try:
        if na < nb:
            x, y = y, x
            na, nb = nb, na
        while nb > 0:
            na = _rem(x, na, y, nb, NULL, p)
            t = x
            x = y
            y = t
            nt = na
            na = nb
            nb = nt
        return monic(_store(x, na), p)
    finally:
        free(x)
        free(y)


cdef Py_ssize_t _mulmod(u64* a, Py_ssize_t na, u64* b, Py_ssize_t nb, u64* m, Py_ssize_t nm,
                        u64* out, u64 p):
    cdef Py_ssize_t n
    if na == 0 or nb == 0:
        return 0
    n = _mul(a, na, b, nb, out, p)
    return _rem(out, n, m, nm, NULL, p)


def powmod(list base, e, list mod, p):
    _check_prime(p)
    cdef Py_ssize_t nm = len(mod)
    if nm == 0:
        raise ZeroDivisionError("modulus is the zero polynomial")
    cdef Py_ssize_t cap = 2 * nm + 2
    cdef u64* m = _load(mod, nm)
    cdef u64* res = <u64*> malloc(cap * sizeof(u64))
    cdef u64* bs = <u64*> malloc(cap * sizeof(u64))
    cdef u64* tmp = <u64*> malloc(cap * sizeof(u64))
    cdef u64* sw
    cdef Py_ssize_t nres = 1, nbs, ntmp, i
    try:
        res[0] = 1
        base = rem(base, mod, p)
        nbs = len(base)
        for i in range(nbs):
            bs[i] = base[i]
        if nm == 1:
            return []
        while e:
            if e & 1:
                ntmp = _mulmod(res, nres, bs, nbs, m, nm, tmp, p)
                sw = res
                res = tmp
                tmp = sw
                nres = ntmp
            e >>= 1
            if e:
                ntmp = _mulmod(bs, nbs, bs, nbs, m, nm, tmp, p)
                sw = bs
                bs = tmp
                tmp = sw
                nbs = ntmp
        return _store(res, nres)
    finally:
        free(m)
        free(res)
        free(bs)
        free(tmp)


def _split(list f, p, rng, list out):
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


def roots(list f, p, seed=1):
    f = trim([x % p for x in f])
    if len(f) < 2:
        return []
    f = monic(f, p)
    out = []
    if f[0] == 0:
        out.append(0)
        while f and f[0] == 0:
            f = f[1:]
    if len(f) > 1:
        xp = powmod([0, 1], p, f, p)
        g = gcd(f, add(xp, [0, p - 1], p), p)
        _split(g, p, random.Random(seed), out)
    return sorted(set(out))
