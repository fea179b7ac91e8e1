"""Pullback actions on the Picard lattice of point blow-ups of P^k.

Basis convention: ``H`` first, then the exceptional classes of each blown-up
orbit, orbit by orbit, each orbit listed landing point first.  For an orbit
``L_j = p_{j,0} -> p_{j,1} -> ... -> p_{j,m_j-1} = e_{sigma_j}`` the length
``m_j`` counts points, so the vertex ``e_{sigma_j}`` is the last one.  Matrix
columns are the images of basis vectors.
"""
from __future__ import annotations

from dataclasses import dataclass

from birdyn.algebra.matrix import IntMatrix, char_poly, spectral_radius
from birdyn.errors import InvalidParameterError, ValidationError


@dataclass(frozen=True)
class PicardClass:
    """Integer coefficients in the basis H, E_1, ..., E_N."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @property
    def N(self):
        return len(self.coefficients) - 1

    def dot(self, other, form):
        return form.pair(self.coefficients, other.coefficients)


@dataclass(frozen=True)
class LorentzForm:
    """Diagonal form diag(h, -1, ..., -1) on Z^(1,N); h = 1 for surfaces."""

    dim: int
    h_square: int = 1

    def matrix(self):
        return IntMatrix.diag([self.h_square] + [-1] * (self.dim - 1))

    def pair(self, u, v):
        return self.h_square * u[0] * v[0] - sum(a * b for a, b in zip(u[1:], v[1:]))


@dataclass(frozen=True)
class OrbitData:
    """Orbit lengths (point counts) and landing permutation for L o J type maps."""

    k: int
    lengths: tuple
    sigma: tuple

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(int(m) for m in self.lengths))
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        self.validate()

    def validate(self):
        if self.k < 2:
            raise ValidationError("orbit data needs k >= 2")
        if len(self.lengths) != self.k + 1:
            raise ValidationError(f"lengths must have k+1 = {self.k + 1} entries")
        if len(self.sigma) != self.k + 1:
            raise ValidationError(f"sigma must have k+1 = {self.k + 1} entries")
        if any(m < 1 for m in self.lengths):
            raise ValidationError("orbit lengths must be >= 1")
        if sorted(self.sigma) != list(range(self.k + 1)):
            raise ValidationError(f"sigma {self.sigma} is not a permutation of 0..{self.k}")

    @property
    def N(self):
        return sum(self.lengths)

    def is_cyclic(self):
        """True when sigma is a single (k+1)-cycle."""
        seen, j = set(), 0
        while j not in seen:
            seen.add(j)
            j = self.sigma[j]
        return len(seen) == self.k + 1

    def to_json(self):
        return {"k": self.k, "lengths": list(self.lengths), "sigma": list(self.sigma)}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(int(data["k"]), tuple(data["lengths"]), tuple(data["sigma"]))
        except KeyError as exc:
            raise ValidationError(f"orbit data is missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class PullbackMatrix:
    matrix: IntMatrix
    labels: tuple

    @property
    def size(self):
        return self.matrix.rows

    def char_poly(self):
        return char_poly(self.matrix)

    def spectral_radius(self, tol=1e-12):
        return spectral_radius(self.matrix, tol)

    def __matmul__(self, other):
        return PullbackMatrix(self.matrix @ other.matrix, self.labels)

    def __pow__(self, e):
        return PullbackMatrix(self.matrix ** e, self.labels)

    def tolist(self):
        return self.matrix.tolist()

    def __eq__(self, other):
        if isinstance(other, PullbackMatrix):
            return self.matrix == other.matrix
        if isinstance(other, IntMatrix):
            return self.matrix == other
        return NotImplemented

    def __hash__(self):
        return hash(self.matrix)


def orbit_basis(data):
    """Index of each orbit point (j, i) in the basis, plus the labels."""
    idx = {}
    labels = ["H"]
    n = 1
    for j, m in enumerate(data.lengths):
        for i in range(m - 1, -1, -1):
            idx[(j, i)] = n
            labels.append(f"E{j}.{i}")
            n += 1
    return idx, tuple(labels)


def orbit_data_pullback(data):
    """Pullback matrix of a map realizing ``data``.

    H -> kH - (k-1) * (sum of the k+1 endpoint classes); each orbit class goes
    to the class of the previous orbit point; the class over the orbit start
    L_j goes to the strict transform of the exceptional hyperplane, which is
    H minus the endpoint classes at the k vertices it contains.
    """
    if not isinstance(data, OrbitData):
        data = OrbitData(*data)
    k = data.k
    idx, labels = orbit_basis(data)
    n = len(labels)
    m = [[0] * n for _ in range(n)]
    end = {data.sigma[j]: idx[(j, data.lengths[j] - 1)] for j in range(k + 1)}
    m[0][0] = k
    for v in range(k + 1):
        m[end[v]][0] = -(k - 1)
    for j, length in enumerate(data.lengths):
        for i in range(1, length):
            m[idx[(j, i - 1)]][idx[(j, i)]] = 1
        c = idx[(j, 0)]
        m[0][c] = 1
        for v in range(k + 1):
            if v != j:
                m[end[v]][c] -= 1
    return PullbackMatrix(IntMatrix(m), labels)


def cremona_pullback(k):
    """Action of the Cremona involution on the blow-up of P^k at its k+1 vertices."""
    if k < 2:
        raise ValidationError("cremona_pullback needs k >= 2")
    n = k + 2
    m = [[0] * n for _ in range(n)]
    m[0][0] = k
    for j in range(1, n):
        m[j][0] = -(k - 1)
        m[0][j] = 1
        for i in range(1, n):
            if i != j:
                m[i][j] = -1
    labels = ("H",) + tuple(f"E{j}" for j in range(k + 1))
    return PullbackMatrix(IntMatrix(m), labels)


def is_isometry(m, q=None):
    """True iff M^T Q M = Q exactly."""
    mat = m.matrix if isinstance(m, PullbackMatrix) else IntMatrix(m) if not isinstance(m, IntMatrix) else m
    if q is None:
        q = LorentzForm(mat.rows)
    if q.dim != mat.rows:
        raise ValidationError("form and matrix dimensions differ")
    Q = q.matrix()
    return mat.T @ Q @ mat == Q


def _reflection(alpha, Q):
    n = len(alpha)
    qa = Q @ alpha
    return IntMatrix([[int(i == j) + alpha[i] * qa[j] for j in range(n)] for i in range(n)])


def coxeter_roots(p, r):
    """Simple roots of P^(p-1) blown up at r points, in sweep order.

    Order: the p-tail E1-E2, ..., E(p-1)-Ep, then the node Ep-E(p+1), then
    H - E1 - ... - Ep, then the remaining tail.  The form is
    diag(p-2, -1, ..., -1), for which every root has square -2.
    """
    n = r + 1
    chain = []
    for i in range(1, r):
        a = [0] * n
        a[i], a[i + 1] = 1, -1
        chain.append(tuple(a))
    a0 = [0] * n
    a0[0] = 1
    for i in range(1, p + 1):
        a0[i] = -1
    head = chain[: p - 1]
    node = chain[p - 1: p]
    tail = chain[p:]
    return head + node + [tuple(a0)] + tail


def _tdiagram_cartan(arms):
    """Cartan matrix of the T-shaped diagram with the given arm node counts (center shared)."""
    a, b, c = arms
    nodes = 1 + (a - 1) + (b - 1) + (c - 1)
    edges = []
    nxt = 1
    for length in (a, b, c):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    A = [[2 if i == j else 0 for j in range(nodes)] for i in range(nodes)]
    for i, j in edges:
        A[i][j] = A[j][i] = -1
    return A


def coxeter_element(p, q, r, order=None, realization="auto"):
    """Coxeter element of W(p, q, r) as an integer matrix.

    The diagram is T-shaped with arms of p, q and r - p nodes (center
    shared), so r counts blown-up points.  ``realization="picard"`` (the
    default for q = 2) acts on the Picard lattice of P^(p-1) blown up at r
    points, giving an (r+1)x(r+1) matrix.  ``realization="root"`` (the
    default for q > 2) acts on the root lattice of the diagram; both have the
    same spectral radius.  ``order`` permutes the default reflection order.
    """
    if min(p, q, r) < 2:
        raise InvalidParameterError("p, q, r must all be >= 2")
    if realization == "auto":
        realization = "picard" if q == 2 else "root"
    if realization == "picard":
        if q != 2:
            raise InvalidParameterError("the Picard realization is implemented for q = 2 only")
        if r < p:
            raise InvalidParameterError("the Picard realization needs r >= p points")
        Q = LorentzForm(r + 1, p - 2).matrix()
        roots = coxeter_roots(p, r)
        if order is not None:
            roots = [roots[i] for i in order]
        m = IntMatrix.identity(r + 1)
        for a in roots:
            m = m @ _reflection(a, Q)
        labels = ("H",) + tuple(f"E{i}" for i in range(1, r + 1))
        return PullbackMatrix(m, labels)
    if realization != "root":
        raise InvalidParameterError(f"unknown realization {realization!r}")
    if r - p < 1:
        raise InvalidParameterError("the root realization needs r > p")
    A = _tdiagram_cartan((p, q, r - p))
    n = len(A)
    if order is None:
        # same sweep as the Picard case: p-tail toward the node, node, q-tail, r-tail
        pt = list(range(p - 1, 0, -1))
        qt = list(range(p, p + q - 1))
        rt = list(range(p + q - 1, n))
        seq = pt + [0] + qt + rt
    else:
        seq = list(order)
    m = IntMatrix.identity(n)
    for i in seq:
        s = [[int(a == b) for b in range(n)] for a in range(n)]
        for j in range(n):
            s[i][j] -= A[i][j]
        m = m @ IntMatrix(s)
    return PullbackMatrix(m, tuple(f"a{i}" for i in range(n)))


def delta1_from_lattice(m, tol=1e-12):
    """First dynamical degree as the spectral radius of the pullback."""
    mat = m.matrix if isinstance(m, PullbackMatrix) else m
    return spectral_radius(mat, tol)


def quadratic_family_data(N):
    """Orbit data with two immediate landings and one orbit of N+1 points."""
    return OrbitData(2, (1, 1, N + 1), (1, 2, 0))


def chi_polynomial(N):
    """t^(N+1) (t^3 - t - 1) + t^3 + t^2 - 1."""
    from birdyn.algebra.unipoly import UniPoly

    t = UniPoly([0, 1])
    return t ** (N + 1) * (t ** 3 - t - 1) + t ** 3 + t ** 2 - 1
