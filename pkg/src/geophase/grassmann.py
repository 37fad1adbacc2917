"""Points, charts, group elements and geodesics on the complex Grassmannian.

``epsilon = +1`` is the compact manifold SU(n+m)/S(U(n)xU(m)) in the big-cell
chart; ``epsilon = -1`` is its noncompact dual SU(n,m)/S(U(n)xU(m)) realized
as the matrix ball ``||Z|| < 1``.  Points carry n x m matrices of
Pontryagin coordinates; group elements are (n+m) x (n+m) matrices ``U``
with ``U^+ I U = I`` for ``I = diag(epsilon*1_n, 1_m)`` and ``det U = 1``.

The public functions take and return the dataclasses below.  The
underscore-prefixed array kernels work on raw (possibly stacked) numpy
arrays and are what the quadrature code calls in bulk.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    ChartEscape,
    ChartOverflow,
    DomainError,
    PairInvalid,
    ShapeMismatch,
    ValidationError,
)
from .matfun import dagger, det_c, herm_fn, smallest_singular_value, spectral_norm

BALL_MARGIN = 1e-9
PAIR_SV_FLOOR = 1e-8
ACTION_COND_MAX = 1e12
GROUP_TOL = 1e-10


@dataclass(frozen=True)
class ManifoldSpec:
    n: int
    m: int
    epsilon: int = -1
    weight_k: int = 1

    def __post_init__(self):
        if int(self.n) != self.n or int(self.m) != self.m or self.n < 1 or self.m < 1:
            raise ValidationError(f"n, m must be positive integers, got {self.n}, {self.m}")
        if self.epsilon not in (1, -1):
            raise ValidationError(f"epsilon must be +1 or -1, got {self.epsilon}")
        if int(self.weight_k) != self.weight_k or self.weight_k < 1:
            raise ValidationError(f"weight_k must be a positive integer, got {self.weight_k}")

    @property
    def compact(self):
        return self.epsilon == 1

    @property
    def size(self):
        return self.n + self.m

    def metric_signature(self):
        """The matrix ``I_nm(epsilon) = diag(epsilon*1_n, 1_m)``."""
        return np.diag([self.epsilon] * self.n + [1] * self.m).astype(complex)

    def with_weight(self, k):
        return ManifoldSpec(self.n, self.m, self.epsilon, k)


def _as_matrix(A, shape, what):
    A = np.array(A, dtype=complex)
    if A.ndim == 0 and shape == (1, 1):
        A = A.reshape(1, 1)
    if A.shape != shape:
        raise ShapeMismatch(f"{what} must have shape {shape}, got {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError(f"{what} has non-finite entries")
    return A


@dataclass(frozen=True, eq=False)
class GrassmannPoint:
    """Pontryagin coordinates ``Z`` of a point in the chart around the origin."""

    spec: ManifoldSpec
    Z: np.ndarray

    def __post_init__(self):
        Z = _as_matrix(self.Z, (self.spec.n, self.spec.m), "Z")
        Z.setflags(write=False)
        object.__setattr__(self, "Z", Z)
        if self.spec.epsilon == -1 and spectral_norm(Z) >= 1 - BALL_MARGIN:
            raise DomainError(f"point outside the unit ball: ||Z|| = {spectral_norm(Z):.12g}")

    @classmethod
    def origin(cls, spec):
        return cls(spec, np.zeros((spec.n, spec.m), dtype=complex))

    def __neg__(self):
        return GrassmannPoint(self.spec, -self.Z)

    def __repr__(self):
        return f"GrassmannPoint(eps={self.spec.epsilon:+d}, Z={self.Z.tolist()!r})"


@dataclass(frozen=True, eq=False)
class TangentParam:
    """Parameter ``B`` of the point ``exp([[0, B], [-eps B^+, 0]]) o``."""

    spec: ManifoldSpec
    B: np.ndarray

    def __post_init__(self):
        B = _as_matrix(self.B, (self.spec.n, self.spec.m), "B")
        B.setflags(write=False)
        object.__setattr__(self, "B", B)
        if self.spec.epsilon == 1 and spectral_norm(B) >= np.pi / 2 - BALL_MARGIN:
            raise ChartOverflow(
                f"||B|| = {spectral_norm(B):.12g} reaches the cut locus at pi/2"
            )

    def scaled(self, t):
        return TangentParam(self.spec, t * self.B)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of SU(n+m) (eps=+1) or SU(n,m) (eps=-1)."""

    spec: ManifoldSpec
    U: np.ndarray

    def __post_init__(self):
        N = self.spec.size
        U = _as_matrix(self.U, (N, N), "U")
        U.setflags(write=False)
        object.__setattr__(self, "U", U)
        I = self.spec.metric_signature()
        defect = np.linalg.norm(dagger(U) @ I @ U - I)
        if defect > GROUP_TOL * max(1.0, np.linalg.norm(U) ** 2):
            raise ValidationError(f"U^+ I U != I (defect {defect:.3e})")
        if abs(det_c(U) - 1) > GROUP_TOL * max(1.0, np.linalg.norm(U) ** N):
            raise ValidationError(f"det U = {det_c(U)} != 1")

    @classmethod
    def identity(cls, spec):
        return cls(spec, np.eye(spec.size, dtype=complex))

    def blocks(self):
        """The blocks ``(A, B, C, D)`` with A n x n and D m x m."""
        n = self.spec.n
        U = self.U
        return U[:n, :n], U[:n, n:], U[n:, :n], U[n:, n:]

    def inverse(self):
        I = self.spec.metric_signature()
        return GroupElement(self.spec, I @ dagger(self.U) @ I)

    def __matmul__(self, other):
        if other.spec.n != self.spec.n or other.spec.m != self.spec.m or other.spec.epsilon != self.spec.epsilon:
            raise ShapeMismatch("group elements from different groups")
        return GroupElement(self.spec, self.U @ other.U)


def _same_space(p, q):
    a, b = p.spec, q.spec
    if (a.n, a.m, a.epsilon) != (b.n, b.m, b.epsilon):
        raise ShapeMismatch(f"points live on different manifolds: {a} vs {b}")


# -- array kernels ---------------------------------------------------------


def _eye(k):
    return np.eye(k, dtype=complex)


def _b_to_z(B, eps):
    fn = "tan_over_x" if eps == 1 else "tanh_over_x"
    return B @ herm_fn(dagger(B) @ B, fn)


def _z_to_b(Z, eps):
    fn = "arctan_over_x" if eps == 1 else "artanh_over_x"
    return herm_fn(Z @ dagger(Z), fn) @ Z


def _section(Z, eps):
    n, m = Z.shape[-2:]
    left = herm_fn(_eye(n) + eps * Z @ dagger(Z), "invsqrt")
    right = herm_fn(_eye(m) + eps * dagger(Z) @ Z, "invsqrt")
    top = np.concatenate([left, Z @ right], axis=-1)
    bottom = np.concatenate([-eps * right @ dagger(Z), right], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def _act(U, Z):
    n = Z.shape[-2]
    A, B, C, D = U[..., :n, :n], U[..., :n, n:], U[..., n:, :n], U[..., n:, n:]
    den = C @ Z + D
    cond = np.linalg.cond(den)
    if np.any(~np.isfinite(cond)) or np.any(cond > ACTION_COND_MAX):
        raise ChartEscape("CZ + D is numerically singular")
    # (AZ + B) den^{-1} == solve(den^+, (AZ + B)^+)^+
    return dagger(np.linalg.solve(dagger(den), dagger(A @ Z + B)))


def _compose(Z1, Z2, eps):
    n, m = Z1.shape[-2:]
    left = herm_fn(_eye(n) + eps * Z1 @ dagger(Z1), "invsqrt")
    right = herm_fn(_eye(m) + eps * dagger(Z1) @ Z1, "sqrt")
    mid = _eye(m) - eps * dagger(Z1) @ Z2
    # (Z1 + Z2) mid^{-1} right
    X = dagger(np.linalg.solve(dagger(mid), dagger(Z1 + Z2)))
    return left @ X @ right


def _geodesic(Z1, Z2, t, eps):
    """Geodesic through Z1 (t=0) and Z2 (t=1); ``t`` may be an array."""
    B = _z_to_b(_compose(-Z1, Z2, eps), eps)
    t = np.asarray(t, dtype=float)
    tB = t[..., None, None] * B
    return _compose(np.broadcast_to(Z1, tB.shape), _b_to_z(tB, eps), eps)


# -- public API ------------------------------------------------------------


def b_to_z(B):
    """Pontryagin coordinates ``Z = B ta(sqrt(B^+B)) / sqrt(B^+B)``."""
    eps = B.spec.epsilon
    if eps == 1 and spectral_norm(B.B) >= np.pi / 2 - BALL_MARGIN:
        raise ChartOverflow("tangent parameter outside the injectivity chart")
    return GrassmannPoint(B.spec, _b_to_z(B.B, eps))


def z_to_b(Z):
    """Inverse of :func:`b_to_z`: ``B = arcta(sqrt(ZZ^+)) / sqrt(ZZ^+) Z``."""
    eps = Z.spec.epsilon
    if eps == -1 and spectral_norm(Z.Z) >= 1:
        raise DomainError("artanh needs ||Z|| < 1")
    return TangentParam(Z.spec, _z_to_b(Z.Z, eps))


def section(Z):
    """The group element ``sigma(Z)`` with ``sigma(Z) . o = Z`` and ``sigma(o) = e``."""
    return GroupElement(Z.spec, _section(Z.Z, Z.spec.epsilon))


def act(g, Z):
    """Linear fractional action ``(AZ + B)(CZ + D)^{-1}``."""
    _same_space(g, Z)
    return GrassmannPoint(Z.spec, _act(g.U, Z.Z))


def pair_valid(Z1, Z2):
    """True iff ``1 - eps Z1^+ Z2`` and ``1 + eps Z1 Z2^+`` are safely invertible."""
    _same_space(Z1, Z2)
    s = Z1.spec
    eps = s.epsilon
    a = np.eye(s.m) - eps * dagger(Z1.Z) @ Z2.Z
    b = np.eye(s.n) + eps * Z1.Z @ dagger(Z2.Z)
    return bool(
        smallest_singular_value(a) > PAIR_SV_FLOOR
        and smallest_singular_value(b) > PAIR_SV_FLOOR
    )


def require_pair(Z1, Z2):
    if not pair_valid(Z1, Z2):
        raise PairInvalid("pair is too close to the cut locus of the chart")


def compose_points(Z1, Z2):
    """``Z3 = sigma(Z1) . Z2`` in closed form."""
    require_pair(Z1, Z2)
    return GrassmannPoint(Z1.spec, _compose(Z1.Z, Z2.Z, Z1.spec.epsilon))


def geodesic_from_origin(B, t):
    return b_to_z(B.scaled(t))


def geodesic(Z1, Z2, t):
    """Point at parameter ``t`` on the geodesic from ``Z1`` to ``Z2``.

    Implemented by translating ``Z1`` to the origin with ``sigma(-Z1)``,
    following the radial geodesic and translating back.
    """
    require_pair(Z1, Z2)
    eps = Z1.spec.epsilon
    W = GrassmannPoint(Z1.spec, _compose(-Z1.Z, Z2.Z, eps))
    X = geodesic_from_origin(z_to_b(W), t)
    return GrassmannPoint(Z1.spec, _compose(Z1.Z, X.Z, eps))


def random_group_element(spec, seed):
    """Seeded element of SU(n+m) (Haar, via QR) or SU(n,m) (exp of a Lie algebra element)."""
    rng = np.random.default_rng(seed)
    N = spec.size
    G = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    if spec.epsilon == 1:
        Q, R = np.linalg.qr(G)
        d = np.diag(R)
        U = Q * (d / np.abs(d))
    else:
        n = spec.n
        A = 0.5 * (G[:n, :n] - dagger(G[:n, :n]))
        D = 0.5 * (G[n:, n:] - dagger(G[n:, n:]))
        B = G[:n, n:]
        X = np.block([[A, B], [dagger(B), D]])
        X -= np.trace(X) / N * np.eye(N)
        X /= np.linalg.norm(X)
        U = scipy.linalg.expm(X)
    U = U / det_c(U) ** (1.0 / N)
    return GroupElement(spec, U)


def random_point(spec, rng, max_norm=0.7):
    """Gaussian matrix rescaled to a spectral norm drawn uniformly in (0, max_norm]."""
    Z = rng.normal(size=(spec.n, spec.m)) + 1j * rng.normal(size=(spec.n, spec.m))
    r = max_norm * (1.0 - rng.uniform())
    return GrassmannPoint(spec, Z * (r / spectral_norm(Z)))
