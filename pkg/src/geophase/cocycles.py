"""Multiplicative factors, group 2-cocycles and the automorphy factor.

The product ``sigma(Z1) sigma(Z2)`` of two section matrices lands in
``sigma(Z3) K`` with ``Z3 = sigma(Z1) . Z2``.  Its Gauss decomposition
``[[1, Z'], [0, 1]] diag(alpha, beta) [[1, 0], [Z, 1]]`` yields the phase

    e^{i Phi} = (det alpha / det U)^{-eps},   U = (1 + eps Z3 Z3^+)^{1/2},

which equals ``det[(1 - eps Z1 Z2^+)(1 - eps Z2 Z1^+)^{-1}]^{-eps/2}``.
The Guichardet-Wigner cocycle ``f = arg(v(g1) v(g2) / v(g1 g2)) / 2 pi`` with
``v(g) = det(upper-left block)`` and the Dupont cocycle ``c`` (Kahler area
of the cone over ``g1.o -> g1 g2.o``) satisfy ``f = (eps/pi) c``, and

    e^{i eps Phi} = e^{+2 pi i f}.

Note the sign in the last relation: with ``Phi`` and ``f`` as defined here
both sides equal ``exp(-i arg det(1 - eps Z1 Z2^+))``.  The variant with
``e^{-2 pi i f}`` is reported separately as ``phase_cocycle_conjugate``
and does not hold in general.
"""

from dataclasses import dataclass, field

import numpy as np

from . import grassmann as gr
from . import phases
from .errors import SingularBlock, SingularQ
from .matfun import dagger, det_c, herm_fn, principal_arg

SINGULAR_COND = 1e12


def _eye(k):
    return np.eye(k, dtype=complex)


def _solve_right(X, A):
    """``X A^{-1}``."""
    return dagger(np.linalg.solve(dagger(A), dagger(X)))


@dataclass(frozen=True, eq=False)
class BlockProduct:
    """Blocks of ``sigma(Z1) sigma(Z2)`` and the factors of its Gauss decomposition."""

    M: np.ndarray
    N: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    Zprime: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    Zcomp: np.ndarray

    def assemble(self):
        return np.block([[self.M, self.N], [self.P, self.Q]])

    def gauss_factors(self):
        n, m = self.Zprime.shape
        upper = np.block([[_eye(n), self.Zprime], [np.zeros((m, n)), _eye(m)]])
        diag = np.block([[self.alpha, np.zeros((n, m))], [np.zeros((m, n)), self.beta]])
        lower = np.block([[_eye(n), np.zeros((n, m))], [self.Zcomp, _eye(m)]])
        return upper, diag, lower


def section_product(Z1, Z2):
    """Literal matrix product ``sigma(Z1) sigma(Z2)``."""
    return gr.section(Z1).U @ gr.section(Z2).U


def block_product(Z1, Z2):
    """Closed-form blocks M, N, P, Q of ``sigma(Z1) sigma(Z2)`` and its Gauss factors."""
    gr.require_pair(Z1, Z2)
    s = Z1.spec
    eps, n, m = s.epsilon, s.n, s.m
    X1, X2 = Z1.Z, Z2.Z
    L1 = herm_fn(_eye(n) + eps * X1 @ dagger(X1), "invsqrt")
    L2 = herm_fn(_eye(n) + eps * X2 @ dagger(X2), "invsqrt")
    R1 = herm_fn(_eye(m) + eps * dagger(X1) @ X1, "invsqrt")
    R2 = herm_fn(_eye(m) + eps * dagger(X2) @ X2, "invsqrt")
    M = L1 @ (_eye(n) - eps * X1 @ dagger(X2)) @ L2
    N = L1 @ (X2 + X1) @ R2
    P = -eps * R1 @ dagger(X1 + X2) @ L2
    Q = R1 @ (_eye(m) - eps * dagger(X1) @ X2) @ R2
    if np.linalg.cond(Q) > SINGULAR_COND:
        raise SingularQ("lower-right block of the product is singular")
    Zprime = _solve_right(N, Q)
    Zcomp = np.linalg.solve(Q, P)
    alpha = M - Zprime @ P
    return BlockProduct(M, N, P, Q, Zprime, alpha, Q.copy(), Zcomp)


def gauss_alpha(Z1, Z2):
    """``alpha = (1+eps Z1Z1^+)^{-1/2} Lambda (1+eps Z2Z2^+)^{-1/2}`` with
    ``Lambda = (1+eps Z1Z1^+)(1-eps Z2Z1^+)^{-1}(1+eps Z2Z2^+)``."""
    gr.require_pair(Z1, Z2)
    s = Z1.spec
    eps, n = s.epsilon, s.n
    X1, X2 = Z1.Z, Z2.Z
    H1 = _eye(n) + eps * X1 @ dagger(X1)
    H2 = _eye(n) + eps * X2 @ dagger(X2)
    Lam = H1 @ np.linalg.solve(_eye(n) - eps * X2 @ dagger(X1), H2)
    return herm_fn(H1, "invsqrt") @ Lam @ herm_fn(H2, "invsqrt")


def gauss_u_squared(Z1, Z2):
    """``1 + eps Z3 Z3^+`` expressed through Z1 and Z2 only."""
    gr.require_pair(Z1, Z2)
    s = Z1.spec
    eps, n = s.epsilon, s.n
    X1, X2 = Z1.Z, Z2.Z
    S1 = herm_fn(_eye(n) + eps * X1 @ dagger(X1), "sqrt")
    H2 = _eye(n) + eps * X2 @ dagger(X2)
    inner = np.linalg.solve(_eye(n) - eps * X2 @ dagger(X1), H2)
    inner = _solve_right(inner, _eye(n) - eps * X1 @ dagger(X2))
    W = S1 @ inner @ S1
    return 0.5 * (W + dagger(W))


def gauss_u(Z1, Z2):
    """``U = (1 + eps Z3 Z3^+)^{1/2}``, the upper-left block of the Gauss factor of ``sigma(Z3)``."""
    return herm_fn(gauss_u_squared(Z1, Z2), "sqrt")


def multiplicative_phase(Z1, Z2, k=1):
    """``Phi`` with ``e^{i Phi} = det[(1-eps Z1Z2^+)(1-eps Z2Z1^+)^{-1}]^{-eps k/2}``, in (-pi, pi]."""
    gr.require_pair(Z1, Z2)
    eps = Z1.spec.epsilon
    d = det_c(np.eye(Z1.spec.n) - eps * Z1.Z @ dagger(Z2.Z))
    raw = -eps * int(k) * principal_arg(d)
    return principal_arg(np.exp(1j * raw)) if k != 1 else raw


def gauss_phase(Z1, Z2, k=1):
    """``arg[(det alpha / det U)^{-eps k}]`` from the Gauss-decomposition factors."""
    eps = Z1.spec.epsilon
    ratio = det_c(gauss_alpha(Z1, Z2)) / det_c(gauss_u(Z1, Z2))
    return principal_arg(ratio ** (-eps * int(k)))


def _upper_det(g):
    A = g.blocks()[0]
    d = det_c(A)
    if abs(d) < 1e-12 * max(1.0, np.linalg.norm(A)) ** A.shape[0]:
        raise SingularBlock("upper-left block is singular")
    return d


def gw_cocycle(g1, g2):
    """``f(g1, g2) = arg(v(g1) v(g2) v(g1 g2)^{-1}) / 2 pi`` with ``v(g) = det a``."""
    v12 = _upper_det(g1 @ g2)
    return principal_arg(_upper_det(g1) * _upper_det(g2) / v12) / (2 * np.pi)


def gw_cocycle_points(Z1, Z2):
    """Closed form on sections: ``(1/4 pi i) log[det(1-eps Z2Z1^+) / det(1-eps Z1Z2^+)]``."""
    gr.require_pair(Z1, Z2)
    eps = Z1.spec.epsilon
    d = det_c(np.eye(Z1.spec.n) - eps * Z1.Z @ dagger(Z2.Z))
    return principal_arg(1.0 / d) / (2 * np.pi)


def _cone_base(g1, g2):
    o = gr.GrassmannPoint.origin(g1.spec)
    return gr.act(g1, o), gr.act(g1 @ g2, o)


def dupont_cocycle(g1, g2, order=phases.DEFAULT_ORDER):
    """Kahler area of the geodesic cone with apex ``o`` over ``g1.o -> g1 g2.o`` (quadrature)."""
    a, b = _cone_base(g1, g2)
    return phases.triangle_area_quadrature(a, b, order).value


def dupont_cocycle_closed(g1, g2):
    a, b = _cone_base(g1, g2)
    return phases.triangle_area_closed(a, b).value


def dupont_cocycle_points(Z1, Z2):
    """Closed form on sections: ``(eps/4i) log[det(1-eps Z2Z1^+) / det(1-eps Z1Z2^+)]``."""
    gr.require_pair(Z1, Z2)
    eps = Z1.spec.epsilon
    d = det_c(np.eye(Z1.spec.n) - eps * Z1.Z @ dagger(Z2.Z))
    return -0.5 * eps * principal_arg(d)


def automorphy_J(g, X):
    """``J(g, X) = det(A^+ - eps X B^+)^{-eps}`` for ``g = [[A, B], [C, D]]``."""
    gr._same_space(g, X)
    eps = g.spec.epsilon
    A, B, _, _ = g.blocks()
    T = dagger(A) - eps * X.Z @ dagger(B)
    d = det_c(T)
    if abs(d) < 1e-12 * max(1.0, np.linalg.norm(T)) ** T.shape[0]:
        raise SingularBlock("A^+ - eps X B^+ is singular")
    return complex(d ** (-eps))


def k_part(Z1, Z2):
    """``h = sigma(Z3)^{-1} sigma(Z1) sigma(Z2)``; block diagonal up to roundoff."""
    Z3 = gr.compose_points(Z1, Z2)
    return gr.section(-Z3).U @ section_product(Z1, Z2)


@dataclass(frozen=True)
class CocycleTriple:
    f: float
    c: float
    phi: float
    residuals: dict = field(default_factory=dict)


def cocycle_triple_report(Z1, Z2, order=phases.DEFAULT_ORDER):
    """Phi, f (on sections) and c (quadrature) for one pair, plus the bridge residuals."""
    eps = Z1.spec.epsilon
    phi = multiplicative_phase(Z1, Z2)
    g1, g2 = gr.section(Z1), gr.section(Z2)
    f = gw_cocycle(g1, g2)
    c = dupont_cocycle(g1, g2, order)
    residuals = {
        "phase_cocycle": abs(np.exp(1j * eps * phi) - np.exp(2j * np.pi * f)),
        "phase_cocycle_conjugate": abs(np.exp(1j * eps * phi) - np.exp(-2j * np.pi * f)),
        "dupont": abs(f - eps / np.pi * c),
    }
    return CocycleTriple(f, c, phi, residuals)


@dataclass(frozen=True)
class PhaseReport:
    """Every quantity attached to one pair ``(Z1, Z2)``."""

    area_closed: float
    area_quadrature: float
    quadrature_error: float
    kernel_phase: float
    phi: float
    f: float
    c: float
    residuals: dict = field(default_factory=dict)


def phase_report(Z1, Z2, order=phases.DEFAULT_ORDER):
    eps = Z1.spec.epsilon
    closed = phases.triangle_area_closed(Z1, Z2)
    quad = phases.triangle_area_quadrature(Z1, Z2, order)
    kphase = phases.normalized_overlap_phase(Z1, Z2, 1)
    triple = cocycle_triple_report(Z1, Z2, order)
    c_closed = dupont_cocycle_points(Z1, Z2)
    residuals = {
        "area_quadrature": abs(quad.value - closed.value),
        "phase_area": abs(kphase - 2 * phases.ORIENTATION_SIGN * closed.value),
        "dupont_closed": abs(triple.f - eps / np.pi * c_closed),
        **triple.residuals,
    }
    return PhaseReport(
        closed.value, quad.value, quad.est_error, kphase, triple.phi, triple.f, triple.c, residuals
    )
