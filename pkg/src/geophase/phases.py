"""Reproducing kernel, overlap phases and symplectic areas of geodesic triangles.

Orientation: the closed-form area of the triangle ``(0, Z1, Z2)`` equals
``(eps/2) arg det(1 + eps Z1 Z2^+)``.  For small 1 x 1 triangles this is
``-(1/2) Im(conj(z1) z2)``, i.e. the Kahler form integrated over the
triangle traversed ``0 -> Z2 -> Z1``.  The quadrature below integrates
``omega(dS/ds, dS/dt)`` over the cone ``S(t, s)`` (apex ``t = 0``, base
``s`` running from Z1 to Z2), which is that same orientation, so the two
routes agree without any extra sign.  With this convention the overlap
phase is exactly twice the area (orientation sign ``+1``).
"""

from dataclasses import dataclass

import numpy as np

from . import grassmann as gr
from .errors import DomainError, ZeroArgument
from .matfun import dagger, det_c, principal_arg

ORIENTATION_SIGN = 1
FD_STEP = 1e-5
DEFAULT_ORDER = 32


@dataclass(frozen=True)
class TriangleArea:
    value: float
    method: str
    est_error: float = 0.0


@dataclass(frozen=True)
class Overlap:
    value: complex
    magnitude: float
    phase: float


def _overlap_det(Z1, Z2):
    eps = Z1.spec.epsilon
    return det_c(np.eye(Z1.spec.n) + eps * Z1.Z @ dagger(Z2.Z))


def kernel(Z1, Z2, k=None):
    """``K(Z1, Z2) = det(1 + eps Z1 Z2^+)^(eps k)``, by default with the points' weight.

    Only the determinant has to be nonzero here, so no pair check is made.
    """
    gr._same_space(Z1, Z2)
    k = Z1.spec.weight_k if k is None else k
    d = _overlap_det(Z1, Z2)
    if abs(d) < 1e-300:
        raise ZeroArgument("kernel vanishes")
    value = complex(d ** (Z1.spec.epsilon * int(k)))
    return Overlap(value, abs(value), principal_arg(value))


def normalized_overlap_phase(Z1, Z2, k=None):
    """Phase of the overlap of the normalized coherent vectors.

    The normalizations are real and positive, so this is just the
    argument of the kernel.
    """
    return kernel(Z1, Z2, k).phase


def triangle_area_closed(Z1, Z2):
    """Symplectic area of the geodesic triangle ``(0, Z1, Z2)``.

    ``(eps/4i) log[det(1+eps Z1 Z2^+) / det(1+eps Z2 Z1^+)]`` collapses to
    a single principal argument because the two determinants are complex
    conjugates.
    """
    gr.require_pair(Z1, Z2)
    value = 0.5 * Z1.spec.epsilon * principal_arg(_overlap_det(Z1, Z2))
    return TriangleArea(value, "closed_form")


def _omega(Z, V, W, eps):
    n, m = Z.shape[-2:]
    A = np.linalg.inv(np.eye(m) + eps * dagger(Z) @ Z)
    B = np.linalg.inv(np.eye(n) + eps * Z @ dagger(Z))
    h = np.trace(V @ A @ dagger(W) @ B, axis1=-2, axis2=-1)
    # (i/2)(h(V,W) - h(W,V)) with h(W,V) = conj h(V,W)
    return -h.imag


def omega_at(Z, V, W):
    """Kahler two-form ``(i/2) Tr[dZ (1+eps Z^+Z)^{-1} ^ dZ^+ (1+eps ZZ^+)^{-1}]`` on (V, W)."""
    shape = (Z.spec.n, Z.spec.m)
    V = gr._as_matrix(V, shape, "V")
    W = gr._as_matrix(W, shape, "W")
    eps = Z.spec.epsilon
    n, m = shape
    A = np.linalg.inv(np.eye(m) + eps * dagger(Z.Z) @ Z.Z)
    B = np.linalg.inv(np.eye(n) + eps * Z.Z @ dagger(Z.Z))
    val = 0.5j * np.trace(V @ A @ dagger(W) @ B - W @ A @ dagger(V) @ B)
    if abs(val.imag) > 1e-12 * max(1.0, abs(val)):
        raise DomainError(f"two-form evaluated to a non-real value {val}")
    return float(val.real)


def gauss_legendre01(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def cone_integral(Z1, Z2, eps, order, density=None, h=FD_STEP):
    """Integral of the two-form over the geodesic cone with apex 0 and base Z1 -> Z2.

    ``Z1``, ``Z2`` are raw arrays.  ``density(Z, dS_ds, dS_dt)`` defaults to
    the Kahler form; the rank-one module plugs in its own scalar form.
    """
    density = density or (lambda Z, V, W: _omega(Z, V, W, eps))
    nodes, weights = gauss_legendre01(order)
    s_all = np.concatenate([nodes, nodes + h, nodes - h])
    base = gr._geodesic(Z1, Z2, s_all, eps)
    Bs = gr._z_to_b(base, eps)
    B0, Bp, Bm = Bs[:order], Bs[order : 2 * order], Bs[2 * order :]
    t = nodes[:, None, None, None]
    S = gr._b_to_z(t * B0[None], eps)
    dS_dt = (gr._b_to_z((t + h) * B0[None], eps) - gr._b_to_z((t - h) * B0[None], eps)) / (2 * h)
    dS_ds = (gr._b_to_z(t * Bp[None], eps) - gr._b_to_z(t * Bm[None], eps)) / (2 * h)
    f = density(S, dS_ds, dS_dt)
    return float(weights @ f @ weights)


def triangle_area_quadrature(Z1, Z2, order=DEFAULT_ORDER):
    """Tensor Gauss-Legendre quadrature of the Kahler form over the triangle ``(0, Z1, Z2)``.

    ``est_error`` is the difference from the same rule at half the order.
    """
    gr.require_pair(Z1, Z2)
    if order < 2:
        raise ValueError("order must be at least 2")
    eps = Z1.spec.epsilon
    # the base geodesic is parametrized through a translated radial segment
    gr.z_to_b(gr.GrassmannPoint(Z1.spec, gr._compose(-Z1.Z, Z2.Z, eps)))
    value = cone_integral(Z1.Z, Z2.Z, eps, order)
    coarse = cone_integral(Z1.Z, Z2.Z, eps, max(order // 2, 1))
    return TriangleArea(value, "quadrature", abs(value - coarse))


def metric_length(Z1, Z2, t0, t1, order=16, h=FD_STEP):
    """Length of the geodesic arc ``t0 -> t1`` in the invariant metric ``Re Tr[V A V^+ B]``."""
    eps = Z1.spec.epsilon
    nodes, weights = gauss_legendre01(order)
    t = t0 + (t1 - t0) * nodes
    Z = gr._geodesic(Z1.Z, Z2.Z, t, eps)
    V = (gr._geodesic(Z1.Z, Z2.Z, t + h, eps) - gr._geodesic(Z1.Z, Z2.Z, t - h, eps)) / (2 * h)
    n, m = Z.shape[-2:]
    A = np.linalg.inv(np.eye(m) + eps * dagger(Z) @ Z)
    B = np.linalg.inv(np.eye(n) + eps * Z @ dagger(Z))
    speed = np.sqrt(np.trace(V @ A @ dagger(V) @ B, axis1=-2, axis2=-1).real)
    return float((t1 - t0) * weights @ speed)


def chordal_distance(Z1, Z2):
    """``arccos(|K(Z1,Z2)| / sqrt(K(Z1,Z1) K(Z2,Z2)))`` for the fundamental weight.

    The kernel is positive definite for both signs of eps, so the ratio
    never exceeds one (up to roundoff, which is clamped).
    """
    gr.require_pair(Z1, Z2)
    k12 = kernel(Z1, Z2, 1).magnitude
    k11 = kernel(Z1, Z1, 1).magnitude
    k22 = kernel(Z2, Z2, 1).magnitude
    ratio = min(1.0, max(0.0, k12 / np.sqrt(k11 * k22)))
    return float(np.arccos(ratio))
