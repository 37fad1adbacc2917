"""Rank-one models: the sphere SU(2)/U(1), the disc SU(1,1)/U(1) and the plane.

The sphere and the disc are the 1 x 1 Grassmannians with eps = +1 and -1.
Their coherent-state overlaps are ``(1 + z conj(z'))^{2j}`` and
``(1 - z conj(z'))^{-2k}``, and the phases

    sphere: phi = j arg(1 + z conj(z'))
    disc:   phi = -k arg(1 - z conj(z'))
    plane:  phi = Im(z conj(z'))

are ``2 * weight * area`` of the geodesic triangle ``(0, z, z')`` (weight 1
for the plane).  Note ``phi`` is half the argument of the overlap itself.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import grassmann as gr
from . import phases
from .errors import DomainError, ValidationError
from .matfun import principal_arg

SPACES = ("sphere", "disc", "plane")


@dataclass(frozen=True)
class RankOnePoint:
    z: complex
    space: str
    weight: float = 0.5

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValidationError(f"unknown space {self.space!r}")
        z = complex(self.z)
        object.__setattr__(self, "z", z)
        if not np.isfinite(z):
            raise ValidationError("z must be finite")
        if self.space == "plane":
            return
        twice = Fraction(self.weight).limit_denominator(1000) * 2
        if twice.denominator != 1 or abs(float(twice) - 2 * self.weight) > 1e-12:
            raise ValidationError(f"weight must be a half-integer, got {self.weight}")
        if self.space == "sphere" and self.weight <= 0:
            raise ValidationError("sphere weight j must be positive")
        if self.space == "disc":
            if self.weight < 1:
                raise ValidationError("disc weight k must be at least 1")
            if abs(z) >= 1:
                raise DomainError(f"|z| = {abs(z)} is outside the disc")

    @property
    def epsilon(self):
        return {"sphere": 1, "disc": -1}[self.space]

    def as_grassmann(self):
        """The same point on the 1 x 1 Grassmannian, with kernel weight ``2 * weight``."""
        spec = gr.ManifoldSpec(1, 1, self.epsilon, int(round(2 * self.weight)))
        return gr.GrassmannPoint(spec, np.array([[self.z]]))


def _check_pair(p, q):
    if p.space != q.space or p.weight != q.weight:
        raise ValidationError("points must live on the same space with the same weight")


def rank1_phase(p, q):
    _check_pair(p, q)
    w = p.z * np.conj(q.z)
    if p.space == "sphere":
        return p.weight * principal_arg(1 + w)
    if p.space == "disc":
        return -p.weight * principal_arg(1 - w)
    return float(w.imag)


def shoelace_area(points):
    """Signed area of a polygon, positive for counter-clockwise vertices."""
    x = np.array([pt.real for pt in points])
    y = np.array([pt.imag for pt in points])
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _scalar_density(eps):
    # omega = (i/2) dz ^ dzbar / (1 + eps |z|^2)^2 = dx ^ dy / (1 + eps |z|^2)^2
    def density(Z, V, W):
        z, v, w = Z[..., 0, 0], V[..., 0, 0], W[..., 0, 0]
        jac = v.real * w.imag - v.imag * w.real
        return jac / (1 + eps * np.abs(z) ** 2) ** 2

    return density


def rank1_area(p, q, order=32):
    """Symplectic area of the geodesic triangle ``(0, p, q)`` (no weight factor).

    Same orientation as the Grassmann areas: positive when ``0 -> q -> p``
    runs counter-clockwise.  The plane uses the shoelace formula.
    """
    _check_pair(p, q)
    if order < 4:
        raise ValueError("order must be at least 4")
    if p.space == "plane":
        return -shoelace_area([0j, p.z, q.z])
    a, b = p.as_grassmann(), q.as_grassmann()
    gr.require_pair(a, b)
    eps = p.epsilon
    return phases.cone_integral(a.Z, b.Z, eps, order, density=_scalar_density(eps))


def weight_scale(p):
    return 1.0 if p.space == "plane" else p.weight
