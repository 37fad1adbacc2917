"""Dense complex linear algebra and hermitian matrix functions.

Every matrix function in the library goes through a hermitian
eigendecomposition ``H = V diag(lam) V^+``.  The scalar functions are all
expressed in terms of ``x = sqrt(lam)`` so that, for example,
``B @ herm_fn(B^+ B, "tan_over_x")`` equals ``B tan(sqrt(B^+B)) / sqrt(B^+B)``.

All routines accept stacks of matrices with shape ``(..., N, N)``; this is
what makes the surface quadratures fast enough to run in bulk.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DomainError, NotHermitian, ZeroArgument

HERMITIAN_RTOL = 1e-10
NEGATIVE_CLAMP = 1e-12
SERIES_CUTOFF = 1e-4  # in x = sqrt(lam)


@dataclass(frozen=True)
class HermitianSpectrum:
    """Ascending eigenvalues and the unitary matrix of eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        V = self.eigenvectors
        return (V * self.eigenvalues[..., None, :]) @ dagger(V)


def dagger(A):
    """Conjugate transpose of the last two axes."""
    return np.conj(np.swapaxes(A, -1, -2))


def eye_like(A, size=None):
    size = A.shape[-1] if size is None else size
    return np.broadcast_to(np.eye(size, dtype=complex), A.shape[:-2] + (size, size))


def _frob(A):
    return np.sqrt(np.sum(np.abs(A) ** 2, axis=(-2, -1)))


def check_hermitian(H, rtol=HERMITIAN_RTOL):
    H = np.asarray(H, dtype=complex)
    if H.ndim < 2 or H.shape[-1] != H.shape[-2]:
        raise NotHermitian(f"expected square matrices, got shape {H.shape}")
    skew = _frob(H - dagger(H))
    scale = np.maximum(1.0, _frob(H))
    if np.any(skew > rtol * scale):
        raise NotHermitian(
            f"matrix is not hermitian: ||H - H^+||_F = {np.max(skew):.3e}"
        )
    return 0.5 * (H + dagger(H))


def herm_eig(H):
    """Eigendecomposition of a hermitian matrix (or stack of them).

    Raises NotHermitian when ``H`` is not hermitian to 1e-10 relative, and
    ConvergenceFailure if LAPACK does not converge.
    """
    H = check_hermitian(H)
    try:
        lam, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return HermitianSpectrum(lam, V)


# Each entry: (function of x = sqrt(lam), Taylor coefficients in lam for x ->
# 0 or None, admissible upper bound on x or None).
def _series(coeffs):
    def evaluate(lam):
        out = np.zeros_like(lam)
        for c in reversed(coeffs):
            out = out * lam + c
        return out

    return evaluate


def _safe(fn, x):
    with np.errstate(divide="ignore", invalid="ignore"):
        return fn(x)


_SCALAR_FUNCTIONS = {
    "sqrt": (lambda x: x, None, None),
    "invsqrt": (lambda x: 1.0 / x, None, None),
    "cos": (np.cos, None, None),
    "cosh": (np.cosh, None, None),
    "sinc": (
        lambda x: np.sin(x) / x,
        _series([1.0, -1.0 / 6, 1.0 / 120, -1.0 / 5040]),
        None,
    ),
    "sinch": (
        lambda x: np.sinh(x) / x,
        _series([1.0, 1.0 / 6, 1.0 / 120, 1.0 / 5040]),
        None,
    ),
    "tan_over_x": (
        lambda x: np.tan(x) / x,
        _series([1.0, 1.0 / 3, 2.0 / 15, 17.0 / 315]),
        np.pi / 2,
    ),
    "tanh_over_x": (
        lambda x: np.tanh(x) / x,
        _series([1.0, -1.0 / 3, 2.0 / 15, -17.0 / 315]),
        None,
    ),
    "arctan_over_x": (
        lambda x: np.arctan(x) / x,
        _series([1.0, -1.0 / 3, 1.0 / 5, -1.0 / 7]),
        None,
    ),
    "artanh_over_x": (
        lambda x: np.arctanh(x) / x,
        _series([1.0, 1.0 / 3, 1.0 / 5, 1.0 / 7]),
        1.0,
    ),
}

FUNCTION_TAGS = tuple(_SCALAR_FUNCTIONS)


def scalar_fn(lam, fn):
    """Apply the tagged scalar function to nonnegative eigenvalues ``lam``."""
    try:
        full, series, upper = _SCALAR_FUNCTIONS[fn]
    except KeyError:
        raise ValueError(f"unknown matrix function {fn!r}") from None
    lam = np.asarray(lam, dtype=float)
    x = np.sqrt(lam)
    if upper is not None and np.any(x >= upper):
        raise DomainError(f"{fn}: sqrt(eigenvalue) {np.max(x):.6g} >= {upper:.6g}")
    if fn == "invsqrt" and np.any(lam <= 0):
        raise DomainError("invsqrt of a singular matrix")
    out = _safe(full, x)
    if series is not None:
        small = x < SERIES_CUTOFF
        if np.any(small):
            out = np.where(small, series(lam), out)
    return out


def herm_fn(H, fn):
    """Spectral function ``V f(lam) V^+`` of a hermitian PSD matrix.

    ``fn`` is one of :data:`FUNCTION_TAGS`.  Eigenvalues in ``[-1e-12, 0)``
    are clamped to zero; anything more negative is a DomainError.
    """
    spec = herm_eig(H)
    lam = spec.eigenvalues
    scale = np.maximum(1.0, np.max(np.abs(lam), axis=-1, keepdims=True))
    if np.any(lam < -NEGATIVE_CLAMP * scale):
        raise DomainError(f"{fn}: negative eigenvalue {np.min(lam):.3e}")
    lam = np.clip(lam, 0.0, None)
    V = spec.eigenvectors
    return (V * scalar_fn(lam, fn)[..., None, :]) @ dagger(V)


def det_c(A):
    """Complex determinant via pivoted LU (numpy/LAPACK)."""
    A = np.asarray(A, dtype=complex)
    if A.shape[-1] != A.shape[-2]:
        raise ValueError(f"det_c needs square matrices, got {A.shape}")
    if A.shape[-1] == 1:
        return A[..., 0, 0].copy() if A.ndim > 2 else complex(A[0, 0])
    d = np.linalg.det(A)
    return complex(d) if np.ndim(d) == 0 else d


def principal_arg(z):
    """Argument of ``z`` in ``(-pi, pi]``.

    numpy's ``angle`` already returns ``pi`` (not ``-pi``) for negative reals
    with a positive-zero imaginary part; ``-0.0`` imaginary parts are folded
    onto the same edge.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) < 1e-300):
        raise ZeroArgument("argument of zero is undefined")
    z = np.where(z.imag == 0, z.real + 0j, z)
    a = np.angle(z)
    a = np.where(a <= -np.pi, a + 2 * np.pi, a)
    return float(a) if a.ndim == 0 else a


def spectral_norm(A):
    """Largest singular value."""
    A = np.asarray(A, dtype=complex)
    if A.size == 0:
        return 0.0
    s = np.linalg.norm(A, ord=2, axis=(-2, -1))
    return float(s) if np.ndim(s) == 0 else s


def smallest_singular_value(A):
    s = np.linalg.svd(np.asarray(A, dtype=complex), compute_uv=False)
    out = s[..., -1]
    return float(out) if np.ndim(out) == 0 else out
