"""Dense complex Hermitian linear algebra primitives."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionOverflow, NotHermitian, NotPsd, NumericalFailure, ValidationError

# Largest dimension any operation may construct; keeps tensor-power
# sweeps at desk scale.  Overridable per call via dim_cap arguments.
DIM_CAP = 4096

# Relative threshold below which eigenvalues count as kernel of a PSD matrix.
KERNEL_TOL = 1e-12

_HERM_TOL = 1e-8
_PSD_TOL = 1e-10


def as_operator(a) -> np.ndarray:
    """Coerce to a square complex128 matrix with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValidationError("matrix dimension must be >= 1")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValidationError("matrix entries must be finite (no NaN/Inf)")
    return m


def frob(a: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def hermitize(a: np.ndarray) -> np.ndarray:
    """Hermitian part (A + A†)/2."""
    return (a + a.conj().T) / 2


def _check_hermitian(a: np.ndarray) -> np.ndarray:
    dev = frob(a - a.conj().T)
    if dev > _HERM_TOL * max(1.0, frob(a)):
        raise NotHermitian(f"|A - A†|_F = {dev:.3e} exceeds tolerance")
    return a


class HermitianEigenSystem(NamedTuple):
    """Eigenvalues ascending, eigenvectors as orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def herm_eig(a) -> HermitianEigenSystem:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    m = _check_hermitian(as_operator(a))
    try:
        vals, vecs = np.linalg.eigh(hermitize(m))
    except np.linalg.LinAlgError as err:
        raise NumericalFailure(f"eigendecomposition failed: {err}") from err
    return HermitianEigenSystem(vals, vecs)


def _psd_eig(a) -> HermitianEigenSystem:
    vals, vecs = herm_eig(a)
    bound = _PSD_TOL * max(np.abs(vals[0]), np.abs(vals[-1]))
    if vals[0] < -bound:
        raise NotPsd(f"minimum eigenvalue {vals[0]:.3e} below -{bound:.3e}")
    return HermitianEigenSystem(np.maximum(vals, 0.0), vecs)


def psd_sqrt(a) -> np.ndarray:
    """Hermitian PSD square root; eigenvalues within -1e-10·|A| are clamped to 0."""
    vals, vecs = _psd_eig(a)
    return hermitize((vecs * np.sqrt(vals)) @ vecs.conj().T)


def inv_sqrt_on_support(a, kernel_tol: float = KERNEL_TOL) -> np.ndarray:
    """Pseudo-inverse square root: λ ≤ kernel_tol·λ_max map to 0, others to λ^(-1/2)."""
    if kernel_tol <= 0:
        raise ValidationError("kernel_tol must be > 0")
    vals, vecs = _psd_eig(a)
    lam_max = vals[-1]
    inv = np.zeros_like(vals)
    keep = vals > kernel_tol * lam_max
    inv[keep] = vals[keep] ** -0.5
    return hermitize((vecs * inv) @ vecs.conj().T)


def support_projector(a, kernel_tol: float = KERNEL_TOL) -> np.ndarray:
    """Orthogonal projector onto the support (range) of a PSD matrix."""
    if kernel_tol <= 0:
        raise ValidationError("kernel_tol must be > 0")
    vals, vecs = _psd_eig(a)
    keep = vals > kernel_tol * vals[-1]
    v = vecs[:, keep]
    return hermitize(v @ v.conj().T)


def trace_norm(a) -> float:
    """Sum of singular values."""
    m = as_operator(a)
    try:
        sv = np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as err:
        raise NumericalFailure(f"singular value decomposition failed: {err}") from err
    return float(np.sum(sv))


def kron(a, b, dim_cap: int = DIM_CAP) -> np.ndarray:
    """Kronecker product with A's index major; errors past dim_cap."""
    ma, mb = as_operator(a), as_operator(b)
    out_dim = ma.shape[0] * mb.shape[0]
    if out_dim > dim_cap:
        raise DimensionOverflow(
            f"kron result dimension {out_dim} exceeds cap {dim_cap}"
        )
    return np.kron(ma, mb)
