"""Dense complex linear-algebra kernel used by every other module.

Everything here operates on plain numpy arrays with dtype complex128 in
C (row-major) order.  That layout choice is load-bearing: the vectorization
module identifies reshape(-1) with stacking matrix rows, and all Kronecker
identities downstream assume it.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg


class NumericalError(RuntimeError):
    """A matrix routine could not produce a trustworthy result."""


def as_complex_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce user input to a finite 2-d complex128 array."""
    out = np.ascontiguousarray(m, dtype=np.complex128)
    if out.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise NumericalError(f"{name} contains NaN or Inf entries")
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with an explicit shape check."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch for product: {a.shape} @ {b.shape}")
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, row-major block convention."""
    return np.kron(np.asarray(a), np.asarray(b))


def expm(m: np.ndarray) -> np.ndarray:
    """Matrix exponential of a square matrix (scaling-and-squaring Pade)."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expm needs a square matrix, got shape {m.shape}")
    out = scipy.linalg.expm(m)
    if not np.all(np.isfinite(out)):
        raise NumericalError("expm produced non-finite entries (overflow?)")
    return out


def hermitian_eigenvalues(m: np.ndarray, with_vectors: bool = False):
    """Eigenvalues of the Hermitian part of m, ascending.

    The input is symmetrized as (m + m')/2 first; callers that care about
    the skew part measure it separately (diagnostics never repair states
    silently, they record the residual).
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"eigensolve needs a square matrix, got shape {m.shape}")
    h = 0.5 * (m + m.conj().T)
    try:
        if with_vectors:
            w, v = np.linalg.eigh(h)
            return w, v
        return np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalError(f"hermitian eigensolve failed: {exc}") from exc


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def frobenius_distance(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"distance needs equal shapes, got {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def trace(a: np.ndarray) -> complex:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"trace needs a square matrix, got shape {a.shape}")
    return complex(np.trace(a))
