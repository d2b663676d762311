"""Truncated Fock-space operators and standard oscillator states.

The annihilation operator carries an optional global phase: its only
nonzero entries sit on the superdiagonal, a[k, k+1] = exp(i*theta)*sqrt(k+1).
Truncation to dimension d makes a nilpotent (a**d == 0), which is what lets
the factorized propagators terminate their series exactly.

The price of truncation is one corner artifact: a @ a.conj().T equals
number + identity only on rows/columns 0..d-2; the commutator [a, a+]
picks up -d at entry (d-1, d-1).  Downstream modules handle that edge with
interior projections rather than pretending it is not there.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .linalg import as_complex_matrix


@dataclass(frozen=True)
class FockOperators:
    """Annihilation/creation/number/identity matrices at one truncation."""

    dim: int
    theta: float
    a: np.ndarray
    a_dag: np.ndarray
    n_op: np.ndarray
    identity: np.ndarray


def build_fock_ops(dim: int, theta: float = 0.0) -> FockOperators:
    """Construct the truncated ladder operators at dimension dim >= 2."""
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise ValueError(f"dim must be an integer >= 2, got {dim!r}")
    theta = float(theta)
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    a = np.zeros((dim, dim), dtype=np.complex128)
    for k in range(dim - 1):
        a[k, k + 1] = np.exp(1j * theta) * np.sqrt(k + 1.0)
    a_dag = a.conj().T.copy()
    n_op = a_dag @ a
    # a_dag @ a is diag(0..dim-1) exactly; rebuild it as a clean diagonal so
    # later grading arguments see integer entries with no roundoff dust.
    n_op = np.diag(np.arange(dim, dtype=np.float64)).astype(np.complex128)
    identity = np.eye(dim, dtype=np.complex128)
    return FockOperators(dim=int(dim), theta=theta, a=a, a_dag=a_dag,
                         n_op=n_op, identity=identity)


def fock_state(dim: int, n: int) -> np.ndarray:
    """Density matrix of the number state |n><n|."""
    if not (0 <= n < dim):
        raise ValueError(f"level n={n} outside 0..{dim - 1}")
    rho = np.zeros((dim, dim), dtype=np.complex128)
    rho[n, n] = 1.0
    return rho


def coherent_state(dim: int, alpha: complex) -> np.ndarray:
    """Truncated coherent state |alpha><alpha|, renormalized to trace one.

    Renormalization keeps the state a valid density matrix at any
    truncation; for |alpha|**2 well below dim the correction is tiny.
    """
    alpha = complex(alpha)
    if not (np.isfinite(alpha.real) and np.isfinite(alpha.imag)):
        raise ValueError("alpha must be finite")
    # recurrence instead of alpha**n / sqrt(n!): factorials overflow floats
    # near n = 170 and plain integers leave int64 already at n = 21
    psi = np.empty(dim, dtype=np.complex128)
    psi[0] = 1.0
    for n in range(1, dim):
        psi[n] = psi[n - 1] * alpha / np.sqrt(n)
    norm2 = float(np.vdot(psi, psi).real)
    if norm2 <= 0.0:
        raise ValueError("coherent state underflowed to zero at this truncation")
    rho = np.outer(psi, psi.conj()) / norm2
    return as_complex_matrix(rho, "coherent state")


def thermal_state(dim: int, nbar: float) -> np.ndarray:
    """Truncated thermal state with mean occupation nbar >= 0, renormalized."""
    nbar = float(nbar)
    if not np.isfinite(nbar) or nbar < 0.0:
        raise ValueError(f"nbar must be finite and >= 0, got {nbar}")
    if nbar == 0.0:
        return fock_state(dim, 0)
    ratio = nbar / (1.0 + nbar)
    weights = ratio ** np.arange(dim)
    weights = weights / weights.sum()
    return np.diag(weights).astype(np.complex128)
