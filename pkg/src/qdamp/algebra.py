"""Superoperator generator families and their commutation checks.

The damped-oscillator generator decomposes over twelve d^2 x d^2 matrices
falling into four families, each closed under commutation in the
untruncated limit:

  jump family     su(1,1): two-sided jump maps  X -> a+ X a,  X -> a X a+,
                  with jump_z the symmetrized number map.
  pair family     su(2): joint two-sided raising/lowering  X -> a+ X a+,
                  X -> a X a.
  sym family      su(1,1): anticommutator halves of the two-photon terms,
                  X -> ((a+)^2 X + X (a+)^2)/2 and its lowering partner.
  squeeze family  the differences pair - sym; its raising and lowering
                  members commute with each other, which is what makes the
                  two-photon part of the evolution factorizable in closed
                  form.

pair_z, sym_z and squeeze_z are one and the same matrix (kept as three
fields because each family is used independently).

Truncation breaks a few of the relations at the highest Fock levels, in a
completely localized way.  Every generator moves each of the two slot
indices by at most 2, so conjugating a residual with interior_projector at
margin 2 removes exactly the affected entries; verify_algebra reports the
projected residuals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fock import FockOperators
from .linalg import frobenius_norm, kron
from .vectorize import sandwich_superop


@dataclass(frozen=True)
class SuperOpGenerators:
    """Twelve d^2 x d^2 generator matrices over one Fock truncation."""

    dim: int
    jump_z: np.ndarray
    jump_plus: np.ndarray
    jump_minus: np.ndarray
    pair_z: np.ndarray
    pair_plus: np.ndarray
    pair_minus: np.ndarray
    sym_z: np.ndarray
    sym_plus: np.ndarray
    sym_minus: np.ndarray
    squeeze_z: np.ndarray
    squeeze_plus: np.ndarray
    squeeze_minus: np.ndarray


def build_generators(ops: FockOperators) -> SuperOpGenerators:
    a, a_dag, n_op, one = ops.a, ops.a_dag, ops.n_op, ops.identity
    a2 = a @ a
    ad2 = a_dag @ a_dag

    jump_z = 0.5 * (kron(n_op, one) + kron(one, n_op.T) + kron(one, one))
    jump_plus = sandwich_superop(a_dag, a)
    jump_minus = sandwich_superop(a, a_dag)

    pair_z = 0.5 * (kron(n_op, one) - kron(one, n_op.T))
    pair_plus = sandwich_superop(a_dag, a_dag)
    pair_minus = sandwich_superop(a, a)

    sym_plus = 0.5 * (kron(ad2, one) + kron(one, ad2.T))
    sym_minus = 0.5 * (kron(a2, one) + kron(one, a2.T))

    return SuperOpGenerators(
        dim=ops.dim,
        jump_z=jump_z, jump_plus=jump_plus, jump_minus=jump_minus,
        pair_z=pair_z, pair_plus=pair_plus, pair_minus=pair_minus,
        sym_z=pair_z.copy(), sym_plus=sym_plus, sym_minus=sym_minus,
        squeeze_z=pair_z.copy(),
        squeeze_plus=pair_plus - sym_plus,
        squeeze_minus=pair_minus - sym_minus,
    )


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"commutator needs equal square matrices, got {a.shape}, {b.shape}")
    return a @ b - b @ a


def interior_mask(dim: int, margin: int) -> np.ndarray:
    """Boolean mask over flat slots keeping n1 <= dim-1-margin and n2 likewise.

    margin >= dim yields an empty interior (all False); that degenerate case
    is legal and simply means no slot survives projection.
    """
    if not isinstance(margin, (int, np.integer)) or margin < 0:
        raise ValueError(f"margin must be an integer >= 0, got {margin!r}")
    keep = np.arange(dim) <= dim - 1 - margin
    return np.kron(keep, keep).astype(bool)


def interior_projector(dim: int, margin: int) -> np.ndarray:
    """Diagonal 0/1 projector onto slots at least margin levels below the edge."""
    mask = interior_mask(dim, margin)
    return np.diag(mask.astype(np.complex128))


def projected_residual(delta: np.ndarray, dim: int, margin: int) -> float:
    """Frobenius norm of P @ delta @ P without materializing P."""
    mask = interior_mask(dim, margin)
    sub = np.asarray(delta)[np.ix_(mask, mask)]
    return float(np.linalg.norm(sub)) if sub.size else 0.0


@dataclass(frozen=True)
class IdentityResidual:
    label: str
    residual: float


@dataclass(frozen=True)
class AlgebraReport:
    dim: int
    margin: int
    empty_interior: bool
    entries: list[IdentityResidual] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max((e.residual for e in self.entries), default=0.0)

    def all_within(self, tol: float) -> bool:
        return self.max_residual <= tol

    def to_text(self, tol: float = 1e-12) -> str:
        lines = [f"dim: {self.dim}", f"margin: {self.margin}"]
        if self.empty_interior:
            lines.append("note: interior is empty at this margin; residuals are trivially zero")
        for e in self.entries:
            lines.append(f"{e.label}: {e.residual:.3e}")
        lines.append(f"max_residual: {self.max_residual:.3e}")
        lines.append(f"verdict: {'PASS' if self.all_within(tol) else 'FAIL'} (threshold {tol:.1e})")
        return "\n".join(lines)


def _identity_table(gen: SuperOpGenerators, ops: FockOperators):
    """All commutation identities with their closed-form right-hand sides.

    The z <-> raising/lowering relations inside each family hold with the
    familiar signs; the two su(1,1) families close with [plus, minus] =
    -2 z, the su(2) pair family with +2 z, and the squeeze pair commutes.
    Cross-family brackets either vanish or land on explicit sandwich
    combinations, listed last.
    """
    g = gen
    a, a_dag, one = ops.a, ops.a_dag, ops.identity
    a2 = a @ a
    ad2 = a_dag @ a_dag
    zero = np.zeros_like(g.jump_z)

    ad_x_ad = sandwich_superop(a_dag, a_dag)   # X -> a+ X a+
    a_x_a = sandwich_superop(a, a)             # X -> a X a
    ad2_left = kron(ad2, one)                  # X -> (a+)^2 X
    ad2_right = kron(one, ad2.T)               # X -> X (a+)^2
    a2_left = kron(a2, one)                    # X -> a^2 X
    a2_right = kron(one, a2.T)                 # X -> X a^2

    return [
        ("[jump_z, jump_plus] - jump_plus",
         commutator(g.jump_z, g.jump_plus) - g.jump_plus),
        ("[jump_z, jump_minus] + jump_minus",
         commutator(g.jump_z, g.jump_minus) + g.jump_minus),
        ("[jump_plus, jump_minus] + 2 jump_z",
         commutator(g.jump_plus, g.jump_minus) + 2.0 * g.jump_z),
        ("[pair_z, pair_plus] - pair_plus",
         commutator(g.pair_z, g.pair_plus) - g.pair_plus),
        ("[pair_z, pair_minus] + pair_minus",
         commutator(g.pair_z, g.pair_minus) + g.pair_minus),
        ("[pair_plus, pair_minus] - 2 pair_z",
         commutator(g.pair_plus, g.pair_minus) - 2.0 * g.pair_z),
        ("[sym_z, sym_plus] - sym_plus",
         commutator(g.sym_z, g.sym_plus) - g.sym_plus),
        ("[sym_z, sym_minus] + sym_minus",
         commutator(g.sym_z, g.sym_minus) + g.sym_minus),
        ("[sym_plus, sym_minus] + 2 sym_z",
         commutator(g.sym_plus, g.sym_minus) + 2.0 * g.sym_z),
        ("[squeeze_z, squeeze_plus] - squeeze_plus",
         commutator(g.squeeze_z, g.squeeze_plus) - g.squeeze_plus),
        ("[squeeze_z, squeeze_minus] + squeeze_minus",
         commutator(g.squeeze_z, g.squeeze_minus) + g.squeeze_minus),
        ("[squeeze_plus, squeeze_minus]",
         commutator(g.squeeze_plus, g.squeeze_minus) - zero),
        ("[pair_plus, sym_plus]",
         commutator(g.pair_plus, g.sym_plus) - zero),
        ("[pair_minus, sym_minus]",
         commutator(g.pair_minus, g.sym_minus) - zero),
        ("[squeeze_z, jump_z]",
         commutator(g.squeeze_z, g.jump_z) - zero),
        ("[squeeze_z, jump_plus]",
         commutator(g.squeeze_z, g.jump_plus) - zero),
        ("[squeeze_z, jump_minus]",
         commutator(g.squeeze_z, g.jump_minus) - zero),
        ("[jump_z, squeeze_plus] + (ad2_left - ad2_right)/2",
         commutator(g.jump_z, g.squeeze_plus) + 0.5 * (ad2_left - ad2_right)),
        ("[jump_z, squeeze_minus] - (a2_left - a2_right)/2",
         commutator(g.jump_z, g.squeeze_minus) - 0.5 * (a2_left - a2_right)),
        ("[jump_plus, squeeze_plus] - (ad_x_ad - ad2_left)",
         commutator(g.jump_plus, g.squeeze_plus) - (ad_x_ad - ad2_left)),
        ("[jump_plus, squeeze_minus] - (a_x_a - a2_right)",
         commutator(g.jump_plus, g.squeeze_minus) - (a_x_a - a2_right)),
        ("[jump_minus, squeeze_plus] - (ad2_right - ad_x_ad)",
         commutator(g.jump_minus, g.squeeze_plus) - (ad2_right - ad_x_ad)),
        ("[jump_minus, squeeze_minus] - (a2_left - a_x_a)",
         commutator(g.jump_minus, g.squeeze_minus) - (a2_left - a_x_a)),
    ]


def verify_algebra(ops_or_gen, margin: int = 2) -> AlgebraReport:
    """Interior-projected residual for every commutation identity.

    Accepts either FockOperators (generators are built on the fly) or an
    existing SuperOpGenerators.  The residual for each identity is the
    Frobenius norm of P (computed - expected) P with P the interior
    projector at the given margin; margin 2 is enough to remove every
    truncation artifact because no generator moves a slot index by more
    than 2.
    """
    if isinstance(ops_or_gen, SuperOpGenerators):
        from .fock import build_fock_ops
        gen = ops_or_gen
        # Rebuild matching fock ops for the right-hand sides; theta affects
        # individual generators but not the identity residuals, and the
        # generators themselves fix only dim.  To stay faithful we recover
        # theta from the first superdiagonal of pair_minus when possible.
        ops = build_fock_ops(gen.dim, _infer_theta(gen))
    else:
        ops = ops_or_gen
        gen = build_generators(ops)
    d = gen.dim
    empty = margin >= d
    entries = [IdentityResidual(label, projected_residual(delta, d, margin))
               for label, delta in _identity_table(gen, ops)]
    return AlgebraReport(dim=d, margin=int(margin), empty_interior=empty,
                         entries=entries)


def _infer_theta(gen: SuperOpGenerators) -> float:
    # pair_minus maps slot (0,1) -> (1,0) with amplitude exp(2i theta);
    # in flat row-major indexing that is entry [1, dim].
    entry = gen.pair_minus[1, gen.dim]
    if abs(entry) < 0.5:  # pragma: no cover - malformed generator set
        return 0.0
    return float(np.angle(entry) / 2.0)


def theta_scaling_check(dim: int, theta: float) -> dict[str, float]:
    """How each raising generator transforms under the ladder phase.

    jump_plus is phase-free; pair_plus and sym_plus pick up exp(-2i theta).
    Returns the Frobenius deviations from those laws (useful as a seeded
    sanity check; all values should be at roundoff).
    """
    from .fock import build_fock_ops
    g0 = build_generators(build_fock_ops(dim, 0.0))
    gt = build_generators(build_fock_ops(dim, theta))
    ph = np.exp(-2j * theta)
    return {
        "jump_plus": frobenius_norm(gt.jump_plus - g0.jump_plus),
        "pair_plus": frobenius_norm(gt.pair_plus - ph * g0.pair_plus),
        "sym_plus": frobenius_norm(gt.sym_plus - ph * g0.sym_plus),
    }
