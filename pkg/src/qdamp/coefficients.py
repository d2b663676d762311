"""Scalar time-dependent weights entering the factorized propagators.

Two groups of closed-form functions of (model, t):

Hyperbolic group (real, driven by the damping/pumping rates mu, nu):
  scale(t)  = cosh(x) + ((mu+nu)/(mu-nu)) sinh(x),   x = (mu-nu) t / 2
  decay(t)  = (2 mu/(mu-nu)) sinh(x) / scale(t)
  pump(t)   = (2 nu/(mu-nu)) sinh(x) / scale(t)
decay weights the lowering jump exponential, pump the raising one, and
scale**(-n1-n2-1) is the diagonal core of the jump-family factor.  All
three have removable singularities at mu == nu, handled by a short Taylor
branch in x (switched at |x| <= 1e-6, far above the distance where the
direct formulas lose digits).

Phase group (complex, driven by omega and the two-photon rate kappa):
  squeeze_up(t)   = conj(kappa) * h(t)
  phase(t)        = -2i omega t
  squeeze_down(t) = kappa * h(t)
with the kernel h(t) = (exp(-2i omega t) - 1)/(-2i omega).  The kernel is
evaluated as exp(-i omega t) * sin(omega t)/omega, which is the same
function without the subtractive cancellation, plus a Taylor branch
t*(1 - i omega t) at |omega t| <= 1e-9.

Useful facts kept as tested invariants: 0 <= decay, pump < 1 and
scale >= 1 for nonnegative rates and times; squeeze_up(kappa) equals
squeeze_down(conj(kappa)); and the t -> 0 slopes reproduce the generator
weights (mu, nu, -(mu+nu), conj(kappa), -2i omega, kappa respectively).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

HYPERBOLIC_BRANCH_AT = 1e-6   # on x = (mu - nu) t / 2
PHASE_BRANCH_AT = 1e-9        # on omega * t


@dataclass(frozen=True)
class CoefficientSet:
    """All six weights evaluated at one time."""

    t: float
    decay: float
    pump: float
    scale: float
    squeeze_up: complex
    phase: complex
    squeeze_down: complex


def _sinhc(x: float) -> float:
    """sinh(x)/x with a removable singularity at 0."""
    if abs(x) <= HYPERBOLIC_BRANCH_AT:
        x2 = x * x
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    return math.sinh(x) / x


def _cosh(x: float) -> float:
    if abs(x) <= HYPERBOLIC_BRANCH_AT:
        x2 = x * x
        return 1.0 + x2 / 2.0 + x2 * x2 / 24.0
    return math.cosh(x)


def hyperbolic_weights(mu: float, nu: float, t: float) -> tuple[float, float, float]:
    """(decay, pump, scale) at time t; valid on both sides of mu == nu."""
    x = 0.5 * (mu - nu) * t
    s = _sinhc(x)
    scale = _cosh(x) + 0.5 * (mu + nu) * t * s
    return mu * t * s / scale, nu * t * s / scale, scale


def hyperbolic_weights_limit(mu: float, nu: float, t: float) -> tuple[float, float, float]:
    """Forced Taylor-branch evaluation, exposed for seam-continuity tests."""
    x = 0.5 * (mu - nu) * t
    x2 = x * x
    s = 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    c = 1.0 + x2 / 2.0 + x2 * x2 / 24.0
    scale = c + 0.5 * (mu + nu) * t * s
    return mu * t * s / scale, nu * t * s / scale, scale


def phase_kernel(omega: float, t: float) -> complex:
    """(exp(-2i omega t) - 1)/(-2i omega), cancellation-free."""
    w = omega * t
    if abs(w) <= PHASE_BRANCH_AT:
        return t * (1.0 - 1j * w)
    return cmath.exp(-1j * w) * math.sin(w) / omega


def phase_kernel_limit(omega: float, t: float) -> complex:
    """Forced small-frequency branch, exposed for seam-continuity tests."""
    return t * (1.0 - 1j * omega * t)


def eval_coefficients(params, t: float) -> CoefficientSet:
    """Evaluate all six weights for a model at time t >= 0."""
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise ValueError(f"t must be finite and >= 0, got {t}")
    decay, pump, scale = hyperbolic_weights(params.mu, params.nu, t)
    kernel = phase_kernel(params.omega, t)
    kappa = complex(params.kappa)
    return CoefficientSet(
        t=t,
        decay=decay,
        pump=pump,
        scale=scale,
        squeeze_up=kappa.conjugate() * kernel,
        phase=-2j * params.omega * t,
        squeeze_down=kappa * kernel,
    )
