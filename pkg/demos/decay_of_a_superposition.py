"""Damp a coherent state and watch its diagnostics settle.

A coherent state under pure photon loss stays coherent with a shrinking
amplitude, so its mean occupation follows |alpha|^2 e^{-mu t} exactly.
That closed form makes this a good first-contact script: every number
printed below has a known target.
"""

import math

import numpy as np

from qdamp import ModelParams, coherent_state, propagate

ALPHA = 1.2
MU = 0.5
DIM = 24          # |alpha|^2 = 1.44, so 24 levels leave a deep tail margin
TIMES = (0.0, 0.4, 0.8, 1.6, 2.4)


def run() -> bool:
    model = ModelParams(omega=1.0, mu=MU, nu=0.0, kappa=0.0, dim=DIM)
    rho0 = coherent_state(DIM, ALPHA)
    print(f"coherent |alpha|^2 = {ALPHA ** 2:.4f}, loss rate mu = {MU}, dim = {DIM}")
    print(f"{'t':>5} {'mean_n':>12} {'target':>12} {'purity':>10} "
          f"{'|trace-1|':>10} {'tail':>9}")
    worst = 0.0
    for t in TIMES:
        d = propagate(model, rho0, t, method="factorized").diagnostics
        target = ALPHA ** 2 * math.exp(-MU * t)
        worst = max(worst, abs(d.mean_n - target))
        print(f"{t:5.2f} {d.mean_n:12.8f} {target:12.8f} {d.purity:10.6f} "
              f"{abs(d.trace - 1.0):10.2e} {d.tail_mass:9.2e}")
    ok = worst <= 1e-10
    print(f"\nworst |mean_n - target| = {worst:.2e} (bar 1e-10)")
    print("PASS" if ok else "FAIL")
    return ok


if __name__ == "__main__":
    raise SystemExit(0 if run() else 1)
