"""Measure how fast the factorized propagator converges to the exact one.

With the two-photon rate switched on, the jump part and the phase part of
the generator stop commuting and the product of their closed forms picks
up a splitting error.  Two standard views of that error:

  local   apply the product once for a time t; error ~ t^2
  global  slice a fixed horizon into n steps; error ~ 1/n

Both exponents are read off log-log fits below.
"""

import numpy as np

from qdamp import ModelParams, convergence_study, fock_state

MODEL = ModelParams(omega=1.0, mu=0.5, nu=0.25, kappa=0.1 + 0.05j, dim=16)


def show(table) -> None:
    print(f"  mode {table.mode}, method {table.method}")
    for x, err in zip(table.xs, table.errors_frobenius):
        print(f"    {table.x_label} = {x:<6g} frobenius error = {err:.3e}")
    print(f"  fitted slope {table.slope:+.3f} (fit residual {table.fit_residual:.2e})")


def run() -> bool:
    rho0 = fock_state(16, 0)
    print("single-shot error vs t")
    local = convergence_study(MODEL, rho0, method="factorized",
                              t_values=(0.4, 0.2, 0.1, 0.05))
    show(local)
    print("\nfixed-horizon error vs step count, t = 1")
    glob = convergence_study(MODEL, rho0, method="factorized",
                             n_steps_values=(2, 4, 8, 16), t_final=1.0)
    show(glob)
    ok = abs(local.slope - 2.0) <= 0.2 and abs(glob.slope + 1.0) <= 0.2
    print(f"\nlocal slope {local.slope:.3f} (want ~ +2), "
          f"global slope {glob.slope:.3f} (want ~ -1)")
    print("PASS" if ok else "FAIL")
    return ok


if __name__ == "__main__":
    raise SystemExit(0 if run() else 1)
