#!/usr/bin/env python3
"""Energy flux versus coupling strength: weak-coupling growth, strong-coupling
suppression, and the interior optimum that drifts to weaker coupling as the
ladder grows.
"""
import numpy as np

from collective_transport.analysis import (Regime, SweepSpec, optimize_alpha,
                                           sweep)


def main():
    regime = Regime()       # eps0 = 0, omega_c = 10, T_S/T_D = 4/2
    alphas = np.logspace(-3, 1, 30)
    res = sweep(SweepSpec(regime=regime, alphas=alphas, sizes=(2, 4, 6)))

    print(f"{'alpha':>10} " + " ".join(f"{'J(N=%d)' % n:>12}" for n in (2, 4, 6)))
    for i, a in enumerate(alphas):
        row = " ".join(f"{res.column('J', n)[i]:12.5f}" for n in (2, 4, 6))
        print(f"{a:10.4f} {row}")

    print("\nrefined optima:")
    for n in (2, 4, 6):
        opt = optimize_alpha(regime, n)
        print(f"  N = {n}: alpha_opt = {opt.alpha_opt:.5f}, "
              f"J_opt = {opt.value_opt:.5f}")


if __name__ == "__main__":
    main()
