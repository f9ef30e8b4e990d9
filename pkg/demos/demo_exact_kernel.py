#!/usr/bin/env python3
"""Validate the Gaussian (Marcus) rate kernel against the exact one.

The exact emission density follows from the full bath propagator Q_v(t); its
Gaussian limit is what the fast transport pipeline uses.  This demo builds
both at a hot reference point (where the propagator grids stay short), checks
the sum rule and KMS condition of the exact spectra, and compares rates gap
by gap.  Expect percent-level physical deviations, far above the quadrature
error bars.
"""
import numpy as np

from collective_transport import kernel
from collective_transport.model import BathParams, SystemParams, build_ladder
from collective_transport.rates import marcus_rates


def main():
    system = SystemParams(N=2, eps0=0.5)
    baths = [BathParams(label="source", alpha=0.8, omega_c=10.0, T=50.0),
             BathParams(label="drain", alpha=0.8, omega_c=10.0, T=40.0)]
    ladder = build_ladder(system, baths)
    rates = marcus_rates(ladder, baths)

    grids, specs = {}, {}
    for b in baths:
        grids[b.label] = kernel.propagator(b)
        specs[b.label] = kernel.spectrum(grids[b.label])
        s = specs[b.label]
        print(f"{b.label}: t_max = {s.t_max:.3f}, q_err = {s.q_err:.1e}, "
              f"sum rule dev = {kernel.sum_rule_deviation(s):.1e}, "
              f"KMS dev = {kernel.kms_deviation(s):.1e}")
        print(f"  distance to the Gaussian limit: "
              f"{kernel.marcus_distance(s):.4f}")

    print(f"\n{'gap m':>6} {'sign':>5} {'exact':>12} {'Marcus':>12} {'rel dev':>10}")
    for k, m in enumerate(ladder.m_values[:-1]):
        for sign, closed in ((+1, rates.kappa_plus[k]),
                             (-1, rates.kappa_minus[k])):
            rq = kernel.exact_rate(ladder, specs["source"], specs["drain"],
                                   float(m), sign)
            print(f"{m:6.1f} {sign:+5d} {np.real(rq.value):12.6f} "
                  f"{closed:12.6f} {abs(rq.value / closed - 1.0):10.2e}")

    m0 = float(ladder.m_values[0])
    fq = kernel.exact_rate(ladder, specs["source"], specs["drain"], m0, +1)
    td = kernel.rate_time_domain(ladder, grids["source"], grids["drain"], m0, +1)
    print(f"\ntime-domain cross-check at m = {m0:g}: "
          f"|freq - time| = {abs(fq.value - td.value):.2e}")


if __name__ == "__main__":
    main()
