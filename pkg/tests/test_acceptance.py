"""End-to-end acceptance checks.

Each test carries the `acceptance` marker with a short criterion name; the
root conftest prints one PASS/FAIL line per criterion after the run.  These
are deliberately coarse-grained: every test exercises a full published result
or symmetry at its quoted tolerance, on top of the per-module unit tests.
"""
import numpy as np
import pytest

from collective_transport import analysis, kernel
from collective_transport.analysis import Regime, SweepSpec, scaling_study, sweep
from collective_transport.fcs import (cgf_evaluator, cumulants_fd, flux_direct,
                                      gc_deviation)
from collective_transport.liouvillian import (analytic_population,
                                              build_generator, steady_state)
from collective_transport.model import BathParams, SystemParams, build_ladder
from collective_transport.rates import (jump_moments, marcus_density,
                                        marcus_rates, tilted_rates_real)


def pair(alpha, t_s, t_d, omega_c=10.0, alpha_d=None):
    return [BathParams(label="source", alpha=alpha, omega_c=omega_c, T=t_s),
            BathParams(label="drain", alpha=alpha if alpha_d is None else alpha_d,
                       omega_c=omega_c, T=t_d)]


@pytest.mark.acceptance("zero-bias-null-flux")
def test_zero_bias_null_flux():
    """Equal temperatures carry no flux, through both evaluation routes."""
    for T in (2.0, 4.0):
        for n in (1, 2, 6):
            for alpha in (0.1, 0.5):
                system = SystemParams(N=n, eps0=0.0)
                baths = pair(alpha, T, T)
                ladder = build_ladder(system, baths)
                rates = marcus_rates(ladder, baths)
                ss = steady_state(build_generator(rates))
                direct = flux_direct(rates, jump_moments(ladder, baths), ss)
                fd = cumulants_fd(system, baths, order=1).J
                bound = 1e-10 * rates.prefactor
                assert abs(direct) <= bound, (T, n, alpha)
                assert abs(fd) <= bound, (T, n, alpha)


@pytest.mark.acceptance("equal-temperature-gibbs")
def test_equal_temperature_gibbs():
    """Detailed balance of the rates and a Gibbs steady state at T_S = T_D."""
    for T in (2.0, 4.0):
        for n in (2, 6):
            for alpha in (0.1, 0.5):
                for eps0 in (0.0, 0.7):
                    system = SystemParams(N=n, eps0=eps0)
                    baths = pair(alpha, T, T)
                    ladder = build_ladder(system, baths)
                    rates = marcus_rates(ladder, baths)
                    ratio = rates.kappa_plus / rates.kappa_minus
                    ref = np.exp(-ladder.gaps / T)
                    assert np.max(np.abs(ratio / ref - 1.0)) <= 1e-12
                    p = steady_state(build_generator(rates)).populations
                    w = np.exp(-(ladder.energies - ladder.energies.min()) / T)
                    gibbs = w / w.sum()
                    assert np.max(np.abs(p / gibbs - 1.0)) <= 1e-12


@pytest.mark.acceptance("gallavotti-cohen-symmetry")
def test_gallavotti_cohen_symmetry():
    """G(s) = G(-dbeta - s) and the per-gap tilted-product invariance, over
    randomly drawn strong-coupling parameter sets."""
    rng = np.random.default_rng(42)
    for _ in range(10):
        n = int(rng.integers(1, 6))
        eps0 = float(rng.uniform(0.0, 1.0))
        t_s = float(rng.uniform(4.0, 8.0))
        t_d = t_s * float(rng.uniform(0.3, 0.7))
        alpha = float(rng.uniform(0.3, 1.0))
        omega_c = float(rng.uniform(4.0, 10.0))
        system = SystemParams(N=n, eps0=eps0)
        baths = pair(alpha, t_s, t_d, omega_c=omega_c)
        assert gc_deviation(system, baths) <= 1e-9
        dbeta = 1.0 / t_d - 1.0 / t_s
        ladder = build_ladder(system, baths)
        for s in (0.1 * dbeta, -0.45 * dbeta):
            a = tilted_rates_real(ladder, baths, s)
            b = tilted_rates_real(ladder, baths, -dbeta - s)
            prod_a = a.kappa_plus_chi * a.kappa_minus_chi
            prod_b = b.kappa_plus_chi * b.kappa_minus_chi
            assert np.max(np.abs(prod_a / prod_b - 1.0)) <= 1e-9


@pytest.mark.acceptance("marcus-vs-quadrature")
def test_marcus_closed_form_vs_quadrature():
    """The closed rate formula against brute-force convolution of the two
    Gaussian emission densities."""
    system = SystemParams(N=4, eps0=0.3)
    for alpha in (0.1, 0.3, 0.8):
        baths = pair(alpha, 4.0, 2.0)
        ladder = build_ladder(system, baths)
        rates = marcus_rates(ladder, baths)
        src, drn = baths
        sigma = max(np.sqrt(2.0 * b.xi * b.T) for b in baths)
        for idx in (0, 1, 3):
            gap = ladder.gaps[idx]
            centers = (-src.xi, gap + drn.xi)
            w = np.linspace(min(centers) - 40.0 * sigma,
                            max(centers) + 40.0 * sigma, 400001)
            for sign, closed in ((+1, rates.kappa_plus[idx]),
                                 (-1, rates.kappa_minus[idx])):
                f = (marcus_density(src, -sign * w)
                     * marcus_density(drn, sign * (w - gap)))
                quad = (ladder.g_plus[idx] / 4.0
                        * np.trapezoid(f, w) / (2.0 * np.pi))
                assert abs(quad / closed - 1.0) <= 1e-8, (alpha, idx, sign)


@pytest.mark.acceptance("single-qubit-analytics")
def test_single_qubit_analytics():
    """N = 1 at the reference point: symmetric rates, the flux value, and the
    closed quadratic root of the 2x2 counting generator."""
    system = SystemParams(N=1, eps0=0.0)
    baths = pair(0.1, 4.0, 2.0)
    ladder = build_ladder(system, baths)
    rates = marcus_rates(ladder, baths)
    kp, km = rates.kappa_plus[0], rates.kappa_minus[0]
    assert kp == pytest.approx(km, rel=1e-14)
    assert kp == pytest.approx(0.304070, abs=5e-7)
    ss = steady_state(build_generator(rates))
    j = flux_direct(rates, jump_moments(ladder, baths), ss)
    assert j == pytest.approx(0.03226, abs=5e-6)
    g = cgf_evaluator(system, baths)
    for s in np.linspace(-0.5, 0.3, 17):
        t = tilted_rates_real(ladder, baths, float(s))
        root = -0.5 * (kp + km) + np.sqrt(0.25 * (kp - km) ** 2
                                          + t.kappa_plus_chi[0] * t.kappa_minus_chi[0])
        assert abs(g(float(s)) - root) <= 1e-10


@pytest.mark.acceptance("analytic-population-oracle")
def test_analytic_population_oracle():
    """Far off resonance (xi/eps0 ~ 6e-4) the steady state collapses to the
    geometric profile with level-independent kernels."""
    system = SystemParams(N=6, eps0=5.0)
    baths = pair(5e-4, 4.0, 2.0)
    ladder = build_ladder(system, baths)
    assert ladder.xi_total / system.eps0 <= 1e-3
    p = steady_state(build_generator(marcus_rates(ladder, baths))).populations
    ref = analytic_population(system, baths)
    assert np.max(np.abs(p / ref - 1.0)) <= 1e-2


@pytest.mark.acceptance("population-inversion-profile")
def test_population_inversion_profile():
    """Resonant N = 6 ladder: symmetric bimodal populations, depleted center."""
    system = SystemParams(N=6, eps0=0.0)
    baths = pair(0.1, 4.0, 2.0)
    p = steady_state(build_generator(
        marcus_rates(build_ladder(system, baths), baths))).populations
    assert np.max(np.abs(p / p[::-1] - 1.0)) <= 1e-9
    assert int(np.argmin(p)) == 3                    # m = 0
    assert set(np.argsort(p)[-2:]) == {0, 6}         # m = +/-3


@pytest.mark.acceptance("optimal-flux-scaling")
def test_optimal_flux_scaling():
    """Nonmonotonic J(alpha) per size and the inverse-square drift of the
    optimal coupling, with linear growth of the optimal flux."""
    res = sweep(SweepSpec(regime=Regime(), alphas=analysis.DEFAULT_ALPHAS,
                          sizes=(2, 4, 6)))
    for n in (2, 4, 6):
        j = res.column("J", n)
        k = int(np.nanargmax(j))
        assert 0 < k < len(j) - 1, n
    study = scaling_study()
    assert 1.9 <= study.power_law.gamma <= 2.1
    assert study.power_law.r_squared >= 0.99
    assert study.linear_fit.r_squared >= 0.99
    assert np.all(np.diff(study.alpha_opt) < 0.0)


@pytest.mark.acceptance("high-bias-scaling")
def test_high_bias_scaling():
    """The scaling law survives a strong thermal bias (T_S/T_D = 10)."""
    regime = Regime(T_source=20.0, T_drain=2.0)
    opt = analysis.optimize_alpha(regime, 6)
    assert opt.bracket_lo < opt.alpha_opt < opt.bracket_hi
    study = scaling_study(regime=regime)
    assert 1.8 <= study.power_law.gamma <= 2.2
    assert study.linear_fit.r_squared >= 0.99


@pytest.mark.acceptance("noise-fano-scaling")
def test_noise_fano_scaling():
    """Noise profile: nonmonotonic S(alpha), a weak-coupling Fano plateau,
    Fano growth at strong coupling, and the noise-optimal coupling scaling."""
    res = sweep(SweepSpec(regime=Regime(), alphas=analysis.DEFAULT_ALPHAS,
                          sizes=(6,)))
    s = res.column("S", 6)
    k = int(np.nanargmax(s))
    assert 0 < k < len(s) - 1
    rows = [r for r in res.rows if r.ok]
    plateau = [r.FF for r in rows if 0.01 <= r.alpha <= 0.05]
    assert len(plateau) >= 4
    assert (max(plateau) - min(plateau)) / np.mean(plateau) < 0.10
    strong = [r.FF for r in rows if r.alpha >= 0.5 and np.isfinite(r.FF)]
    assert len(strong) >= 3
    assert np.all(np.diff(strong) > 0.0)
    study = scaling_study(objective="noise")
    assert 1.8 <= study.power_law.gamma <= 2.2
    assert study.linear_fit.r_squared >= 0.99


@pytest.mark.acceptance("exact-kernel-validation")
def test_exact_kernel_validation(marcus_series):
    """The exact-kernel spectra satisfy their sum rule and KMS condition, and
    approach the Gaussian limit monotonically in temperature."""
    dist = {}
    for T in (4.0, 10.0, 50.0):
        spec = marcus_series[T][2]
        assert kernel.sum_rule_deviation(spec) <= 1e-4
        assert kernel.kms_deviation(spec) <= 1e-3
        dist[T] = kernel.marcus_distance(spec)
    assert dist[4.0] > dist[10.0] > dist[50.0]
