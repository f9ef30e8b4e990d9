import numpy as np
import pytest

from collective_transport import analysis
from collective_transport.analysis import (Regime, SweepSpec, fit_linear,
                                           fit_power_law, optimize_alpha,
                                           scaling_study, sweep)
from collective_transport.errors import MonotoneObjectiveError
from collective_transport.fcs import cumulants_fd, flux_direct
from collective_transport.liouvillian import build_generator, steady_state
from collective_transport.model import build_ladder
from collective_transport.rates import jump_moments, marcus_rates

BASE = Regime()          # eps0=0, omega_c=10, T_S=4, T_D=2, symmetric baths


def oracle_alpha_opt(n_qubits, t_s=4.0, t_d=2.0, omega_c=10.0):
    """Closed-form optimum for eps0 = 0, symmetric baths.

    There J(alpha) = const * sqrt(alpha)/Z(u) with u = 4*alpha*omega_c/
    (pi*(T_S+T_D)) and Z = sum_m exp(u m^2), so alpha_opt solves
    1/(2u) = <m^2>_u.  Bisection on u; independent of the package internals.
    """
    m = np.arange(-n_qubits, n_qubits + 1, 2) / 2.0

    def f(u):
        w = np.exp(u * (m**2 - m.max() ** 2))
        return 2.0 * u * float(np.sum(m**2 * w) / np.sum(w)) - 1.0

    lo, hi = 1e-12, 1.0
    while f(hi) < 0.0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    u_star = 0.5 * (lo + hi)
    return u_star * np.pi * (t_s + t_d) / (4.0 * omega_c)


def test_sweep_degenerate_row_matches_direct_call():
    """A 1x1 sweep must reproduce the direct fcs route bit-for-bit."""
    spec = SweepSpec(regime=BASE, alphas=np.array([0.3]), sizes=(4,))
    row = sweep(spec).rows[0]
    system = BASE.system(4)
    baths = BASE.baths(0.3)
    ladder = build_ladder(system, baths)
    rates = marcus_rates(ladder, baths)
    direct = flux_direct(rates, jump_moments(ladder, baths),
                         steady_state(build_generator(rates)))
    cs = cumulants_fd(system, baths, order=2)
    assert row.J == direct
    assert row.S == cs.S
    assert row.ok


def test_sweep_row_order_and_shape():
    alphas = np.logspace(-2, 0, 7)
    spec = SweepSpec(regime=BASE, alphas=alphas, sizes=(2, 4))
    res = sweep(spec)
    assert len(res.rows) == 14
    assert [r.N for r in res.rows] == [2] * 7 + [4] * 7
    np.testing.assert_array_equal(res.column("alpha", 2), alphas)


def test_sweep_is_deterministic():
    spec = SweepSpec(regime=BASE, alphas=np.logspace(-2, 0.5, 9), sizes=(2, 6))
    a, b = sweep(spec), sweep(spec)
    for ra, rb in zip(a.rows, b.rows):
        assert ra == rb


def test_sweep_interior_maximum_each_size():
    spec = SweepSpec(regime=BASE, alphas=analysis.DEFAULT_ALPHAS[::2],
                     sizes=(2, 4, 6))
    res = sweep(spec)
    for n in (2, 4, 6):
        j = res.column("J", n)
        k = int(np.nanargmax(j))
        assert 0 < k < len(j) - 1, n


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(regime=BASE, alphas=np.array([0.3, 0.2]), sizes=(2,))
    with pytest.raises(ValueError):
        SweepSpec(regime=BASE, alphas=np.array([0.1, 0.2]), sizes=(2, 2))
    with pytest.raises(ValueError):
        SweepSpec(regime=BASE, alphas=np.array([0.1, 0.2]), sizes=(2,),
                  objective="skew")


def test_optimize_alpha_synthetic_objective(monkeypatch):
    """alpha * exp(-alpha/alpha0) peaks at alpha0; recovered to 1e-4."""
    alpha0 = 0.37

    def fake(regime, n_qubits, alpha, objective):
        return alpha * np.exp(-alpha / alpha0)

    monkeypatch.setattr(analysis, "_objective_value", fake)
    res = optimize_alpha(BASE, 4, tol=1e-5)
    assert abs(res.alpha_opt - alpha0) <= 1e-4 * alpha0
    assert res.bracket_lo < res.alpha_opt < res.bracket_hi


def test_optimize_alpha_matches_closed_form_oracle():
    for n in (2, 6, 10):
        res = optimize_alpha(BASE, n, tol=1e-5)
        assert abs(res.alpha_opt / oracle_alpha_opt(n) - 1.0) <= 1e-3, n


def test_optimize_alpha_grid_halving_stability():
    fine = optimize_alpha(BASE, 6, alphas=analysis.DEFAULT_ALPHAS)
    coarse = optimize_alpha(BASE, 6, alphas=analysis.DEFAULT_ALPHAS[::2])
    assert abs(fine.alpha_opt / coarse.alpha_opt - 1.0) < 1e-3


def test_optimal_coupling_shrinks_with_size():
    opts = [optimize_alpha(BASE, n).alpha_opt for n in (2, 4, 6)]
    assert opts[0] > opts[1] > opts[2]
    assert opts[0] == pytest.approx(0.298192854930678, rel=1e-3)


def test_optimize_alpha_monotone_profile_raises():
    """A grid entirely left of the peak has its argmax on the boundary."""
    with pytest.raises(MonotoneObjectiveError) as info:
        optimize_alpha(BASE, 2, alphas=np.logspace(-3, -2, 12))
    assert info.value.boundary_alpha == pytest.approx(1e-2)


def test_optimize_alpha_multimodal_raises(monkeypatch):
    def bumpy(regime, n_qubits, alpha, objective):
        x = np.log10(alpha)
        return np.exp(-(x + 2.0) ** 2) + 0.8 * np.exp(-10.0 * x**2)

    monkeypatch.setattr(analysis, "_objective_value", bumpy)
    with pytest.raises(ValueError):
        optimize_alpha(BASE, 2)


def test_fit_power_law_exact():
    fit = fit_power_law([(2, 0.25), (4, 0.0625), (8, 0.015625)])
    assert fit.gamma == pytest.approx(2.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.prefactor == pytest.approx(1.0, rel=1e-12)


def test_fit_power_law_noise_robust():
    rng = np.random.default_rng(0)
    sizes = np.array([2, 4, 6, 8, 10, 12], dtype=float)
    data = sizes**-2.0 * (1.0 + 0.05 * rng.standard_normal(len(sizes)))
    fit = fit_power_law(list(zip(sizes, data)))
    assert 1.9 <= fit.gamma <= 2.1
    assert fit.stderr < 0.1


def test_fit_power_law_validation():
    with pytest.raises(ValueError):
        fit_power_law([(2, 0.1), (4, -0.3), (8, 0.01)])
    with pytest.raises(ValueError):
        fit_power_law([(2, 0.1), (4, 0.05)])


def test_fit_linear_exact():
    fit = fit_linear([(n, 3.0 * n + 1.0) for n in (2, 5, 9, 11)])
    assert fit.slope == pytest.approx(3.0, abs=1e-12)
    assert fit.intercept == pytest.approx(1.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        fit_linear([(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)])


def test_small_size_fit_misses_asymptotic_exponent():
    """The inverse-square law is asymptotic: the closed-form optima at
    N = 2..12 fit to gamma = 1.759, well short of 2; the default scaling
    sizes start higher for exactly this reason."""
    pts = [(n, oracle_alpha_opt(n)) for n in (2, 4, 6, 8, 10, 12)]
    fit = fit_power_law(pts)
    assert fit.gamma == pytest.approx(1.7589, abs=2e-3)
    assert analysis.DEFAULT_SCALING_SIZES[0] >= 16


def test_scaling_study_json_shape():
    res = scaling_study(sizes=(2, 4, 6), tol=1e-3)
    d = res.to_json_dict()
    assert set(d) == {"objective", "sizes", "alpha_opt", "value_opt", "gamma",
                      "r_squared", "power_law", "power_law_drop_smallest",
                      "linear_fit"}
    assert d["objective"] == "flux"
    assert d["power_law_drop_smallest"] is None      # needs >= 4 sizes
    assert d["gamma"] == d["power_law"]["gamma"]
    res4 = scaling_study(sizes=(2, 4, 6, 8), tol=1e-3)
    assert res4.to_json_dict()["power_law_drop_smallest"] is not None
