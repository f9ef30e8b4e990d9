"""Coupling sweeps, optimal-coupling search, and finite-size scaling fits.

A `Regime` freezes everything about the two baths except the overall coupling
alpha, which sweeps jointly over source and drain (per-bath multipliers allow
asymmetric studies).  `sweep` tabulates flux and noise over an alpha grid,
`optimize_alpha` brackets and refines the interior maximum of a chosen
objective, and `scaling_study` repeats the optimization across system sizes
and fits alpha_opt ~ N^(-gamma) together with the linear growth of the
optimal value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (ConvergenceError, DisconnectedLadderError,
                     MonotoneObjectiveError)
from .fcs import CumulantSet, cumulants_fd, flux_direct
from .liouvillian import build_generator, steady_state
from .model import BathParams, SystemParams, build_ladder
from .rates import jump_moments, marcus_rates

DEFAULT_ALPHAS = np.logspace(-3.0, 1.0, 60)
DEFAULT_SCALING_SIZES = (16, 20, 24, 28, 32, 36, 40)
_OBJECTIVES = ("flux", "noise", "c3")


@dataclass(frozen=True)
class Regime:
    """Bath and level-splitting template; only alpha remains free."""

    eps0: float = 0.0
    omega_c_source: float = 10.0
    omega_c_drain: float = 10.0
    T_source: float = 4.0
    T_drain: float = 2.0
    alpha_source_scale: float = 1.0
    alpha_drain_scale: float = 1.0

    def system(self, n_qubits: int) -> SystemParams:
        return SystemParams(N=n_qubits, eps0=self.eps0)

    def baths(self, alpha: float):
        return [BathParams(label="source", alpha=alpha * self.alpha_source_scale,
                           omega_c=self.omega_c_source, T=self.T_source),
                BathParams(label="drain", alpha=alpha * self.alpha_drain_scale,
                           omega_c=self.omega_c_drain, T=self.T_drain)]


@dataclass(frozen=True)
class SweepSpec:
    regime: Regime = Regime()
    alphas: np.ndarray = field(default_factory=lambda: DEFAULT_ALPHAS.copy())
    sizes: tuple = (2, 4, 6)
    objective: str = "flux"

    def __post_init__(self):
        alphas = np.asarray(self.alphas, dtype=float)
        if alphas.ndim != 1 or len(alphas) < 1 or np.any(np.diff(alphas) <= 0.0):
            raise ValueError("alpha grid must be 1-d and strictly increasing")
        if np.any(alphas <= 0.0):
            raise ValueError("alpha grid must be positive")
        object.__setattr__(self, "alphas", alphas)
        sizes = tuple(int(n) for n in self.sizes)
        if len(sizes) == 0 or len(set(sizes)) != len(sizes) or min(sizes) < 1:
            raise ValueError("sizes must be distinct positive integers")
        object.__setattr__(self, "sizes", sizes)
        if self.objective not in _OBJECTIVES:
            raise ValueError(f"objective must be one of {_OBJECTIVES}")


@dataclass(frozen=True)
class SweepRow:
    N: int
    alpha: float
    J: float
    S: float
    FF: float
    err_J: float
    err_S: float
    ok: bool


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple

    def column(self, name: str, n_qubits: int | None = None) -> np.ndarray:
        rows = [r for r in self.rows if n_qubits is None or r.N == n_qubits]
        return np.array([getattr(r, name) for r in rows])


def _row(regime: Regime, n_qubits: int, alpha: float,
         order: int = 2) -> SweepRow:
    system = regime.system(n_qubits)
    baths = regime.baths(alpha)
    try:
        ladder = build_ladder(system, baths)
        rates = marcus_rates(ladder, baths)
        ss = steady_state(build_generator(rates))
        j_direct = flux_direct(rates, jump_moments(ladder, baths), ss)
        cs = cumulants_fd(system, baths, order=order)
    except (DisconnectedLadderError, ConvergenceError):
        nan = math.nan
        return SweepRow(N=n_qubits, alpha=alpha, J=nan, S=nan, FF=nan,
                        err_J=nan, err_S=nan, ok=False)
    route_gap = abs(cs.J - j_direct)
    err_j = max(cs.err_j, route_gap)
    # S >= 0 physically; a negative tilt-difference estimate means the noise
    # floor has been reached, so the Fano ratio is unresolvable there.
    resolvable = abs(j_direct) > max(err_j, 1e-300) and cs.S > 0.0
    ff = cs.S / j_direct if resolvable else math.nan
    ok = (np.isfinite(j_direct) and np.isfinite(cs.S)
          and route_gap <= 1e-6 * max(abs(j_direct), abs(cs.J), 1e-300))
    return SweepRow(N=n_qubits, alpha=float(alpha), J=j_direct, S=cs.S, FF=ff,
                    err_J=err_j, err_S=cs.err_s, ok=bool(ok))


def sweep(spec: SweepSpec) -> SweepResult:
    """One row per (N, alpha), N-major order; failed rows carry NaN, ok=False."""
    rows = [_row(spec.regime, n, float(a))
            for n in spec.sizes for a in spec.alphas]
    return SweepResult(spec=spec, rows=tuple(rows))


def _objective_value(regime: Regime, n_qubits: int, alpha: float,
                     objective: str) -> float:
    """Objective for the optimizer; a disconnected ladder contributes 0."""
    try:
        if objective == "flux":
            system = regime.system(n_qubits)
            baths = regime.baths(alpha)
            ladder = build_ladder(system, baths)
            rates = marcus_rates(ladder, baths)
            ss = steady_state(build_generator(rates))
            val = flux_direct(rates, jump_moments(ladder, baths), ss)
        else:
            order = 2 if objective == "noise" else 3
            cs = cumulants_fd(regime.system(n_qubits), regime.baths(alpha),
                              order=order)
            val = cs.S if objective == "noise" else cs.c3
    except (DisconnectedLadderError, ConvergenceError):
        return 0.0
    return float(val) if np.isfinite(val) else 0.0


@dataclass(frozen=True)
class OptResult:
    alpha_opt: float
    value_opt: float
    bracket_lo: float
    bracket_hi: float
    tol: float


def optimize_alpha(regime: Regime, n_qubits: int, objective: str = "flux",
                   alphas: np.ndarray | None = None, tol: float = 1e-4,
                   deadband_rel: float = 1e-4) -> OptResult:
    """Interior maximum of the objective over alpha.

    A coarse log grid locates the bracket; golden-section search on log alpha
    refines it to relative tolerance `tol`.  The coarse profile must be
    unimodal up to wiggles below deadband_rel of the peak (finite-difference
    jitter survives in the decayed tail): monotone profiles raise
    MonotoneObjectiveError with the best boundary point, genuinely multimodal
    ones raise ValueError.
    """
    if objective not in _OBJECTIVES:
        raise ValueError(f"objective must be one of {_OBJECTIVES}")
    grid = DEFAULT_ALPHAS if alphas is None else np.asarray(alphas, dtype=float)
    if len(grid) < 3 or np.any(np.diff(grid) <= 0.0):
        raise ValueError("coarse grid must be increasing with >= 3 points")

    def f(a: float) -> float:
        return _objective_value(regime, n_qubits, a, objective)

    vals = np.array([f(float(a)) for a in grid])
    diffs = np.diff(vals)
    deadband = deadband_rel * np.max(np.abs(vals), initial=0.0)
    signs = np.sign(diffs)
    signs[np.abs(diffs) <= deadband] = 0.0
    signs = signs[signs != 0.0]
    changes = int(np.count_nonzero(signs[:-1] != signs[1:])) if len(signs) else 0
    if changes > 1:
        raise ValueError("objective is not unimodal on the coarse grid")
    k = int(np.argmax(vals))
    if changes == 0 or k in (0, len(grid) - 1):
        raise MonotoneObjectiveError(float(grid[k]), float(vals[k]))

    lo, hi = float(grid[k - 1]), float(grid[k + 1])
    best_x, best_v = float(grid[k]), float(vals[k])
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = math.log(lo), math.log(hi)
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc, fd = f(math.exp(c)), f(math.exp(d))
    while (b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(math.exp(c))
            if fc > best_v:
                best_x, best_v = math.exp(c), fc
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(math.exp(d))
            if fd > best_v:
                best_x, best_v = math.exp(d), fd
    x = math.exp(0.5 * (a + b))
    v = f(x)
    if v > best_v:
        best_x, best_v = x, v
    return OptResult(alpha_opt=best_x, value_opt=best_v,
                     bracket_lo=lo, bracket_hi=hi, tol=tol)


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    prefactor: float
    r_squared: float
    n_points: int
    stderr: float

    def to_json_dict(self) -> dict:
        return {"gamma": self.gamma, "prefactor": self.prefactor,
                "r_squared": self.r_squared, "n_points": self.n_points,
                "stderr": self.stderr}


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float
    n_points: int
    stderr_slope: float

    def to_json_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept,
                "r_squared": self.r_squared, "n_points": self.n_points,
                "stderr_slope": self.stderr_slope}


def _ols(x: np.ndarray, y: np.ndarray):
    """Slope, intercept, r^2, and the slope's standard error."""
    n = len(x)
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    if sxx == 0.0:
        raise ValueError("degenerate abscissa: all x values coincide")
    slope = float(np.sum((x - xm) * (y - ym)) / sxx)
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((y - ym) ** 2))
    r2 = 1.0 if ss_tot == 0.0 and ss_res <= 1e-28 else 1.0 - ss_res / ss_tot
    stderr = math.sqrt(ss_res / ((n - 2) * sxx)) if n > 2 else math.inf
    return slope, intercept, r2, stderr


def _as_points(points) -> np.ndarray:
    pts = np.asarray(list(points), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be (x, y) pairs")
    if pts.shape[0] < 3:
        raise ValueError("need at least 3 points to fit")
    return pts


def fit_power_law(points) -> PowerLawFit:
    """Least squares of log y on log x; gamma is the positive decay exponent."""
    pts = _as_points(points)
    if np.any(pts <= 0.0):
        raise ValueError("power-law fit requires strictly positive data")
    slope, intercept, r2, stderr = _ols(np.log(pts[:, 0]), np.log(pts[:, 1]))
    return PowerLawFit(gamma=-slope, prefactor=math.exp(intercept),
                       r_squared=r2, n_points=len(pts), stderr=stderr)


def fit_linear(points) -> LinearFit:
    """Ordinary least squares y = slope*x + intercept."""
    pts = _as_points(points)
    slope, intercept, r2, stderr = _ols(pts[:, 0], pts[:, 1])
    return LinearFit(slope=slope, intercept=intercept, r_squared=r2,
                     n_points=len(pts), stderr_slope=stderr)


@dataclass(frozen=True)
class ScalingResult:
    objective: str
    sizes: tuple
    alpha_opt: np.ndarray
    value_opt: np.ndarray
    power_law: PowerLawFit
    power_law_drop_smallest: PowerLawFit | None
    linear_fit: LinearFit

    def to_json_dict(self) -> dict:
        return {
            "objective": self.objective,
            "sizes": list(self.sizes),
            "alpha_opt": [float(a) for a in self.alpha_opt],
            "value_opt": [float(v) for v in self.value_opt],
            "gamma": self.power_law.gamma,
            "r_squared": self.power_law.r_squared,
            "power_law": self.power_law.to_json_dict(),
            "power_law_drop_smallest": (
                None if self.power_law_drop_smallest is None
                else self.power_law_drop_smallest.to_json_dict()),
            "linear_fit": self.linear_fit.to_json_dict(),
        }


def scaling_study(regime: Regime = Regime(), sizes=DEFAULT_SCALING_SIZES,
                  objective: str = "flux", alphas: np.ndarray | None = None,
                  tol: float = 1e-4) -> ScalingResult:
    """alpha_opt(N) and value_opt(N) with the power-law and linear fits.

    The drop-smallest refit quantifies stability of the fitted exponent
    against the smallest system size (present when >= 4 sizes are given).
    """
    sizes = tuple(int(n) for n in sizes)
    if sorted(set(sizes)) != list(sizes):
        raise ValueError("sizes must be strictly increasing")
    opts = [optimize_alpha(regime, n, objective, alphas=alphas, tol=tol)
            for n in sizes]
    alpha_opt = np.array([o.alpha_opt for o in opts])
    value_opt = np.array([o.value_opt for o in opts])
    power = fit_power_law(zip(sizes, alpha_opt))
    drop = fit_power_law(zip(sizes[1:], alpha_opt[1:])) if len(sizes) >= 4 else None
    linear = fit_linear(zip(sizes, value_opt))
    return ScalingResult(objective=objective, sizes=sizes, alpha_opt=alpha_opt,
                         value_opt=value_opt, power_law=power,
                         power_law_drop_smallest=drop, linear_fit=linear)
