"""Exact bath propagator, correlation spectrum, and quadrature transition rates.

For an Ohmic bath with J_v(w) = alpha_v * w * exp(-w/omega_c), the propagator

    Q_v(t) = (1/pi) int_0^inf dw J_v(w)/w^2 [coth(beta_v w/2)(1 - cos wt) + i sin wt]

defines the single-bath emission density C_v(w) = int dt exp(i w t - Q_v(t)).
A transition rate across a ladder gap is a convolution of the source and drain
densities.  Expanding Q_v to second order in t recovers the Gaussian densities
of `rates`, so this module doubles as the validation oracle for the Marcus
limit and quantifies how fast that limit is approached as T grows.

All quadratures are trapezoidal with Richardson extrapolation; every public
result carries an error estimate formed from successive refinements.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConvergenceError
from .model import BathParams, Ladder, ladder_coefficient
from .rates import marcus_density

_TRUNCATION_THRESHOLD = 1e-12
_T_MAX_CAP = 400.0


@dataclass(frozen=True)
class PropagatorGrid:
    """Q_v on a uniform time grid, with the quadrature error estimate."""

    bath: BathParams
    times: np.ndarray
    q_values: np.ndarray
    dt: float
    t_max: float
    err_est: float


@dataclass
class RateQuadrature:
    """Quadrature value with its estimated absolute error."""

    value: complex
    err: float


def _q_triple(bath: BathParams, times: np.ndarray, n_base: int,
              w_max: float) -> np.ndarray:
    """Trapezoid quadratures of the propagator integral at three nested
    frequency resolutions (n_base, 2 n_base - 1, 4 n_base - 3 points).

    The coarse grids are subsets of the finest one, so the oscillatory factor
    exp(i w t) is built once on the finest grid and contracted against all
    three embedded trapezoid weight vectors.  The time grid is uniform, which
    lets consecutive rows differ by a constant phase twist; every chunk is
    re-anchored with a direct evaluation to pin the accumulated drift at the
    rounding floor.  Returns an (len(times), 3) complex array, coarse first.
    """
    n_fine = 4 * n_base - 3
    w = np.linspace(0.0, w_max, n_fine)
    dw = w[1] - w[0]
    jw_over_w = bath.alpha * np.exp(-w / bath.omega_c)
    with np.errstate(divide="ignore", invalid="ignore"):
        re_weight = jw_over_w / w / np.tanh(0.5 * bath.beta * w)
        im_weight = jw_over_w / w
    re_weight[0] = 0.0      # w = 0 column is replaced by its analytic limit
    im_weight[0] = 0.0
    wt = np.zeros((n_fine, 3))
    for lvl, stride in enumerate((4, 2, 1)):
        wt[::stride, lvl] = stride * dw
        wt[0, lvl] = wt[-1, lvl] = 0.5 * stride * dw
    wre = re_weight[:, None] * wt
    wim = im_weight[:, None] * wt
    re_const = wre.sum(axis=0)          # the "1" in the (1 - cos wt) factor
    wt0 = wt[0]
    out = np.empty((len(times), 3), dtype=complex)
    twist = None
    if len(times) > 1:
        dt = times[1] - times[0]
        if not np.allclose(np.diff(times), dt, rtol=1e-12, atol=0.0):
            raise ValueError("propagator time grid must be uniformly spaced")
        twist = np.exp(1j * w * dt)
    chunk = 32
    for i0 in range(0, len(times), chunk):
        tt = times[i0:i0 + chunk]
        z = np.empty((len(tt), n_fine), dtype=complex)
        z[0] = np.exp(1j * w * tt[0])
        for r in range(1, len(tt)):
            np.multiply(z[r - 1], twist, out=z[r])
        re = re_const[None, :] - z.real @ wre
        im = z.imag @ wim
        # w -> 0 limits of the integrands, weighted like the dropped column
        re += wt0[None, :] * (bath.alpha * bath.T * tt[:, None] ** 2)
        im += wt0[None, :] * (bath.alpha * tt[:, None])
        out[i0:i0 + chunk] = re + 1j * im
    return out / np.pi


def _q_richardson(bath: BathParams, times: np.ndarray,
                  points_per_period: float, err_target: float):
    """Three trapezoid levels; returns the finer Richardson value and the
    difference between the two extrapolants as the error estimate."""
    t_top = max(times[-1], 1.0 / bath.omega_c)
    w_max = 38.0 * bath.omega_c
    dw = min(bath.omega_c / 50.0, bath.T / 10.0,
             2.0 * np.pi / (points_per_period * t_top))
    n = int(np.ceil(w_max / dw)) + 1
    for _ in range(3):
        q1, q2, q3 = _q_triple(bath, times, n, w_max).T
        r1 = (4.0 * q2 - q1) / 3.0
        r2 = (4.0 * q3 - q2) / 3.0
        est = float(np.max(np.abs(r2 - r1)))
        if est <= err_target:
            return r2, est
        n = 2 * n - 1
    raise ConvergenceError("propagator quadrature did not reach the error target",
                           {"err_est": est, "err_target": err_target,
                            "n_omega": n, "t_max": float(times[-1])})


def _find_t_max(bath: BathParams, target: float, points_per_period: float) -> float:
    """Smallest t with Re Q_v(t) >= target, by growth probing plus bisection.

    Refuses beyond t = 400: sub-quadratic growth of Re Q there signals a
    low-temperature, weak-damping bath outside NIBA validity, where truncating
    the slow tail would silently corrupt the spectrum.
    """
    def re_q(t):
        return float(_q_triple(bath, np.array([t]), 501,
                               38.0 * bath.omega_c)[0, 2].real)

    t = 1.0
    while re_q(t) < target:
        t *= 1.35
        if t > _T_MAX_CAP:
            raise ConvergenceError(
                "Re Q_v(t) has not reached its decay target by t = "
                f"{_T_MAX_CAP:g}; bath decoherence is too slow (outside NIBA "
                "validity), refusing to truncate the kernel",
                {"t": t, "re_q": re_q(min(t, _T_MAX_CAP)), "target": target})
    lo, hi = t / 1.35, t
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if re_q(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def propagator(bath: BathParams, n_times: int = 4097,
               points_per_period: float = 24.0, re_q_target: float = 32.0,
               t_max: float | None = None, err_target: float = 1e-8) -> PropagatorGrid:
    """Q_v on a uniform grid 0..t_max with estimated error <= err_target.

    t_max defaults to the adaptive point where Re Q_v = re_q_target, so that
    exp(-Q_v) has decayed below exp(-32) and the spectrum transform can be
    truncated safely.
    """
    if t_max is None:
        t_max = _find_t_max(bath, re_q_target, points_per_period)
    times = np.linspace(0.0, t_max, n_times)
    q, est = _q_richardson(bath, times, points_per_period, err_target)
    times.setflags(write=False)
    q.setflags(write=False)
    return PropagatorGrid(bath=bath, times=times, q_values=q,
                          dt=float(times[1] - times[0]), t_max=float(t_max),
                          err_est=est)


@dataclass
class CorrelationSpectrum:
    """Real emission density C_v on a uniform frequency grid.

    `window` bounds the region used for interpolation in rate quadratures;
    outside it the density has decayed below any contribution of interest and
    evaluates to zero.
    """

    bath: BathParams
    omegas: np.ndarray
    c_values: np.ndarray
    window: float
    t_max: float
    q_err: float
    _spline: CubicSpline | None = field(default=None, repr=False, compare=False)

    @property
    def grid_spacing(self) -> float:
        return float(self.omegas[1] - self.omegas[0])

    def density(self, omega) -> np.ndarray:
        """Interpolated C_v(omega), clipped to >= 0, zero outside the window."""
        if self._spline is None:
            keep = np.abs(self.omegas) <= self.window
            self._spline = CubicSpline(self.omegas[keep],
                                       np.clip(self.c_values[keep], 0.0, None))
        omega = np.asarray(omega, dtype=float)
        inside = np.abs(omega) <= self.window
        out = np.zeros(omega.shape)
        if np.any(inside):
            out[inside] = np.clip(self._spline(omega[inside]), 0.0, None)
        return out


def spectrum(grid: PropagatorGrid, pad: int = 16) -> CorrelationSpectrum:
    """Fourier transform of exp(-Q_v) with Hermitian extension to t < 0.

    Zero-padding by `pad` refines the frequency spacing; the transform is
    refused if exp(-Re Q_v(t_max)) has not decayed below the truncation
    threshold, since a hard cutoff there would ring through the spectrum.
    """
    tail = float(np.exp(-grid.q_values[-1].real))
    if tail > _TRUNCATION_THRESHOLD:
        raise ConvergenceError(
            f"exp(-Re Q_v(t_max)) = {tail:.2e} exceeds the truncation threshold "
            f"{_TRUNCATION_THRESHOLD:g}; enlarge t_max (or re_q_target)",
            {"tail": tail, "t_max": grid.t_max})
    f = np.exp(-grid.q_values)
    m = len(grid.times) - 1
    L = pad * 2 * m
    g = np.zeros(L, dtype=complex)
    g[: m + 1] = f
    g[L - m:] = np.conj(f[1:][::-1])
    c = (grid.dt * L) * np.fft.ifft(g)
    w = 2.0 * np.pi * np.fft.fftfreq(L, d=grid.dt)
    idx = np.argsort(w)
    omegas = w[idx]
    c_values = c[idx].real
    bath = grid.bath
    window = bath.xi + 12.0 * np.sqrt(2.0 * bath.xi * bath.T) + 4.0 * bath.omega_c
    omegas.setflags(write=False)
    c_values.setflags(write=False)
    return CorrelationSpectrum(bath=bath, omegas=omegas, c_values=c_values,
                               window=float(window), t_max=grid.t_max,
                               q_err=grid.err_est)


def sum_rule_deviation(spec: CorrelationSpectrum) -> float:
    """|(1/2pi) int C_v dw - 1|; the exact integral is exp(-Q_v(0)) = 1."""
    total = np.trapezoid(spec.c_values, spec.omegas) / (2.0 * np.pi)
    return abs(float(total) - 1.0)


def kms_deviation(spec: CorrelationSpectrum, omega_max: float = 5.0,
                  n_probe: int = 20) -> float:
    """Worst relative violation of C(-w) = exp(-beta w) C(w) over (0, omega_max]."""
    probes = np.linspace(omega_max / n_probe, omega_max, n_probe)
    up = spec.density(probes)
    down = spec.density(-probes)
    ratio = down / up / np.exp(-spec.bath.beta * probes)
    return float(np.max(np.abs(ratio - 1.0)))


def marcus_distance(spec: CorrelationSpectrum) -> float:
    """Integrated distance (1/2pi) int |C_v - C_v^Marcus| dw to the Gaussian limit."""
    gauss = marcus_density(spec.bath, spec.omegas)
    return float(np.trapezoid(np.abs(spec.c_values - gauss), spec.omegas)
                 / (2.0 * np.pi))


def marcus_pointwise_deviation(spec: CorrelationSpectrum) -> float:
    """Relative deviation from the Gaussian limit at the peak w = xi_v."""
    ref = float(marcus_density(spec.bath, np.array([spec.bath.xi]))[0])
    val = float(spec.density(np.array([spec.bath.xi]))[0])
    return abs(val - ref) / ref


def _gap_and_weight(ladder: Ladder, m: float):
    g = ladder_coefficient(ladder.j, m, +1)
    gap = -ladder.eps0 - (2.0 * m + 1.0) * ladder.xi_total
    return gap, g


def exact_rate(ladder: Ladder, spec_source: CorrelationSpectrum,
               spec_drain: CorrelationSpectrum, m: float, sign: int,
               chi: complex = 0.0, tunneling: float = 1.0) -> RateQuadrature:
    """Exact-kernel rate kappa^sign_m by frequency-domain convolution.

        kappa^+_m = (tunneling/2)^2 g+_m e^{-i gap chi} (1/2pi)
                    int dw C_S(-w) C_D(w - gap) e^{+i w chi}

    and kappa^-_m with every frequency reflected (sign = -1).  A purely
    imaginary chi = -i s produces the real tilted rates of the cumulant
    generating function.  The quadrature grid is the overlap of the two
    spectral windows; a gap outside that overlap is a domain error.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    gap, g = _gap_and_weight(ladder, m)
    if g == 0.0:
        return RateQuadrature(value=0.0, err=0.0)
    lo = max(-spec_source.window, gap - spec_drain.window)
    hi = min(spec_source.window, gap + spec_drain.window)
    if hi <= lo:
        raise ValueError(f"spectral windows do not overlap at gap {gap:g}")
    dw = min(spec_source.grid_spacing, spec_drain.grid_spacing)
    n = int(np.ceil((hi - lo) / dw)) + 1
    n += 1 - n % 2
    n = max(n, 9)
    w = np.linspace(lo, hi, n)
    f = spec_source.density(-sign * w) * spec_drain.density(sign * (w - gap))
    if chi != 0.0:
        f = f * np.exp(sign * 1j * w * chi)
    peak = np.max(np.abs(f))
    if peak == 0.0:
        raise ValueError("integrand vanishes on the whole overlap window; "
                         "spectra do not cover the stationary-phase region")
    if max(abs(f[0]), abs(f[-1])) > 1e-10 * peak:
        raise ValueError("integrand has not decayed at the window edge; "
                         "spectra do not cover the stationary-phase region")
    dw = w[1] - w[0]
    full = np.trapezoid(f, dx=dw)
    half = np.trapezoid(f[::2], dx=2.0 * dw)
    pref = (tunneling / 2.0) ** 2 * g / (2.0 * np.pi) * np.exp(-sign * 1j * gap * chi)
    value = pref * (4.0 * full - half) / 3.0
    err = (abs(pref) * abs(full - half) / 3.0
           + (spec_source.q_err + spec_drain.q_err) * abs(value))
    # purely imaginary chi = -i s tilts along the real axis; drop roundoff imag
    if complex(chi).real == 0.0 and abs(np.imag(value)) <= 1e-10 * abs(np.real(value)):
        value = float(np.real(value))
    return RateQuadrature(value=value, err=float(err))


def _q_interpolant(grid: PropagatorGrid):
    re = CubicSpline(grid.times, grid.q_values.real)
    im = CubicSpline(grid.times, grid.q_values.imag)

    def q(t):
        t = np.asarray(t, dtype=float)
        a = np.abs(t)
        return re(a) + 1j * np.sign(t) * im(a)      # Q(-t) = conj Q(t)

    return q


def rate_time_domain(ladder: Ladder, grid_source: PropagatorGrid,
                     grid_drain: PropagatorGrid, m: float, sign: int,
                     chi: float = 0.0, tunneling: float = 1.0,
                     n_times: int = 16385) -> RateQuadrature:
    """Time-domain form of the tilted rate, as a consistency check.

        kappa^sign_m = (tunneling/2)^2 g+_m
                       int dtau e^{-Q_S(tau)} e^{-Q_D(tau - chi)} e^{-sign i gap tau}

    for real counting shift chi.  Equals `exact_rate` within quadrature
    tolerance; the frequency route remains the primary path.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    gap, g = _gap_and_weight(ladder, m)
    if g == 0.0:
        return RateQuadrature(value=0.0, err=0.0)
    t_top = min(grid_source.t_max, grid_drain.t_max - abs(chi))
    if t_top <= 0.0:
        raise ValueError("counting shift chi exceeds the drain grid range")
    q_s = _q_interpolant(grid_source)
    q_d = _q_interpolant(grid_drain)
    n = n_times + 1 - n_times % 2
    tau = np.linspace(-t_top, t_top, n)
    integrand = np.exp(-q_s(tau) - q_d(tau - chi) - sign * 1j * gap * tau)
    dt = tau[1] - tau[0]
    full = np.trapezoid(integrand, dx=dt)
    half = np.trapezoid(integrand[::2], dx=2.0 * dt)
    pref = (tunneling / 2.0) ** 2 * g
    value = pref * (4.0 * full - half) / 3.0
    err = (pref * abs(full - half) / 3.0
           + (grid_source.err_est + grid_drain.err_est) * abs(value))
    if chi == 0.0 and abs(value.imag) <= 1e-10 * abs(value.real):
        value = value.real
    return RateQuadrature(value=value, err=float(err))
