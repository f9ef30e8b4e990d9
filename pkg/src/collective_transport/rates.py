"""Marcus-limit transition rates and their counting-field dressing.

The short-time (Gaussian) expansion of the bath propagators turns the
golden-rule rate integral into a convolution of two Gaussian densities

    C_v(w) = sqrt(pi*beta_v/xi_v) * exp[-beta_v (w - xi_v)^2 / (4 xi_v)],

which evaluates in closed form:

    kappa(+/-)_m = (Delta/2)^2 g+_m sqrt(pi/W) exp[-(Delta_m +/- xi)^2 / 4W],
    W = T_S xi_S + T_D xi_D,   xi = xi_S + xi_D.

Counting the energy entering the drain multiplies each rate by the factor

    F(+/-)_m(chi) = exp{ -/+ i Delta_m chi
                         - D [ i chi (1/T_S + ((-/+)Delta_m - xi_D)/(T_D xi_D))
                               + chi^2 ] },
    D = T_S T_D xi_S xi_D / W,

whose first derivative at chi = 0 gives the mean drain energy per jump,
q(+/-)_m.  Rates are assembled as (log prefactor, exponent) pairs and
exponentiated last so deep off-resonant Gaussians underflow to 0 instead of
producing NaN.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularBathError
from .model import BathParams, Ladder, source_drain


def marcus_density(bath: BathParams, omega):
    """Gaussian transition kernel C_v(omega) of one bath in the Marcus limit.

    Normalized so that (1/2pi) int C_v dw = 1 and satisfying the detailed
    balance (KMS) relation C_v(-w) = exp(-beta_v w) C_v(w).
    """
    xi = bath.xi
    if xi == 0.0:
        raise SingularBathError("marcus_density requires xi_v > 0 (alpha_v > 0)")
    b = bath.beta
    return np.sqrt(np.pi * b / xi) * np.exp(-b * (np.asarray(omega) - xi) ** 2 / (4.0 * xi))


def _kernel_scales(baths):
    src, drn = source_drain(baths)
    W = src.T * src.xi + drn.T * drn.xi
    if W == 0.0:
        raise SingularBathError("W = T_S xi_S + T_D xi_D vanishes; Marcus kernel is singular")
    D = src.T * drn.T * src.xi * drn.xi / W
    return src, drn, W, D


@dataclass(frozen=True)
class RateTable:
    """kappa(+/-)_m across each gap m = -j..j-1, stored in units of the prefactor.

    `prefactor` A = (Delta/2)^2 sqrt(pi/W) is factored out so the generator
    can be assembled with O(1) entries; kappa_plus/kappa_minus include it.
    Off-ladder rates (up from m = j, down into m = -j) are identically zero
    through the g+ boundary and never stored.
    """

    scaled_plus: np.ndarray      # kappa+_m / A
    scaled_minus: np.ndarray     # kappa-_m / A
    W: float
    prefactor: float

    @property
    def kappa_plus(self) -> np.ndarray:
        return self.prefactor * self.scaled_plus

    @property
    def kappa_minus(self) -> np.ndarray:
        return self.prefactor * self.scaled_minus


@dataclass(frozen=True)
class TiltedRateTable:
    """Counting-field-dressed rates kappa(+/-)_m(chi) = kappa(+/-)_m F(+/-)_m(chi).

    Exactly one of `chi` (complex counting variable) and `s` (real tilt,
    s = i*chi) is set; on the real axis all entries are real and nonnegative
    and no complex storage is allocated.  `base` keeps the untilted table for
    the chi-independent generator diagonal.
    """

    base: RateTable
    scaled_plus: np.ndarray
    scaled_minus: np.ndarray
    chi: complex | None = None
    s: float | None = None

    @property
    def kappa_plus_chi(self):
        return self.base.prefactor * self.scaled_plus

    @property
    def kappa_minus_chi(self):
        return self.base.prefactor * self.scaled_minus


@dataclass(frozen=True)
class JumpMoments:
    """Mean drain-bath energy gain per up/down jump across each gap.

    q(+/-)_m = (-/+)Delta_m - D [1/T_S + ((-/+)Delta_m - xi_D)/(T_D xi_D)];
    the combination q+_m + q-_m = 2D(beta_D - beta_S) is m-independent.
    """

    q_plus: np.ndarray
    q_minus: np.ndarray
    D: float


def _log_scaled(ladder: Ladder, W: float):
    """(log g+_m - exponent) pairs for both jump directions, in units of A."""
    g = ladder.g_plus[:-1]
    xi = ladder.xi_total
    with np.errstate(divide="ignore"):
        log_g = np.log(g)
    lp = log_g - (ladder.gaps + xi) ** 2 / (4.0 * W)
    lm = log_g - (ladder.gaps - xi) ** 2 / (4.0 * W)
    return lp, lm


def marcus_rates(ladder: Ladder, baths, tunneling: float = 1.0) -> RateTable:
    """Closed-form Marcus rates for every gap of the ladder.  No quadrature."""
    _, _, W, _ = _kernel_scales(baths)
    lp, lm = _log_scaled(ladder, W)
    A = (tunneling / 2.0) ** 2 * math.sqrt(math.pi / W)
    table = RateTable(scaled_plus=np.exp(lp), scaled_minus=np.exp(lm),
                      W=W, prefactor=A)
    table.scaled_plus.setflags(write=False)
    table.scaled_minus.setflags(write=False)
    return table


def _counting_linear(ladder: Ladder, src: BathParams, drn: BathParams):
    """Coefficients of the O(chi) term in ln F(+/-)_m."""
    a_plus = 1.0 / src.T + (-ladder.gaps - drn.xi) / (drn.T * drn.xi)
    a_minus = 1.0 / src.T + (+ladder.gaps - drn.xi) / (drn.T * drn.xi)
    return a_plus, a_minus


def tilted_rates(ladder: Ladder, baths, chi: complex,
                 tunneling: float = 1.0) -> TiltedRateTable:
    """Rates dressed by the counting factor at complex chi."""
    src, drn, W, D = _kernel_scales(baths)
    base = marcus_rates(ladder, baths, tunneling)
    a_plus, a_minus = _counting_linear(ladder, src, drn)
    lp, lm = _log_scaled(ladder, W)
    log_fp = -1j * ladder.gaps * chi - D * (1j * chi * a_plus + chi * chi)
    log_fm = +1j * ladder.gaps * chi - D * (1j * chi * a_minus + chi * chi)
    return TiltedRateTable(base=base, chi=chi,
                           scaled_plus=np.exp(lp + log_fp),
                           scaled_minus=np.exp(lm + log_fm))


def tilted_rates_real(ladder: Ladder, baths, s: float,
                      tunneling: float = 1.0) -> TiltedRateTable:
    """Real-tilt fast path: chi = -i*s keeps every entry real and nonnegative.

    ln F(+/-)_m(s) = (-/+)Delta_m s - D [s*(1/T_S + ((-/+)Delta_m - xi_D)
    /(T_D xi_D)) - s^2].  The exponent is combined with the Gaussian one
    before a single exponentiation, so underflow remains graceful.
    """
    src, drn, W, D = _kernel_scales(baths)
    base = marcus_rates(ladder, baths, tunneling)
    a_plus, a_minus = _counting_linear(ladder, src, drn)
    lp, lm = _log_scaled(ladder, W)
    log_fp = -ladder.gaps * s - D * (s * a_plus - s * s)
    log_fm = +ladder.gaps * s - D * (s * a_minus - s * s)
    return TiltedRateTable(base=base, s=s,
                           scaled_plus=np.exp(lp + log_fp),
                           scaled_minus=np.exp(lm + log_fm))


def jump_moments(ladder: Ladder, baths) -> JumpMoments:
    """Per-jump drain-energy moments, the analytic d ln F / d(i chi) at chi = 0."""
    src, drn, W, D = _kernel_scales(baths)
    a_plus, a_minus = _counting_linear(ladder, src, drn)
    q_plus = -ladder.gaps - D * a_plus
    q_minus = +ladder.gaps - D * a_minus
    for a in (q_plus, q_minus):
        a.setflags(write=False)
    return JumpMoments(q_plus=q_plus, q_minus=q_minus, D=D)


def gc_conjugate(chi: complex, baths) -> complex:
    """Counting variable mapped by the Gallavotti-Cohen symmetry.

    chi' = -chi + i(beta_D - beta_S); the per-gap product
    kappa+_m(chi) kappa-_m(chi) is invariant under chi -> chi'.
    """
    src, drn = source_drain(baths)
    return -chi + 1j * (drn.beta - src.beta)
