"""Collective-qubit energy ladder dressed by two Ohmic photon baths.

N permutation-symmetric two-level systems span the Dicke ladder |j, m> with
j = N/2.  After the polaron (canonical) transformation the bath displacement
adds a collective -xi*Jz^2 shift on top of the Zeeman term, so the level
energies are

    E_m = -eps0*m - xi*m^2,        xi = sum_v alpha_v * omega_c_v / pi,

and the gaps Delta_m = E_{m+1} - E_m = -eps0 - (2m+1)*xi.  Ladder matrix
elements enter the rates through g+_m = j(j+1) - m(m+1); g-_m is kept for
completeness but never multiplies a rate (both rate directions across gap m
carry g+_m).

Units: hbar = k_B = 1; all energies in units of the tunneling element, which
is 1 by convention.  Half-integer m is stored as the integer 2m to keep level
indexing exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

_BATH_LABELS = ("source", "drain")


@dataclass(frozen=True)
class SystemParams:
    """Qubit-ensemble inputs: size N, Zeeman splitting eps0, tunneling element."""

    N: int
    eps0: float = 0.0
    tunneling: float = 1.0

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        if not self.tunneling > 0:
            raise ValueError(f"tunneling must be positive, got {self.tunneling!r}")

    @property
    def j(self) -> float:
        return self.N / 2.0


@dataclass(frozen=True)
class BathParams:
    """One Ohmic photon bath: J_v(w) = alpha*w*exp(-w/omega_c), temperature T."""

    label: str
    alpha: float
    omega_c: float
    T: float

    def __post_init__(self):
        if self.label not in _BATH_LABELS:
            raise ValueError(f"bath label must be one of {_BATH_LABELS}, got {self.label!r}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha!r}")
        if not self.omega_c > 0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c!r}")
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T!r}")

    @property
    def beta(self) -> float:
        return 1.0 / self.T

    @property
    def xi(self) -> float:
        """Reorganization energy xi_v = alpha_v * omega_c_v / pi."""
        return self.alpha * self.omega_c / math.pi


def source_drain(baths) -> tuple[BathParams, BathParams]:
    """Pick out the (source, drain) pair from a bath list, order-insensitively."""
    by_label = {b.label: b for b in baths}
    if set(by_label) != set(_BATH_LABELS) or len(baths) != 2:
        raise ValueError(f"expected exactly one source and one drain bath, got "
                         f"{[b.label for b in baths]}")
    return by_label["source"], by_label["drain"]


def reorganization_energy(baths) -> float:
    """Total reorganization energy xi = sum_v alpha_v * omega_c_v / pi."""
    return float(sum(b.xi for b in baths))


@dataclass(frozen=True)
class Ladder:
    """Angular-momentum levels with polaron-shifted energies and gap coefficients.

    Arrays are ordered by increasing m = -j..j; `gaps`, and the rate tables
    built from them, are indexed by the lower level of each gap (m = -j..j-1).
    """

    j: float
    two_m: np.ndarray            # integer 2m, length N+1
    energies: np.ndarray         # E_m, length N+1
    gaps: np.ndarray             # Delta_m = E_{m+1} - E_m, length N
    g_plus: np.ndarray           # g+_m over all m, length N+1 (g+_j = 0)
    g_minus: np.ndarray          # g-_m over all m, length N+1 (g-_{-j} = 0)
    xi_total: float
    eps0: float = field(default=0.0)

    @property
    def m_values(self) -> np.ndarray:
        return self.two_m / 2.0

    @property
    def N(self) -> int:
        return len(self.two_m) - 1


def build_ladder(sys: SystemParams, baths) -> Ladder:
    """Assemble the N+1 polaron-shifted levels for the given system and baths."""
    N = sys.N
    xi = reorganization_energy(baths)
    two_m = np.arange(-N, N + 1, 2, dtype=np.int64)
    m = two_m / 2.0
    energies = -sys.eps0 * m - xi * m * m
    gaps = -sys.eps0 - (two_m[:-1] + 1) * xi          # -(2m+1)*xi at the lower level
    # integer arithmetic keeps the boundary zeros exact
    g_plus = (N * (N + 2) - two_m * (two_m + 2)) / 4.0
    g_minus = (N * (N + 2) - two_m * (two_m - 2)) / 4.0
    for a in (two_m, energies, gaps, g_plus, g_minus):
        a.setflags(write=False)
    return Ladder(j=sys.j, two_m=two_m, energies=energies, gaps=gaps,
                  g_plus=g_plus, g_minus=g_minus, xi_total=xi, eps0=sys.eps0)


def ladder_coefficient(j: float, m: float, sign: int) -> float:
    """g(+/-)_m = j(j+1) - m(m +/- 1) for |j, m>; sign is +1 or -1."""
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    two_j = round(2 * j)
    two_m = round(2 * m)
    if abs(2 * j - two_j) > 1e-12 or abs(2 * m - two_m) > 1e-12:
        raise ValueError(f"j and m must be integer or half-integer, got j={j}, m={m}")
    if (two_j - two_m) % 2 != 0:
        raise ValueError(f"j - m must be an integer, got j={j}, m={m}")
    if abs(two_m) > two_j:
        raise ValueError(f"|m| <= j required, got j={j}, m={m}")
    return j * (j + 1) - m * (m + sign)
