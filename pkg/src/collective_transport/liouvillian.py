"""Tridiagonal tilted generator, steady state, and dominant eigenvalue.

The population kinetics on the ladder is dP/dt = W(chi) P with the
(N+1)-dimensional tridiagonal generator

    W[m+1, m]   = kappa+_m(chi)          (jump up across gap m)
    W[m, m+1]   = kappa-_m(chi)          (jump down across gap m)
    W[m, m]     = -(kappa-_{m-1} + kappa+_m)    (chi-independent)

assembled in units of the rate prefactor A.  At chi = 0 the columns sum to
zero and the normalized null vector is the steady state.  On the real tilt
axis s = i*chi the matrix is Metzler, so the cumulant generating function
A*G(s) is its unique largest-real-part (Perron) eigenvalue.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, DisconnectedLadderError
from .model import Ladder, SystemParams, reorganization_energy, source_drain
from .rates import RateTable, TiltedRateTable


@dataclass(frozen=True)
class TiltedGenerator:
    """Tridiagonal generator in units of the prefactor `scale`."""

    diag: np.ndarray             # length N+1, from untilted rates
    lower: np.ndarray            # kappa+_m(chi)/A, length N
    upper: np.ndarray            # kappa-_m(chi)/A, length N
    scale: float                 # prefactor A
    tilt: complex | float | None # chi, or s on the real axis, or None
    base_lower: np.ndarray       # untilted kappa+_m/A (connectivity checks)
    base_upper: np.ndarray       # untilted kappa-_m/A

    @property
    def dim(self) -> int:
        return len(self.diag)

    def matrix(self) -> np.ndarray:
        """Dense (N+1)x(N+1) generator in units of `scale`."""
        M = np.diag(self.diag.astype(self.lower.dtype))
        idx = np.arange(self.dim - 1)
        M[idx + 1, idx] = self.lower
        M[idx, idx + 1] = self.upper
        return M

    @property
    def max_rate(self) -> float:
        return float(max(np.abs(self.lower).max(initial=0.0),
                         np.abs(self.upper).max(initial=0.0),
                         np.abs(self.diag).max(initial=0.0)))


@dataclass(frozen=True)
class SteadyState:
    """Normalized populations P_m with the relative residual of W(0) P = 0."""

    populations: np.ndarray
    residual: float


@dataclass(frozen=True)
class EigResult:
    value: float                 # Perron root in units of the generator scale
    vector: np.ndarray           # eigenvector in the original frame, inf-normalized
    residual: float              # ||(M~ - value) v~||_inf in the balanced frame
    method: str


def build_generator(rates: RateTable | TiltedRateTable) -> TiltedGenerator:
    """Tridiagonal W(chi); the diagonal always comes from the untilted rates."""
    if isinstance(rates, TiltedRateTable):
        base = rates.base
        lower, upper = rates.scaled_plus, rates.scaled_minus
        tilt = rates.s if rates.chi is None else rates.chi
    else:
        base = rates
        lower, upper = rates.scaled_plus, rates.scaled_minus
        tilt = None
    if len(lower) != len(upper) or len(base.scaled_plus) != len(lower):
        raise ValueError("rate arrays have inconsistent lengths")
    n = len(lower) + 1
    diag = np.zeros(n)
    diag[:-1] -= base.scaled_plus          # leave m upward
    diag[1:] -= base.scaled_minus          # leave m downward
    return TiltedGenerator(diag=diag, lower=np.asarray(lower), upper=np.asarray(upper),
                           scale=base.prefactor, tilt=tilt,
                           base_lower=base.scaled_plus, base_upper=base.scaled_minus)


def _check_connected(gen: TiltedGenerator, j: float | None = None):
    for i in range(gen.dim - 1):
        if gen.base_lower[i] == 0.0 or gen.base_upper[i] == 0.0:
            m = i - (gen.dim - 1) / 2.0 if j is None else i - j
            raise DisconnectedLadderError(m)


def steady_state(gen: TiltedGenerator) -> SteadyState:
    """Null vector of W(0) by a direct solve with a normalization row.

    The first balance equation (redundant at chi = 0 by probability
    conservation) is replaced by sum_m P_m = 1.
    """
    if gen.tilt not in (None, 0, 0.0):
        raise ValueError("steady_state requires the untilted generator (chi = 0)")
    _check_connected(gen)
    scale = gen.max_rate
    if scale == 0.0:
        raise DisconnectedLadderError(None, "all rates vanish")
    M = gen.matrix().real / scale
    A = M.copy()
    A[0, :] = 1.0
    b = np.zeros(gen.dim)
    b[0] = 1.0
    try:
        P = np.linalg.solve(A, b)
    except np.linalg.LinAlgError:
        # rates spread beyond machine range act like a broken link
        link = np.minimum(gen.base_lower, gen.base_upper)
        m = int(np.argmin(link)) - (gen.dim - 1) / 2.0
        raise DisconnectedLadderError(
            m, f"ladder link at m = {m:g} underflows the solvable range; "
               "steady state is effectively non-unique") from None
    if P.min() < -1e-10:
        raise ConvergenceError("steady-state solve produced negative populations",
                               {"min": float(P.min())})
    P = np.clip(P, 0.0, None)
    P = P / P.sum()
    residual = float(np.abs(M @ P).max())
    P.setflags(write=False)
    return SteadyState(populations=P, residual=residual)


def propagate_to_steady(gen: TiltedGenerator, horizon: float = 1e9) -> np.ndarray:
    """Long-time propagation cross-check: e^{W t} applied by repeated squaring.

    Not a primary path; exists to validate the linear-solve steady state.
    """
    if gen.tilt not in (None, 0, 0.0):
        raise ValueError("propagation requires the untilted generator")
    scale = gen.max_rate
    M = gen.matrix().real / scale
    dt = 0.25
    n_sq = max(1, int(np.ceil(np.log2(horizon * scale / dt))))
    # truncated Taylor series of e^{M dt}; ||M dt|| <= O(1) so it converges fast
    B = np.eye(gen.dim)
    term = np.eye(gen.dim)
    for k in range(1, 40):
        term = term @ M * (dt / k)
        B += term
        if np.abs(term).max() < 1e-18:
            break
    for _ in range(n_sq):
        B = B @ B
        B /= B.sum(axis=0).max()           # guard against overflow of the projector
    P = B @ np.full(gen.dim, 1.0 / gen.dim)
    P = np.clip(P, 0.0, None)
    return P / P.sum()


def geometric_population(n_qubits: int, y: float) -> np.ndarray:
    """Normalized P_m proportional to y^m over m = -N/2..N/2, in log space.

    y = 1 gives the uniform distribution exactly.
    """
    if y <= 0.0:
        raise ValueError("population ratio y must be positive")
    m = np.arange(-n_qubits, n_qubits + 1, 2) / 2.0
    logp = m * np.log(y)
    logp -= logp.max()
    P = np.exp(logp)
    return P / P.sum()


def analytic_population(sys: SystemParams, baths) -> np.ndarray:
    """Geometric population profile of the off-resonant (xi << |eps0|) limit.

    With level-independent kernels the detailed-balance ratio is y =
    gamma+/gamma- = exp(eps0*xi/W), giving P_m proportional to y^m.  Computed
    for any parameters; meaningful when xi/|eps0| is small.
    """
    src, drn = source_drain(baths)
    W = src.T * src.xi + drn.T * drn.xi
    if W == 0.0:
        from .errors import SingularBathError
        raise SingularBathError("W = 0: no bath-assisted transitions")
    xi = reorganization_energy(baths)
    return geometric_population(sys.N, float(np.exp(sys.eps0 * xi / W)))


def dominant_eigenvalue(gen: TiltedGenerator, tol: float = 1e-12) -> EigResult:
    """Perron root of the real-tilt generator, in units of `gen.scale`.

    With positive off-diagonals the generator is similar (by a positive
    diagonal) to a symmetric tridiagonal matrix whose off-diagonals are
    sqrt(lower*upper); its largest eigenvalue is extracted by Sturm bisection
    plus inverse iteration.  This frame makes the Gallavotti-Cohen invariance
    of the spectrum under s -> -(beta_D - beta_S) - s hold to machine
    precision, since only the products lower*upper enter, and it guarantees
    the true largest eigenvalue even when the top of the spectrum clusters
    (nearly disconnected ladders).  A vanishing off-diagonal product falls
    back to a dense solve on the blocked matrix.
    """
    if np.iscomplexobj(gen.lower) or (gen.tilt is not None
                                      and np.iscomplexobj(gen.tilt)
                                      and complex(gen.tilt).imag != 0.0):
        raise ValueError("dominant_eigenvalue requires a real-tilt generator")
    scale = gen.max_rate
    if scale == 0.0:
        raise DisconnectedLadderError(None, "all rates vanish")
    lower = np.asarray(gen.lower, dtype=float) / scale
    upper = np.asarray(gen.upper, dtype=float) / scale
    diag = gen.diag / scale
    if np.any(lower < 0.0) or np.any(upper < 0.0):
        raise ValueError("off-diagonal rates must be nonnegative")
    prod = lower * upper

    if np.all(prod > 0.0) and np.all(np.isfinite(prod)):
        off = np.sqrt(prod)
        try:
            w, v = eigh_tridiagonal(diag, off, select="i",
                                    select_range=(gen.dim - 1, gen.dim - 1))
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise ConvergenceError("tridiagonal eigensolve failed",
                                   {"reason": str(exc)}) from exc
        lam = float(w[0])
        v_bal = v[:, 0]
        res = _tridiagonal_residual(diag, off, lam, v_bal)
        if res > max(tol, 1e-10):
            raise ConvergenceError("eigenpair residual above tolerance",
                                   {"residual": res, "tol": tol})
        if v_bal.sum() < 0.0:
            v_bal = -v_bal
        # undo the balancing in log space; ratios can span hundreds of decades
        half_log = 0.5 * (np.log(lower) - np.log(upper))
        log_d = np.concatenate([[0.0], np.cumsum(half_log)])
        with np.errstate(divide="ignore"):
            log_v = log_d + np.log(np.abs(v_bal))
        log_v -= log_v.max()
        vec = np.sign(v_bal) * np.exp(log_v)
        return EigResult(value=lam * scale, vector=vec, residual=res,
                         method="tridiagonal-bisection")

    # zero product: ladder splits into blocks; small dense solve is exact enough
    M = gen.matrix().real / scale
    w, V = np.linalg.eig(M)
    k = int(np.argmax(w.real))
    lam, x = w[k], V[:, k].real
    if abs(w[k].imag) > 1e-9 * max(1.0, abs(lam.real)):
        raise ConvergenceError("dominant eigenvalue is not real",
                               {"eigenvalue": complex(w[k])})
    x = x / np.abs(x).max()
    if x.sum() < 0.0:
        x = -x
    res = float(np.abs(M @ x - lam.real * x).max())
    return EigResult(value=float(lam.real) * scale, vector=x, residual=res,
                     method="dense")


def _tridiagonal_residual(diag: np.ndarray, off: np.ndarray, lam: float,
                          v: np.ndarray) -> float:
    r = (diag - lam) * v
    r[:-1] += off * v[1:]
    r[1:] += off * v[:-1]
    return float(np.abs(r).max() / max(np.abs(v).max(), 1e-300))
