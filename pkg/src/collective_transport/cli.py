"""Command-line front end: config files in, CSV/JSON out.

Subcommands
    steady          steady-state populations            CSV  m,P
    cumulants       flux, noise, Fano ratio             CSV  J,S,FF,err_J,err_S
    sweep           coupling sweep over an alpha grid   CSV  N,alpha,J,S,FF,err_J,err_S
    scaling         optimal-coupling finite-size study  JSON (fields below)
    validate-kernel exact-kernel diagnostics            JSON (fields below)

Config files are `key = value` lines; `#` starts a comment.  Keys:

    N             qubit count (steady, cumulants, validate-kernel)
    eps0          qubit splitting, default 0
    alpha         coupling, both baths (or alpha_S and alpha_D separately)
    omega_c       bath cutoff, both baths, default 10 (or omega_c_S / omega_c_D)
    T_S, T_D      source and drain temperatures (always required)
    alpha_min, alpha_max, alpha_points
                  log-spaced alpha grid (sweep; optional for scaling)
    N_list        comma-separated sizes (sweep, scaling)
    fd_step       tilt step override for cumulants
    tolerance     relative alpha tolerance of the optimizer, default 1e-4
    out_path      output file; stdout when absent (flag --out overrides)

Unknown keys are rejected.  Floats are serialized with 17 significant digits,
so every emitted CSV reloads bit-identically; identical configs produce
byte-identical outputs.  Exit codes: 0 success, 1 numerical failure,
2 config or usage error.

The scaling JSON object holds: objective, sizes, alpha_opt, value_opt,
gamma, r_squared (convenience copies of the full fit), power_law,
power_law_drop_smallest, linear_fit (sub-objects from the fit results).
The validate-kernel JSON holds per-bath spectrum diagnostics
(t_max, q_err, sum_rule_deviation, kms_deviation, marcus_distance,
marcus_pointwise_deviation), a per-gap rate table comparing the exact
quadrature against the closed Gaussian form, and one time-domain
consistency entry.  Optional dumps: --dump-propagator writes CSV
bath,t,re_q,im_q; --dump-spectrum writes CSV bath,omega,c over the
interpolation window.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import analysis, kernel
from .errors import (ConvergenceError, DisconnectedLadderError,
                     MonotoneObjectiveError, SingularBathError)
from .fcs import cumulants_fd, flux_direct
from .liouvillian import build_generator, steady_state
from .model import BathParams, SystemParams, build_ladder
from .rates import jump_moments, marcus_rates


class ConfigError(Exception):
    pass


_FLOAT_KEYS = {"eps0", "alpha", "alpha_S", "alpha_D", "omega_c", "omega_c_S",
               "omega_c_D", "T_S", "T_D", "alpha_min", "alpha_max", "fd_step",
               "tolerance"}
_INT_KEYS = {"N", "alpha_points"}
_STR_KEYS = {"out_path"}
_LIST_KEYS = {"N_list"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _LIST_KEYS


def parse_config(path: str) -> dict:
    cfg = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected `key = value`")
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in _ALL_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key `{key}`")
        if key in cfg:
            raise ConfigError(f"{path}:{lineno}: duplicate key `{key}`")
        try:
            if key in _FLOAT_KEYS:
                cfg[key] = float(value)
            elif key in _INT_KEYS:
                cfg[key] = int(value)
            elif key in _LIST_KEYS:
                cfg[key] = [int(tok) for tok in value.split(",") if tok.strip()]
            else:
                cfg[key] = value
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for `{key}`: "
                              f"{value!r}") from exc
    return cfg


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"missing required key `{key}`")
    return cfg[key]


def _bath_pair(cfg: dict):
    t_s = _require(cfg, "T_S")
    t_d = _require(cfg, "T_D")
    if "alpha_S" in cfg or "alpha_D" in cfg:
        if "alpha" in cfg:
            raise ConfigError("give either `alpha` or `alpha_S`/`alpha_D`, not both")
        a_s = _require(cfg, "alpha_S")
        a_d = _require(cfg, "alpha_D")
    else:
        a_s = a_d = _require(cfg, "alpha")
    w_s = cfg.get("omega_c_S", cfg.get("omega_c", 10.0))
    w_d = cfg.get("omega_c_D", cfg.get("omega_c", 10.0))
    try:
        return [BathParams(label="source", alpha=a_s, omega_c=w_s, T=t_s),
                BathParams(label="drain", alpha=a_d, omega_c=w_d, T=t_d)]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _system(cfg: dict) -> SystemParams:
    try:
        return SystemParams(N=_require(cfg, "N"), eps0=cfg.get("eps0", 0.0))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _regime(cfg: dict) -> analysis.Regime:
    try:
        return analysis.Regime(eps0=cfg.get("eps0", 0.0),
                               omega_c_source=cfg.get("omega_c_S",
                                                      cfg.get("omega_c", 10.0)),
                               omega_c_drain=cfg.get("omega_c_D",
                                                     cfg.get("omega_c", 10.0)),
                               T_source=_require(cfg, "T_S"),
                               T_drain=_require(cfg, "T_D"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _alpha_grid(cfg: dict, required: bool) -> np.ndarray | None:
    have = [k for k in ("alpha_min", "alpha_max", "alpha_points") if k in cfg]
    if not have and not required:
        return None
    for key in ("alpha_min", "alpha_max", "alpha_points"):
        _require(cfg, key)
    lo, hi, n = cfg["alpha_min"], cfg["alpha_max"], cfg["alpha_points"]
    if not (0.0 < lo < hi) or n < 2:
        raise ConfigError("alpha grid needs 0 < alpha_min < alpha_max and "
                          "alpha_points >= 2")
    return np.logspace(math.log10(lo), math.log10(hi), n)


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _emit(text: str, out_path: str | None):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_steady(cfg: dict, out_path: str | None) -> int:
    system = _system(cfg)
    baths = _bath_pair(cfg)
    ladder = build_ladder(system, baths)
    ss = steady_state(build_generator(marcus_rates(ladder, baths)))
    lines = ["m,P"]
    lines += [f"{_fmt(m)},{_fmt(p)}"
              for m, p in zip(ladder.m_values, ss.populations)]
    _emit("\n".join(lines) + "\n", out_path)
    return 0


def _cmd_cumulants(cfg: dict, out_path: str | None) -> int:
    system = _system(cfg)
    baths = _bath_pair(cfg)
    ladder = build_ladder(system, baths)
    rates = marcus_rates(ladder, baths)
    ss = steady_state(build_generator(rates))
    j_direct = flux_direct(rates, jump_moments(ladder, baths), ss)
    cs = cumulants_fd(system, baths, h0=cfg.get("fd_step"))
    err_j = max(cs.err_j, abs(cs.J - j_direct))
    resolvable = abs(j_direct) > max(err_j, 1e-300) and cs.S > 0.0
    ff = cs.S / j_direct if resolvable else math.nan
    lines = ["J,S,FF,err_J,err_S",
             ",".join(_fmt(v) for v in (j_direct, cs.S, ff, err_j, cs.err_s))]
    _emit("\n".join(lines) + "\n", out_path)
    return 0


def _cmd_sweep(cfg: dict, out_path: str | None) -> int:
    spec = analysis.SweepSpec(regime=_regime(cfg),
                              alphas=_alpha_grid(cfg, required=True),
                              sizes=tuple(_require(cfg, "N_list")))
    result = analysis.sweep(spec)
    lines = ["N,alpha,J,S,FF,err_J,err_S"]
    lines += [",".join([str(r.N)] + [_fmt(v) for v in
                                     (r.alpha, r.J, r.S, r.FF, r.err_J, r.err_S)])
              for r in result.rows]
    _emit("\n".join(lines) + "\n", out_path)
    return 0


def _cmd_scaling(cfg: dict, out_path: str | None, objective: str) -> int:
    grid = _alpha_grid(cfg, required=False)
    result = analysis.scaling_study(regime=_regime(cfg),
                                    sizes=tuple(_require(cfg, "N_list")),
                                    objective=objective, alphas=grid,
                                    tol=cfg.get("tolerance", 1e-4))
    _emit(json.dumps(result.to_json_dict(), indent=2) + "\n", out_path)
    return 0


def _cmd_validate_kernel(cfg: dict, out_path: str | None,
                         dump_propagator: str | None,
                         dump_spectrum: str | None) -> int:
    system = _system(cfg)
    baths = _bath_pair(cfg)
    ladder = build_ladder(system, baths)
    rates = marcus_rates(ladder, baths)
    grids = {b.label: kernel.propagator(b) for b in baths}
    specs = {lbl: kernel.spectrum(g) for lbl, g in grids.items()}
    report = {"baths": {}, "rates": [], "time_domain_consistency": None}
    for lbl, spec in specs.items():
        report["baths"][lbl] = {
            "t_max": spec.t_max,
            "q_err": spec.q_err,
            "sum_rule_deviation": kernel.sum_rule_deviation(spec),
            "kms_deviation": kernel.kms_deviation(spec),
            "marcus_distance": kernel.marcus_distance(spec),
            "marcus_pointwise_deviation": kernel.marcus_pointwise_deviation(spec),
        }
    sp_s, sp_d = specs["source"], specs["drain"]
    for i, m in enumerate(ladder.m_values[:-1]):
        for sign, closed in ((+1, rates.kappa_plus[i]), (-1, rates.kappa_minus[i])):
            rq = kernel.exact_rate(ladder, sp_s, sp_d, float(m), sign)
            report["rates"].append({
                "m": float(m), "sign": sign,
                "exact": float(np.real(rq.value)), "exact_err": rq.err,
                "marcus": float(closed),
                "marcus_rel_deviation": abs(rq.value / closed - 1.0),
            })
    m0 = float(ladder.m_values[0])
    fq = kernel.exact_rate(ladder, sp_s, sp_d, m0, +1)
    td = kernel.rate_time_domain(ladder, grids["source"], grids["drain"], m0, +1)
    report["time_domain_consistency"] = {
        "m": m0, "sign": 1,
        "frequency_route": float(np.real(fq.value)),
        "time_route": float(np.real(td.value)),
        "abs_deviation": float(abs(fq.value - td.value)),
    }
    _emit(json.dumps(report, indent=2) + "\n", out_path)
    if dump_propagator is not None:
        lines = ["bath,t,re_q,im_q"]
        for lbl in ("source", "drain"):
            g = grids[lbl]
            lines += [f"{lbl},{_fmt(t)},{_fmt(q.real)},{_fmt(q.imag)}"
                      for t, q in zip(g.times, g.q_values)]
        _emit("\n".join(lines) + "\n", dump_propagator)
    if dump_spectrum is not None:
        lines = ["bath,omega,c"]
        for lbl in ("source", "drain"):
            spec = specs[lbl]
            keep = np.abs(spec.omegas) <= spec.window
            lines += [f"{lbl},{_fmt(w)},{_fmt(c)}"
                      for w, c in zip(spec.omegas[keep], spec.c_values[keep])]
        _emit("\n".join(lines) + "\n", dump_spectrum)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collective-transport",
        description="Steady-state photonic energy transport through a "
                    "collective qubit ladder")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [("steady", "steady-state populations"),
                       ("cumulants", "flux, noise, and Fano ratio"),
                       ("sweep", "coupling sweep"),
                       ("scaling", "optimal-coupling finite-size study"),
                       ("validate-kernel", "exact-kernel diagnostics")]:
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="path to the config file")
        p.add_argument("--out", default=None,
                       help="output path (overrides out_path; default stdout)")
        if name == "scaling":
            p.add_argument("--objective", default="flux",
                           choices=("flux", "noise", "c3"))
        if name == "validate-kernel":
            p.add_argument("--dump-propagator", default=None, metavar="PATH",
                           help="also write the Q_v(t) grids as CSV")
            p.add_argument("--dump-spectrum", default=None, metavar="PATH",
                           help="also write the C_v(omega) grids as CSV")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        out_path = args.out if args.out is not None else cfg.get("out_path")
        if args.command == "steady":
            return _cmd_steady(cfg, out_path)
        if args.command == "cumulants":
            return _cmd_cumulants(cfg, out_path)
        if args.command == "sweep":
            return _cmd_sweep(cfg, out_path)
        if args.command == "scaling":
            return _cmd_scaling(cfg, out_path, args.objective)
        return _cmd_validate_kernel(cfg, out_path, args.dump_propagator,
                                    args.dump_spectrum)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, DisconnectedLadderError, MonotoneObjectiveError,
            SingularBathError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        diagnostics = getattr(exc, "diagnostics", None)
        if diagnostics:
            print(f"diagnostics: {diagnostics}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
