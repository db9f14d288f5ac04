"""Command-line interface.

One subcommand per task.  Options resolve in three layers: built-in
defaults, then a JSON config file (--config; top-level keys apply to
every command, a section named after a command applies to that one),
then explicit command-line flags.  --dump-config prints the effective
configuration as JSON and exits without running.

Exit codes: 0 success, 2 usage or validation error, 3 numeric failure
(series non-convergence, degenerate estimator input).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import DegeneracyError, NumericError
from .io import format_table, read_series, write_table

__all__ = ["main"]


def _floats(text: str):
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


def _emit(columns: dict, out):
    if out:
        write_table(out, columns)
    else:
        sys.stdout.write(format_table(columns))


# ---------------------------------------------------------------- kernel

_KERNEL_DEFAULTS = dict(kind="exponential", param=1.0, t_max=5.0, n=101, check_ode=False,
                        airy_terms=40, seed=0, threads=1)


def _make_kernel(kind: str, param: float, airy_terms: int):
    from .kernels import Airy, Cosine, Exponential, QuadraticGaussian

    table = {
        "exponential": lambda: Exponential(theta=param),
        "cosine": lambda: Cosine(a=param),
        "quadratic": lambda: QuadraticGaussian(a=param),
        "airy": lambda: Airy(n_terms=airy_terms),
    }
    if kind not in table:
        raise ValueError(f"unknown kernel kind: {kind!r}")
    return table[kind]()


def _run_kernel(cfg):
    from .kernels import eval_kernel, kernel_ode_residual

    spec = _make_kernel(cfg["kind"], cfg["param"], cfg["airy_terms"])
    t = np.linspace(0.0, cfg["t_max"], int(cfg["n"]))
    cols = {"t": t, "rho": np.asarray(eval_kernel(spec, t))}
    if cfg["check_ode"]:
        if cfg["kind"] == "exponential":
            raise ValueError("--check-ode applies to second-order kernels only")
        interior = t[(t > 1e-3) & (t < cfg["t_max"] - 1e-3)]
        res = np.array([kernel_ode_residual(spec, float(x), step=1e-4) for x in interior])
        cols = {"t": interior, "rho": np.asarray(eval_kernel(spec, interior)), "ode_residual": res}
    return cols


# ---------------------------------------------------------------- stable

_STABLE_DEFAULTS = dict(alpha=1.5, sigma=1.0, beta=0.0, mu=0.0, x=None,
                        x_min=-5.0, x_max=5.0, n=101, cdf=False, seed=0, threads=1)


def _run_stable(cfg):
    from .stable import StableParams, stable_cdf, stable_pdf_series

    p = StableParams(alpha=cfg["alpha"], sigma=cfg["sigma"], beta=cfg["beta"], mu=cfg["mu"])
    if cfg["x"] is not None:
        x = np.asarray(cfg["x"], dtype=float)
    else:
        x = np.linspace(cfg["x_min"], cfg["x_max"], int(cfg["n"]))
    cols = {"x": x, "pdf": np.asarray(stable_pdf_series(p, x))}
    if cfg["cdf"]:
        cols["cdf"] = np.asarray(stable_cdf(p, x))
    return cols


# -------------------------------------------------------------- simulate

_SIM_DEFAULTS = dict(kernel="cosine", a=1.0, theta=1.0, alpha=2.0, noise="stable",
                     lam=1.0, h=0.05, n=1000, v0="0", substeps=10, seed=0, threads=1)


def _run_simulate(cfg):
    from .kernels import Airy
    from .simulate import simulate_cosine, simulate_general, simulate_ou, simulate_quadratic
    from .streams import substream

    rng = substream(int(cfg["seed"]), "cli-simulate")
    v0 = _floats(str(cfg["v0"]))
    kind = cfg["kernel"]
    if kind == "cosine":
        pair = (v0 + [0.0, 0.0])[:2]
        path = simulate_cosine(cfg["a"], cfg["alpha"], cfg["h"], int(cfg["n"]),
                               v0_pair=(pair[0], pair[1]), rng=rng)
    elif kind == "quadratic":
        path = simulate_quadratic(cfg["a"], cfg["alpha"], cfg["h"], int(cfg["n"]), rng=rng)
    elif kind == "ou":
        noise = _make_noise(cfg)
        path = simulate_ou(cfg["theta"], noise, cfg["h"], int(cfg["n"]), v0=v0[0], rng=rng)
    elif kind == "airy":
        noise = _make_noise(cfg)
        path = simulate_general(Airy(), noise, cfg["h"], int(cfg["n"]), v0=v0[0],
                                rng=rng, substeps=int(cfg["substeps"]))
    else:
        raise ValueError(f"unknown kernel for simulation: {kind!r}")
    return {"t": path.times, "v": path.values}


def _make_noise(cfg):
    from .simulate import BrownianStd, PoissonUnitJump, SymmetricStable

    kind = cfg["noise"]
    if kind == "gaussian":
        return BrownianStd()
    if kind == "stable":
        return SymmetricStable(alpha=cfg["alpha"])
    if kind == "poisson":
        return PoissonUnitJump(lam=cfg["lam"])
    raise ValueError(f"unknown noise kind: {kind!r}")


# ---------------------------------------------------------------- codiff

_CODIFF_DEFAULTS = dict(input=None, column=None, s=1.0, k_max=20, theory=False,
                        a=1.0, alpha=2.0, h=0.05, t=None, seed=0, threads=1)


def _run_codiff(cfg):
    from .dependence import codiff_empirical, codiff_theoretical_cosine

    ks = np.arange(1, int(cfg["k_max"]) + 1)
    cols = {"k": ks}
    if cfg["input"]:
        series = read_series(cfg["input"], column=cfg["column"])
        cols["codiff"] = np.array(
            [codiff_empirical(series, cfg["s"], int(k)) for k in ks]
        )
    if cfg["theory"]:
        t = cfg["t"]
        if t is None:
            raise ValueError("--theory requires --t (path age)")
        cols["codiff_theory"] = np.array(
            [codiff_theoretical_cosine(cfg["a"], cfg["alpha"], cfg["s"],
                                       float(k) * cfg["h"], t) for k in ks]
        )
    if len(cols) == 1:
        raise ValueError("nothing to compute: give --input and/or --theory")
    return cols


# ------------------------------------------------------------------- acf

_ACF_DEFAULTS = dict(kind="exponential", param=1.0, airy_terms=40, sigma0_sq=0.0,
                     t=1.0, h_max=2.0, n=21, seed=0, threads=1)


def _run_acf(cfg):
    from .dependence import acf_theoretical, variance_theoretical

    spec = _make_kernel(cfg["kind"], cfg["param"], cfg["airy_terms"])
    hs = np.linspace(0.0, cfg["h_max"], int(cfg["n"]))
    acv = np.array([acf_theoretical(spec, cfg["sigma0_sq"], cfg["t"], float(h)) for h in hs])
    var = variance_theoretical(spec, cfg["sigma0_sq"], cfg["t"])
    return {"h": hs, "acov": acv, "acor": acv / var}


# --------------------------------------------------------------- triplet

_TRIPLET_DEFAULTS = dict(kernel="ou", theta=1.0, a=1.0, lam=1.0, t=1.0, v0=0.0,
                         gaussian_var=0.0, edges="-1,-0.5,0,0.5,1", seed=0, threads=1)


def _run_triplet(cfg):
    from .levy import TripletSummary, triplet_cosine_poisson, triplet_ou_poisson

    if cfg["kernel"] == "ou":
        trip = triplet_ou_poisson(cfg["theta"], cfg["lam"], cfg["t"],
                                  v0=cfg["v0"], G=cfg["gaussian_var"])
    elif cfg["kernel"] == "cosine":
        trip = triplet_cosine_poisson(cfg["a"], cfg["lam"], cfg["t"],
                                      v0=cfg["v0"], G=cfg["gaussian_var"])
    else:
        raise ValueError(f"triplet supports kernels 'ou' and 'cosine', not {cfg['kernel']!r}")
    edges = _floats(str(cfg["edges"]))
    summ = TripletSummary.from_triplet(trip, edges)
    return {
        "quantity": ["gamma", "A"] + [f"nu[{a},{b})" for a, b in zip(edges, edges[1:])],
        "value": [summ.gamma, summ.A] + list(summ.bin_masses),
    }


# --------------------------------------------------------------- fit-mle

_FITMLE_DEFAULTS = dict(input=None, column=None, h=1.0, n_grid=32, n_polish=2,
                        seed=0, threads=1)


def _run_fit_mle(cfg):
    from .mle import fit_mle

    if not cfg["input"]:
        raise ValueError("fit-mle requires --input")
    series = read_series(cfg["input"], column=cfg["column"])
    est = fit_mle(series, cfg["h"], n_grid=int(cfg["n_grid"]), n_polish=int(cfg["n_polish"]))
    return {
        "param": ["alpha", "sigma_eps", "a", "nll", "converged", "n_obs"],
        "value": [est.alpha, est.sigma_eps, est.a, est.nll,
                  int(est.converged), est.n_obs],
    }


# ----------------------------------------------------------------- study

_STUDY_DEFAULTS = dict(alpha=1.5, a=2.0, h=1.0, n_obs=2000, n_rep=10,
                       n_grid=32, n_polish=2, seed=0, threads=1)


def _run_study(cfg):
    from .mle import StudyConfig, residual_stable_scale, run_study

    sc = StudyConfig(alpha=cfg["alpha"], a=cfg["a"], h=cfg["h"], n_obs=int(cfg["n_obs"]),
                     n_rep=int(cfg["n_rep"]), seed=int(cfg["seed"]),
                     n_grid=int(cfg["n_grid"]), n_polish=int(cfg["n_polish"]),
                     threads=int(cfg["threads"]))
    rep = run_study(sc)
    true = {"alpha": sc.alpha, "sigma_eps": residual_stable_scale(sc.alpha, sc.a, sc.h), "a": sc.a}
    params = ["alpha", "sigma_eps", "a"]
    return {
        "param": params,
        "true": [true[p] for p in params],
        "mean": [true[p] - rep.bias[p] for p in params],
        "bias": [rep.bias[p] for p in params],
        "se": [rep.se[p] for p in params],
        "ci_low": [rep.ci_low[p] for p in params],
        "ci_high": [rep.ci_high[p] for p in params],
    }


# ------------------------------------------------------------- fit-bayes

_FITBAYES_DEFAULTS = dict(input=None, column=None, h=1.0, n_iter=30_000, n_burn=10_000,
                          thin=10, adapt=False, init="mle", seed=0, threads=1)


def _run_fit_bayes(cfg):
    from .bayes import McmcConfig, chain_diagnostics, mcmc_sample
    from .mle import fit_mle

    if not cfg["input"]:
        raise ValueError("fit-bayes requires --input")
    series = read_series(cfg["input"], column=cfg["column"])
    if cfg["init"] == "mle":
        est = fit_mle(series, cfg["h"])
        init = (min(est.alpha, 1.999), est.sigma_eps, est.a)
    else:
        init = tuple(_floats(str(cfg["init"])))
        if len(init) != 3:
            raise ValueError("--init must be 'mle' or 'alpha,sigma,a'")
    mc = McmcConfig(n_iter=int(cfg["n_iter"]), n_burn=int(cfg["n_burn"]),
                    thin=int(cfg["thin"]), adapt=bool(cfg["adapt"]), seed=int(cfg["seed"]))
    chain = mcmc_sample(series, cfg["h"], init, mc)
    summ = chain_diagnostics(chain)
    params = ["alpha", "sigma_eps", "a"]
    return {
        "param": params,
        "mean": [summ.mean[p] for p in params],
        "sd": [summ.sd[p] for p in params],
        "mc_se": [summ.mc_se[p] for p in params],
        "ess": [summ.ess[p] for p in params],
        "accept_rate": [summ.accept_rate[k] for k in ("alpha", "sigma", "a")],
    }


# ------------------------------------------------------------------- gof

_GOF_DEFAULTS = dict(input=None, column=None, statistic="all", alpha0="2.0",
                     n_boot=200, mode="moment", seed=0, threads=1)


def _run_gof(cfg):
    from .gof import run_gof
    from .stable import fit_alpha_symmetric

    if not cfg["input"]:
        raise ValueError("gof requires --input")
    series = read_series(cfg["input"], column=cfg["column"])
    raw = str(cfg["alpha0"])
    if raw == "mle":
        alpha0, _ = fit_alpha_symmetric(series)
    else:
        alpha0 = float(raw)
    stats = ("ks", "ad", "mks", "mc") if cfg["statistic"] == "all" else (cfg["statistic"],)
    results = run_gof(series, alpha0, statistics=stats, n_boot=int(cfg["n_boot"]),
                      mode=cfg["mode"], seed=int(cfg["seed"]))
    return {
        "statistic": [r.statistic for r in results],
        "value": [r.value for r in results],
        "p_value": [r.p_value for r in results],
        "alpha0": [r.alpha0 for r in results],
        "n_boot": [r.n_boot for r in results],
    }


# ------------------------------------------------------------- transform

_TRANSFORM_DEFAULTS = dict(input=None, column=None, op="log-returns", m=5, lag=1,
                           seed=0, threads=1)


def _run_transform(cfg):
    from .transforms import aggregate_returns, difference, log_returns

    if not cfg["input"]:
        raise ValueError("transform requires --input")
    series = read_series(cfg["input"], column=cfg["column"])
    op = cfg["op"]
    if op == "log-returns":
        out = log_returns(series)
    elif op == "aggregate":
        out = aggregate_returns(series, int(cfg["m"]))
    elif op == "difference":
        out = difference(series, int(cfg["lag"]))
    else:
        raise ValueError(f"unknown transform op: {op!r}")
    return {"value": out}


# ----------------------------------------------------------------- wiring

_COMMANDS = {
    "kernel": (_KERNEL_DEFAULTS, _run_kernel),
    "stable": (_STABLE_DEFAULTS, _run_stable),
    "simulate": (_SIM_DEFAULTS, _run_simulate),
    "codiff": (_CODIFF_DEFAULTS, _run_codiff),
    "acf": (_ACF_DEFAULTS, _run_acf),
    "triplet": (_TRIPLET_DEFAULTS, _run_triplet),
    "fit-mle": (_FITMLE_DEFAULTS, _run_fit_mle),
    "study": (_STUDY_DEFAULTS, _run_study),
    "fit-bayes": (_FITBAYES_DEFAULTS, _run_fit_bayes),
    "gof": (_GOF_DEFAULTS, _run_gof),
    "transform": (_TRANSFORM_DEFAULTS, _run_transform),
}

_FLAG_KEYS = {"check_ode", "cdf", "theory", "adapt"}
_STR_KEYS = {"kind", "kernel", "noise", "input", "column", "v0", "edges", "op",
             "statistic", "alpha0", "mode", "init"}
_INT_KEYS = {"n", "k_max", "n_grid", "n_polish", "n_obs", "n_rep", "n_iter",
             "n_burn", "thin", "m", "lag", "substeps", "airy_terms", "seed", "threads"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gouproc",
        description="GOU-type processes: simulation, structure, estimation, fit tests.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name, (defaults, _) in _COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="JSON config file")
        p.add_argument("--out", default=None, help="write CSV here instead of stdout")
        p.add_argument("--dump-config", action="store_true",
                       help="print the effective configuration and exit")
        for key, val in defaults.items():
            flag = "--" + key.replace("_", "-")
            if key in _FLAG_KEYS:
                p.add_argument(flag, action="store_const", const=True, default=None)
            elif key == "x":
                p.add_argument(flag, type=_floats, default=None)
            elif key in _STR_KEYS:
                p.add_argument(flag, type=str, default=None)
            elif key in _INT_KEYS:
                p.add_argument(flag, type=int, default=None)
            else:
                p.add_argument(flag, type=float, default=None)
    return parser


def _effective_config(command: str, args: argparse.Namespace) -> dict:
    defaults, _ = _COMMANDS[command]
    eff = dict(defaults)
    if args.config:
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            raise ValueError("config file must hold a JSON object")
        section = file_cfg.pop(command, None)
        for key, val in file_cfg.items():
            if key in _COMMANDS:
                continue  # section for another command
            if key not in eff:
                raise ValueError(f"config key {key!r} unknown for command {command!r}")
            eff[key] = val
        if section is not None:
            if not isinstance(section, dict):
                raise ValueError(f"config section {command!r} must be an object")
            for key, val in section.items():
                if key not in eff:
                    raise ValueError(f"config key {command}.{key} is unknown")
                eff[key] = val
    for key in defaults:
        val = getattr(args, key, None)
        if val is not None:
            eff[key] = val
    return eff


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        cfg = _effective_config(args.command, args)
        if args.dump_config:
            json.dump(cfg, sys.stdout, indent=2, default=str)
            sys.stdout.write("\n")
            return 0
        _, run = _COMMANDS[args.command]
        columns = run(cfg)
        _emit(columns, args.out)
        return 0
    except (NumericError, DegeneracyError) as exc:
        print(f"gouproc {args.command}: numeric failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"gouproc {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
