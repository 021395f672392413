"""Command-line surface: dumps, verification subcommands, Monte-Carlo runs.

Subcommands
-----------
hankel     dump an orthogonal-polynomial system (H_k, h_k, R_k, Q_k rows)
painleve   dump a Painleve trajectory (t, u, u', v, F series plus poles)
fredholm   dump an Airy-determinant grid over t
verify     run one named verification (thm1.2, thm1.4, thm1.5, noncrit,
           conj1.3, tw-identity, finite-n-identity, diff-identity,
           qn-identity, thm1.6)
mc         Monte-Carlo comparisons (gue, plancherel)

Reports are written as CSV or JSON (complex values split re/im) together
with a machine-readable PASS/FAIL summary; exit status is 0 when every
criterion passed, 1 on any FAIL, 2 on invalid configuration.  Given the same
configuration and seed, reruns are byte-identical (pass --timestamp to embed
a generation time header).  EDGEJUMP_THREADS caps internal parallelism of
parameter sweeps.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import fredholm, painleve, verify, weightlab
from .precision import PrecisionCtx, hankel_ctx
from .report import Report, ReportRow, safe_complex, write_report
from .util import beta_from_kappa, kappa_from_beta

VERIFY_NAMES = ("thm1.2", "thm1.4", "thm1.5", "noncrit", "conj1.3",
                "tw-identity", "finite-n-identity", "diff-identity",
                "qn-identity", "thm1.6")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Normalized options shared by all subcommands.

    Exactly one of beta / kappa may be given; the other is derived through
    the jump relation on the |Re beta| <= 1/2 branch.
    """

    beta: complex | None = None
    kappa: complex | None = None
    ns: tuple = ()
    t: float | None = None
    lambda0: float | None = None
    bits: int | None = None
    tol: float = 1e-12
    nodes: int | None = None
    trials: int = 100_000
    seed: int = 20240
    out: str | None = None
    fmt: str = "csv"
    timestamp: bool = False
    t_min: float | None = None

    def resolved_beta(self) -> complex:
        if self.beta is not None:
            return self.beta
        if self.kappa is not None:
            return beta_from_kappa(self.kappa)
        raise ConfigError("need --beta/--beta-im or --kappa/--kappa-im")

    def resolved_kappa(self) -> complex:
        if self.kappa is not None:
            return self.kappa
        if self.beta is not None:
            return kappa_from_beta(self.beta)
        raise ConfigError("need --beta/--beta-im or --kappa/--kappa-im")


def _parse_ns(raw: str | None) -> tuple:
    if not raw:
        return ()
    ns = tuple(int(x) for x in str(raw).replace(" ", "").split(","))
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ConfigError("n-list must be strictly increasing")
    if any(n < 1 for n in ns):
        raise ConfigError("n values must be positive")
    return ns


def _build_config(args) -> RunConfig:
    merged: dict = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            merged.update(json.load(fh))
    for key in ("beta", "beta_im", "kappa", "kappa_im", "n", "t", "lambda0",
                "bits", "tol", "nodes", "trials", "seed", "out", "format",
                "timestamp", "t_min"):
        v = getattr(args, key.replace("-", "_"), None)
        if v is not None:
            merged[key] = v
    beta = kappa = None
    if merged.get("beta") is not None or merged.get("beta_im") is not None:
        beta = complex(float(merged.get("beta") or 0.0),
                       float(merged.get("beta_im") or 0.0))
    if merged.get("kappa") is not None or merged.get("kappa_im") is not None:
        kappa = complex(float(merged.get("kappa") or 0.0),
                        float(merged.get("kappa_im") or 0.0))
    if beta is not None and kappa is not None:
        raise ConfigError("give beta or kappa, not both")
    if beta is not None and abs(beta.real) > 0.5:
        raise ConfigError("need |Re beta| <= 1/2")
    return RunConfig(
        beta=beta, kappa=kappa, ns=_parse_ns(merged.get("n")),
        t=None if merged.get("t") is None else float(merged["t"]),
        lambda0=None if merged.get("lambda0") is None else float(merged["lambda0"]),
        bits=None if merged.get("bits") is None else int(merged["bits"]),
        tol=float(merged.get("tol", 1e-12)),
        nodes=None if merged.get("nodes") is None else int(merged["nodes"]),
        trials=int(merged.get("trials", 100_000)),
        seed=int(merged.get("seed", 20240)),
        out=merged.get("out"), fmt=merged.get("format", "csv"),
        timestamp=bool(merged.get("timestamp", False)),
        t_min=None if merged.get("t_min") is None else float(merged["t_min"]),
    )


def _emit(reports, cfg: RunConfig) -> int:
    reports = list(reports)
    if cfg.out:
        write_report(reports, cfg.out, fmt=cfg.fmt, timestamp=cfg.timestamp)
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        print(f"[{status}] {rep.name}" + (f": {rep.detail}" if rep.detail else ""))
        if not cfg.out:
            for row in rep.sorted_rows()[:40]:
                rec = row.as_record()
                brief = {k: v for k, v in rec.items() if v not in (None, "")}
                print("   ", brief)
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# dump subcommands
# ---------------------------------------------------------------------------

def _cmd_hankel(cfg: RunConfig) -> int:
    if not cfg.ns:
        raise ConfigError("hankel needs --n")
    beta = cfg.beta if cfg.beta is not None else (
        beta_from_kappa(cfg.kappa) if cfg.kappa is not None else 0j)
    N = max(cfg.ns)
    ctx = PrecisionCtx(cfg.bits) if cfg.bits else hankel_ctx(N)
    if cfg.t is not None:
        params = weightlab.WeightParams.edge(beta, N, cfg.t, ctx)
    else:
        params = weightlab.WeightParams.direct(beta, cfg.lambda0 or 0.0)
    sys = weightlab.build_op_system(params, N, ctx)
    rep = Report("hankel-dump", passed=True,
                 detail=f"agreed digits {sys.agreed}")
    for k in range(N + 1):
        rep.add(ReportRow(label="opsystem-H", n=k, lambda0=float(params.lambda0),
                          beta=complex(beta), finite=safe_complex(sys.H[k])))
        rep.add(ReportRow(label="opsystem-h", n=k, lambda0=float(params.lambda0),
                          beta=complex(beta), finite=safe_complex(sys.h[k])))
        rep.add(ReportRow(label="opsystem-Q", n=k, lambda0=float(params.lambda0),
                          beta=complex(beta), finite=safe_complex(sys.Q[k])))
        if k >= 1:
            rep.add(ReportRow(label="opsystem-R", n=k, lambda0=float(params.lambda0),
                              beta=complex(beta), finite=safe_complex(sys.R[k])))
    return _emit([rep], cfg)


def _cmd_painleve(cfg: RunConfig) -> int:
    kap = cfg.resolved_kappa()
    t_min = cfg.t_min if cfg.t_min is not None else -12.0
    sol = painleve.solve_as(kap, t_min, cfg.tol)
    rep = Report("painleve-dump", passed=True,
                 detail=f"{len(sol.poles)} poles, start t = {sol.t_start}")
    for t in sol.grid(241):
        u, up, v, F = sol.state(t)
        rep.add(ReportRow(label="trajectory-u", t=float(t), kappa=kap,
                          finite=safe_complex(u)))
        rep.add(ReportRow(label="trajectory-v", t=float(t), kappa=kap,
                          finite=safe_complex(v)))
        rep.add(ReportRow(label="trajectory-F", t=float(t), kappa=kap,
                          finite=safe_complex(F)))
    for p in sol.poles:
        rep.add(ReportRow(label="pole", t=p.location, kappa=kap,
                          finite=complex(p.sign), asym=complex(p.cubic)))
    return _emit([rep], cfg)


def _cmd_fredholm(cfg: RunConfig) -> int:
    kap = cfg.resolved_kappa()
    k2 = kap * kap
    t_lo = cfg.t_min if cfg.t_min is not None else -8.0
    t_hi = cfg.t if cfg.t is not None else 4.0
    rep = Report("fredholm-dump", passed=True)
    for t in np.arange(t_lo, t_hi + 0.25, 0.5):
        cfg_n = fredholm.default_nystrom(float(t), cfg.tol)
        if cfg.nodes:
            cfg_n = fredholm.NystromConfig(m=cfg.nodes, T=cfg_n.T, tol=cfg.tol)
        det = fredholm.airy_fredholm_det(k2, float(t), cfg_n)
        logdet = fredholm.airy_fredholm_logdet(k2, float(t), cfg_n)
        rep.add(ReportRow(label="airy-determinant", t=float(t), kappa=kap,
                          finite=det, asym=logdet))
    return _emit([rep], cfg)


# ---------------------------------------------------------------------------
# verify / mc subcommands
# ---------------------------------------------------------------------------

def _cmd_verify(cfg: RunConfig, which: str) -> int:
    if which == "thm1.2":
        kwargs = {}
        if cfg.beta is not None:
            kwargs["beta"] = cfg.beta
        if cfg.ns:
            kwargs["ns"] = cfg.ns
        if cfg.t is not None:
            kwargs["ts"] = (cfg.t,)
        rep = verify.check_edge_hankel(**kwargs)
    elif which == "thm1.4":
        kwargs = {}
        if cfg.beta is not None:
            kwargs["beta"] = cfg.beta
        if cfg.ns:
            kwargs["ns"] = cfg.ns
        rep = verify.check_recurrence_asymptotics(**kwargs)
    elif which == "thm1.5":
        kwargs = {}
        if cfg.beta is not None:
            kwargs["beta"] = cfg.beta
        if cfg.ns:
            kwargs["ns"] = cfg.ns
        if cfg.t is not None:
            kwargs["t"] = cfg.t
        rep = verify.check_polynomial_asymptote(**kwargs)
    elif which == "noncrit":
        kwargs = {}
        if cfg.beta is not None:
            kwargs["beta"] = cfg.beta
        if cfg.ns:
            kwargs["ns"] = cfg.ns
        rep = verify.check_bulk_hankel(**kwargs)
    elif which == "conj1.3":
        kwargs = {}
        if cfg.beta is not None:
            kwargs["beta"] = cfg.beta
        rep = verify.check_airy_tail(**kwargs)
    elif which == "tw-identity":
        kwargs = {"tol": cfg.tol}
        if cfg.kappa is not None:
            kwargs["kappas"] = (cfg.kappa.real if cfg.kappa.imag == 0 else cfg.kappa,)
        if cfg.t_min is not None:
            kwargs["t_lo"] = cfg.t_min
        rep = verify.check_tw_identity(**kwargs)
    elif which == "finite-n-identity":
        kwargs = {}
        if cfg.ns:
            kwargs["ns"] = cfg.ns
        if cfg.beta is not None:
            kwargs["betas"] = (cfg.beta,)
        if cfg.lambda0 is not None:
            kwargs["lambda0s"] = (cfg.lambda0,)
        if cfg.bits:
            kwargs["bits"] = cfg.bits
        rep = verify.check_finite_n_identity(**kwargs)
    elif which in ("diff-identity", "qn-identity"):
        rep = verify.check_exact_identities()
    elif which == "thm1.6":
        rep = verify.check_singular_regime()
    else:
        raise ConfigError(f"unknown verification {which!r}; choose from {VERIFY_NAMES}")
    return _emit([rep], cfg)


def _cmd_mc(cfg: RunConfig, which: str) -> int:
    if which == "gue":
        reps = [
            verify.check_mc_gue(n=cfg.ns[0] if cfg.ns else 8,
                                lambda0=cfg.lambda0 if cfg.lambda0 is not None else 3.0,
                                trials=cfg.trials, master=cfg.seed),
            verify.check_mc_thinning(trials=cfg.trials, master=cfg.seed + 1),
        ]
    elif which == "plancherel":
        reps = [verify.check_mc_plancherel(
            N=cfg.ns[0] if cfg.ns else 10_000,
            trials=min(cfg.trials, 5000), master=cfg.seed)]
    else:
        raise ConfigError("mc subcommand is 'gue' or 'plancherel'")
    return _emit(reps, cfg)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--beta", type=float, help="Re beta of the jump exponent")
    p.add_argument("--beta-im", type=float, help="Im beta of the jump exponent")
    p.add_argument("--kappa", type=float, help="Re kappa of the deformation")
    p.add_argument("--kappa-im", type=float, help="Im kappa")
    p.add_argument("--n", type=str, help="strictly increasing n list, e.g. 20,40,80")
    p.add_argument("--t", type=float, help="edge coordinate t")
    p.add_argument("--t-min", type=float, help="lower end of a t sweep")
    p.add_argument("--lambda0", type=float, help="cut point (direct form)")
    p.add_argument("--bits", type=int, help="mantissa bits for exact computations")
    p.add_argument("--tol", type=float, help="ODE/Nystrom tolerance")
    p.add_argument("--nodes", type=int, help="quadrature node count override")
    p.add_argument("--trials", type=int, help="Monte-Carlo trial count")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--out", type=str, help="report file path")
    p.add_argument("--format", choices=("csv", "json"), help="report format")
    p.add_argument("--timestamp", action="store_const", const=True,
                   help="embed a generation timestamp header line")
    p.add_argument("--config", type=str, help="JSON config file (flags override)")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="edgejump",
        description="Verification lab for jump-deformed Gaussian spectra: "
                    "Hankel determinants, Painleve II transcendents, "
                    "Airy-kernel determinants, and their Monte-Carlo twins.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("hankel", "painleve", "fredholm"):
        _add_common(sub.add_parser(name))
    vp = sub.add_parser("verify")
    vp.add_argument("which", choices=VERIFY_NAMES)
    _add_common(vp)
    mcp = sub.add_parser("mc")
    mcp.add_argument("which", choices=("gue", "plancherel"))
    _add_common(mcp)

    args = ap.parse_args(argv)
    try:
        cfg = _build_config(args)
        if args.command == "hankel":
            return _cmd_hankel(cfg)
        if args.command == "painleve":
            return _cmd_painleve(cfg)
        if args.command == "fredholm":
            return _cmd_fredholm(cfg)
        if args.command == "verify":
            return _cmd_verify(cfg, args.which)
        if args.command == "mc":
            return _cmd_mc(cfg, args.which)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
