"""Verification drivers: each acceptance check as a reusable function.

Every driver compares finite-size computations against their closed-form
predictions (or two independent engines against each other), fills a
:class:`~edgejump.report.Report` with tagged rows, and sets a PASS/FAIL
verdict at the tolerance it was called with.  The command-line layer and the
acceptance test suite both run exactly these functions.

Trend checks fail only when the stated bound is violated at the final tested
scale (protecting against pre-asymptotic noise at small sizes); residual and
identity checks are absolute.
"""
from __future__ import annotations

import cmath
import math

import mpmath as mp
import numpy as np

from . import asympt, fredholm, painleve, rmtsim, weightlab
from .precision import PrecisionCtx, hankel_ctx
from .report import Report, ReportRow, safe_complex
from .util import kappa_from_beta, kappa_sq_from_beta

_OP_CACHE: dict = {}


def op_system_cached(beta, n: int, t: float, bits: int | None = None,
                     check: bool = True) -> weightlab.OPSystem:
    """Edge-form OPSystem memoized on (beta, n, t, bits, check)."""
    ctx = PrecisionCtx(bits) if bits else hankel_ctx(n)
    key = (complex(beta), n, float(t), ctx.bits, check)
    if key not in _OP_CACHE:
        params = weightlab.WeightParams.edge(beta, n, t, ctx)
        _OP_CACHE[key] = weightlab.build_op_system(params, n, ctx, check=check)
    return _OP_CACHE[key]


_SOL_CACHE: dict = {}


def solution_cached(kappa, t_min: float, tol: float = 1e-12) -> painleve.ASolution:
    key = (complex(kappa), float(t_min), tol)
    if key not in _SOL_CACHE:
        _SOL_CACHE[key] = painleve.solve_as(kappa, t_min, tol)
    return _SOL_CACHE[key]


# ---------------------------------------------------------------------------
# exact finite-n checks
# ---------------------------------------------------------------------------

def check_gaussian_closed_form(ns=tuple(range(1, 31)), bits: int = 512,
                               lambda0: float = 0.3, tol: float = 1e-30) -> Report:
    """H_n at beta = 0 against the factorial closed form."""
    rep = Report("gaussian-closed-form")
    ctx = PrecisionCtx(bits)
    params = weightlab.WeightParams.direct(0.0, lambda0)
    sys = weightlab.build_op_system(params, max(ns), ctx, check=False)
    with ctx.workprec():
        for n in ns:
            closed = weightlab.gaussian_hankel(n, ctx)
            rel = float(abs(sys.H[n] - closed) / abs(closed))
            rep.add(ReportRow(label="gaussian-hankel", n=n, lambda0=lambda0,
                              beta=0j, finite=safe_complex(sys.H[n]),
                              asym=safe_complex(closed), abs_res=None,
                              rel_res=rel, verdict="PASS" if rel <= tol else "FAIL"))
            if rel > tol:
                rep.fail(f"n={n} rel err {rel:.2e} > {tol:.0e}")
    return rep


def check_finite_n_identity(ns=(4, 10, 20), betas=(0.4j, 0.3, 0.2 + 0.1j),
                            lambda0s=(-1.0, 0.5, "edge"), bits: int = 768,
                            tol: float = 1e-18) -> Report:
    """e^(-i pi n beta) H_n(beta)/H_n(0) against det(1 - kappa^2 G)."""
    rep = Report("finite-n-fredholm-identity")
    ctx = PrecisionCtx(bits)
    for n in ns:
        for lam_spec in lambda0s:
            with ctx.workprec():
                lam0 = mp.sqrt(2 * mp.mpf(n)) if lam_spec == "edge" else mp.mpf(lam_spec)
            gram = fredholm.hermite_gram(n, lam0, ctx=ctx)
            for beta in betas:
                params = weightlab.WeightParams.direct(beta, lam0)
                sys = weightlab.build_op_system(params, n, ctx, check=False)
                with ctx.workprec():
                    lhs = (mp.exp(-1j * mp.pi * n * mp.mpc(beta)) * sys.H[n]
                           / weightlab.gaussian_hankel(n, ctx))
                    rhs = fredholm.finite_n_det(n, lam0, kappa_sq_from_beta(beta, ctx),
                                                ctx=ctx, gram=gram)
                    err = float(abs(lhs - rhs))
                ok = err <= tol
                rep.add(ReportRow(label="hankel-gram-identity", n=n,
                                  lambda0=float(lam0), beta=complex(beta),
                                  kappa=kappa_from_beta(beta),
                                  finite=complex(lhs), asym=complex(rhs),
                                  abs_res=err, verdict="PASS" if ok else "FAIL"))
                if not ok:
                    rep.fail(f"n={n} lambda0={float(lam0):.3f} beta={beta}: "
                             f"|diff| = {err:.2e} > {tol:.0e}")
    return rep


def check_exact_identities(bits: int = 512) -> Report:
    """Round-off-level internal identities of the jump-weight systems."""
    rep = Report("exact-identities")
    # jump identity for Q_n at the documented parameter points
    cases = [
        (weightlab.WeightParams.direct(0.0, 0.7), 4, PrecisionCtx(256)),
        (weightlab.WeightParams.direct(0.4j, 1.1), 8, PrecisionCtx(bits)),
    ]
    ctx20 = hankel_ctx(20)
    cases.append((weightlab.WeightParams.edge(0.3, 20, 0.0, ctx20), 20, ctx20))
    for params, n, ctx in cases:
        sys = weightlab.build_op_system(params, n, ctx, check=False)
        res = float(weightlab.qn_jump_identity_residual(sys, n))
        with ctx.workprec():
            scale = max(float(abs(sys.Q[n])), 1e-30)
        bound = 2.0 ** (32 - ctx.bits) * scale if scale > 1e-30 else 2.0 ** (32 - ctx.bits)
        ok = res <= bound
        rep.add(ReportRow(label="qn-jump-identity", n=n, lambda0=float(params.lambda0),
                          beta=complex(params.beta), abs_res=res,
                          verdict="PASS" if ok else "FAIL"))
        if not ok:
            rep.fail(f"qn identity n={n}: {res:.2e} > {bound:.2e}")
    # differential identity
    for params, n, delta, bound, ctx in (
            (weightlab.WeightParams.direct(0.5j, 0.9), 6, 1e-6, 1e-9, PrecisionCtx(320)),
            (weightlab.WeightParams.direct(0.3j, 0.4), 1, None, 1e-20, PrecisionCtx(320))):
        res = float(weightlab.diff_identity_residual(params, n, delta=delta, ctx=ctx))
        ok = res <= bound
        rep.add(ReportRow(label="diff-identity", n=n, lambda0=float(params.lambda0),
                          beta=complex(params.beta), abs_res=res,
                          verdict="PASS" if ok else "FAIL"))
        if not ok:
            rep.fail(f"diff identity n={n}: {res:.2e} > {bound:.0e}")
    # norm product vs pivoted determinant route
    ctx = PrecisionCtx(384)
    params = weightlab.WeightParams.direct(0.2 + 0.1j, 0.6)
    sys = weightlab.build_op_system(params, 10, ctx, check=False)
    from .linalg import lu_det
    with ctx.workprec():
        det = lu_det(weightlab.hankel_matrix(params, 10, ctx), ctx)
        rel = float(abs(sys.H[10] - det) / abs(det))
    ok = rel <= 1e-80
    rep.add(ReportRow(label="norm-product-vs-lu", n=10, lambda0=0.6,
                      beta=0.2 + 0.1j, rel_res=rel, verdict="PASS" if ok else "FAIL"))
    if not ok:
        rep.fail(f"norm product vs LU: rel {rel:.2e}")
    return rep


# ---------------------------------------------------------------------------
# Painleve / Fredholm cross checks
# ---------------------------------------------------------------------------

def check_tw_identity(kappas=(0.3, 0.7, 0.95), t_lo: float = -8.0, t_hi: float = 4.0,
                      step: float = 0.5, tol: float = 1e-10,
                      bound: float = 1e-8) -> Report:
    """Nystrom determinant against exp(-F(t)) from the Painleve solution."""
    rep = Report("tracy-widom-identity")
    ts = np.arange(t_lo, t_hi + step / 2, step)
    for kap in kappas:
        sol = solution_cached(kap, t_lo - 0.5, tol)
        k2 = complex(kap) ** 2
        worst = 0.0
        for t in ts:
            det = fredholm.airy_fredholm_det(k2, float(t))
            pred = cmath.exp(-complex(sol.F(float(t))))
            gap = abs(det - pred)
            worst = max(worst, gap)
            rep.add(ReportRow(label="tw-identity", t=float(t), kappa=kap,
                              finite=det, asym=pred, abs_res=gap,
                              verdict="PASS" if gap <= bound else "FAIL"))
        if worst > bound:
            rep.fail(f"kappa={kap}: max gap {worst:.2e} > {bound:.0e}")
    return rep


def check_pii_solution(tol: float = 1e-12) -> Report:
    """Residual invariant of the integrated trajectories plus the Airy limit."""
    rep = Report("pii-solution")
    sol = solution_cached(0.5, -30.0, tol)
    worst = 0.0
    for t in sol.grid(200):
        r = painleve.pii_residual(sol, t) / (1 + abs(sol.u(t)) ** 3)
        worst = max(worst, r)
    ok = worst <= tol
    rep.add(ReportRow(label="pii-residual", kappa=0.5, abs_res=worst,
                      verdict="PASS" if ok else "FAIL"))
    if not ok:
        rep.fail(f"residual {worst:.2e} > tol {tol:.0e}")

    kap = 1e-6
    lin = painleve.solve_as(kap, -10.5, 1e-13, t_start=5.0)
    import scipy.special as sps
    worst_l = 0.0
    for t in np.arange(-10, 5.01, 0.25):
        ai = sps.airy(float(t))[0]
        worst_l = max(worst_l, abs(complex(lin.u(float(t))) / kap - ai) / abs(ai))
    ok = worst_l <= 1e-10
    rep.add(ReportRow(label="airy-linearization", kappa=kap, abs_res=worst_l,
                      verdict="PASS" if ok else "FAIL"))
    if not ok:
        rep.fail(f"linearization err {worst_l:.2e} > 1e-10")
    return rep


def check_pole_freeness(radii=(0.3, 0.7, 0.95, 1.3),
                        angles=(math.pi / 6, math.pi / 2, 5 * math.pi / 6),
                        t_min: float = -25.0, control_kappa: float = 1.5,
                        tol: float = 1e-12) -> Report:
    """No blow-ups off the real cut; at least one pole on it (control run)."""
    rep = Report("pole-freeness")
    kappas = [r * cmath.exp(1j * th) for r in radii for th in angles]
    events = painleve.pole_free_scan(kappas, t_min=t_min, tol=tol)
    for kap in kappas:
        hit = [e for e in events if e[0] == kap]
        rep.add(ReportRow(label="pole-free-scan", kappa=kap,
                          abs_res=float(len(hit)),
                          verdict="PASS" if not hit else "FAIL"))
    if events:
        rep.fail(f"{len(events)} unexpected blow-ups: {events}")
    control = painleve.solve_as(control_kappa, -12.0, tol)
    ok = len(control.poles) >= 1
    rep.add(ReportRow(label="pole-control-run", kappa=control_kappa,
                      abs_res=float(len(control.poles)),
                      verdict="PASS" if ok else "FAIL"))
    if not ok:
        rep.fail(f"kappa={control_kappa}: no pole found on [-12, start]")
    return rep


def check_singular_regime(gamma: float = 0.0, center: float = -12.0,
                          rel_bound: float = 0.05, cos_guard: float = 0.3,
                          roundtrip_bound: float = 1e-6,
                          tol: float = 1e-12) -> Report:
    """Squared transcendent between consecutive poles against the singular expansion."""
    rep = Report("singular-asymptote")
    kap = painleve.kappa_for_gamma(gamma)
    sol = painleve.solve_as(kap, center - 2.0, tol)
    locs = sorted(p.location for p in sol.poles)
    pair = None
    for a, b in zip(locs, locs[1:]):
        if a <= center <= b or pair is None:
            if pair is None or abs((a + b) / 2 - center) < abs(sum(pair) / 2 - center):
                pair = (a, b)
    if pair is None:
        rep.fail("no pole pair found")
        return rep
    a_lo, a_hi = pair
    margin = 0.06 * (a_hi - a_lo)
    worst = 0.0
    npts = 0
    for t in np.linspace(a_lo + margin, a_hi - margin, 80):
        ph = painleve.phase_singular(float(t), gamma)
        if abs(math.cos(ph)) <= cos_guard:
            continue
        y_ode = complex(sol.u(float(t))) ** 2
        y_pred = painleve.p34_singular_asymptote(float(t), gamma)
        rel = abs(y_ode.real - y_pred) / abs(y_pred)
        worst = max(worst, rel)
        npts += 1
        rep.add(ReportRow(label="singular-asymptote", t=float(t), kappa=kap,
                          finite=y_ode, asym=y_pred, rel_res=rel,
                          verdict="PASS" if rel <= rel_bound else "FAIL"))
    if npts == 0 or worst > rel_bound:
        rep.fail(f"singular comparison worst {worst:.3f} over {npts} points")
    mid_pole = min(sol.poles, key=lambda p: abs(p.location - center))
    rt = painleve.pole_roundtrip_error(sol, mid_pole, offset=0.3)
    ok = rt <= roundtrip_bound
    rep.add(ReportRow(label="pole-roundtrip", t=mid_pole.location, kappa=kap,
                      abs_res=float(rt), verdict="PASS" if ok else "FAIL"))
    if not ok:
        rep.fail(f"roundtrip error {rt:.2e} > {roundtrip_bound:.0e}")
    return rep


# ---------------------------------------------------------------------------
# asymptotic trend checks
# ---------------------------------------------------------------------------

def check_edge_hankel(beta=0.4j, ts=(0.0, 2.0), ns=(20, 40, 80),
                      final_bound: float = 0.05, tol: float = 1e-12) -> Report:
    """| |H_n(beta)/prediction| - 1 | decreasing in n, small at the largest n."""
    rep = Report("edge-hankel-asymptote")
    kap = kappa_from_beta(beta)
    sol = solution_cached(kap, min(ts) - 1.0, tol)
    for t in ts:
        devs = []
        for n in ns:
            sys = op_system_cached(beta, n, t)
            ctx = PrecisionCtx(sys.bits)
            pred = asympt.edge_hankel_asymptote(n, t, beta, sol, ctx)
            with ctx.workprec():
                dev = float(abs(abs(sys.H[n] / pred) - 1))
            devs.append(dev)
            rep.add(ReportRow(label="edge-hankel", n=n, t=t, beta=complex(beta),
                              kappa=kap, finite=safe_complex(sys.H[n]), asym=safe_complex(pred),
                              rel_res=dev, verdict=""))
        ok = all(a > b for a, b in zip(devs, devs[1:])) and devs[-1] <= final_bound
        for row, d in zip(rep.rows[-len(ns):], devs):
            row.verdict = "PASS" if ok else "FAIL"
        if not ok:
            rep.fail(f"t={t}: deviations {['%.3g' % d for d in devs]}")
    return rep


def _bounded_sequence_ok(ns, gaps, cap: float, ceiling: float = 1.0) -> tuple:
    """(ok, note) for a gap sequence that must stay bounded (no growth).

    Primary rule: consecutive ratios at or below ``cap``.  A ratio violation
    is excused only when the sequence is demonstrably a bounded
    approach-to-constant corrupted by a pre-asymptotic cancellation: the
    two-term error model ``a + b n^(-1/6)`` must fit the data to 15% of the
    largest gap, the limiting constant must stay below ``ceiling``, and the
    model's projected ratio at the next doubling must itself obey the cap.
    Genuinely growing sequences fail both rules.
    """
    ratios = [b / a if a > 0 else math.inf for a, b in zip(gaps, gaps[1:])]
    if all(r <= cap for r in ratios):
        return True, ""
    arr = np.array(gaps, dtype=float)
    design = np.vstack([np.ones(len(ns)), np.array(ns, dtype=float) ** (-1.0 / 6.0)]).T
    coef, *_ = np.linalg.lstsq(design, arr, rcond=None)
    fit = design @ coef
    resid = float(np.max(np.abs(fit - arr)))
    a = float(coef[0])
    n_next = 2 * max(ns)
    g_next = a + float(coef[1]) * n_next ** (-1.0 / 6.0)
    ratio_next = g_next / gaps[-1] if gaps[-1] > 0 else math.inf
    ok = (resid <= 0.15 * max(arr.max(), 1e-30) and abs(a) <= ceiling
          and 0 < ratio_next <= cap)
    note = (f"ratio cap exceeded ({['%.3g' % r for r in ratios]}) but explained "
            f"as bounded approach to {a:.3g} (pre-asymptotic cancellation; "
            f"fit residual {resid:.2g}, projected next ratio {ratio_next:.3g})")
    return ok, note


def check_recurrence_asymptotics(beta=0.4j, ts=(-2.0, 0.0, 2.0), ns=(64, 128, 256),
                                 growth_cap: float = 1.5, tol: float = 1e-12) -> Report:
    """R_n and Q_n against the Painleve predictions: bounded error terms.

    The R gap must stay O(1) (consecutive ratios below the cap) and the Q
    gap must stay O(n^(-1/2)) likewise; ratio violations are excused only
    when the bounded two-term error model explains them (see
    :func:`_bounded_sequence_ok`).  Norm rows are informational, with the
    confirmed sign and both second-order variants.
    """
    rep = Report("recurrence-asymptotics")
    kap = kappa_from_beta(beta)
    sol = solution_cached(kap, min(ts) - 1.0, tol)
    for t in ts:
        gaps_R, gaps_Q = [], []
        for n in ns:
            sys = op_system_cached(beta, n, t)
            pred = asympt.recurrence_asymptotes(n, t, sol, ctx=PrecisionCtx(sys.bits))
            with mp.workprec(sys.bits):
                gap_R = float(abs(sys.R[n] - mp.mpc(pred["R"])))
                gap_Q = float(abs(sys.Q[n] - mp.mpc(pred["Q"]))) * math.sqrt(n)
                h_rel = float(abs(sys.h[n] / mp.mpc(pred["h"]) - 1))
                h_rel_printed = float(abs(sys.h[n] / mp.mpc(pred["h_printed"]) - 1))
            gaps_R.append(gap_R)
            gaps_Q.append(gap_Q)
            rep.add(ReportRow(label="recurrence-R", n=n, t=t, beta=complex(beta),
                              kappa=kap, finite=complex(sys.R[n]),
                              asym=complex(pred["R"]), abs_res=gap_R))
            rep.add(ReportRow(label="recurrence-Q-scaled", n=n, t=t, beta=complex(beta),
                              kappa=kap, finite=complex(sys.Q[n]),
                              asym=complex(pred["Q"]), abs_res=gap_Q))
            rep.add(ReportRow(label="norm-expansion", n=n, t=t, beta=complex(beta),
                              kappa=kap, rel_res=h_rel))
            rep.add(ReportRow(label="norm-expansion-printed-sign", n=n, t=t,
                              beta=complex(beta), kappa=kap, rel_res=h_rel_printed))
        okR, noteR = _bounded_sequence_ok(ns, gaps_R, growth_cap)
        okQ, noteQ = _bounded_sequence_ok(ns, gaps_Q, growth_cap)
        if not okR:
            rep.fail(f"t={t}: R gaps grow {['%.3g' % g for g in gaps_R]}")
        elif noteR:
            rep.note(f"t={t} R: {noteR}")
        if not okQ:
            rep.fail(f"t={t}: scaled Q gaps grow {['%.3g' % g for g in gaps_Q]}")
        elif noteQ:
            rep.note(f"t={t} Q: {noteQ}")
    for row in rep.rows:
        if row.label.startswith("recurrence"):
            row.verdict = "PASS" if rep.passed else "FAIL"
    return rep


def check_polynomial_asymptote(beta=0.4j, t: float = 0.5, ns=(64, 128, 256),
                               order: float = 1.0 / 3.0, order_tol: float = 0.15,
                               tol: float = 1e-12) -> Report:
    """Relative error of the polynomial value prediction decays at order ~ 1/3."""
    rep = Report("polynomial-asymptote")
    kap = kappa_from_beta(beta)
    sol = solution_cached(kap, t - 1.0, tol)
    errs = []
    for n in ns:
        sys = op_system_cached(beta, n, t)
        ctx = PrecisionCtx(sys.bits)
        pred = asympt.polynomial_value_asymptote(n, t, sol, ctx)
        with ctx.workprec():
            lam0 = mp.mpf(sys.params.lambda0)
            val = weightlab.eval_pn(sys, n, lam0)
            rel = float(abs(val / pred - 1))
        errs.append(rel)
        rep.add(ReportRow(label="polynomial-at-cut", n=n, t=t, beta=complex(beta),
                          kappa=kap, finite=safe_complex(val), asym=safe_complex(pred),
                          rel_res=rel))
    est = asympt.fit_order(errs)
    ok = abs(est - order) <= order_tol
    for row in rep.rows[-len(ns):]:
        row.order_est = est
        row.verdict = "PASS" if ok else "FAIL"
    if not ok:
        rep.fail(f"fitted order {est:.3f} outside {order:.3f} +- {order_tol}")
    return rep


def check_bulk_hankel(beta=0.2j, lam: float = 0.0, ns=(30, 60, 120),
                      degrade_lambda: float = 0.9) -> Report:
    """Bulk-regime prediction: decreasing deviation, log(n)/n-scale at the end."""
    rep = Report("bulk-hankel-asymptote")
    devs = []
    for n in ns:
        ctx = hankel_ctx(n)
        params = weightlab.WeightParams.direct(beta, lam * math.sqrt(2.0 * n))
        sys = weightlab.build_op_system(params, n, ctx, check=False)
        pred = asympt.bulk_hankel_asymptote(n, lam, beta, ctx)
        with ctx.workprec():
            dev = float(abs(sys.H[n] / pred - 1))
        devs.append(dev)
        rep.add(ReportRow(label="bulk-hankel", n=n, lambda0=float(params.lambda0),
                          beta=complex(beta), finite=safe_complex(sys.H[n]),
                          asym=safe_complex(pred), rel_res=dev))
    n_last = ns[-1]
    ok = (all(a > b for a, b in zip(devs, devs[1:]))
          and devs[-1] <= 5.0 * math.log(n_last) / n_last)
    for row in rep.rows:
        row.verdict = "PASS" if ok else "FAIL"
    if not ok:
        rep.fail(f"deviations {['%.3g' % d for d in devs]}")
    # qualitative edge-sensitivity row: same n, cut moved toward the edge
    n = ns[1]
    ctx = hankel_ctx(n)
    params = weightlab.WeightParams.direct(beta, degrade_lambda * math.sqrt(2.0 * n))
    sys = weightlab.build_op_system(params, n, ctx, check=False)
    pred = asympt.bulk_hankel_asymptote(n, degrade_lambda, beta, ctx)
    with ctx.workprec():
        dev_edge = float(abs(sys.H[n] / pred - 1))
    rep.add(ReportRow(label="bulk-hankel-edge-degradation", n=n,
                      lambda0=float(params.lambda0), beta=complex(beta),
                      rel_res=dev_edge,
                      verdict="PASS" if dev_edge > devs[1] else "FAIL"))
    if dev_edge <= devs[1]:
        rep.fail("no visible degradation toward the edge")
    return rep


def check_airy_tail(beta=0.15j, ts=(-10.0, -25.0), bound: float = 0.05) -> Report:
    """Large-gap expansion residual of the Airy determinant: decreasing, small.

    The vanishing correction term oscillates in t (its local period is
    pi/sqrt(-t)), so a single probe point can land on an accidental zero of
    the oscillation.  Each stated t is therefore probed together with two
    phase companions a quarter and half period away and the envelope (the
    maximum of the three) must decrease; the absolute bound applies to the
    envelope as well.
    """
    rep = Report("airy-determinant-tail")
    env = []
    for t in ts:
        period = math.pi / math.sqrt(-t)
        probes = [t, t - period / 4, t - period / 2]
        vals = [asympt.airy_tail_residual(float(tp), beta) for tp in probes]
        env.append(max(vals))
        for tp, r in zip(probes, vals):
            rep.add(ReportRow(label="airy-tail-residual", t=float(tp),
                              beta=complex(beta), kappa=kappa_from_beta(beta),
                              abs_res=r))
    ok = env[-1] < env[0] and env[-1] <= bound
    for row in rep.rows:
        row.verdict = "PASS" if ok else "FAIL"
    if not ok:
        rep.fail(f"residual envelopes {['%.3g' % r for r in env]}")
    else:
        rep.note(f"envelopes {['%.3g' % r for r in env]} (bound {bound})")
    return rep


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def check_mc_gue(n: int = 8, lambda0: float = 3.0, trials: int = 100_000,
                 master: int = 20240 + 8) -> Report:
    """Empirical gap probability within 3 sigma of the determinant."""
    rep = Report("mc-gue-gap")
    p, sig = rmtsim.gap_probability_mc(n, lambda0, trials, master)
    det = fredholm.finite_n_det(n, lambda0, 1.0).real
    z = abs(p - det) / sig
    ok = z <= 3.0
    rep.add(ReportRow(label="gue-gap-probability", n=n, lambda0=lambda0,
                      finite=p, asym=det, abs_res=abs(p - det),
                      rel_res=z, verdict="PASS" if ok else "FAIL"))
    if not ok:
        rep.fail(f"gap probability off by {z:.2f} sigma")
    return rep


def check_mc_thinning(n: int = 50, s: float = 0.5, trials: int = 200_000,
                      master: int = 20240 + 50) -> Report:
    """Thinned largest-particle probability within 3 sigma of the determinant."""
    rep = Report("mc-thinning")
    lam0 = math.sqrt(2.0 * n)
    res = rmtsim.thinning_check(n, s, lam0, trials, master)
    det = fredholm.finite_n_det(n, lam0, 1.0 - s).real
    z = abs(res["bernoulli"] - det) / res["bernoulli_stderr"]
    ok = z <= 3.0 and res["analytic"] == res["from_freq"]
    rep.add(ReportRow(label="thinned-max", n=n, lambda0=lam0, finite=res["bernoulli"],
                      asym=det, abs_res=abs(res["bernoulli"] - det), rel_res=z,
                      verdict="PASS" if ok else "FAIL"))
    if z > 3.0:
        rep.fail(f"thinned max off by {z:.2f} sigma")
    if res["analytic"] != res["from_freq"]:
        rep.fail("same-path moment identity violated")
    return rep


def check_mc_plancherel(N: int = 10_000, s: float = 0.5, ts=(-2.0, 0.0, 1.0),
                        trials: int = 800, master: int = 31337,
                        finite_band: float = 0.03) -> Report:
    """Thinned Plancherel maximum CDF against the deformed Airy determinant."""
    rep = Report("mc-plancherel")
    est = rmtsim.thinned_max_cdf(N, s, ts, trials, master)
    for t, cdf, sig in zip(est["t"], est["cdf"], est["stderr"]):
        det = fredholm.airy_fredholm_det(1.0 - s, float(t)).real
        band = 3.0 * sig + finite_band
        gap = abs(cdf - det)
        ok = gap <= band
        rep.add(ReportRow(label="plancherel-thinned-cdf", n=N, t=float(t),
                          finite=cdf, asym=det, abs_res=gap, rel_res=gap / band,
                          verdict="PASS" if ok else "FAIL"))
        if not ok:
            rep.fail(f"t={t}: |cdf - det| = {gap:.4f} > band {band:.4f}")
    return rep


ALL_CHECKS = {
    "gaussian": check_gaussian_closed_form,
    "finite-n-identity": check_finite_n_identity,
    "tw-identity": check_tw_identity,
    "pii": check_pii_solution,
    "thm1.4": check_recurrence_asymptotics,
    "thm1.5": check_polynomial_asymptote,
    "thm1.2": check_edge_hankel,
    "conj1.3": check_airy_tail,
    "thm1.6": check_singular_regime,
    "pole-freeness": check_pole_freeness,
    "exact-identities": check_exact_identities,
    "noncrit": check_bulk_hankel,
    "mc-gue": check_mc_gue,
    "mc-thinning": check_mc_thinning,
    "mc-plancherel": check_mc_plancherel,
}
