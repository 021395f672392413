"""Parameter conversions and sweep helpers."""
from __future__ import annotations

import cmath
import os
from concurrent.futures import ProcessPoolExecutor

import mpmath as mp

from .precision import PrecisionCtx

#: Environment variable capping internal parallelism of sweeps.
THREADS_ENV = "EDGEJUMP_THREADS"


def kappa_sq_from_beta(beta, ctx: PrecisionCtx | None = None):
    """kappa^2 = 1 - exp(-2 pi i beta)."""
    if ctx is None:
        return 1 - cmath.exp(-2j * cmath.pi * complex(beta))
    with ctx.workprec(10):
        return 1 - mp.exp(-2j * mp.pi * mp.mpc(beta))


def kappa_from_beta(beta, ctx: PrecisionCtx | None = None):
    """Principal square root of ``kappa_sq_from_beta``."""
    if ctx is None:
        return cmath.sqrt(kappa_sq_from_beta(beta))
    with ctx.workprec(10):
        return mp.sqrt(kappa_sq_from_beta(beta, ctx))


def beta_from_kappa(kappa) -> complex:
    """Jump exponent on the branch |Re beta| <= 1/2.

    Inverts kappa^2 = 1 - exp(-2 pi i beta) with the principal logarithm,
    which lands Re beta in (-1/2, 1/2] automatically.
    """
    z = 1 - complex(kappa) ** 2
    if z == 0:
        raise ValueError("kappa = +-1 (Hastings-McLeod) is out of scope")
    return 1j * cmath.log(z) / (2 * cmath.pi)


def thread_budget() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(func, items):
    """Map preserving input order, parallel when EDGEJUMP_THREADS > 1.

    ``func`` must be picklable (a module-level function or partial).
    """
    items = list(items)
    n = thread_budget()
    if n <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as ex:
        return list(ex.map(func, items))
