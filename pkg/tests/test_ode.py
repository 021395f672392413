import math

import mpmath as mp
import pytest

from edgejump.ode import StepUnderflow, adaptive_rk
from edgejump.precision import PrecisionCtx
from edgejump.specfun import airy_ai


def test_scalar_exponential():
    tr = adaptive_rk(lambda t, y: (y[0],), (1.0,), 0.0, 1.0, 1e-12)
    assert abs(tr(1.0)[0] - math.e) < 1e-10


def test_sine_second_order_system():
    tr = adaptive_rk(lambda t, y: (y[1], -y[0]), (0.0, 1.0), 0.0, math.pi, 1e-12)
    assert abs(tr(math.pi)[0]) < 1e-9
    # dense output mid-span
    assert abs(tr(1.0)[0] - math.sin(1.0)) < 1e-11
    assert abs(tr.derivative(2.2)[0] - math.cos(2.2)) < 1e-10


def test_backward_integration():
    tr = adaptive_rk(lambda t, y: (y[0],), (1.0,), 0.0, -1.0, 1e-12)
    assert abs(tr(-1.0)[0] - math.exp(-1.0)) < 1e-12
    assert abs(tr(-0.3)[0] - math.exp(-0.3)) < 1e-12


def test_airy_decay_bigfloat_instantiation():
    # u'' = t u + 2 u^3 integrated down from Airy data at t = 10.  With the
    # full-size data the trajectory leaves the linear regime once u = O(1),
    # so u(0) is near Ai(0) only loosely; with rescaled (small-amplitude)
    # data the cubic term stays negligible and the linearized limit holds to
    # integrator precision.
    ctx = PrecisionCtx(160)
    f = lambda t, y: (y[1], t * y[0] + 2 * y[0] ** 3)
    with ctx.workprec():
        y0 = (mp.airyai(10), mp.airyai(10, derivative=1))
    tr = adaptive_rk(f, y0, 10.0, 0.0, 1e-15, ctx=ctx, atol=0.0,
                     scale_groups=((0, 1),))
    with ctx.workprec():
        assert abs(tr(mp.mpf(0))[0] - airy_ai(0, ctx)) < 0.02

    eps_amp = mp.mpf(2) ** -30
    with ctx.workprec():
        y0s = (y0[0] * eps_amp, y0[1] * eps_amp)
    tr = adaptive_rk(f, y0s, 10.0, 0.0, 1e-15, ctx=ctx, atol=0.0,
                     scale_groups=((0, 1),))
    with ctx.workprec():
        assert abs(tr(mp.mpf(0))[0] / eps_amp - airy_ai(0, ctx)) < 1e-11


def test_tolerance_halving_reduces_error():
    # endpoint error measured against a tol/100 reference run
    f = lambda t, y: (y[1], -y[0] * (1 + 0.2 * math.sin(t)))
    errs = []
    ref = adaptive_rk(f, (1.0, 0.0), 0.0, 10.0, 1e-13)(10.0)[0]
    for tol in (1e-5, 1e-6, 1e-7, 1e-8):
        tr = adaptive_rk(f, (1.0, 0.0), 0.0, 10.0, tol)
        errs.append(abs(tr(10.0)[0] - ref))
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_step_underflow_near_blowup():
    # y' = y^2 blows up at t = 1
    with pytest.raises(StepUnderflow) as exc:
        adaptive_rk(lambda t, y: (y[0] * y[0],), (1.0,), 0.0, 2.0, 1e-10)
    assert abs(float(exc.value.t_star) - 1.0) < 1e-3
    traj = exc.value.trajectory
    assert traj.n_steps > 10
    assert abs(traj(0.5)[0] - 2.0) < 1e-7  # 1/(1-t)


def test_event_stop():
    tr = adaptive_rk(lambda t, y: (y[0],), (1.0,), 0.0, 5.0, 1e-10,
                     event=lambda t, y: y[0] > 10.0)
    assert tr.event_t is not None
    assert tr(tr.event_t)[0] >= 10.0


def test_defect_control_certifies_residual():
    f = lambda t, y: (y[1], t * y[0] + 2 * y[0] ** 3)
    tol = 1e-10
    tr = adaptive_rk(f, (0.3, 0.1), 0.0, -6.0, tol, atol=0.0,
                     scale_groups=((0, 1),),
                     defect_weight=lambda y: 1 + abs(y[0]) ** 3)
    lo, hi = -6.0, 0.0
    for i in range(60):
        t = lo + (hi - lo) * i / 59
        u = tr(t)[0]
        upp = tr.derivative(t)[1]
        assert abs(upp - t * u - 2 * u ** 3) <= tol * (1 + abs(u) ** 3)


def test_out_of_span_eval_raises():
    tr = adaptive_rk(lambda t, y: (y[0],), (1.0,), 0.0, 1.0, 1e-10)
    with pytest.raises(ValueError):
        tr(2.0)
