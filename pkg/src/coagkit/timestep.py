"""Time integration: adaptive (for FEM and the FLFM semi-discrete form) and
fixed-step (for the explicit FLFM update)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import IntegrandError, IntegrationError

__all__ = ["IntegratorSpec", "Trajectory", "integrate_adaptive", "integrate_fixed"]


@dataclass(frozen=True)
class IntegratorSpec:
    """Settings for :func:`integrate_adaptive`.

    ``method`` is any scipy ``solve_ivp`` method; the default explicit
    Dormand-Prince pair (order 5, embedded order 4) suits the non-stiff FEM
    systems here.  "BDF" is the variable-order NDF family and should be
    given a Jacobian.
    """

    rel_tol: float = 1e-6
    abs_tol: float = 1e-10
    initial_step: Optional[float] = None
    max_step: float = math.inf
    sample_times: tuple = ()
    method: str = "RK45"

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("integrator tolerances must be positive")
        ts = tuple(float(t) for t in self.sample_times)
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("sample_times must be strictly increasing")
        object.__setattr__(self, "sample_times", ts)


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)
    n_steps: int = 0
    n_rhs: int = 0
    info: dict = field(default_factory=dict)

    def at(self, t: float) -> np.ndarray:
        k = int(np.argmin(np.abs(self.times - t)))
        if not math.isclose(self.times[k], t, rel_tol=1e-12, abs_tol=1e-12):
            raise KeyError(f"no sample at t = {t}")
        return self.states[k]


def _checked(rhs):
    def wrapped(t, y):
        dy = rhs(t, y)
        if not np.all(np.isfinite(dy)):
            raise IntegrandError(f"right-hand side is not finite at t = {t}")
        return dy
    return wrapped


def integrate_adaptive(rhs: Callable, y0, t0: float, t_end: float, spec: IntegratorSpec,
                       jac: Optional[Callable] = None) -> Trajectory:
    """Error-controlled integration of ``y' = rhs(t, y)`` from ``t0`` to ``t_end``.

    Returns the state at each of ``spec.sample_times`` (or just ``t_end`` when
    none are given), interpolated from the solver's dense output.
    """
    if not t_end > t0:
        raise ValueError(f"need t_end > t0, got [{t0}, {t_end}]")
    samples = spec.sample_times or (float(t_end),)
    if samples[0] < t0 or samples[-1] > t_end:
        raise ValueError("sample_times must lie within [t0, t_end]")
    y0 = np.asarray(y0, dtype=float)
    if not np.all(np.isfinite(rhs(t0, y0))):
        raise IntegrandError("right-hand side is not finite at the initial state")

    kwargs = {}
    if spec.initial_step is not None:
        kwargs["first_step"] = spec.initial_step
    if jac is not None and spec.method in ("BDF", "Radau", "LSODA"):
        kwargs["jac"] = jac
    sol = solve_ivp(
        _checked(rhs), (t0, t_end), y0, method=spec.method, t_eval=np.array(samples),
        rtol=spec.rel_tol, atol=spec.abs_tol, max_step=spec.max_step, **kwargs,
    )
    if sol.status != 0:
        # the last sample reached; solve_ivp keeps no later state
        ts, ys = np.asarray(sol.t), np.asarray(sol.y)
        t_last = float(ts[-1]) if ts.size else t0
        y_last = ys[:, -1] if ys.size else y0
        raise IntegrationError(f"integration failed: {sol.message}", t=t_last, y=y_last)
    return Trajectory(
        times=np.asarray(sol.t), states=sol.y.T.copy(), n_rhs=int(sol.nfev), info={"method": spec.method, "njev": int(sol.njev), "nlu": int(sol.nlu)},
    )


def integrate_fixed(step: Callable, y0, t0: float, t_end: float, dt: float,
                    sample_times: Sequence[float] = (),
                    callback: Optional[Callable] = None) -> Trajectory:
    """Apply ``step(y, dt) -> y_new`` repeatedly from ``t0`` to ``t_end``.

    Takes ``ceil((t_end - t0)/dt)`` steps (a step count within 1e-9 of an
    integer is rounded).  Sample times are snapped to the nearest step.
    ``callback(k, t, y_old, y_new)`` runs after every step.
    """
    if not dt > 0:
        raise ValueError(f"time step must be positive, got {dt}")
    if not t_end > t0:
        raise ValueError(f"need t_end > t0, got [{t0}, {t_end}]")
    ratio = (t_end - t0) / dt
    n_steps = round(ratio) if abs(ratio - round(ratio)) < 1e-9 else math.ceil(ratio)
    samples = list(sample_times) or [t_end]
    wanted = {}
    for t in samples:
        if t < t0 - 1e-12 or t > t_end + 1e-12:
            raise ValueError(f"sample time {t} outside [{t0}, {t_end}]")
        wanted.setdefault(min(n_steps, int(round((t - t0) / dt))), []).append(t)

    y = np.array(y0, dtype=float)
    out_t, out_y = [], []

    def record(k):
        for t in wanted.get(k, ()):
            out_t.append(t)
            out_y.append(y.copy())

    record(0)
    for k in range(1, n_steps + 1):
        y_new = np.asarray(step(y, dt), dtype=float)
        if not np.all(np.isfinite(y_new)):
            raise IntegrationError(f"non-finite state after step {k}", t=t0 + (k - 1) * dt, y=y)
        if callback is not None:
            callback(k, t0 + k * dt, y, y_new)
        y = y_new
        record(k)
    order = np.argsort(out_t, kind="stable")
    return Trajectory(
        times=np.asarray(out_t)[order], states=np.asarray(out_y)[order], n_steps=n_steps, n_rhs=n_steps,
    )
