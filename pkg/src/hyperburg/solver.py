"""Semi-discrete integration of the hyperbolic Burgers equation.

Method of lines: second-order central differences in space (conservative
flux form for the advection term), classical 4-stage Runge-Kutta in time
with dt = min(cfl * dx / c, mu).  The domain is sized so the exact support
{|x| <= L + c t} never reaches the boundary; the two boundary nodes are
pinned to zero, which substitutes for boundary conditions entirely.

Blow-up is reported as the first time the sup norm crosses a threshold, not
as an extrapolated singularity time: the model supplies no blow-up rate to
extrapolate with.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

import numpy as np

from .errors import ConfigError, EstimatorError, ParameterError
from .model import ModelParams
from .operators import pde_rhs

if TYPE_CHECKING:  # diagnostics imports solver; keep the cycle type-only
    from .diagnostics import DiagnosticsRecord

__all__ = [
    "Grid",
    "GridState",
    "RunStatus",
    "RunOutcome",
    "stable_dt",
    "rhs",
    "step_rk4",
    "integrate",
    "sample_trajectory",
    "estimate_blowup_time",
    "check_domain_margin",
    "default_blowup_threshold",
]

# Nodes of slack the support of a healthy run may spill past L + c t.
SUPPORT_SLACK_NODES = 10


@dataclass(frozen=True)
class Grid:
    """Uniform spatial mesh on [xmin, xmax] with n nodes."""

    xmin: float
    xmax: float
    n: int

    def __post_init__(self):
        if self.n < 8:
            raise ParameterError(f"grid needs n >= 8 nodes, got {self.n}")
        if not (self.xmax > self.xmin):
            raise ParameterError(
                f"grid needs xmax > xmin, got [{self.xmin}, {self.xmax}]"
            )

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / (self.n - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.xmin, self.xmax, self.n)


@dataclass
class GridState:
    """Field pair (v, w = dv/dt) on a grid at one time instant."""

    grid: Grid
    t: float
    v: np.ndarray
    w: np.ndarray

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.v).all() and np.isfinite(self.w).all())

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.v)))


class RunStatus(enum.Enum):
    COMPLETED = "completed"
    BLOWUP_DETECTED = "blowup_detected"
    NUMERICAL_FAILURE = "numerical_failure"


@dataclass
class RunOutcome:
    """Terminal status of an integration plus the recorded diagnostics.

    ``t_final`` is the horizon actually reached: the detection time for
    BLOWUP_DETECTED, the time of the first non-finite state for
    NUMERICAL_FAILURE, and the first time >= t_end otherwise.
    """

    status: RunStatus
    t_final: float
    records: list["DiagnosticsRecord"] = field(default_factory=list)
    final_state: Optional[GridState] = None

    @property
    def t_detect(self) -> Optional[float]:
        return self.t_final if self.status is RunStatus.BLOWUP_DETECTED else None


def stable_dt(grid: Grid, params: ModelParams, cfl: float) -> float:
    """Explicit time step: wave CFL bound capped by the damping time.

    dt = min(cfl * dx / c, mu).  The wave bound dominates at practical
    resolutions; the mu cap guards the stiff strongly-damped limit.
    """
    if not (0.0 < cfl <= 1.0):
        raise ParameterError(f"cfl must lie in (0, 1], got {cfl}")
    return min(cfl * grid.dx / params.c, params.mu)


def rhs(state: GridState, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """Slopes (dv/dt, dw/dt) of the semi-discrete system at this state."""
    return pde_rhs(state.v, state.w, state.grid.dx, params.mu, params.nu)


def step_rk4(state: GridState, params: ModelParams, dt: float) -> GridState:
    """Advance one classical Runge-Kutta step; boundary nodes re-pinned."""
    dx = state.grid.dx
    mu, nu = params.mu, params.nu
    v, w = state.v, state.w

    kv1, kw1 = pde_rhs(v, w, dx, mu, nu)
    kv2, kw2 = pde_rhs(v + 0.5 * dt * kv1, w + 0.5 * dt * kw1, dx, mu, nu)
    kv3, kw3 = pde_rhs(v + 0.5 * dt * kv2, w + 0.5 * dt * kw2, dx, mu, nu)
    kv4, kw4 = pde_rhs(v + dt * kv3, w + dt * kw3, dx, mu, nu)

    v_new = v + (dt / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4)
    w_new = w + (dt / 6.0) * (kw1 + 2.0 * kw2 + 2.0 * kw3 + kw4)
    v_new[0] = v_new[-1] = 0.0
    w_new[0] = w_new[-1] = 0.0
    return GridState(grid=state.grid, t=state.t + dt, v=v_new, w=w_new)


def check_domain_margin(grid: Grid, params: ModelParams, t_end: float) -> None:
    """Require the domain to causally shield the boundary up to t_end.

    The support stays inside {|x| <= L + c t}; the grid must extend at
    least SUPPORT_SLACK_NODES spacings beyond that on both sides.

    Raises:
        ConfigError: when the margin is violated.
    """
    reach = params.L + params.c * t_end + SUPPORT_SLACK_NODES * grid.dx
    if grid.xmax < reach or grid.xmin > -reach:
        raise ConfigError(
            f"grid [{grid.xmin}, {grid.xmax}] too small: support may reach "
            f"+-{reach:.6g} by t={t_end} (speed c={params.c:.6g}, "
            f"slack {SUPPORT_SLACK_NODES} nodes)"
        )


def default_blowup_threshold(state0: GridState) -> float:
    """Detection threshold 1e6 * max(1, initial sup norm): far above any
    bounded-solution scale at desk parameters, far below overflow."""
    return 1e6 * max(1.0, state0.sup_norm())


def integrate(
    state0: GridState,
    params: ModelParams,
    t_end: float,
    blowup_threshold: Optional[float] = None,
    record_stride: int = 1,
    cfl: float = 0.4,
) -> RunOutcome:
    """Step from state0 until completion, blow-up detection, or failure.

    A diagnostics record is emitted for the initial state, after every
    ``record_stride`` steps, and for the terminal state.  Detection
    semantics: the run stops at the first state whose sup norm reaches
    ``blowup_threshold`` (default :func:`default_blowup_threshold`), at the
    first non-finite state (NUMERICAL_FAILURE; no record is emitted for a
    broken state), or at the first time >= t_end.

    Pure function of its arguments: identical inputs give bit-identical
    outcomes and records.
    """
    from .diagnostics import compute_record  # runtime import; module cycle

    if record_stride < 1:
        raise ConfigError(f"record_stride must be >= 1, got {record_stride}")
    check_domain_margin(state0.grid, params, t_end)
    if blowup_threshold is None:
        blowup_threshold = default_blowup_threshold(state0)

    dt = stable_dt(state0.grid, params, cfl)
    records: list = [compute_record(state0, params, prev=None)]
    state = state0
    steps = 0

    # Overflow past the threshold is handled explicitly below; silence the
    # transient warnings the last pre-detection steps would otherwise spew.
    with np.errstate(over="ignore", invalid="ignore"):
        while True:
            state = step_rk4(state, params, dt)
            steps += 1

            if not state.is_finite():
                # Keep the last healthy record; return the broken state as-is.
                return RunOutcome(
                    status=RunStatus.NUMERICAL_FAILURE,
                    t_final=state.t,
                    records=records,
                    final_state=state,
                )

            blown = state.sup_norm() >= blowup_threshold
            terminal = blown or state.t >= t_end
            if steps % record_stride == 0 or terminal:
                records.append(compute_record(state, params, prev=records[-1]))
            if terminal:
                status = RunStatus.BLOWUP_DETECTED if blown else RunStatus.COMPLETED
                return RunOutcome(
                    status=status,
                    t_final=state.t,
                    records=records,
                    final_state=state,
                )


def sample_trajectory(
    state0: GridState,
    params: ModelParams,
    t_end: float,
    sample_stride: int = 1,
    cfl: float = 0.4,
) -> list[GridState]:
    """Integrate and keep full states (initial, every stride-th, final).

    Raw-state companion to :func:`integrate` for checks that need fields
    rather than records (cone vanishing, temporal self-convergence).
    """
    if sample_stride < 1:
        raise ConfigError(f"sample_stride must be >= 1, got {sample_stride}")
    check_domain_margin(state0.grid, params, t_end)
    dt = stable_dt(state0.grid, params, cfl)
    states = [state0]
    state = state0
    steps = 0
    while state.t < t_end:
        state = step_rk4(state, params, dt)
        steps += 1
        if steps % sample_stride == 0 or state.t >= t_end:
            states.append(state)
    return states


def estimate_blowup_time(
    outcomes_by_resolution: list[RunOutcome],
) -> tuple[float, bool]:
    """Blow-up time estimate from a refinement sequence of outcomes.

    Expects outcomes ordered coarse to fine, every one BLOWUP_DETECTED.
    The estimate is the detection time at the finest resolution; it is
    flagged converged when the last two detections differ by less than 5%
    relative to the finest.
    """
    if len(outcomes_by_resolution) < 2:
        raise EstimatorError("need at least 2 outcomes at increasing resolution")
    times = []
    for i, outcome in enumerate(outcomes_by_resolution):
        if outcome.status is not RunStatus.BLOWUP_DETECTED:
            raise EstimatorError(
                f"outcome {i} is {outcome.status.value}, not blowup_detected"
            )
        times.append(outcome.t_final)
    estimate = times[-1]
    converged = abs(times[-2] - times[-1]) < 0.05 * abs(times[-1])
    return estimate, converged
