"""Functionals and inequality gaps monitored along a trajectory.

Everything here is computed with the solver's own stencils and the
trapezoidal rule on the simulation grid, so bounds that hold exactly for
the semi-discrete system show up as gaps at roundoff rather than at
quadrature-error level.  Higher time derivatives (v_tt, v_ttt) are
reconstructed from the equation instead of stored.

Monitored quantities:

* the moments F = int x v dx and F' = int x w dx, whose growth identity
  mu F'' + F' = 1/2 int v^2 dx drives the blow-up argument;
* the energies E1, E2, E3 (half-sums of squares of first, second, and
  third derivatives, weighted by powers of c);
* the sup norm, the support interval, and the cone maximum for
  finite-propagation-speed checks;
* the Cauchy-Schwarz gap (2/3)(L + c t)^3 int v^2 - F^2;
* space-time Sobolev-type accumulators with mu^2/mu^4 (and, for the
  third-order companion, mu^6) weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, ParameterError
from .model import ModelParams
from .operators import d1_central, d2_central, pde_rhs, trapezoid
from .solver import GridState

__all__ = [
    "DiagnosticsRecord",
    "ConeSpec",
    "moment_F",
    "moment_Fprime",
    "energy",
    "sup_norm",
    "support_interval",
    "schwartz_gap",
    "identity_residual",
    "gronwall_check_E1",
    "sobolev_norms",
    "cone_max",
    "compute_record",
    "SUPPORT_REL_THRESHOLD",
]

# Relative support-detection threshold: scheme tails decay but never vanish.
SUPPORT_REL_THRESHOLD = 1e-12


@dataclass(frozen=True)
class DiagnosticsRecord:
    """One time sample of every monitored functional.

    ``sobolev_H2_accum`` / ``sobolev_H3_accum`` are running rectangle-rule
    time integrals of the weighted instantaneous space integrals (see
    :func:`sobolev_norms`); the norm over [0, t] is their square root.
    The cross-derivative integrals (``int_vxt2`` and friends) carry the
    pieces of those space integrals that the energies alone do not.
    """

    t: float
    F: float
    Fprime: float
    E1: float
    E2: float
    E3: float
    sup_norm: float
    support_left: float
    support_right: float
    schwartz_gap: float
    half_int_v2: float
    int_vxt2: float
    int_vxtt2: float
    int_vxxt2: float
    sobolev_H2_accum: float
    sobolev_H3_accum: float


@dataclass(frozen=True)
class ConeSpec:
    """Backward cone with apex (x_c, t_c): {|x - x_c| <= c (t_c - t)}."""

    x_c: float
    t_c: float

    def __post_init__(self):
        if not (self.t_c > 0.0):
            raise ParameterError(f"cone apex time must be positive, got {self.t_c}")


def moment_F(state: GridState) -> float:
    """First moment int x v dx (trapezoidal), the expansion measure."""
    return float(trapezoid(state.grid.nodes() * state.v, dx=state.grid.dx))


def moment_Fprime(state: GridState) -> float:
    """First moment of the time derivative, int x w dx."""
    return float(trapezoid(state.grid.nodes() * state.w, dx=state.grid.dx))


def _time_derivatives(state: GridState, params: ModelParams):
    """(v_tt, v_ttt) reconstructed from the semi-discrete equation."""
    dx = state.grid.dx
    mu, nu = params.mu, params.nu
    _, v_tt = pde_rhs(state.v, state.w, dx, mu, nu)
    # d/dt of the w-equation: flux v^2/2 differentiates to v*w.
    v_ttt = (nu * d2_central(state.w, dx) - d1_central(state.v * state.w, dx) - v_tt) / mu
    v_ttt[0] = v_ttt[-1] = 0.0
    return v_tt, v_ttt


def energy(state: GridState, params: ModelParams, order: int) -> float:
    """Energy functional of the requested derivative order.

    order 1: 1/2 int (v_t^2 + c^2 v_x^2),
    order 2: 1/2 int (v_tt^2 + c^4 v_xx^2),
    order 3: 1/2 int (v_ttt^2 + c^6 v_xxx^2).
    """
    if order not in (1, 2, 3):
        raise ParameterError(f"energy order must be 1, 2 or 3, got {order}")
    dx = state.grid.dx
    c2 = params.c * params.c
    if order == 1:
        integrand = state.w**2 + c2 * d1_central(state.v, dx) ** 2
    elif order == 2:
        v_tt, _ = _time_derivatives(state, params)
        integrand = v_tt**2 + c2 * c2 * d2_central(state.v, dx) ** 2
    else:
        _, v_ttt = _time_derivatives(state, params)
        v_xxx = d1_central(d2_central(state.v, dx), dx)
        integrand = v_ttt**2 + c2 * c2 * c2 * v_xxx**2
    return 0.5 * float(trapezoid(integrand, dx=dx))


def sup_norm(state: GridState) -> float:
    """Maximum absolute nodal value of v."""
    return float(np.max(np.abs(state.v)))


def support_interval(state: GridState, threshold: float) -> tuple[float, float]:
    """Outermost nodes where |v| or |w| exceeds the threshold.

    Returns (0.0, 0.0) as the empty-support marker when neither field
    exceeds it anywhere.
    """
    if not (threshold > 0.0):
        raise ParameterError(f"support threshold must be positive, got {threshold}")
    live = (np.abs(state.v) > threshold) | (np.abs(state.w) > threshold)
    idx = np.flatnonzero(live)
    if idx.size == 0:
        return (0.0, 0.0)
    x = state.grid.nodes()
    return float(x[idx[0]]), float(x[idx[-1]])


def schwartz_gap(state: GridState, params: ModelParams) -> float:
    """Cauchy-Schwarz slack (2/3)(L + c t)^3 int v^2 - F^2.

    Nonnegative (up to roundoff and support tails) for any state whose
    support sits inside {|x| <= L + c t}; equality needs v proportional
    to x across the whole interval.
    """
    radius = params.L + params.c * state.t
    int_v2 = float(trapezoid(state.v**2, dx=state.grid.dx))
    f = moment_F(state)
    return (2.0 / 3.0) * radius**3 * int_v2 - f * f


def identity_residual(
    records: Sequence[DiagnosticsRecord],
    params: ModelParams,
) -> float:
    """Max defect of the discrete moment identity mu F'' + F' = 1/2 int v^2.

    F'' and F' are centered differences of the recorded F samples; only
    uniformly spaced consecutive triples are used (a terminal record may
    sit off the stride).

    Raises:
        ParameterError: with fewer than 3 records.
    """
    if len(records) < 3:
        raise ParameterError(f"need >= 3 records, got {len(records)}")
    t = np.array([r.t for r in records])
    f = np.array([r.F for r in records])
    rhs_half_v2 = np.array([r.half_int_v2 for r in records])
    dt = t[1] - t[0]
    worst = 0.0
    for i in range(1, len(records) - 1):
        if abs((t[i] - t[i - 1]) - dt) > 1e-9 * dt:
            continue
        if abs((t[i + 1] - t[i]) - dt) > 1e-9 * dt:
            continue
        f_tt = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (dt * dt)
        f_t = (f[i + 1] - f[i - 1]) / (2.0 * dt)
        worst = max(worst, abs(params.mu * f_tt + f_t - rhs_half_v2[i]))
    return worst


def gronwall_check_E1(
    records: Sequence[DiagnosticsRecord],
    params: ModelParams,
) -> float:
    """Worst margin of the exponential energy bound.

    For each record, margin = exp(M t / (mu c)) * E1(0) - E1(t) with M the
    running max of the sup norm up to that record.  The bound proved by
    the energy/Gronwall argument makes every margin nonnegative up to
    discretization error; the minimum over records is returned.
    """
    if not records:
        raise ParameterError("need at least one record")
    e1_0 = records[0].E1
    scale = 1.0 / (params.mu * params.c)
    running_max = 0.0
    worst = math.inf
    with np.errstate(over="ignore"):
        for rec in records:
            running_max = max(running_max, rec.sup_norm)
            bound = math.exp(min(running_max * scale * rec.t, 709.0)) * e1_0
            worst = min(worst, bound - rec.E1)
    return worst


def _sobolev_space_integrals(rec: DiagnosticsRecord, params: ModelParams):
    """Weighted instantaneous space integrals (second- and third-order)."""
    c2 = params.c * params.c
    mu2 = params.mu * params.mu
    # int (v_tt^2 + c^2 v_xt^2 + c^4 v_xx^2) = 2 E2 + c^2 int v_xt^2, etc.
    second = 2.0 * rec.E2 + c2 * rec.int_vxt2
    first = 2.0 * rec.E1
    zeroth = 2.0 * rec.half_int_v2
    s2 = mu2 * mu2 * second + mu2 * first + zeroth
    third = 2.0 * rec.E3 + c2 * rec.int_vxtt2 + c2 * c2 * rec.int_vxxt2
    s3 = s2 + mu2 * mu2 * mu2 * third
    return s2, s3


def sobolev_norms(
    records: Sequence[DiagnosticsRecord],
    params: ModelParams,
    dt_record: float,
) -> tuple[float, float]:
    """Space-time Sobolev-type norms accumulated over the record series.

    H2_value = sqrt( sum_records dt * [ mu^4 int (v_tt^2 + c^2 v_xt^2
    + c^4 v_xx^2) + mu^2 int (v_t^2 + c^2 v_x^2) + int v^2 ] ).

    The H3 companion adds the third-order block mu^6 int (v_ttt^2
    + c^2 v_xtt^2 + c^4 v_xxt^2 + c^6 v_xxx^2), extending the mu-power
    pattern by one order.

    Raises:
        ParameterError: on an empty record sequence.
    """
    if not records:
        raise ParameterError("need at least one record")
    total2 = 0.0
    total3 = 0.0
    for rec in records:
        s2, s3 = _sobolev_space_integrals(rec, params)
        total2 += dt_record * s2
        total3 += dt_record * s3
    return math.sqrt(total2), math.sqrt(total3)


def cone_max(
    trajectory_states: Sequence[GridState],
    cone: ConeSpec,
    params: ModelParams,
) -> float:
    """Max |v| over the backward cone across the sampled states.

    Only states with t <= t_c contribute; at each such time the cone
    section is {|x - x_c| <= c (t_c - t)}.

    Raises:
        DomainError: when the cone base at t = 0 pokes outside the grid.
    """
    base_left = cone.x_c - params.c * cone.t_c
    base_right = cone.x_c + params.c * cone.t_c
    worst = 0.0
    seen = False
    for state in trajectory_states:
        if state.t > cone.t_c:
            continue
        if not (state.grid.xmin <= base_left and base_right <= state.grid.xmax):
            raise DomainError(
                f"cone base [{base_left:.6g}, {base_right:.6g}] outside grid "
                f"[{state.grid.xmin}, {state.grid.xmax}]"
            )
        seen = True
        radius = params.c * (cone.t_c - state.t)
        x = state.grid.nodes()
        mask = np.abs(x - cone.x_c) <= radius
        if mask.any():
            worst = max(worst, float(np.max(np.abs(state.v[mask]))))
    if not seen:
        raise DomainError("no trajectory states at times <= the cone apex time")
    return worst


def compute_record(
    state: GridState,
    params: ModelParams,
    prev: Optional[DiagnosticsRecord] = None,
) -> DiagnosticsRecord:
    """Assemble the full diagnostics record for one state.

    ``prev`` supplies the Sobolev accumulators and the time gap; pass the
    previous record during a run, or None for a standalone/initial record.
    """
    dx = state.grid.dx
    c2 = params.c * params.c
    with np.errstate(over="ignore", invalid="ignore"):
        v_x = d1_central(state.v, dx)
        v_xx = d2_central(state.v, dx)
        w_x = d1_central(state.w, dx)
        w_xx = d2_central(state.w, dx)
        v_tt, v_ttt = _time_derivatives(state, params)
        v_xxx = d1_central(v_xx, dx)
        v_xtt = d1_central(v_tt, dx)

        e1 = 0.5 * float(trapezoid(state.w**2 + c2 * v_x**2, dx=dx))
        e2 = 0.5 * float(trapezoid(v_tt**2 + c2 * c2 * v_xx**2, dx=dx))
        e3 = 0.5 * float(trapezoid(v_ttt**2 + c2 * c2 * c2 * v_xxx**2, dx=dx))
        int_vxt2 = float(trapezoid(w_x**2, dx=dx))
        int_vxtt2 = float(trapezoid(v_xtt**2, dx=dx))
        int_vxxt2 = float(trapezoid(w_xx**2, dx=dx))
        half_v2 = 0.5 * float(trapezoid(state.v**2, dx=dx))

        sup = sup_norm(state)
        left, right = support_interval(
            state, SUPPORT_REL_THRESHOLD * (1.0 + sup)
        )
        f = moment_F(state)
        fp = moment_Fprime(state)
        radius = params.L + params.c * state.t
        gap = (2.0 / 3.0) * radius**3 * (2.0 * half_v2) - f * f

        rec = DiagnosticsRecord(
            t=state.t,
            F=f,
            Fprime=fp,
            E1=e1,
            E2=e2,
            E3=e3,
            sup_norm=sup,
            support_left=left,
            support_right=right,
            schwartz_gap=gap,
            half_int_v2=half_v2,
            int_vxt2=int_vxt2,
            int_vxtt2=int_vxtt2,
            int_vxxt2=int_vxxt2,
            sobolev_H2_accum=0.0,
            sobolev_H3_accum=0.0,
        )
        if prev is not None:
            gap_dt = state.t - prev.t
            s2, s3 = _sobolev_space_integrals(rec, params)
            rec = replace(
                rec,
                sobolev_H2_accum=prev.sobolev_H2_accum + gap_dt * s2,
                sobolev_H3_accum=prev.sobolev_H3_accum + gap_dt * s3,
            )
    return rec
