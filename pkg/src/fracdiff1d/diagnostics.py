"""Quantitative checks of the solution properties the schemes promise.

Mass accounting, positivity scans, steady-state distances, boundary-flux
evaluation, exponential decay rates, and discretization-order estimates.
Steady-state comparisons exclude node 0 uniformly: the reflecting
Riemann-Liouville steady state ``(alpha-1) x**(alpha-2)`` diverges there,
and one convention keeps the forms comparable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateInput,
    DimensionMismatch,
    EmptySeries,
    InvalidSpec,
    UnsupportedForm,
)
from .grunwald import DerivativeForm, GridFunction, flux_profile
from .operators import BoundaryCondition, SchemeSpec
from .timestepper import TimeSeries

__all__ = [
    "DiagnosticsReport",
    "NegativityResult",
    "SteadyStateKind",
    "SteadyStateReference",
    "boundary_flux_check",
    "convergence_order",
    "decay_rate",
    "l1_distance_interior",
    "negativity_scan",
    "steady_state_reference",
    "summarize",
    "total_mass",
]


def total_mass(u: GridFunction) -> float:
    """Rectangle-rule mass ``h * sum(u_j)`` over all nodes."""
    return u.h * float(u.values.sum())


class SteadyStateKind(enum.Enum):
    POWER_LAW = "power-law"
    CONSTANT = "constant"
    ZERO = "zero"


@dataclass(frozen=True)
class SteadyStateReference:
    """Long-time limit profile on the interior nodes 1..n."""

    kind: SteadyStateKind
    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.n,):
            raise DimensionMismatch(
                f"reference needs {self.n} interior values, got shape {vals.shape}"
            )
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)


def steady_state_reference(spec: SchemeSpec) -> SteadyStateReference:
    """Steady state the solutions approach for this scheme.

    Reflecting/reflecting: the unit-mass power law ``(alpha-1) x**(alpha-2)``
    for the Riemann-Liouville form, the constant 1 for the Patie-Simon form.
    Any absorbing boundary drains the system, so the limit is zero.
    """
    n = spec.n
    reflecting = BoundaryCondition.REFLECTING
    if spec.left is reflecting and spec.right is reflecting:
        x = np.arange(1, n + 1) / n
        if spec.form is DerivativeForm.RIEMANN_LIOUVILLE:
            values = (spec.alpha - 1.0) * x ** (spec.alpha - 2.0)
            return SteadyStateReference(SteadyStateKind.POWER_LAW, n, values)
        return SteadyStateReference(SteadyStateKind.CONSTANT, n, np.ones(n))
    return SteadyStateReference(SteadyStateKind.ZERO, n, np.zeros(n))


def l1_distance_interior(u: GridFunction, ref: SteadyStateReference) -> float:
    """``h * sum_{j>=1} |u_j - ref_j|`` over the interior nodes."""
    if u.n != ref.n:
        raise DimensionMismatch(f"grid has n={u.n} but reference has n={ref.n}")
    return u.h * float(np.abs(u.values[1:] - ref.values).sum())


class NegativityResult(NamedTuple):
    value: float
    time_index: int
    node_index: int


def negativity_scan(series: TimeSeries) -> NegativityResult:
    """Global minimum over all snapshots, with its first location."""
    if len(series) == 0:
        raise EmptySeries("time series holds no snapshots")
    stacked = np.stack([snap.values for snap in series.snapshots])
    flat = int(np.argmin(stacked))
    t_idx, node = divmod(flat, stacked.shape[1])
    return NegativityResult(float(stacked[t_idx, node]), t_idx, node)


def _l1_norms(series: TimeSeries) -> np.ndarray:
    h = 1.0 / series.spec.n
    return np.array([h * float(np.abs(s.values).sum()) for s in series.snapshots])


def decay_rate(series: TimeSeries) -> float:
    """Least-squares slope of ``log L1-norm`` versus time.

    Fits the last half of the snapshots (at least 3) to skip the transient;
    the long-time behaviour is the asymptotic one.
    """
    norms = _l1_norms(series)
    if len(norms) < 3:
        raise DegenerateInput("need at least 3 snapshots to fit a decay rate")
    start = min(len(norms) // 2, len(norms) - 3)
    window = norms[start:]
    if np.any(window <= 0.0):
        raise DegenerateInput("L1 norms hit zero inside the fit window")
    t = np.asarray(series.times[start:])
    return float(np.polyfit(t, np.log(window), 1)[0])


def boundary_flux_check(series: TimeSeries) -> tuple[float, float]:
    """Flux of the final snapshot at nodes 1 and n.

    Uses the flux form matching the scheme (Riemann-Liouville flux, or the
    Caputo flux for the Patie-Simon form).  Node 0 is skipped: its flux is
    identically the degenerate one-term sum.
    """
    spec = series.spec
    if spec.form is DerivativeForm.CAPUTO:
        raise UnsupportedForm("no flux is defined for the raw Caputo form")
    if (
        spec.left is not BoundaryCondition.REFLECTING
        and spec.right is not BoundaryCondition.REFLECTING
    ):
        raise InvalidSpec("boundary flux check needs at least one reflecting side")
    if len(series) == 0:
        raise EmptySeries("time series holds no snapshots")
    q = flux_profile(series.snapshots[-1], spec.alpha, spec.c, spec.form)
    return float(q.values[1]), float(q.values[spec.n])


def convergence_order(errors: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of ``log error`` versus ``log h``.

    Expects at least three ``(h, error)`` pairs with strictly decreasing
    ``h`` and positive errors.
    """
    if len(errors) < 3:
        raise DegenerateInput("need at least 3 (h, error) pairs")
    h = np.array([p[0] for p in errors], dtype=float)
    err = np.array([p[1] for p in errors], dtype=float)
    if np.any(np.diff(h) >= 0.0):
        raise DegenerateInput("grid spacings must be strictly decreasing")
    if np.any(err <= 0.0) or np.any(h <= 0.0):
        raise DegenerateInput("spacings and errors must be positive")
    return float(np.polyfit(np.log(h), np.log(err), 1)[0])


@dataclass(frozen=True)
class DiagnosticsReport:
    """Bundle of the measured solution properties of one run."""

    mass_trace: tuple[float, ...]
    min_value: float
    min_time_index: int
    min_node_index: int
    steady_state_kind: SteadyStateKind
    steady_state_distance: tuple[float, ...]
    decay_rate: float | None
    boundary_flux: tuple[float, float] | None
    convergence_order: float | None


def summarize(
    series: TimeSeries,
    convergence: Sequence[tuple[float, float]] | None = None,
) -> DiagnosticsReport:
    """Collect the standard diagnostics for one finished run."""
    scan = negativity_scan(series)
    ref = steady_state_reference(series.spec)
    distances = tuple(l1_distance_interior(s, ref) for s in series.snapshots)
    try:
        rate = decay_rate(series)
    except DegenerateInput:
        rate = None
    try:
        flux = boundary_flux_check(series)
    except (UnsupportedForm, InvalidSpec):
        flux = None
    order = convergence_order(convergence) if convergence is not None else None
    return DiagnosticsReport(
        mass_trace=tuple(series.mass_trace),
        min_value=scan.value,
        min_time_index=scan.time_index,
        min_node_index=scan.node_index,
        steady_state_kind=ref.kind,
        steady_state_distance=distances,
        decay_rate=rate,
        boundary_flux=flux,
        convergence_order=order,
    )
