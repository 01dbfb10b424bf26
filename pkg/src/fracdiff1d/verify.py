"""Self-check suites behind the ``verify`` CLI subcommand.

Each suite runs a handful of desk-scale property checks and reports one
pass/fail line per check.  The suites mirror the package's test surface so
an installed copy can be validated without a test runner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .diagnostics import (
    decay_rate,
    l1_distance_interior,
    negativity_scan,
    steady_state_reference,
    total_mass,
)
from .grunwald import (
    DerivativeForm,
    grunwald_weights,
    weight_recursion_gap,
    weight_sum_gap,
    weight_tail_gap,
)
from .operators import BoundaryCondition, SchemeSpec, build_matrix, row_sums
from .timestepper import (
    InitialCondition,
    Method,
    SolverConfig,
    TimeSeries,
    run_simulation,
    stability_limit,
)

__all__ = ["CheckResult", "SUITE_NAMES", "run_suite"]

_ALPHAS = (1.2, 1.5, 1.8)
_FORMS_BCS = [
    (form, left, right)
    for form in (DerivativeForm.RIEMANN_LIOUVILLE, DerivativeForm.PATIE_SIMON)
    for left in BoundaryCondition
    for right in BoundaryCondition
] + [(DerivativeForm.CAPUTO, BoundaryCondition.ABSORBING, BoundaryCondition.ABSORBING)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(passed), detail)


def _desk_run(form, left, right, *, alpha=1.5, n=128, dt=1e-3, steps=400,
              method=Method.IMPLICIT, ic=None, every=20) -> TimeSeries:
    spec = SchemeSpec(form=form, left=left, right=right, alpha=alpha, c=1.0, n=n)
    t_end = steps * dt
    snaps = tuple(k * dt for k in range(0, steps + 1, every))
    config = SolverConfig(
        spec=spec,
        dt=dt,
        t_end=t_end,
        method=method,
        snapshot_times=snaps,
        initial=ic or InitialCondition.tent(),
        allow_unstable=False,
    )
    return run_simulation(config)


def _suite_identities() -> list[CheckResult]:
    out = []
    for alpha in _ALPHAS:
        w = grunwald_weights(alpha, 10_000)
        gap = weight_recursion_gap(w)
        out.append(_check(f"recursion alpha={alpha}", gap <= 1e-14, f"gap={gap:.2e}"))
        sgap = weight_sum_gap(alpha, 10_000)
        out.append(_check(f"cumulative-sum alpha={alpha}", sgap <= 1e-12, f"gap={sgap:.2e}"))
        w1 = grunwald_weights(alpha - 1.0, 10_000)
        tgap = float(weight_tail_gap(w1, np.arange(1000, 10_001)).max())
        out.append(_check(f"tail-asymptote alpha={alpha}", tgap < 0.01, f"gap={tgap:.2e}"))
    return out


def _suite_matrices() -> list[CheckResult]:
    out = []
    structure_ok, detail = True, ""
    for form, left, right in _FORMS_BCS:
        for alpha in _ALPHAS:
            for n in (2, 8, 64):
                B = build_matrix(SchemeSpec(form, left, right, alpha, 1.0, n)).entries
                lower = np.tril(B, k=-2)
                if np.any(lower != 0.0):
                    structure_ok, detail = False, f"{form.value} {left.value}/{right.value} n={n}"
    out.append(_check("lower-bandwidth-one", structure_ok, detail or "b_ij=0 for i>j+1"))
    for form in (DerivativeForm.RIEMANN_LIOUVILLE, DerivativeForm.PATIE_SIMON):
        worst = 0.0
        for alpha in _ALPHAS:
            for n in (2, 8, 64):
                spec = SchemeSpec(form, BoundaryCondition.REFLECTING,
                                  BoundaryCondition.REFLECTING, alpha, 1.0, n)
                rs = row_sums(build_matrix(spec))
                worst = max(worst, float(np.abs(rs).max() / n))
        out.append(_check(f"reflecting-row-sums {form.value}", worst <= 1e-12,
                          f"max|sum|/n={worst:.2e}"))
    worst = 0.0
    for alpha in _ALPHAS:
        for n in (2, 8, 64):
            spec = SchemeSpec(DerivativeForm.PATIE_SIMON, BoundaryCondition.REFLECTING,
                              BoundaryCondition.REFLECTING, alpha, 1.0, n)
            B = build_matrix(spec).entries
            worst = max(worst, float(np.abs(np.ones(n + 1) @ B).max() / n))
    out.append(_check("ps-reflecting-column-sums", worst <= 1e-12, f"max|sum|/n={worst:.2e}"))
    equal = True
    for right in BoundaryCondition:
        for alpha in _ALPHAS:
            rl = build_matrix(SchemeSpec(DerivativeForm.RIEMANN_LIOUVILLE,
                                         BoundaryCondition.ABSORBING, right, alpha, 1.0, 64))
            ps = build_matrix(SchemeSpec(DerivativeForm.PATIE_SIMON,
                                         BoundaryCondition.ABSORBING, right, alpha, 1.0, 64))
            equal = equal and np.array_equal(rl.entries[1:], ps.entries[1:])
    out.append(_check("left-absorbing-row-equality", equal, "rows 1..n match across forms"))
    return out


def _suite_conservation() -> list[CheckResult]:
    out = []
    n = 128
    limit = stability_limit(1.5, 1.0, 1.0 / n)
    for form in (DerivativeForm.RIEMANN_LIOUVILLE, DerivativeForm.PATIE_SIMON):
        for method, dt, steps in ((Method.EXPLICIT, limit / 2, 300),
                                  (Method.IMPLICIT, 1e-3, 300)):
            series = _desk_run(form, BoundaryCondition.REFLECTING,
                               BoundaryCondition.REFLECTING,
                               dt=dt, steps=steps, method=method, every=1)
            drift = max(abs(m - series.mass_trace[0]) for m in series.mass_trace)
            out.append(_check(f"mass-constant {form.value} {method.value}",
                              drift <= 1e-9, f"drift={drift:.2e}"))
    series = _desk_run(DerivativeForm.RIEMANN_LIOUVILLE, BoundaryCondition.ABSORBING,
                       BoundaryCondition.ABSORBING, dt=1e-3, steps=300, every=1)
    closure = max(abs(m + a - series.mass_trace[0])
                  for m, a in zip(series.mass_trace, series.absorbed_cumulative))
    out.append(_check("ledger-closure rl absorbing", closure <= 1e-9, f"gap={closure:.2e}"))
    return out


def _suite_positivity() -> list[CheckResult]:
    out = []
    n = 128
    dt = stability_limit(1.5, 1.0, 1.0 / n) / 2
    for form, left, right in _FORMS_BCS:
        if form is DerivativeForm.CAPUTO:
            continue
        series = _desk_run(form, left, right, dt=dt, steps=300,
                           method=Method.EXPLICIT, every=1)
        low = negativity_scan(series).value
        out.append(_check(f"min {form.value} {left.value[0]}{right.value[0]}",
                          low >= -1e-12, f"min={low:.2e}"))
    return out


def _suite_steady() -> list[CheckResult]:
    out = []
    for form, tol in ((DerivativeForm.RIEMANN_LIOUVILLE, 0.05),
                      (DerivativeForm.PATIE_SIMON, 0.02)):
        series = _desk_run(form, BoundaryCondition.REFLECTING,
                           BoundaryCondition.REFLECTING, dt=1e-3, steps=2000, every=500)
        ref = steady_state_reference(series.spec)
        dist = [l1_distance_interior(s, ref) for s in series.snapshots]
        out.append(_check(f"steady-distance {form.value}",
                          dist[-1] <= tol and dist[-1] < dist[1],
                          f"final={dist[-1]:.4f} earlier={dist[1]:.4f}"))
    return out


def _suite_decay() -> list[CheckResult]:
    out = []
    cases = [
        ("aa", BoundaryCondition.ABSORBING, BoundaryCondition.ABSORBING),
        ("ar", BoundaryCondition.ABSORBING, BoundaryCondition.REFLECTING),
        ("ra", BoundaryCondition.REFLECTING, BoundaryCondition.ABSORBING),
    ]
    for tag, left, right in cases:
        series = _desk_run(DerivativeForm.RIEMANN_LIOUVILLE, left, right,
                           dt=1e-3, steps=1000, every=50)
        norms = [total_mass(s) for s in series.snapshots]
        nonincreasing = all(b <= a + 1e-12 for a, b in zip(norms, norms[1:]))
        rate = decay_rate(series)
        out.append(_check(f"decay rl-{tag}", nonincreasing and rate < 0.0,
                          f"rate={rate:.3f}"))
    series = _desk_run(DerivativeForm.RIEMANN_LIOUVILLE, BoundaryCondition.REFLECTING,
                       BoundaryCondition.REFLECTING, dt=1e-3, steps=1000, every=50)
    rate = decay_rate(series)
    out.append(_check("no-decay rl-rr", abs(rate) < 1e-6, f"rate={rate:.2e}"))
    return out


def _suite_caputo_negativity() -> list[CheckResult]:
    series = _desk_run(DerivativeForm.CAPUTO, BoundaryCondition.ABSORBING,
                       BoundaryCondition.ABSORBING, n=256, dt=1e-3, steps=200,
                       ic=InitialCondition.sine_bump(), every=10)
    low = negativity_scan(series)
    return [_check("caputo-goes-negative", low.value < 0.0,
                   f"min={low.value:.4f} at t-index {low.time_index}, "
                   f"node {low.node_index}")]


_SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "identities": _suite_identities,
    "matrices": _suite_matrices,
    "conservation": _suite_conservation,
    "positivity": _suite_positivity,
    "steady": _suite_steady,
    "decay": _suite_decay,
    "caputo-negativity": _suite_caputo_negativity,
}

SUITE_NAMES = tuple(_SUITES) + ("all",)


def run_suite(name: str) -> list[CheckResult]:
    """Run one named suite (or ``all``) and return its check results."""
    if name == "all":
        results: list[CheckResult] = []
        for suite_name in _SUITES:
            for result in _SUITES[suite_name]():
                results.append(CheckResult(f"{suite_name}/{result.name}",
                                           result.passed, result.detail))
        return results
    if name not in _SUITES:
        raise KeyError(name)
    return [CheckResult(f"{name}/{r.name}", r.passed, r.detail)
            for r in _SUITES[name]()]
