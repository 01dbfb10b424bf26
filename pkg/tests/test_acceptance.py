"""Acceptance suite: every release criterion at its stated tolerance.

Each test prints one PASS/FAIL line (run with ``pytest -s`` to see them all
even on success).  Protocols follow the demonstration family: alpha = 1.5,
C = 1, tent initial data unless stated otherwise.
"""

import filecmp
import time

import numpy as np
import pytest

from fracdiff1d import (
    BoundaryCondition,
    DerivativeForm,
    GridFunction,
    InitialCondition,
    Method,
    SchemeSpec,
    SolverConfig,
    build_matrix,
    convergence_order,
    decay_rate,
    grunwald_weights,
    l1_distance_interior,
    negativity_scan,
    rl_derivative_grid,
    run_simulation,
    stability_limit,
    steady_state_reference,
)
from fracdiff1d.cli import main

RL = DerivativeForm.RIEMANN_LIOUVILLE
PS = DerivativeForm.PATIE_SIMON
CAP = DerivativeForm.CAPUTO
A = BoundaryCondition.ABSORBING
R = BoundaryCondition.REFLECTING

N = 512
ALPHA = 1.5


def _criterion(num: int, description: str, passed: bool, detail: str) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"{status}  criterion {num:2d}  {description}: {detail}")
    assert passed, f"criterion {num} ({description}): {detail}"


def protocol_run(form, left, right, *, method, dt, steps, n=N, every=1,
                 ic=None):
    spec = SchemeSpec(form=form, left=left, right=right, alpha=ALPHA, c=1.0, n=n)
    config = SolverConfig(
        spec=spec,
        dt=dt,
        t_end=steps * dt,
        method=method,
        snapshot_times=tuple(k * dt for k in range(0, steps + 1, every)),
        initial=ic or InitialCondition.tent(),
    )
    return run_simulation(config)


@pytest.fixture(scope="module")
def long_reflecting_runs():
    """RL and PS reflecting/reflecting runs to t = 2 (snapshots every 0.1)."""
    runs = {}
    for form in (RL, PS):
        runs[form] = protocol_run(form, R, R, method=Method.IMPLICIT,
                                  dt=1e-3, steps=2000, every=100)
    return runs


def test_criterion_01_weight_identities():
    start = time.perf_counter()
    worst_gap, worst_ratio = 0.0, 0.0
    for alpha in (1.2, 1.5, 1.8):
        total = float(grunwald_weights(alpha, 10_000).values.sum())
        tail = float(grunwald_weights(alpha - 1.0, 10_000).values[10_000])
        worst_gap = max(worst_gap, abs(total - tail))
        worst_ratio = max(worst_ratio, abs(total) / (2.0 * abs(tail)))
    elapsed = time.perf_counter() - start
    ok = worst_gap <= 1e-12 and worst_ratio <= 1.0 and elapsed < 1.0
    _criterion(1, "weight identities at m=1e4", ok,
               f"gap={worst_gap:.2e}, |sum|/2|g'|={worst_ratio:.3f}, {elapsed:.2f}s")


def test_criterion_02_hand_matrix_oracles():
    rl_aa = build_matrix(SchemeSpec(RL, A, A, 1.5, 1.0, 2)).entries
    rl_rr = build_matrix(SchemeSpec(RL, R, R, 1.5, 1.0, 2)).entries
    expected_aa = np.array([[0.0, 0.375, 0.0], [0.0, -1.5, 0.0], [0.0, 1.0, 0.0]])
    expected_rr = np.array([[-0.5, 0.375, 0.125], [1.0, -1.5, 0.5], [0.0, 1.0, -1.0]])
    gap = max(float(np.abs(rl_aa - expected_aa).max()),
              float(np.abs(rl_rr - expected_rr).max()))
    _criterion(2, "hand 3x3 matrices", gap <= 1e-15, f"max entry gap={gap:.1e}")


def test_criterion_03_conservation():
    limit = stability_limit(ALPHA, 1.0, 1.0 / N)
    worst = 0.0
    mass0 = None
    for form in (RL, PS):
        for method, dt in ((Method.EXPLICIT, limit / 2), (Method.IMPLICIT, 1e-3)):
            series = protocol_run(form, R, R, method=method, dt=dt, steps=1000)
            trace = np.asarray(series.mass_trace)
            mass0 = trace[0]
            worst = max(worst, float(np.abs(trace - trace[0]).max()))
    ok = worst <= 1e-9 and abs(mass0 - 1.0) <= 1e-3
    _criterion(3, "reflecting mass conservation, every step", ok,
               f"max drift={worst:.2e}, initial mass={mass0:.6f}")


def test_criterion_04_positivity_under_cfl():
    limit = stability_limit(ALPHA, 1.0, 1.0 / N)
    worst = 0.0
    for form in (RL, PS):
        for left in (A, R):
            for right in (A, R):
                series = protocol_run(form, left, right, method=Method.EXPLICIT,
                                      dt=limit / 2, steps=1000)
                worst = min(worst, negativity_scan(series).value)
    _criterion(4, "positivity for all non-Caputo schemes", worst >= -1e-12,
               f"global min={worst:.2e}")


def test_criterion_05_caputo_goes_negative():
    start = time.perf_counter()
    series = protocol_run(CAP, A, A, method=Method.IMPLICIT, dt=1e-3, steps=200,
                          ic=InitialCondition.sine_bump())
    low = negativity_scan(series)
    elapsed = time.perf_counter() - start
    ok = low.value < 0.0 and elapsed < 60.0
    _criterion(5, "Caputo run dips negative from nonnegative data", ok,
               f"min={low.value:.4f} at t={series.times[low.time_index]:.3f}, "
               f"{elapsed:.1f}s")


def test_criterion_06_rl_reflecting_steady_state(long_reflecting_runs):
    series = long_reflecting_runs[RL]
    ref = steady_state_reference(series.spec)
    at_half = series.times.index(0.5)
    d_half = l1_distance_interior(series.snapshots[at_half], ref)
    d_end = l1_distance_interior(series.snapshots[-1], ref)
    ok = d_end <= 0.05 and d_end < d_half
    _criterion(6, "power-law steady state for reflecting RL", ok,
               f"dist(t=2)={d_end:.4f} <= 0.05, dist(t=0.5)={d_half:.4f}")


def test_criterion_07_ps_reflecting_steady_state(long_reflecting_runs):
    series = long_reflecting_runs[PS]
    ref = steady_state_reference(series.spec)
    d_end = l1_distance_interior(series.snapshots[-1], ref)
    B = build_matrix(series.spec).entries
    kernel_gap = float(np.abs(np.ones(N + 1) @ B).max())
    ok = d_end <= 0.02 and kernel_gap <= 1e-12
    _criterion(7, "constant steady state for reflecting PS", ok,
               f"dist(t=2)={d_end:.4f} <= 0.02, |1.B|={kernel_gap:.1e}")


def test_criterion_08_absorbing_decay():
    ok = True
    details = []
    for left, right, tag in ((A, A, "aa"), (A, R, "ar"), (R, A, "ra")):
        series = protocol_run(RL, left, right, method=Method.IMPLICIT,
                              dt=1e-3, steps=2000, every=100)
        norms = [s.h * float(np.abs(s.values).sum()) for s in series.snapshots]
        nonincreasing = all(b <= a + 1e-12 for a, b in zip(norms, norms[1:]))
        rate = decay_rate(series)
        ok = ok and nonincreasing and rate < 0.0 and len(norms) >= 20
        details.append(f"{tag}: rate={rate:.2f}")
    _criterion(8, "absorbing runs decay exponentially", ok, ", ".join(details))


def test_criterion_09_implicit_beyond_stability_limit():
    limit = stability_limit(ALPHA, 1.0, 1.0 / N)
    series = protocol_run(RL, A, A, method=Method.IMPLICIT, dt=10 * limit,
                          steps=200)
    finite = all(np.all(np.isfinite(s.values)) for s in series.snapshots)
    norms = [s.h * float(np.abs(s.values).sum()) for s in series.snapshots]
    nonincreasing = all(b <= a + 1e-12 for a, b in zip(norms, norms[1:]))
    _criterion(9, "implicit stays stable at 10x the explicit limit",
               finite and nonincreasing,
               f"dt={10 * limit:.2e}, final L1={norms[-1]:.3f}")


def test_criterion_10_grunwald_first_order():
    # Shifted evaluation of x**2 against the exact derivative
    # 2/Gamma(1.5) x**0.5 at the node adjacent to x = 1 (the stencil at the
    # endpoint itself references the exterior and carries no accuracy claim).
    import math

    pairs = []
    for n in (256, 512, 1024, 2048):
        x = np.arange(n + 1) / n
        out = rl_derivative_grid(GridFunction(n, x**2), ALPHA, shifted=True)
        exact = 2.0 / math.gamma(1.5) * x[n - 1] ** 0.5
        pairs.append((1.0 / n, abs(out.values[n - 1] - exact)))
    order = convergence_order(pairs)
    _criterion(10, "shifted stencil is first order at the right edge",
               abs(order - 1.0) <= 0.2, f"observed order={order:.3f}")


def test_criterion_11_left_absorbing_equivalence():
    limit = stability_limit(ALPHA, 1.0, 1.0 / N)
    worst = 0.0
    for method, dt in ((Method.EXPLICIT, limit / 2), (Method.IMPLICIT, 1e-3)):
        runs = [protocol_run(form, A, A, method=method, dt=dt, steps=500,
                             every=100) for form in (PS, RL)]
        for a, b in zip(runs[0].snapshots, runs[1].snapshots):
            worst = max(worst, float(np.abs(a.values - b.values).max()))
    _criterion(11, "PS and RL agree when the left boundary absorbs",
               worst <= 1e-12, f"max snapshot gap={worst:.2e}")


def test_criterion_12_figure_determinism(tmp_path):
    first = tmp_path / "fig2_a.csv"
    second = tmp_path / "fig2_b.csv"
    assert main(["figure", "2", "--out", str(first)]) == 0
    assert main(["figure", "2", "--out", str(second)]) == 0
    same = filecmp.cmp(first, second, shallow=False)
    same_meta = filecmp.cmp(f"{first}.meta.json", f"{second}.meta.json",
                            shallow=False)
    _criterion(12, "repeated figure runs are byte-identical",
               same and same_meta,
               f"csv bytes={first.stat().st_size}")
