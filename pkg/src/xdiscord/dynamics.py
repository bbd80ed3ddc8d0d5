"""Time sweeps under a noise channel and detection of sudden changes.

A sudden change is a switch of the branch that minimises (S1, S2, S3).
It shows up as a jump in the slope of the classical correlation and the
discord curves. All times are the dimensionless product tau*t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .channels import ChannelAtTime, NoiseKind, evolve_params
from .discord import BRANCHES, Branch, CorrelationBreakdown, correlations
from .errors import NoCrossingError
from .states import XStateParams, as_x_params

TIE_TOL = 1e-12
SLOPE_THRESHOLD = 1e-3
BISECTION_TOL = 1e-10
DEFAULT_GRID = (0.0, 3.0, 1001)


def default_grid() -> np.ndarray:
    lo, hi, n = DEFAULT_GRID
    return np.linspace(lo, hi, n)


@dataclass(frozen=True)
class SuddenChangeEvent:
    tau_t: float
    branch_before: Branch
    branch_after: Branch
    left_slope: float
    right_slope: float
    quantity: str = "discord"
    weak: bool = False

    @property
    def slope_jump(self) -> float:
        return abs(self.left_slope - self.right_slope)


@dataclass(frozen=True)
class SweepResult:
    kind: NoiseKind
    tau: float
    initial: XStateParams
    grid: np.ndarray
    controls: np.ndarray
    rows: tuple[CorrelationBreakdown, ...]
    events: tuple[SuddenChangeEvent, ...] = field(default=())

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(row, name) for row in self.rows])


def evaluate(p0, kind, tau_t: float, tau: float = 1.0) -> CorrelationBreakdown:
    ch = ChannelAtTime.at_scaled_time(kind, tau_t, tau)
    return correlations(evolve_params(p0, ch))


def _tie_set(row: CorrelationBreakdown, tol: float) -> set[Branch]:
    values = row.branch_values
    low = min(values)
    return {b for b, v in zip(BRANCHES, values) if v - low <= tol}


def _slope(grid, values, i, j) -> float:
    return float((values[j] - values[i]) / (grid[j] - grid[i]))


def detect_events(
    grid,
    rows,
    quantity: str = "discord",
    slope_threshold: float = SLOPE_THRESHOLD,
    tie_tol: float = TIE_TOL,
) -> list[SuddenChangeEvent]:
    """Find argmin-branch switches along a sweep.

    A branch persists through rows where it is tied (within ``tie_tol``)
    with the minimum, so exact degeneracies do not count as switches. Each
    event sits midway between the two grid points that bracket it; slopes
    come from the two nearest grid points on each side.
    """
    grid = np.asarray(grid, dtype=float)
    if len(grid) < 3:
        return []
    values = np.array([getattr(row, quantity) for row in rows])
    events = []
    current = rows[0].argmin_branch
    for i in range(1, len(rows)):
        ties = _tie_set(rows[i], tie_tol)
        if current in ties:
            continue
        after = min(ties, key=lambda b: b.index)
        lo = max(i - 2, 0)
        left = _slope(grid, values, lo, i - 1) if i - 1 > lo else _slope(grid, values, i - 1, i)
        hi = min(i + 1, len(grid) - 1)
        right = _slope(grid, values, i, hi) if hi > i else _slope(grid, values, i - 1, i)
        events.append(
            SuddenChangeEvent(
                tau_t=float(0.5 * (grid[i - 1] + grid[i])),
                branch_before=current,
                branch_after=after,
                left_slope=left,
                right_slope=right,
                quantity=quantity,
                weak=abs(left - right) <= slope_threshold,
            )
        )
        current = after
    return events


def locate_transition(
    p0,
    kind,
    tau: float = 1.0,
    bracket: tuple[float, float] = (0.0, 3.0),
    tol: float = BISECTION_TOL,
) -> float:
    """Bisect for the scaled time where the minimising branch changes.

    ``bracket`` is given in tau*t units. The two branches are the argmins
    at the bracket ends; their difference must change sign strictly.
    """
    lo, hi = map(float, bracket)
    if not hi > lo:
        raise ValueError("bracket must satisfy lo < hi")
    row_lo = evaluate(p0, kind, lo, tau)
    row_hi = evaluate(p0, kind, hi, tau)
    before, after = row_lo.argmin_branch, row_hi.argmin_branch
    if before is after:
        raise NoCrossingError(f"argmin branch is {before.value} at both ends of {bracket}")

    def gap(row):
        values = row.branch_values
        return values[before.index] - values[after.index]

    g_lo, g_hi = gap(row_lo), gap(row_hi)
    if not (g_lo < 0 < g_hi):
        raise NoCrossingError(
            f"{before.value} - {after.value} does not change sign strictly in {bracket}"
        )
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if gap(evaluate(p0, kind, mid, tau)) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sweep(
    p0,
    kind,
    tau: float = 1.0,
    grid=None,
    quantity: str = "discord",
    refine: bool = True,
    slope_threshold: float = SLOPE_THRESHOLD,
) -> SweepResult:
    """Evaluate correlations along ``grid`` (tau*t values) and find events.

    With ``refine`` each event time is sharpened by bisection inside its
    grid bracket.
    """
    kind = NoiseKind.parse(kind)
    p0 = as_x_params(p0)
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0:
        raise ValueError("grid must be a non-empty 1-D sequence")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    if grid[0] < 0:
        raise ValueError("grid times must be >= 0")

    channels = [ChannelAtTime.at_scaled_time(kind, x, tau) for x in grid]
    rows = tuple(correlations(evolve_params(p0, ch)) for ch in channels)
    controls = np.array([ch.control for ch in channels])
    events = detect_events(grid, rows, quantity, slope_threshold)
    if refine:
        events = [_refine(e, p0, kind, tau, grid, rows) for e in events]
    return SweepResult(kind, tau, p0, grid, controls, rows, tuple(events))


def _refine(event, p0, kind, tau, grid, rows) -> SuddenChangeEvent:
    i = int(np.searchsorted(grid, event.tau_t))
    # step back to the last row where the old branch was the strict minimum
    j = i - 1
    while j > 0 and _tie_set(rows[j], TIE_TOL) != {event.branch_before}:
        j -= 1
    try:
        t = locate_transition(p0, kind, tau, (grid[j], grid[i]))
    except NoCrossingError:
        return event
    return replace(event, tau_t=t)


def depolarizing_zero_time(p0) -> float:
    """Scaled time at which depolarizing noise wipes out all correlations.

    The coefficients scale by 1 - 4p/3 with p = 1 - exp(-tau t), which
    vanishes at p = 3/4, i.e. tau*t = ln 4.
    """
    p0 = as_x_params(p0)
    if p0.r == 0 and p0.c1 == 0 and p0.c2 == 0 and p0.c3 == 0:
        raise ValueError("state carries no correlations for depolarizing noise to remove")
    return math.log(4.0)
