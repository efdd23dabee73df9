"""NOMA-beneficial ratio interval [r_min, r_max] for a given weak-user SNR.

Two independent routes compute the interval: an iterative solver that
linearizes the concave TDMA side and shrinks/grows a surrogate feasible set
(an inner approximation, so every iterate stays inside the true region), and
a brute-force bisection oracle licensed by the gap's unimodality. The solver
is the production path; the oracle exists to cross-check it.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .rates import noma_rate_at, rate_gap_at, rate_gap_curve, tdma_rate_at, tdma_rate_slope

EXPANSION_GUARD = 1e30  # abort geometric bracket growth beyond this ratio


class RegionSolverError(RuntimeError):
    """Solver failed structurally (bracket overflow, exhausted iterations)."""


class InfeasibleSeedError(RegionSolverError):
    """The starting ratio does not satisfy the gap constraint."""


class OracleMismatchError(RegionSolverError):
    """Solver endpoints disagree with the bisection oracle."""


@dataclass(frozen=True)
class ScaSettings:
    """Solver controls.

    tolerance is the iterate-change threshold, measured relative to
    max(1, r) so it stays meaningful when r_max spans many decades.
    """

    tolerance: float = 1e-9
    max_iterations: int = 60
    scan_points: int = 256
    scan_range: tuple[float, float] = (1.0, 1e12)

    def __post_init__(self):
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.scan_points < 16:
            raise ValueError("scan_points must be >= 16")
        lo, hi = self.scan_range
        if not 0.0 < lo < hi:
            raise ValueError("scan_range must satisfy 0 < lo < hi")


@dataclass(frozen=True)
class NomaRegion:
    """Interval of squared gain ratios where pairing beats time-splitting.

    Empty regions are a first-class outcome (never pair at this SNR), not an
    error; they carry no endpoints.
    """

    gamma: float
    r_min: float | None = None
    r_max: float | None = None

    def __post_init__(self):
        if (self.r_min is None) != (self.r_max is None):
            raise ValueError("endpoints must both be present or both absent")
        if self.r_min is not None and not 1.0 <= self.r_min <= self.r_max:
            raise ValueError("need 1 <= r_min <= r_max")

    @classmethod
    def empty(cls, gamma: float) -> "NomaRegion":
        return cls(gamma=gamma)

    @property
    def is_empty(self) -> bool:
        return self.r_min is None

    @property
    def status(self) -> str:
        return "empty" if self.is_empty else "nonempty"

    def contains(self, r: float) -> bool:
        return not self.is_empty and self.r_min <= r <= self.r_max

    def width_db(self) -> float:
        """Interval width 10*log10(r_max/r_min); 0 for an empty region."""
        if self.is_empty:
            return 0.0
        return 10.0 * math.log10(self.r_max / self.r_min)


@dataclass
class ScaTrace:
    """Iterate history of one solver run."""

    gamma: float
    objective: str                      # "min" or "max"
    iterates: list[float] = field(default_factory=list)
    gaps: list[float] = field(default_factory=list)
    converged: bool = False

    @property
    def iterations(self) -> int:
        return max(0, len(self.iterates) - 1)


def feasibility_scan(gamma: float, settings: ScaSettings | None = None) -> float | None:
    """Best (largest-gap) ratio on a log-spaced grid, or None if the gap is
    nowhere positive at scan resolution."""
    settings = settings or ScaSettings()
    lo, hi = settings.scan_range
    grid = np.logspace(math.log10(lo), math.log10(hi), settings.scan_points)
    gaps = rate_gap_curve(gamma, grid)
    best = int(np.argmax(gaps))
    if gaps[best] <= 0.0:
        return None
    return float(grid[best])


def _bisect_gap_root(gamma: float, lo: float, hi: float, rel_width: float = 1e-8) -> float:
    """Root of the gap inside [lo, hi] where exactly one endpoint is feasible.

    Log-space bisection; returns the feasible-side bracket end so the result
    always lies inside the true region.
    """
    lo_feasible = rate_gap_at(gamma, lo) >= 0.0
    while hi - lo > rel_width * hi:
        mid = math.sqrt(lo * hi)
        if mid <= lo or mid >= hi:  # bracket at float resolution
            break
        if (rate_gap_at(gamma, mid) >= 0.0) == lo_feasible:
            lo = mid
        else:
            hi = mid
    return lo if lo_feasible else hi


def oracle_region(gamma: float, settings: ScaSettings | None = None) -> NomaRegion:
    """Brute-force region: grid seed plus bisection toward both endpoints.

    Valid because the gap has a single interior maximum, so each side of the
    seed crosses zero at most once.
    """
    settings = settings or ScaSettings()
    seed = feasibility_scan(gamma, settings)
    if seed is None:
        return NomaRegion.empty(gamma)

    floor = max(1.0, settings.scan_range[0])
    if rate_gap_at(gamma, floor) >= 0.0:
        r_min = floor  # region reaches the canonical lower bound r = 1
    else:
        r_min = _bisect_gap_root(gamma, floor, seed)

    hi = max(seed * 2.0, settings.scan_range[1])
    while rate_gap_at(gamma, hi) >= 0.0:
        hi *= 4.0
        if hi > EXPANSION_GUARD:
            raise RegionSolverError(
                f"upper bracket exceeded {EXPANSION_GUARD:g} at gamma={gamma:g}"
            )
    r_max = _bisect_gap_root(gamma, seed, hi)
    return NomaRegion(gamma, r_min, r_max)


def _surrogate_root(g_fn, lo: float, hi: float, lo_feasible: bool, rel_width: float) -> float:
    """Root of the surrogate constraint by log-space bisection; returns the
    feasible-side bracket end."""
    while hi - lo > rel_width * hi:
        mid = math.sqrt(lo * hi)
        if mid <= lo or mid >= hi:
            break
        if (g_fn(mid) >= 0.0) == lo_feasible:
            lo = mid
        else:
            hi = mid
    return lo if lo_feasible else hi


def sca_solve(
    gamma: float,
    objective: str,
    seed: float,
    settings: ScaSettings | None = None,
) -> tuple[float, ScaTrace]:
    """Push a feasible ratio to the region boundary in the requested direction.

    Each iteration replaces the concave TDMA side q by its tangent at the
    current iterate. The tangent over-estimates q, so the surrogate set
    {p - q_tangent >= 0} sits inside the true region and every iterate stays
    feasible; the surrogate is one-dimensional with a concave constraint, so
    its extreme point is found by root bisection from the iterate outward.
    Stops when consecutive iterates differ by less than
    tolerance * max(1, r).
    """
    if objective not in ("min", "max"):
        raise ValueError("objective must be 'min' or 'max'")
    settings = settings or ScaSettings()

    gap_seed = rate_gap_at(gamma, seed)
    if gap_seed < 0.0:
        raise InfeasibleSeedError(
            f"seed r={seed:g} has gap {gap_seed:.3e} < 0 at gamma={gamma:g}"
        )

    trace = ScaTrace(gamma=gamma, objective=objective)
    trace.iterates.append(seed)
    trace.gaps.append(gap_seed)

    # Root precision tracks the outer progress: iterates home in
    # quadratically, so early surrogate roots need little accuracy.
    inner_floor = max(settings.tolerance * 1e-4, 1e-13)
    inner_width = 1e-3
    r = seed
    for _ in range(settings.max_iterations):
        q_r = tdma_rate_at(gamma, r)
        q_slope = tdma_rate_slope(gamma, r)
        anchor = r

        def surrogate(x: float) -> float:
            return noma_rate_at(gamma, x) - (q_r + q_slope * (x - anchor))

        if objective == "min":
            if surrogate(1.0) >= 0.0:
                nxt = 1.0  # surrogate set reaches the canonical bound
            else:
                nxt = _surrogate_root(surrogate, 1.0, r, lo_feasible=False,
                                      rel_width=inner_width)
        else:
            hi = r * 2.0
            while surrogate(hi) >= 0.0:
                hi *= 2.0
                if hi > EXPANSION_GUARD:
                    raise RegionSolverError(
                        f"surrogate bracket exceeded {EXPANSION_GUARD:g}"
                    )
            nxt = _surrogate_root(surrogate, r, hi, lo_feasible=True,
                                  rel_width=inner_width)

        trace.iterates.append(nxt)
        trace.gaps.append(rate_gap_at(gamma, nxt))
        step = abs(nxt - r)
        r = nxt
        if step < settings.tolerance * max(1.0, abs(r)):
            trace.converged = True
            break
        rel_step = step / max(1.0, abs(r))
        inner_width = min(1e-3, max(inner_floor, 0.01 * rel_step))
    return r, trace


def region_for_snr(
    gamma: float,
    settings: ScaSettings | None = None,
    validate: bool = False,
) -> NomaRegion:
    """Full region computation: feasibility scan, then one solver run toward
    each endpoint from the scan's best point; optional oracle cross-check."""
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    settings = settings or ScaSettings()

    seed = feasibility_scan(gamma, settings)
    if seed is None:
        return NomaRegion.empty(gamma)

    r_min, trace_min = sca_solve(gamma, "min", seed, settings)
    if not trace_min.converged:
        raise RegionSolverError(
            f"lower-endpoint solve did not converge at gamma={gamma:g}"
        )
    r_max, trace_max = sca_solve(gamma, "max", seed, settings)
    if not trace_max.converged:
        raise RegionSolverError(
            f"upper-endpoint solve did not converge at gamma={gamma:g}"
        )
    found = NomaRegion(gamma, r_min, r_max)

    if validate:
        ref = oracle_region(gamma, settings)
        if ref.is_empty:
            raise OracleMismatchError(f"oracle found no region at gamma={gamma:g}")
        err_min = abs(found.r_min - ref.r_min) / ref.r_min
        err_max = abs(found.r_max - ref.r_max) / ref.r_max
        if max(err_min, err_max) > 1e-3:
            raise OracleMismatchError(
                f"solver/oracle mismatch at gamma={gamma:g}: "
                f"r_min {found.r_min:g} vs {ref.r_min:g}, "
                f"r_max {found.r_max:g} vs {ref.r_max:g}"
            )
    return found


def write_trace_csv(trace: ScaTrace, path: str) -> None:
    """Dump one solver run as CSV with columns (iter, r, gap)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iter", "r", "gap"])
        for i, (r, gap) in enumerate(zip(trace.iterates, trace.gaps)):
            writer.writerow([i, repr(r), repr(gap)])


class RegionCache:
    """Memoizes regions per SNR bucket (1e-3 relative in log space).

    Lookups from threads may race but at worst recompute the same value;
    parallel workers should each own a cache.
    """

    def __init__(self, settings: ScaSettings | None = None, validate: bool = False,
                 rel_key: float = 1e-3):
        self.settings = settings or ScaSettings()
        self.validate = validate
        self._rel_key = rel_key
        self._regions: dict[int, NomaRegion] = {}

    def __len__(self) -> int:
        return len(self._regions)

    def region_of(self, gamma: float) -> NomaRegion:
        key = round(math.log(gamma) / self._rel_key)
        hit = self._regions.get(key)
        if hit is None:
            hit = region_for_snr(gamma, self.settings, self.validate)
            self._regions[key] = hit
        return hit
