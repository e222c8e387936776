"""Seeded, parallel Monte Carlo sweeps over (family, size, p) grids and
bisection estimation of the empirical diameter-2 threshold constant.

Reproducibility contract: the stream for trial t of grid row r is derived
from (master_seed, r, t) with a counter-based generator, so results are
bit-identical for a given config regardless of worker count or scheduling.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graphs import latin_from_group, stream
from .groups import build_group

DEFAULT_BRACKET = (0.05, 8.0)
BISECTION_ITERATIONS = 12
WILSON_Z = 1.959963984540054  # two-sided 95%


class ConfigError(ValueError):
    """Invalid sweep configuration (maps to CLI exit code 2)."""


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    """Wilson score interval; well behaved at rates 0 and 1 where sweeps spend
    most of their grid points."""
    if trials <= 0:
        return (0.0, 1.0)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    margin = (z / denom) * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return (max(0.0, center - margin), min(1.0, center + margin))


def default_workers() -> int:
    env = os.environ.get("CAYLEYLAB_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SweepConfig:
    """family: one or more family specs; grid: {"p": [...]} or {"c": [...]}
    (c values map through p = sqrt(c log n / n)); model: "cayley" or "latin"
    (the Latin square graph of the same group's square)."""

    family: tuple[str, ...]
    grid: dict
    trials: int
    master_seed: int
    model: str = "cayley"

    def __post_init__(self):
        if isinstance(self.family, str):
            object.__setattr__(self, "family", (self.family,))
        else:
            object.__setattr__(self, "family", tuple(self.family))
        if not self.family:
            raise ConfigError("at least one family is required")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.model not in ("cayley", "latin"):
            raise ConfigError(f"unknown model: {self.model!r}")
        kinds = set(self.grid) & {"p", "c"}
        if len(kinds) != 1 or not self.grid[kinds.pop()]:
            raise ConfigError('grid must be {"p": [...]} or {"c": [...]}, non-empty')

    @property
    def grid_kind(self) -> str:
        return "p" if "p" in self.grid else "c"

    @staticmethod
    def from_json(text: str) -> "SweepConfig":
        data = json.loads(text)
        try:
            return SweepConfig(
                family=tuple(data["family"]) if not isinstance(data["family"], str)
                else (data["family"],),
                grid=data["grid"],
                trials=int(data["trials"]),
                master_seed=int(data["master_seed"]),
                model=data.get("model", "cayley"),
            )
        except KeyError as exc:
            raise ConfigError(f"missing config field: {exc}") from None

    def to_json(self) -> str:
        return json.dumps({"family": list(self.family), "grid": self.grid,
                           "trials": self.trials, "master_seed": self.master_seed,
                           "model": self.model})


@dataclass(frozen=True)
class SweepRow:
    family: str
    n: int
    p: float
    c: float | None
    trials: int
    successes: int
    seed: int
    wall_ms: int

    @property
    def rate(self) -> float:
        return self.successes / self.trials

    def wilson(self) -> tuple[float, float]:
        return wilson_interval(self.successes, self.trials)


CSV_HEADER = "family,n,p,c,trials,successes,rate,wilson_low,wilson_high,seed,wall_ms"


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    rows: tuple[SweepRow, ...]

    def to_csv(self, include_timing: bool = True) -> str:
        """CSV with the contract columns; ``include_timing=False`` zeroes the
        wall_ms column so byte-identical output across worker counts can be
        asserted (timing is the one non-deterministic column)."""
        lines = [CSV_HEADER]
        for r in self.rows:
            lo, hi = r.wilson()
            c_txt = "" if r.c is None else f"{r.c:.12g}"
            ms = r.wall_ms if include_timing else 0
            lines.append(
                f"{r.family},{r.n},{r.p:.12g},{c_txt},{r.trials},{r.successes},"
                f"{r.rate:.6f},{lo:.6f},{hi:.6f},{r.seed},{ms}")
        return "\n".join(lines) + "\n"


class _TrialContext:
    """Immutable per-family data shared by all trials: the dense table plus
    inverse map (Cayley) or the square's entries (Latin)."""

    def __init__(self, spec: str, model: str):
        group = build_group(spec)
        if group.backing != "dense":
            raise ConfigError(
                f"{spec}: order {group.order} is not dense-backed; sweeps need "
                f"materialised tables")
        self.spec = spec
        self.n = group.order
        self.model = model
        if model == "cayley":
            self.table = group._table
            self.inv_map = group.inv_all()
        else:
            self.entries = latin_from_group(group).entries

    def run_trial(self, p: float, rng: np.random.Generator) -> bool:
        member = rng.random(self.n) < p
        if self.model == "cayley":
            cl = _kernels.closure_indices(member, self.inv_map)
            return _kernels.cayley_diam2(self.table, cl)
        return _kernels.latin_diam2(self.entries, member)


def _grid_points(cfg: SweepConfig, n: int) -> list[tuple[float, float | None]]:
    if cfg.grid_kind == "p":
        points = [(float(p), None) for p in cfg.grid["p"]]
    else:
        points = [(threshold_p_clamped(float(c), n), float(c)) for c in cfg.grid["c"]]
    for p, _ in points:
        if not 0.0 <= p <= 1.0:
            raise ConfigError(f"grid p={p} outside [0, 1]")
    return points


def threshold_p_clamped(c: float, n: int) -> float:
    """sqrt(c log n / n), clamped to 1 for small n where the formula overflows
    the probability range."""
    return min(1.0, math.sqrt(c * math.log(n) / n))


def run_sweep(cfg: SweepConfig, workers: int | None = None,
              include_timing: bool = True) -> SweepResult:
    """Run `trials` independent graphs per grid point; success is the
    diameter <= 2 event.  Rows are ordered by (family, n, p)."""
    workers = workers or default_workers()
    contexts = {spec: _TrialContext(spec, cfg.model) for spec in cfg.family}
    row_defs = []
    for spec in cfg.family:
        ctx = contexts[spec]
        for p, c in _grid_points(cfg, ctx.n):
            row_defs.append((spec, ctx.n, p, c))
    row_defs.sort(key=lambda r: (r[0], r[1], r[2]))

    def run_row(row_idx: int) -> SweepRow:
        spec, n, p, c = row_defs[row_idx]
        ctx = contexts[spec]
        t0 = time.monotonic()
        successes = 0
        for t in range(cfg.trials):
            rng = stream(cfg.master_seed, row_idx, t)
            successes += ctx.run_trial(p, rng)
        ms = int((time.monotonic() - t0) * 1000)
        return SweepRow(family=spec, n=n, p=p, c=c, trials=cfg.trials,
                        successes=successes, seed=cfg.master_seed,
                        wall_ms=ms if include_timing else 0)

    if workers <= 1 or len(row_defs) == 1:
        rows = [run_row(i) for i in range(len(row_defs))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_row, range(len(row_defs))))
    return SweepResult(config=cfg, rows=tuple(rows))


# -- threshold estimation ---------------------------------------------------------


@dataclass(frozen=True)
class ThresholdEstimate:
    """Bisection estimate of the c where Pr(diam <= 2) crosses 1/2 under
    p = sqrt(c log n / n); c_hat_log2 restates it for base-2 logs."""

    family: str
    n: int
    c_hat: float
    bracket: tuple[float, float]
    trials_per_probe: int
    straddles: bool
    endpoint_rates: tuple[float, float]
    note: str = ""

    @property
    def c_hat_log2(self) -> float:
        return self.c_hat * math.log(2)

    def as_dict(self) -> dict:
        return {
            "family": self.family, "n": self.n, "c_hat": self.c_hat,
            "c_hat_log2": self.c_hat_log2, "bracket": list(self.bracket),
            "trials_per_probe": self.trials_per_probe,
            "straddles": self.straddles,
            "endpoint_rates": list(self.endpoint_rates), "note": self.note,
        }


def estimate_threshold(family: str, trials_per_probe: int, master_seed: int,
                       bracket: tuple[float, float] = DEFAULT_BRACKET,
                       iterations: int = BISECTION_ITERATIONS,
                       workers: int | None = None,
                       model: str = "cayley") -> ThresholdEstimate:
    """Bisect c over the bracket, probing the success rate with
    trials_per_probe graphs per midpoint (probe index seeds the streams)."""
    if trials_per_probe < 100:
        raise ConfigError("trials_per_probe must be at least 100")
    workers = workers or default_workers()
    ctx = _TrialContext(family, model)
    n = ctx.n

    def probe(c: float, probe_idx: int) -> float:
        p = threshold_p_clamped(c, n)
        trials = range(trials_per_probe)

        def one(t: int) -> bool:
            return ctx.run_trial(p, stream(master_seed, probe_idx, t))

        if workers <= 1:
            succ = sum(one(t) for t in trials)
        else:
            chunk = max(1, trials_per_probe // (workers * 4))
            ranges = [range(s, min(s + chunk, trials_per_probe))
                      for s in range(0, trials_per_probe, chunk)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                succ = sum(pool.map(lambda r: sum(one(t) for t in r), ranges))
        return succ / trials_per_probe

    lo, hi = bracket
    rate_lo = probe(lo, 0)
    rate_hi = probe(hi, 1)
    if not (rate_lo < 0.5 <= rate_hi):
        return ThresholdEstimate(
            family=family, n=n, c_hat=math.nan, bracket=bracket,
            trials_per_probe=trials_per_probe, straddles=False,
            endpoint_rates=(rate_lo, rate_hi),
            note=f"bracket does not straddle 1/2: rates {rate_lo:.3f}, {rate_hi:.3f}")
    for i in range(iterations):
        mid = (lo + hi) / 2
        if probe(mid, 2 + i) < 0.5:
            lo = mid
        else:
            hi = mid
    return ThresholdEstimate(
        family=family, n=n, c_hat=(lo + hi) / 2, bracket=(lo, hi),
        trials_per_probe=trials_per_probe, straddles=True,
        endpoint_rates=(rate_lo, rate_hi),
        note=f"{iterations} bisection iterations from {bracket}")


def compare_families(estimates: list[ThresholdEstimate]) -> dict:
    """Order threshold estimates and report bracket disjointness and ratios
    between consecutive families."""
    if not estimates:
        raise ValueError("need at least one estimate")
    ranked = sorted(estimates, key=lambda e: -e.c_hat)
    comparisons = []
    for a, b in zip(ranked, ranked[1:]):
        comparisons.append({
            "higher": a.family, "lower": b.family,
            "c_hats": [a.c_hat, b.c_hat],
            "strict": a.c_hat > b.c_hat,
            "brackets_disjoint": a.bracket[0] > b.bracket[1],
            "ratio": a.c_hat / b.c_hat if b.c_hat else math.inf,
        })
    return {
        "order": [e.family for e in ranked],
        "estimates": [e.as_dict() for e in ranked],
        "comparisons": comparisons,
        "strict_order": all(c["strict"] for c in comparisons),
        "disjoint_brackets": all(c["brackets_disjoint"] for c in comparisons),
    }
