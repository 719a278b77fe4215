"""Timing harness for the complexity claims.

Each series is timed at every ``n`` in a range and a straight line is fitted
to ``log(time)`` against ``log(N)``, ``N = 4**n``.  The fitted slope is the
empirical exponent: about 1 for the transforms and ``parity_flip`` (the log
factor of ``N log N`` only bends the curve slightly), about 2 for the
blade-by-blade product.
"""

from __future__ import annotations

import logging
import math
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .algebra import Multivector, geometric_product_naive
from .automorphisms import imaginary_flip, parity_flip
from .fastmul import fast_mul
from .transform import fft_right

log = logging.getLogger(__name__)

SERIES = ("naive", "fast", "transform", "parity", "beta")


@dataclass
class BenchReport:
    sizes: list[int]
    times: dict[str, list[float]]
    repetitions: dict[str, list[int]] = field(default_factory=dict)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes must be strictly increasing")
        for name, values in self.times.items():
            if len(values) != len(self.sizes):
                raise ValueError(f"series {name!r} has {len(values)} points for {len(self.sizes)} sizes")
            if any(t <= 0 for t in values):
                raise ValueError(f"series {name!r} has non-positive times")

    @property
    def times_naive(self):
        return self.times.get("naive")

    @property
    def times_fast(self):
        return self.times.get("fast")

    @property
    def times_transform(self):
        return self.times.get("transform")

    @property
    def times_parity(self):
        return self.times.get("parity")

    @property
    def times_beta(self):
        return self.times.get("beta")

    def slope(self, name: str, n_min: int | None = None, n_max: int | None = None) -> float:
        """Least-squares slope of ``log(time)`` against ``log(N)``."""
        pts = [
            (n, t)
            for n, t in zip(self.sizes, self.times[name])
            if (n_min is None or n >= n_min) and (n_max is None or n <= n_max)
        ]
        if len(pts) < 2:
            raise ValueError("need at least two sizes to fit a slope")
        x = np.log([4.0**n for n, _ in pts])
        y = np.log([t for _, t in pts])
        return float(np.polyfit(x, y, 1)[0])

    @property
    def slopes(self) -> dict[str, float]:
        return {name: self.slope(name) for name in self.times}

    def rows(self) -> list[dict]:
        """One machine-readable row per size, times in nanoseconds."""
        out = []
        for i, n in enumerate(self.sizes):
            row = {"n": n, "N": 4**n}
            for name, values in self.times.items():
                row[f"{name}_ns"] = int(round(values[i] * 1e9))
            out.append(row)
        return out

    def to_csv(self) -> str:
        rows = self.rows()
        keys = list(rows[0])
        lines = [",".join(keys)]
        lines += [",".join(str(r[k]) for k in keys) for r in rows]
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        names = list(self.times)
        header = ["n", "N"] + [f"{name} [s]" for name in names]
        body = [
            [str(n), str(4**n)] + [f"{self.times[name][i]:.3e}" for name in names]
            for i, n in enumerate(self.sizes)
        ]
        body.append(["slope", ""] + [f"{self.slope(name):.3f}" for name in names])
        widths = [max(len(r[c]) for r in [header] + body) for c in range(len(header))]
        fmt = lambda r: "  ".join(cell.rjust(w) for cell, w in zip(r, widths))
        return "\n".join([fmt(header), fmt(["-" * w for w in widths])] + [fmt(r) for r in body]) + "\n"


def time_call(fn, repetitions: int, budget: float, min_sample: float = 2e-3) -> tuple[float, int]:
    """Median wall time per call of ``fn()`` after one warm-up call.

    Fast calls are looped inside each sample until the sample lasts at least
    ``min_sample`` seconds, so timer resolution does not leak into the
    median.  When the warm-up alone exceeds ``budget`` seconds it is kept as
    the only sample; compilation has already happened at smaller sizes.
    """
    start = time.perf_counter()
    fn()
    first = time.perf_counter() - start
    if first > budget:
        return first, 1
    loops = max(1, math.ceil(min_sample / max(first, 1e-9)))
    samples = []
    for _ in range(repetitions):
        start = time.perf_counter()
        for _ in range(loops):
            fn()
        samples.append((time.perf_counter() - start) / loops)
    return statistics.median(samples), repetitions


def _workloads(n: int, rng: np.random.Generator, parallel: bool) -> dict:
    a = Multivector.random(n, rng)
    b = Multivector.random(n, rng)
    m = fft_right(a)
    jobs = {
        "naive": lambda: geometric_product_naive(a, b),
        "fast": lambda: fast_mul(a, b),
        "transform": lambda: fft_right(a),
        "parity": lambda: parity_flip(m),
        "beta": lambda: imaginary_flip(m),
    }
    if parallel:
        jobs["transform_parallel"] = lambda: fft_right(a, parallel=True)
    return jobs


def run_benchmarks(
    n_min: int = 5,
    n_max: int = 10,
    repetitions: int = 5,
    *,
    series=SERIES,
    budget: float = 10.0,
    parallel: bool = False,
    seed: int = 0,
) -> BenchReport:
    """Time every series at ``n = n_min .. n_max``.

    ``budget`` caps the repetitions of any single expensive point (see
    :func:`time_call`).  ``parallel=True`` adds a ``transform_parallel``
    series using the threaded butterflies.
    """
    if repetitions < 3:
        raise ValueError(f"need at least 3 repetitions, got {repetitions}")
    if not 0 <= n_min <= n_max:
        raise ValueError(f"bad size range {n_min}..{n_max}")
    if n_max > 11:
        raise ValueError(f"n_max={n_max} needs more than 4**11 coefficients per operand")
    rng = np.random.default_rng(seed)
    names = list(series) + (["transform_parallel"] if parallel else [])
    times = {name: [] for name in names}
    reps = {name: [] for name in names}
    # compile every kernel before anything is timed
    for fn in _workloads(1, rng, parallel).values():
        fn()
    sizes = list(range(n_min, n_max + 1))
    for n in sizes:
        jobs = _workloads(n, rng, parallel)
        for name in names:
            t, r = time_call(jobs[name], repetitions, budget)
            times[name].append(t)
            reps[name].append(r)
            log.info("n=%d %s %.3es (%d reps)", n, name, t, r)
    return BenchReport(sizes, times, reps)
