"""Graph generators and the thread-scaling measurement harness.

The harness reruns the coarsening pipeline at several worker-thread counts,
times each phase (parallel fitness, sort, sequential merge walk), verifies
that results are bit-identical across the sweep, and reports the speedup
together with the contiguous-chunk load-imbalance ratio. The work model
is that computing one edge's fitness costs deg_u + deg_v operations, so the
total fitness work equals n times the second moment of the degree
distribution.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from statistics import median

import numpy as np

from . import coarsen as _coarsen
from . import fitness as _fitness
from .graph import Graph, contract, from_edges

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny deterministic RNG with identical output on every platform."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next_u64() % n

    def uniform(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53


def gen_grid(rows: int, cols: int) -> Graph:
    """4-neighbor lattice with unit weights; rows*cols nodes."""
    if rows < 2 or cols < 2:
        raise ValueError("grid dimensions must be at least 2x2")
    ids = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)
    right = np.stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()], axis=1)
    down = np.stack([ids[:-1, :].ravel(), ids[1:, :].ravel()], axis=1)
    pairs = np.concatenate([right, down])
    return from_edges(rows * cols,
                      [(int(a), int(b), 1.0) for a, b in pairs])


def gen_powerlaw(n: int, attach: int, seed: int) -> Graph:
    """Preferential-attachment graph with a heavy-tailed degree distribution.

    Nodes arrive one at a time; each attaches to `attach` distinct existing
    nodes sampled proportionally to current degree (the very first arrival
    connects to all earlier nodes, which all still have degree zero). Unit
    weights; the seeded generator makes the graph identical across
    platforms and runs.
    """
    if attach < 1 or n <= attach:
        raise ValueError("need n > attach >= 1")
    rng = SplitMix64(seed)
    edges = []
    slots: list[int] = []  # one entry per unit of degree
    for k in range(attach, n):
        if k == attach:
            targets = list(range(attach))
        else:
            chosen = set()
            while len(chosen) < attach:
                chosen.add(slots[rng.below(len(slots))])
            targets = sorted(chosen)
        for t in targets:
            edges.append((t, k, 1.0))
            slots.append(t)
            slots.append(k)
    return from_edges(n, edges)


def second_moment(g: Graph) -> float:
    """Mean squared structural degree, (1/n) * sum deg_v^2."""
    d = g.structural_degrees
    return float(np.dot(d, d)) / g.n


def _chunk_work(g: Graph, threads: int) -> np.ndarray:
    eu, ev = g.edge_arrays()
    d = g.structural_degrees
    work = d[eu] + d[ev]
    bounds = _fitness.chunk_bounds(len(eu), threads)
    return np.array([int(work[bounds[k]:bounds[k + 1]].sum())
                     for k in range(threads)], dtype=np.int64)


def imbalance(g: Graph, threads: int) -> float:
    """Max over mean per-chunk fitness work under contiguous edge chunking.

    Chunk work is the sum of deg_u + deg_v over its edges. Always >= 1 and
    exactly 1 for a single thread; large values on irregular degree
    distributions explain the poor scaling of the naive edge partition.
    """
    work = _chunk_work(g, threads)
    total = int(work.sum())
    if total == 0:
        return 1.0
    return float(work.max()) / (total / threads)


@dataclass(frozen=True)
class BenchConfig:
    thread_counts: tuple[int, ...] = (1, 2, 4, 8, 16)
    repetitions: int = 5
    ratio: float = 0.5
    seed: int = 0

    def __post_init__(self):
        tc = tuple(int(t) for t in self.thread_counts)
        if not tc or any(t < 1 for t in tc) or list(tc) != sorted(tc):
            raise ValueError("thread_counts must be nonempty, positive, ascending")
        object.__setattr__(self, "thread_counts", tc)
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if not 0.0 < self.ratio <= 1.0:
            raise ValueError("ratio must be in (0, 1]")


@dataclass(frozen=True)
class PhaseTimings:
    fitness_ms: float
    sort_ms: float
    merge_ms: float
    total_ms: float
    work_per_thread: tuple[int, ...] = field(default=())


def _run_once(g: Graph, n_c: int, threads: int) -> tuple[str, PhaseTimings]:
    t0 = time.perf_counter()
    values = _fitness.edge_fitness_values(g, threads)
    t1 = time.perf_counter()
    eu, ev = g.edge_arrays()
    flist = _fitness.sort_fitness(eu, ev, values)
    t2 = time.perf_counter()
    part, log = _coarsen.merge_walk(flist, g.n, n_c)
    t3 = time.perf_counter()
    coarse = contract(g, part)
    t4 = time.perf_counter()
    digest = hashlib.sha256()
    digest.update(values.tobytes())
    digest.update(part.labels().tobytes())
    digest.update(coarse.indptr.tobytes())
    digest.update(coarse.indices.tobytes())
    digest.update(coarse.weights.tobytes())
    timings = PhaseTimings(
        fitness_ms=(t1 - t0) * 1e3,
        sort_ms=(t2 - t1) * 1e3,
        merge_ms=(t3 - t2) * 1e3,
        total_ms=(t4 - t0) * 1e3,
        work_per_thread=tuple(int(x) for x in _chunk_work(g, threads)),
    )
    return digest.hexdigest(), timings


BENCH_HEADER = ("threads", "fitness_ms", "sort_ms", "merge_ms", "total_ms",
                "speedup", "imbalance", "deterministic")


def scaling_sweep(g: Graph, cfg: BenchConfig) -> list[list]:
    """Median-of-repetitions phase timings for each thread count.

    Returns CSV rows under BENCH_HEADER. speedup is the fitness-phase
    speedup relative to the first (lowest) thread count; `deterministic`
    records whether every run of the sweep produced bit-identical
    coarsening output.
    """
    n_c = max(1, int(np.ceil(cfg.ratio * g.n)))
    rows = [list(BENCH_HEADER)]
    reference = None
    base_fitness = None
    for threads in cfg.thread_counts:
        runs = []
        all_match = True
        for _ in range(cfg.repetitions):
            digest, timing = _run_once(g, n_c, threads)
            if reference is None:
                reference = digest
            all_match &= digest == reference
            runs.append(timing)
        fit = median(r.fitness_ms for r in runs)
        if base_fitness is None:
            base_fitness = fit
        rows.append([
            threads,
            fit,
            median(r.sort_ms for r in runs),
            median(r.merge_ms for r in runs),
            median(r.total_ms for r in runs),
            base_fitness / fit if fit > 0 else 1.0,
            imbalance(g, threads),
            all_match,
        ])
    return rows
