"""Merge fitness: the 1-norm distance between degree-normalized adjacency rows.

The fitness of a node pair (u, v) is ||w_u/d_u - w_v/d_v||_1 where w_x is
the (sparse) adjacency row of x and d_x its weighted degree. A small value
certifies that merging u and v perturbs the normalized-Laplacian spectrum
little. Values are computed for every edge, optionally split across worker
threads in contiguous chunks, then sorted with a total tie-break so the
whole pipeline is reproducible bit for bit at any thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._kernels import fitness_range
from .graph import Graph


class FitnessEntry(NamedTuple):
    edge: tuple[int, int]
    value: float


@dataclass(frozen=True)
class FitnessList:
    """Per-edge fitness values sorted ascending by (value, u, v)."""
    u: np.ndarray
    v: np.ndarray
    value: np.ndarray

    def __len__(self):
        return len(self.value)

    def __getitem__(self, k) -> FitnessEntry:
        return FitnessEntry((int(self.u[k]), int(self.v[k])), float(self.value[k]))

    def entries(self):
        return [self[k] for k in range(len(self))]


def _check_degrees(g: Graph, nodes=None):
    deg = g.degrees if nodes is None else g.degrees[list(nodes)]
    if np.any(deg <= 0.0):
        raise ValueError("zero-degree node has no normalized adjacency row")


def edge_fitness(g: Graph, u: int, v: int) -> float:
    """1-norm fitness of the pair (u, v); accepts non-adjacent pairs too."""
    _check_degrees(g, (u, v))
    eu = np.array([u], dtype=np.int64)
    ev = np.array([v], dtype=np.int64)
    out = np.zeros(1)
    fitness_range(g.indptr, g.indices, g.weights, 1.0 / g.degrees,
                  eu, ev, out, 0, 1)
    return float(out[0])


def chunk_bounds(m: int, threads: int) -> list[int]:
    """Contiguous near-equal chunk boundaries used by the parallel phase.

    Degree-oblivious on purpose: chunk k is edges [bounds[k], bounds[k+1]).
    """
    if threads < 1:
        raise ValueError("threads must be positive")
    return [(k * m) // threads for k in range(threads + 1)]


def edge_fitness_values(g: Graph, threads: int = 1) -> np.ndarray:
    """Fitness of every non-loop edge in edge_arrays order (unsorted).

    The edge set is split into `threads` contiguous chunks of near-equal
    edge count; each chunk is computed independently on its own worker.
    Every edge writes only its own slot, so the result is bit-identical
    for every thread count.
    """
    _check_degrees(g)
    eu, ev = g.edge_arrays()
    m = len(eu)
    out = np.zeros(m)
    inv_deg = 1.0 / g.degrees
    bounds = chunk_bounds(m, threads)
    if threads == 1 or m == 0:
        fitness_range(g.indptr, g.indices, g.weights, inv_deg,
                      eu, ev, out, 0, m)
        return out
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(fitness_range, g.indptr, g.indices, g.weights,
                        inv_deg, eu, ev, out, bounds[k], bounds[k + 1])
            for k in range(threads)
        ]
        for f in futures:
            f.result()
    return out


def sort_fitness(eu: np.ndarray, ev: np.ndarray, values: np.ndarray) -> FitnessList:
    """Sort entries ascending by (value, u, v); ties are fully ordered."""
    order = np.lexsort((ev, eu, values))
    return FitnessList(eu[order], ev[order], values[order])


def all_fitness(g: Graph, threads: int = 1) -> FitnessList:
    """Fitness of every edge, sorted ascending by (value, u, v)."""
    values = edge_fitness_values(g, threads)
    eu, ev = g.edge_arrays()
    return sort_fitness(eu, ev, values)


def _row_as_dense_on(g: Graph, v: int, support: np.ndarray) -> np.ndarray:
    idx, w = g.neighbors(v)
    out = np.zeros(len(support))
    out[np.searchsorted(support, idx)] = w
    return out


def merged_node_lemma_gap(g: Graph, u: int, v: int) -> tuple[float, float]:
    """Left and right sides of the merged-row proximity inequality.

    Left is ||w_u/d_u - (w_u+w_v)/(d_u+d_v)||_1, the distance from u's
    normalized row to the merged node's; right is fitness(u, v)/(d_u/d_v + 1).
    Algebra gives left == right exactly, so left <= right holds up to
    rounding whenever fitness(u, v) <= eps.
    """
    _check_degrees(g, (u, v))
    iu, _ = g.neighbors(u)
    iv, _ = g.neighbors(v)
    support = np.union1d(iu, iv)
    wu = _row_as_dense_on(g, u, support)
    wv = _row_as_dense_on(g, v, support)
    du = g.degrees[u]
    dv = g.degrees[v]
    left = float(np.abs(wu / du - (wu + wv) / (du + dv)).sum())
    right = edge_fitness(g, u, v) / (du / dv + 1.0)
    return left, right
