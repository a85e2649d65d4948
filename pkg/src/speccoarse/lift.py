"""Lift a coarse graph back to the original node count.

The lift spreads each supernode weight uniformly over its members: the
lifted weight between nodes u and v is the coarse weight between their
supernodes divided by the product of the supernode sizes. Applied to all
pairs including u == v, this is the closed-form transform Q^T W_c Q with
Q(c, v) = 1/|c| for v in c, which makes original and coarse spectra
comparable at the same dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import Graph, Partition, _from_scipy


@dataclass(frozen=True)
class LiftedGraph:
    """A graph on the original n nodes plus the partition that produced it."""
    graph: Graph
    partition: Partition


def lift(coarse: Graph, part: Partition, n: int) -> LiftedGraph:
    """Expand `coarse` (= the contraction of some graph under `part`) to n nodes.

    Nodes inside a supernode with internal weight acquire self-loops of
    weight W_c(c,c)/|c|^2; zero-weight pairs are not materialized.
    """
    if part.n != n or part.live != coarse.n:
        raise ValueError("partition does not match the coarse graph")
    labels = part.labels()
    sizes = np.bincount(labels, minlength=coarse.n)
    Q = sp.coo_matrix(
        (1.0 / sizes[labels], (labels, np.arange(n))),
        shape=(coarse.n, n)).tocsr()
    lifted = Q.T @ coarse.to_csr() @ Q
    return LiftedGraph(_from_scipy(lifted), part)
