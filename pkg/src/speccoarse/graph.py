"""Weighted undirected sparse graphs, union-find partitions, contraction.

A graph is stored in compressed-sparse-row form with both directions of
every edge present and neighbor lists sorted. Self-loops are allowed and
appear once per row; a self-loop contributes its weight once to the node's
weighted degree, so the degree vector always equals the row sums of the
weight matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components


class InvalidGraphError(ValueError):
    """Graph fails a structural requirement (disconnected, zero-degree node)."""


class Graph:
    """Immutable weighted undirected graph in CSR form.

    Attributes
    ----------
    indptr, indices, weights : CSR arrays of the symmetric weight matrix.
    degrees : per-node weighted degree (row sum; self-loop counted once).
    structural_degrees : per-node neighbor count (self-loop counted once).
    coords : optional (n, 3) per-node coordinates carried along from mesh
        input, or None.
    """

    __slots__ = ("indptr", "indices", "weights", "degrees",
                 "structural_degrees", "coords")

    def __init__(self, indptr, indices, weights, coords=None):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.float64)
        deg = np.zeros(self.n, dtype=np.float64)
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        np.add.at(deg, rows, self.weights)
        self.degrees = deg
        self.structural_degrees = np.diff(self.indptr).astype(np.int64)
        self.coords = None if coords is None else np.asarray(coords, dtype=np.float64)
        for arr in (self.indptr, self.indices, self.weights,
                    self.degrees, self.structural_degrees):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        """Number of undirected edges, self-loops counted once."""
        loops = int(np.count_nonzero(self.indices == np.repeat(
            np.arange(self.n), np.diff(self.indptr))))
        return (len(self.indices) - loops) // 2 + loops

    def neighbors(self, v):
        """Sorted neighbor ids and weights of node v (views, do not write)."""
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def weight(self, u, v) -> float:
        """Stored weight of edge (u, v), 0.0 if absent."""
        lo, hi = self.indptr[u], self.indptr[u + 1]
        k = np.searchsorted(self.indices[lo:hi], v)
        if k < hi - lo and self.indices[lo + k] == v:
            return float(self.weights[lo + k])
        return 0.0

    def edge_arrays(self):
        """Endpoints (eu, ev) of all non-loop undirected edges, u < v.

        Row-major CSR order: sorted by (u, v). Self-loops are excluded;
        they are never merge candidates.
        """
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        mask = rows < self.indices
        return rows[mask], self.indices[mask]

    def to_csr(self) -> sp.csr_matrix:
        return sp.csr_matrix(
            (self.weights.copy(), self.indices.copy(), self.indptr.copy()),
            shape=(self.n, self.n))

    def to_dense(self) -> np.ndarray:
        """Dense symmetric weight matrix, self-loop weight once on the diagonal."""
        return self.to_csr().toarray()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.weights, other.weights))

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _from_scipy(mat, coords=None) -> Graph:
    """Build a Graph from any scipy sparse matrix (summing duplicates)."""
    csr = sp.csr_matrix(mat)
    csr.sum_duplicates()
    csr.eliminate_zeros()
    csr.sort_indices()
    return Graph(csr.indptr, csr.indices, csr.data, coords=coords)


def from_edges(n: int, edges, coords=None) -> Graph:
    """Build a graph on n nodes from (u, v, weight) triples.

    Duplicate pairs accumulate by summation and both directions are stored;
    a (v, v) triple becomes a self-loop whose weight counts once in the
    degree. Raises ValueError for out-of-range ids or nonpositive weights.
    """
    edges = list(edges)
    if edges:
        u = np.asarray([e[0] for e in edges], dtype=np.int64)
        v = np.asarray([e[1] for e in edges], dtype=np.int64)
        w = np.asarray([e[2] for e in edges], dtype=np.float64)
    else:
        u = v = np.zeros(0, dtype=np.int64)
        w = np.zeros(0, dtype=np.float64)
    if n < 0:
        raise ValueError("node count must be nonnegative")
    if len(u) and (u.min() < 0 or v.min() < 0 or u.max() >= n or v.max() >= n):
        raise ValueError("node id out of range")
    if np.any(w <= 0.0) or not np.all(np.isfinite(w)):
        raise ValueError("edge weights must be positive and finite")
    loop = u == v
    rows = np.concatenate([u, v[~loop]])
    cols = np.concatenate([v, u[~loop]])
    data = np.concatenate([w, w[~loop]])
    mat = sp.coo_matrix((data, (rows, cols)), shape=(n, n))
    return _from_scipy(mat, coords=coords)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural checks coarsening requires."""
    connected: bool
    n_components: int
    isolated: np.ndarray  # node ids with zero degree

    @property
    def ok(self) -> bool:
        return self.connected and len(self.isolated) == 0


def validate(g: Graph) -> ValidationReport:
    """Check connectivity and absence of zero-degree nodes."""
    isolated = np.flatnonzero(g.structural_degrees == 0)
    if g.n == 0:
        return ValidationReport(False, 0, isolated)
    ncomp = connected_components(g.to_csr(), directed=False,
                                 return_labels=False)
    return ValidationReport(int(ncomp) == 1, int(ncomp), isolated)


class Partition:
    """Union-find over n original nodes, tracking supernode sizes.

    Union is by size, with ties won by the smaller root id. `live` is the
    current number of supernodes.
    """

    __slots__ = ("parent", "size", "live")

    def __init__(self, n: int):
        self.parent = np.arange(n, dtype=np.int64)
        self.size = np.ones(n, dtype=np.int64)
        self.live = n

    @property
    def n(self) -> int:
        return len(self.parent)

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:  # path compression
            parent[v], v = root, parent[v]
        return int(root)

    def union(self, u: int, v: int) -> bool:
        """Merge the supernodes of u and v; False if already together."""
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        if self.size[ru] < self.size[rv] or (
                self.size[ru] == self.size[rv] and rv < ru):
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        self.live -= 1
        return True

    def labels(self) -> np.ndarray:
        """Compact supernode labels, assigned by ascending minimum member id."""
        out = np.empty(self.n, dtype=np.int64)
        seen = {}
        for v in range(self.n):
            r = self.find(v)
            if r not in seen:
                seen[r] = len(seen)
            out[v] = seen[r]
        return out

    def label_sizes(self) -> np.ndarray:
        return np.bincount(self.labels(), minlength=self.live)

    def representatives(self) -> np.ndarray:
        """Minimum original member id of each supernode label."""
        labels = self.labels()
        reps = np.full(self.live, self.n, dtype=np.int64)
        for v in range(self.n - 1, -1, -1):
            reps[labels[v]] = v
        return reps

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Rebuild a partition from an arbitrary per-node label array."""
        labels = np.asarray(labels, dtype=np.int64)
        part = cls(len(labels))
        first = {}
        for v, lab in enumerate(labels):
            lab = int(lab)
            if lab in first:
                part.union(first[lab], v)
            else:
                first[lab] = v
        return part

    def __repr__(self):
        return f"Partition(n={self.n}, live={self.live})"


def contract(g: Graph, part: Partition) -> Graph:
    """Coarse graph whose weight matrix is P W P^T.

    P is the 0/1 supernode membership indicator, so the weight between two
    supernodes is the sum of all original weights crossing them, and the
    diagonal entry of a supernode is its full internal weight (each internal
    unordered edge twice, internal self-loops once), stored as a self-loop.
    Supernode ids follow ascending minimum member id.
    """
    if part.n != g.n:
        raise ValueError("partition size does not match graph")
    labels = part.labels()
    live = part.live
    P = sp.coo_matrix(
        (np.ones(g.n), (labels, np.arange(g.n))), shape=(live, g.n)).tocsr()
    coarse = P @ g.to_csr() @ P.T
    return _from_scipy(coarse)
