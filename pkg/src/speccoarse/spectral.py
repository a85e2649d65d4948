"""Normalized Laplacians, a dense Jacobi eigensolver, and spectral reports.

The eigensolver is a self-contained cyclic Jacobi method: every strictly
upper pair is annihilated once per sweep, and the method stops when the
off-diagonal Frobenius norm falls below tol times the Frobenius norm of the
input. For cache efficiency the cyclic order is arranged block-pair by
block-pair: the rotations of one sweep through a block pair are applied to
the rest of the matrix as one orthogonal panel update, which is numerically
identical to applying them one by one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_sweep
from .coarsen import CoarsenResult, drift_bound
from .graph import Graph
from .lift import lift

DENSE_CAP = 4096
_BLOCK = 96


def normalized_laplacian(g: Graph, cap: int = DENSE_CAP) -> np.ndarray:
    """Dense I - D^{-1/2} W D^{-1/2} with self-loop weights on the diagonal.

    D is the weighted degree with self-loops counted once, so the matrix is
    positive semidefinite with eigenvalues in [0, 2]. Limited to `cap` nodes.
    """
    if g.n > cap:
        raise ValueError(f"graph order {g.n} exceeds the dense cap {cap}")
    if np.any(g.degrees <= 0.0):
        raise ValueError("zero-degree node has no normalized Laplacian row")
    inv_sqrt = 1.0 / np.sqrt(g.degrees)
    lap = -(inv_sqrt[:, None] * g.to_dense()) * inv_sqrt[None, :]
    lap = (lap + lap.T) / 2.0  # exact symmetry regardless of rounding order
    lap[np.diag_indices(g.n)] += 1.0
    return lap


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with matching orthonormal eigenvector columns."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


def _check_symmetric(m: np.ndarray):
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, float(np.abs(m).max()) if m.size else 0.0)
    if m.size and float(np.abs(m - m.T).max()) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    return m


def _off_fro(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _jacobi(m: np.ndarray, tol: float, max_sweeps: int, vectors: bool):
    """Block-ordered cyclic Jacobi; returns (diagonal, V or None, sweeps)."""
    n = m.shape[0]
    a = m.copy()
    vee = np.eye(n) if vectors else None
    fro = float(np.linalg.norm(m))
    if n <= 1 or fro == 0.0:
        return np.diag(a).copy(), vee, 0
    target = tol * fro
    nb = max(1, round(n / _BLOCK))
    bounds = [(k * n) // nb for k in range(nb + 1)]
    blocks = [np.arange(bounds[k], bounds[k + 1]) for k in range(nb)]
    pairs = ([(i, j) for i in range(nb) for j in range(i + 1, nb)]
             if nb > 1 else [(0, 0)])
    budget = (target * target) / (2.0 * len(pairs))
    for sweep in range(max_sweeps):
        if _off_fro(a) <= target:
            return np.diag(a).copy(), vee, sweep
        for bi, bj in pairs:
            idx = (blocks[bi] if bi == bj
                   else np.concatenate([blocks[bi], blocks[bj]]))
            sub = np.ascontiguousarray(a[np.ix_(idx, idx)])
            so = _off_fro(sub)
            if so * so <= budget:
                continue
            ut = np.eye(len(idx))
            jacobi_sweep(sub, ut, True)
            # ut rows hold the transposed product of the sweep's rotations
            panel = ut @ a[idx, :]
            a[idx, :] = panel
            a[:, idx] = panel.T
            a[np.ix_(idx, idx)] = sub  # block carries its exact rotated values
            if vectors:
                vee[:, idx] = vee[:, idx] @ ut.T
    raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")


def _canonical_signs(vecs: np.ndarray) -> np.ndarray:
    flip = vecs[np.argmax(np.abs(vecs), axis=0), np.arange(vecs.shape[1])] < 0
    vecs = vecs.copy()
    vecs[:, flip] *= -1.0
    return vecs


def eig_sym(m: np.ndarray, tol: float = 1e-10, max_sweeps: int = 100) -> Spectrum:
    """Full symmetric eigendecomposition by cyclic Jacobi rotations.

    Eigenpairs are sorted ascending and each eigenvector's sign is fixed so
    its largest-magnitude entry is positive. Raises RuntimeError if the
    off-diagonal norm has not met the tolerance after `max_sweeps` sweeps.
    """
    m = _check_symmetric(m)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    diag, vecs, _ = _jacobi(m, tol, max_sweeps, vectors=True)
    order = np.argsort(diag, kind="stable")
    return Spectrum(diag[order], _canonical_signs(vecs[:, order]))


def eigvals_sym(m: np.ndarray, tol: float = 1e-10, max_sweeps: int = 100) -> np.ndarray:
    """Ascending eigenvalues only; skips all eigenvector work."""
    m = _check_symmetric(m)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    diag, _, _ = _jacobi(m, tol, max_sweeps, vectors=False)
    return np.sort(diag, kind="stable")


def spectrum_of(g: Graph, tol: float = 1e-10, cap: int = DENSE_CAP) -> Spectrum:
    """Spectrum of the graph's normalized Laplacian."""
    return eig_sym(normalized_laplacian(g, cap=cap), tol=tol)


def eigenvalue_gap(a: Spectrum, b: Spectrum) -> float:
    """Max absolute componentwise difference of the sorted eigenvalue vectors."""
    if a.n != b.n:
        raise ValueError("spectra have different lengths")
    if a.n == 0:
        return 0.0
    return float(np.abs(a.eigenvalues - b.eigenvalues).max())


def alignment_matrix(a: Spectrum, b: Spectrum, k: int) -> np.ndarray:
    """|<u_i, v_j>| over the first k nontrivial eigenvectors of each side.

    The eigenvector of eigenvalue 0 is skipped; entry (i, j) compares the
    (i+1)-th eigenvector of `a` with the (j+1)-th of `b`. An identity-like
    matrix indicates preserved eigenvectors.
    """
    if a.n != b.n:
        raise ValueError("spectra have different lengths")
    if not 1 <= k <= a.n - 1:
        raise ValueError(f"k must be in [1, {a.n - 1}]")
    return np.abs(a.eigenvectors[:, 1:k + 1].T @ b.eigenvectors[:, 1:k + 1])


@dataclass(frozen=True)
class VerifyReport:
    """Spectral comparison of a graph against the lift of its coarsening."""
    gap: float
    bound: float
    satisfied: bool
    lambda_original: np.ndarray  # first k nontrivial eigenvalues
    lambda_lift: np.ndarray
    alignment: np.ndarray
    spectrum_original: Spectrum
    spectrum_lift: Spectrum

    def summary(self) -> str:
        return (f"gap={self.gap:.17g} bound={self.bound:.17g} "
                f"satisfied={'true' if self.satisfied else 'false'}")


def verify(g: Graph, result: CoarsenResult, k: int,
           tol: float = 1e-10, cap: int = DENSE_CAP) -> VerifyReport:
    """Compare the spectra of g and of the lift of its coarsening.

    Reports the eigenvalue gap, the merge-log drift bound, whether the gap
    satisfies it (with 1e-9 slack), the first k nontrivial eigenvalue pairs
    and the k-by-k eigenvector alignment matrix.
    """
    spec_g = spectrum_of(g, tol=tol, cap=cap)
    lifted = lift(result.coarse, result.partition, g.n)
    spec_l = spectrum_of(lifted.graph, tol=tol, cap=cap)
    gap = eigenvalue_gap(spec_g, spec_l)
    bound = drift_bound(result.log)
    k = min(k, g.n - 1)
    return VerifyReport(
        gap=gap,
        bound=bound,
        satisfied=gap <= bound + 1e-9,
        lambda_original=spec_g.eigenvalues[1:k + 1].copy(),
        lambda_lift=spec_l.eigenvalues[1:k + 1].copy(),
        alignment=alignment_matrix(spec_g, spec_l, k),
        spectrum_original=spec_g,
        spectrum_lift=spec_l,
    )


def eigenvalue_pair_rows(report: VerifyReport) -> list[list]:
    """CSV rows (index, lambda_original, lambda_lift), eigen-indices from 1."""
    rows = [["index", "lambda_original", "lambda_lift"]]
    for i, (lo, ll) in enumerate(zip(report.lambda_original, report.lambda_lift),
                                 start=1):
        rows.append([i, float(lo), float(ll)])
    return rows


def alignment_rows(report: VerifyReport) -> list[list]:
    """Dense alignment grid with eigen-index header row and column."""
    k = report.alignment.shape[0]
    rows = [["index"] + [j for j in range(1, k + 1)]]
    for i in range(k):
        rows.append([i + 1] + [float(x) for x in report.alignment[i]])
    return rows


def eigenvector_rows(spec: Spectrum, k: int) -> list[list]:
    """Per-node values of the first k nontrivial eigenvectors."""
    if not 1 <= k <= spec.n - 1:
        raise ValueError(f"k must be in [1, {spec.n - 1}]")
    rows = [["node"] + [f"v_{j}" for j in range(1, k + 1)]]
    for node in range(spec.n):
        rows.append([node] + [float(x) for x in spec.eigenvectors[node, 1:k + 1]])
    return rows
