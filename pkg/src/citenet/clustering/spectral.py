"""Spectral clustering through the symmetric normalized Laplacian.

Kept for small graphs only: above ``cfg.spectral_size_cap`` nodes it
refuses to run instead of grinding for hours.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .._kernels import component_labels
from ..errors import ConvergenceError, InputError, RefusalError
from ..graph import Graph
from ..partition import Partition, relabel_first_seen
from .config import ClusteringConfig

EIG_TOL = 1e-8
EIG_MAXITER = 10_000
RESIDUAL_LIMIT = 1e-6


@dataclass(frozen=True)
class SpectralEmbedding:
    eigenvalues: np.ndarray   # ascending
    eigenvectors: np.ndarray  # n x k, columns match eigenvalues
    residuals: np.ndarray     # ||L x - lambda x|| per pair


def normalized_laplacian(g: Graph) -> sp.csr_matrix:
    """L = I - D^-1/2 A D^-1/2 as a sparse matrix."""
    n = g.n
    adj = sp.csr_matrix((np.asarray(g.weights), np.asarray(g.indices), np.asarray(g.indptr)), shape=(n, n))
    if g.self_weight.any():
        adj = adj + sp.diags(2.0 * np.asarray(g.self_weight))
    d = np.asarray(g.strength)
    inv_sqrt = np.zeros(n)
    inv_sqrt[d > 0] = 1.0 / np.sqrt(d[d > 0])
    scale = sp.diags(inv_sqrt)
    return (sp.identity(n, format="csr") - scale @ adj @ scale).tocsr()


def spectral_embedding(g: Graph, k: int, seed: int = 0) -> SpectralEmbedding:
    """The k eigenpairs of smallest eigenvalue of the normalized Laplacian.

    Lanczos (ARPACK) runs on 2I - L, whose largest eigenvalues are the
    smallest of L, which converges far better than asking for the small end
    directly.
    """
    n = g.n
    lap = normalized_laplacian(g)
    if k >= n - 1:
        vals, vecs = np.linalg.eigh(lap.toarray())
        vals, vecs = vals[:k], vecs[:, :k]
    else:
        shifted = (2.0 * sp.identity(n, format="csr") - lap).tocsr()
        v0 = np.random.default_rng(seed).uniform(0.5, 1.5, size=n)
        try:
            mu, vecs = eigsh(shifted, k=k, which="LA", tol=EIG_TOL, maxiter=EIG_MAXITER, v0=v0)
        except ArpackNoConvergence as exc:
            res = _residuals(lap, 2.0 - exc.eigenvalues, exc.eigenvectors) if len(exc.eigenvalues) else np.array([np.inf])
            raise ConvergenceError(
                f"eigensolver did not converge after {EIG_MAXITER} iterations "
                f"(worst residual {res.max():.3e})", residual=float(res.max())) from None
        vals = 2.0 - mu
        order = np.argsort(vals, kind="stable")
        vals, vecs = vals[order], vecs[:, order]
    residuals = _residuals(lap, vals, vecs)
    if residuals.max() > RESIDUAL_LIMIT:
        raise ConvergenceError(f"eigenpair residual {residuals.max():.3e} exceeds {RESIDUAL_LIMIT}",
                               residual=float(residuals.max()))
    return SpectralEmbedding(vals, vecs, residuals)


def _residuals(lap, vals, vecs) -> np.ndarray:
    return np.linalg.norm(lap @ vecs - vecs * vals, axis=0)


def spectral_cluster(g: Graph, k: int, cfg: ClusteringConfig | None = None) -> Partition:
    """Embed with k Laplacian eigenvectors, normalize rows, run k-means."""
    cfg = cfg or ClusteringConfig()
    if g.n > cfg.spectral_size_cap:
        raise RefusalError(
            f"spectral clustering refused: n={g.n} exceeds the size cap of {cfg.spectral_size_cap} nodes")
    if k < 2:
        raise InputError("spectral clustering needs k >= 2")
    if k > g.n:
        raise InputError(f"k={k} exceeds node count {g.n}")
    _, n_comp = component_labels(np.asarray(g.indptr), np.asarray(g.indices))
    if n_comp != 1:
        raise InputError(f"spectral clustering needs a connected graph, found {n_comp} components")
    emb = spectral_embedding(g, k, cfg.seed)
    x = emb.eigenvectors
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    x = np.divide(x, norms, out=np.zeros_like(x), where=norms > 0)
    return Partition.from_labels(kmeans(x, k, seed=cfg.seed))


def _kmeanspp(x: np.ndarray, k: int, rng) -> np.ndarray:
    n = len(x)
    chosen = [int(rng.integers(n))]
    d2 = ((x - x[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            nxt = int(rng.choice(n, p=d2 / total))
        else:
            # every point coincides with a center; take any unused index
            free = np.setdiff1d(np.arange(n), chosen)
            nxt = int(rng.choice(free))
        chosen.append(nxt)
        d2 = np.minimum(d2, ((x - x[nxt]) ** 2).sum(axis=1))
    return x[chosen].copy()


def kmeans_inertia(points, labels) -> float:
    x = np.asarray(points, dtype=np.float64).reshape(len(labels), -1)
    labels = np.asarray(labels)
    total = 0.0
    for c in np.unique(labels):
        members = x[labels == c]
        total += float(((members - members.mean(axis=0)) ** 2).sum())
    return total


def kmeans(points, k: int, seed: int = 0, n_init: int = 10, max_iter: int = 100,
           tol: float = 1e-9) -> np.ndarray:
    """Seeded k-means++ followed by Lloyd iterations.

    Each of the ``n_init`` restarts runs until the relative inertia change
    drops to ``tol`` (or ``max_iter``); the lowest-inertia run wins. Labels
    are numbered by first appearance.
    """
    x = np.asarray(points, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    n = len(x)
    if not 1 <= k <= n:
        raise InputError(f"k={k} must be between 1 and the number of points ({n})")
    rng = np.random.default_rng(seed)
    best_labels, best_inertia = None, np.inf
    for _ in range(n_init):
        centers = _kmeanspp(x, k, rng)
        prev = np.inf
        for _ in range(max_iter):
            d2 = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
            labels = d2.argmin(axis=1)
            inertia = float(d2[np.arange(n), labels].sum())
            counts = np.bincount(labels, minlength=k)
            for c in range(k):
                if counts[c]:
                    centers[c] = x[labels == c].mean(axis=0)
                else:
                    # re-seed an empty cluster at the worst-served point
                    far = int(d2[np.arange(n), labels].argmax())
                    centers[c] = x[far]
            if prev - inertia <= tol * max(prev, 1e-300) or inertia == 0.0:
                break
            prev = inertia
        d2 = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = d2.argmin(axis=1)
        inertia = float(d2[np.arange(n), labels].sum())
        if inertia < best_inertia:
            best_labels, best_inertia = labels, inertia
    out, _ = relabel_first_seen(best_labels)
    return out
