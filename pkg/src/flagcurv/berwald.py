"""Obstructions to the Chern-equals-Levi-Civita hypothesis (Lie groups).

A drift vector X can make F = (alpha + beta)^2 / alpha of Berwald type
only if the corresponding field is parallel.  The directly checkable
necessary conditions are g(X, [g, g]) = 0 and ad(X) g-skew-adjoint; a
direct nabla X = 0 check through the Koszul connection supplies the
in-package sufficiency test.  Perfect algebras exclude every X != 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebraSpec, derived_subalgebra, TOL_RANK
from .errors import InputError
from .metrics import InnerProduct
from .riemann import TOL_ORACLE, koszul_connection, sectional

TOL_SKEW = 1e-9


@dataclass(frozen=True)
class SkewReport:
    ok: bool
    max_defect: float


@dataclass(frozen=True)
class SectionalSignReport:
    min_K: float
    max_K: float
    n_samples: int
    witnesses: tuple[tuple[np.ndarray, float], ...]


@dataclass(frozen=True)
class ObstructionReport:
    perfect: bool
    parallel_space: np.ndarray  # rows form a g-orthonormal basis
    in_parallel_space: bool
    ad_skew_ok: bool
    ad_skew_defect: float
    nabla_X_norm: float
    berwald_admissible: bool


def is_perfect(L: LieAlgebraSpec, tol_rank: float = TOL_RANK) -> bool:
    """True iff [g, g] = g (full-rank derived subalgebra)."""
    return derived_subalgebra(L, tol_rank).shape[0] == L.dim


def parallel_obstruction_space(
    L: LieAlgebraSpec, g: InnerProduct, tol_rank: float = TOL_RANK
) -> np.ndarray:
    """g-orthonormal basis (rows) of {x : g(x, [g, g]) = 0}.

    Any Berwald-admissible drift vector must lie in this space.
    """
    if g.dim != L.dim:
        raise InputError("metric must live on the full algebra (h_dim = 0)")
    derived = derived_subalgebra(L, tol_rank)
    if derived.shape[0] == 0:
        candidates = np.eye(L.dim)
    else:
        # null space of the map x -> (g(x, d_i))_i
        _, s, vt = np.linalg.svd(derived @ g.g)
        rank = int(np.sum(s > tol_rank * max(1.0, s[0])))
        candidates = vt[rank:]
    if candidates.shape[0] == 0:
        return np.zeros((0, L.dim))
    # g-orthonormalize the spanning set (small: eigendecompose the Gram matrix)
    gram = candidates @ g.g @ candidates.T
    w, v = np.linalg.eigh(gram)
    return (v / np.sqrt(w)).T @ candidates


def ad_skew_check(
    L: LieAlgebraSpec, g: InnerProduct, X: np.ndarray, tol: float = TOL_SKEW
) -> SkewReport:
    """Defect of <[X,u],v> + <u,[X,v]> = 0 over all basis pairs."""
    if g.dim != L.dim:
        raise InputError("metric must live on the full algebra (h_dim = 0)")
    X = np.asarray(X, dtype=float)
    A = np.einsum("i,ijk->jk", X, L.c)  # A[j,:] = [X, e_j]
    D = A @ g.g + g.g @ A.T
    max_defect = float(np.max(np.abs(D))) if D.size else 0.0
    return SkewReport(ok=max_defect <= tol, max_defect=max_defect)


def obstruction_report(
    L: LieAlgebraSpec,
    g: InnerProduct,
    X: np.ndarray,
    tol: float = TOL_SKEW,
) -> ObstructionReport:
    """Aggregate Berwald admissibility of a candidate drift vector."""
    X = np.asarray(X, dtype=float)
    if X.shape != (L.dim,):
        raise InputError(f"drift vector must have length {L.dim}")
    perfect = is_perfect(L)
    space = parallel_obstruction_space(L, g)
    if space.shape[0]:
        # residual of X after g-orthogonal projection onto the space
        resid = X - space.T @ (space @ g.g @ X)
        in_space = g.norm(resid) <= tol * max(1.0, g.norm(X))
    else:
        in_space = bool(g.norm(X) <= tol)
    skew = ad_skew_check(L, g, X, tol)
    conn = koszul_connection(L, g)
    nabla = np.einsum("ijk,j->ik", conn.gamma, X)  # rows: nabla_{e_i} X
    nabla_norm = float(np.max(np.abs(nabla))) if nabla.size else 0.0
    admissible = bool(
        in_space and skew.ok and nabla_norm <= max(tol, TOL_ORACLE) and g.norm(X) > 0
    )
    return ObstructionReport(
        perfect=perfect,
        parallel_space=space,
        in_parallel_space=in_space,
        ad_skew_ok=skew.ok,
        ad_skew_defect=skew.max_defect,
        nabla_X_norm=nabla_norm,
        berwald_admissible=admissible,
    )


def sectional_along_X_sign(
    L: LieAlgebraSpec,
    g: InnerProduct,
    X: np.ndarray,
    n_samples: int = 1000,
    seed: int = 0,
) -> SectionalSignReport:
    """Sample K(X, u) for u on the g-unit sphere orthogonal to X.

    For an admissible X all samples must be >= 0; zeros occur exactly for
    u g-orthogonal to the image [X, g].  Constructed orthogonal witnesses
    are returned alongside the sampled minimum.
    """
    X = np.asarray(X, dtype=float)
    if g.norm(X) == 0.0:
        raise InputError("X must be nonzero")
    conn = koszul_connection(L, g)
    rng = np.random.default_rng(seed)
    Xu = X / g.norm(X)
    min_K, max_K = np.inf, -np.inf
    for _ in range(n_samples):
        u = rng.standard_normal(L.dim)
        u = u - g.dot(Xu, u) * Xu
        nu = g.norm(u)
        if nu < 1e-10:
            continue
        k = sectional(L, g, conn, X, u / nu)
        min_K = min(min_K, k)
        max_K = max(max_K, k)
    # witnesses orthogonal to the image [X, g]: K must vanish there
    image = np.einsum("i,ijk->jk", X, L.c)  # rows [X, e_j]
    _, s, vt = np.linalg.svd(image @ g.g)
    rank = int(np.sum(s > TOL_RANK * max(1.0, s[0] if s.size else 1.0)))
    witnesses = []
    for w in vt[rank:]:
        w = w - g.dot(Xu, w) * Xu
        nw = g.norm(w)
        if nw < 1e-10:
            continue
        w = w / nw
        witnesses.append((w, sectional(L, g, conn, X, w)))
    return SectionalSignReport(
        min_K=float(min_K) if np.isfinite(min_K) else 0.0,
        max_K=float(max_K) if np.isfinite(max_K) else 0.0,
        n_samples=n_samples,
        witnesses=tuple(witnesses),
    )
