"""Spectra, normalized distribution functions, moments, and their identities.

The normalized spectral distribution of a symmetric kernel is the step
function N(lambda) = (number of eigenvalues <= lambda) / n.  Moments admit
two independent evaluators: a global sparse trace-of-power and a local
class-weighted evaluation that only ever multiplies within balls; on a
finite graph the two agree identically, which is the computational core of
approximating limit distributions through local statistics.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from math import fsum

import numpy as np

from .census import census
from .decomposition import boundary
from .generators import AdjacencyOracle, MaterializedSubgraph
from .graphs import ColoredGraph, ball, ball_size_bound
from .operators import (InvariantRule, OperatorKernel, laplacian,
                        operator_norm_bound, restrict)

_SYM_TOL = 1e-12
_RANK_TOL = 1e-9


@dataclass(frozen=True)
class SpectralDistribution:
    """Right-continuous step function of a sorted eigenvalue list."""

    eigenvalues: tuple

    def __post_init__(self) -> None:
        if len(self.eigenvalues) == 0:
            raise ValueError("empty spectrum")
        object.__setattr__(self, "eigenvalues", tuple(sorted(self.eigenvalues)))

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def value(self, lam: float) -> float:
        return bisect_right(self.eigenvalues, lam) / self.n

    def left_value(self, lam: float) -> float:
        from bisect import bisect_left
        return bisect_left(self.eigenvalues, lam) / self.n


def eigenvalues(kernel: OperatorKernel) -> np.ndarray:
    """Full ascending real spectrum of a symmetric kernel."""
    a = kernel.to_dense()
    if kernel.graph.n and np.max(np.abs(a - a.T)) > _SYM_TOL:
        raise ValueError("kernel is not symmetric")
    return np.sort(np.linalg.eigvalsh(a))


def distribution(eigs) -> SpectralDistribution:
    return SpectralDistribution(eigenvalues=tuple(float(x) for x in eigs))


def sup_distance(a: SpectralDistribution, b: SpectralDistribution) -> float:
    """Exact Kolmogorov distance of two step functions.

    Evaluated at every breakpoint and at its left limit, which together
    exhaust the candidates for the supremum.
    """
    ea = np.asarray(a.eigenvalues)
    eb = np.asarray(b.eigenvalues)
    pool = np.concatenate([ea, eb])
    right = np.abs(np.searchsorted(ea, pool, side="right") / a.n
                   - np.searchsorted(eb, pool, side="right") / b.n)
    left = np.abs(np.searchsorted(ea, pool, side="left") / a.n
                  - np.searchsorted(eb, pool, side="left") / b.n)
    return float(max(right.max(), left.max()))


def moment(kernel: OperatorKernel, k: int) -> float:
    """(1/n) Tr(A^k) via sparse row-vector powering; no eigensolve."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = kernel.graph.n
    if n == 0:
        return 0.0
    if k == 0:
        return 1.0
    rows = kernel.rows()
    contrib = []
    for x in range(n):
        vec = {x: 1.0}
        for _ in range(k):
            nxt: dict[int, float] = {}
            for v, w in vec.items():
                row = rows.get(v)
                if not row:
                    continue
                for y, a in row.items():
                    nxt[y] = nxt.get(y, 0.0) + w * a
            vec = nxt
        contrib.append(vec.get(x, 0.0))
    return fsum(contrib) / n


def moment_via_eigenvalues(kernel: OperatorKernel, k: int) -> float:
    eigs = eigenvalues(kernel)
    return fsum(float(x) ** k for x in eigs) / kernel.graph.n


def trace_via_patterns(g: ColoredGraph, rule: InvariantRule, k: int) -> float:
    """Class-frequency evaluation of the k-th moment of the rule's kernel.

    Sums p(class) * (A^k at the root) over the radius k*s classes of g,
    where the root entry is obtained by k local multiplications inside the
    class's own ball.  Agrees with :func:`moment` identically on any finite
    graph; the two sides share no code path.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1.0
    s = rule.radius
    reach = k * s
    groups: dict[bytes, tuple] = {}
    counts: dict[bytes, int] = {}
    cache: dict[tuple, bytes] = {}
    for x in range(g.n):
        pat = ball(g, x, reach)
        key = (pat.graph.vertex_colors, pat.graph.edges)
        code = cache.get(key)
        if code is None:
            code = pat.code
            cache[key] = code
        counts[code] = counts.get(code, 0) + 1
        if code not in groups:
            groups[code] = _root_power_value(pat.graph, rule, k)
    total = fsum(counts[c] * groups[c] for c in sorted(groups))
    return total / g.n


def _root_power_value(pg: ColoredGraph, rule: InvariantRule, k: int) -> float:
    """(A^k)(root, root) computed entirely inside one ball pattern.

    Rows are realized only for vertices within (k-1)*s of the root; paths of
    k hops from the root back to itself never leave that region.
    """
    s = rule.radius
    from .graphs import _bfs_layers
    dist = _bfs_layers(pg, 0, None)
    rows: dict[int, dict[int, float]] = {}
    for v, dv in dist.items():
        if dv > (k - 1) * s:
            continue
        pat = ball(pg, v, s)
        values = rule.table.get(pat.code)
        if values is None:
            raise KeyError(
                f"rule has no class for a radius-{k * s} interior vertex")
        lab = pat.labeling
        row: dict[int, float] = {}
        for local, orig in enumerate(pat.origin):
            val = values[lab[local]]
            if val != 0.0:
                row[orig] = float(val)
        rows[v] = row
    vec = {0: 1.0}
    for _ in range(k):
        nxt: dict[int, float] = {}
        for v, w in vec.items():
            row = rows.get(v)
            if not row:
                continue
            for y, a in row.items():
                nxt[y] = nxt.get(y, 0.0) + w * a
        vec = nxt
    return vec.get(0, 0.0)


# --------------------------------------------------------------------------
# Rank perturbation bound
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RankCheck:
    sup_distance: float
    rank: int
    bound_ok: bool


def rank_of_difference(c: np.ndarray, d: np.ndarray, tol: float = _RANK_TOL) -> int:
    eigs = np.linalg.eigvalsh(np.asarray(c) - np.asarray(d))
    return int(np.sum(np.abs(eigs) > tol))


def rank_bound_check(c: np.ndarray, d: np.ndarray) -> RankCheck:
    """sup |N_C - N_D| <= rank(C - D) / n for symmetric C, D."""
    c = np.asarray(c, dtype=float)
    d = np.asarray(d, dtype=float)
    if c.shape != d.shape:
        raise ValueError("dimension mismatch")
    n = c.shape[0]
    nc = distribution(np.linalg.eigvalsh(c))
    nd = distribution(np.linalg.eigvalsh(d))
    dist = sup_distance(nc, nd)
    rank = rank_of_difference(c, d)
    return RankCheck(sup_distance=dist, rank=rank,
                     bound_ok=dist <= rank / n + 1e-12)


# --------------------------------------------------------------------------
# Convergence reports
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class IdsReport:
    sizes: tuple
    sup_gaps: tuple  # consecutive Kolmogorov distances
    moment_gaps: tuple  # per step, tuple over k = 0..k_max
    grid: tuple  # (lambda, N_final) samples of the last distribution
    cauchy: bool  # sup gaps nonincreasing


def spectral_grid(kernel: OperatorKernel, dist: SpectralDistribution,
                  points: int = 512, breakpoint_cap: int = 2000) -> list[float]:
    """Uniform grid over the proven spectral enclosure plus all breakpoints
    when the spectrum is small enough to keep the sup exact."""
    bound = operator_norm_bound(kernel)
    lo, hi = -bound, bound
    grid = list(np.linspace(lo, hi, points))
    if dist.n <= breakpoint_cap:
        grid.extend(dist.eigenvalues)
    return sorted(set(float(x) for x in grid))


def ids_run(items, k_max: int = 4, points: int = 512) -> IdsReport:
    """Convergence diagnostics for a sequence of (graph, kernel) pairs."""
    items = list(items)
    if len(items) < 2:
        raise ValueError("need at least two elements")
    dists = []
    moments = []
    for _, kernel in items:
        dists.append(distribution(eigenvalues(kernel)))
        moments.append(tuple(moment(kernel, k) for k in range(k_max + 1)))
    sup_gaps = tuple(sup_distance(dists[i - 1], dists[i]) for i in range(1, len(dists)))
    moment_gaps = tuple(
        tuple(abs(moments[i][k] - moments[i - 1][k]) for k in range(k_max + 1))
        for i in range(1, len(items)))
    last_kernel = items[-1][1]
    grid_x = spectral_grid(last_kernel, dists[-1], points=points)
    grid = tuple((x, dists[-1].value(x)) for x in grid_x)
    cauchy = all(b <= a + 1e-12 for a, b in zip(sup_gaps, sup_gaps[1:]))
    return IdsReport(sizes=tuple(g.n for g, _ in items), sup_gaps=sup_gaps,
                     moment_gaps=moment_gaps, grid=grid, cauchy=cauchy)


@dataclass(frozen=True)
class BoundaryDefect:
    rank_defect: int
    boundary_size: int
    sup_distance: float
    bound_ok: bool


def boundary_defect(rule: InvariantRule, oracle: AdjacencyOracle,
                    sub: MaterializedSubgraph) -> BoundaryDefect:
    """Compression vs intrinsic Laplacian: rank and distribution defects.

    The two kernels differ only where the ambient and subgraph degrees
    disagree, so the rank of the difference is at most the boundary size
    and the distribution distance at most boundary/volume.
    """
    compressed = restrict(rule, oracle, sub)
    intrinsic = laplacian(sub.graph)
    n = sub.graph.n
    diff_rank = rank_of_difference(compressed.to_dense(), intrinsic.to_dense())
    nc = distribution(eigenvalues(compressed))
    ni = distribution(eigenvalues(intrinsic))
    dist = sup_distance(nc, ni)
    b = len(boundary(oracle, set(sub.ids)))
    ok = diff_rank <= b and dist <= b / n + 1e-12
    return BoundaryDefect(rank_defect=diff_rank, boundary_size=b,
                          sup_distance=dist, bound_ok=ok)
