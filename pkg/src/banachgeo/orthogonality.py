"""Orthogonality relations in normed planes.

Birkhoff orthogonality (x stays shortest on its line through x in
direction y), isosceles orthogonality (equal diagonals), and Singer
orthogonality (equal normalized diagonals), plus search support: finding
all Birkhoff-orthogonal directions to a given unit vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optimize import (
    bisect_predicate_vec,
    golden_iters,
    golden_min,
    golden_min_vec,
)
from .spaces import (
    Space,
    UnitVector,
    as_vector,
    directions_at,
    grid_angles,
)

__all__ = [
    "OrthTolerance",
    "angular_distance",
    "min_along_line",
    "is_birkhoff",
    "birkhoff_partners",
    "birkhoff_partner_angles",
    "is_isosceles",
    "is_singer",
    "isosceles_radii",
]


@dataclass(frozen=True)
class OrthTolerance:
    """Floating-point semantics for the (exact) orthogonality definitions."""

    rel_tol: float = 1e-9
    lambda_tol: float = 1e-12

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1e-2):
            raise ValueError(f"rel_tol must be in (0, 1e-2), got {self.rel_tol}")
        if not (self.lambda_tol > 0.0):
            raise ValueError("lambda_tol must be > 0")


DEFAULT_TOL = OrthTolerance()


def _nonzero(space: Space, x) -> np.ndarray:
    x = as_vector(x, space.dim)
    if space.norm(x) == 0.0:
        raise ValueError("vector must be nonzero")
    return x


def angular_distance(space: Space, x, y) -> float:
    """``|| x/||x|| - y/||y|| ||``; lies in [0, 2]."""
    x = _nonzero(space, x)
    y = _nonzero(space, y)
    return float(space.norm(x / space.norm(x) - y / space.norm(y)))


def min_along_line(
    space: Space, x, y, tol: OrthTolerance = DEFAULT_TOL
) -> tuple[float, float]:
    """Minimizer and minimum of the convex map ``t -> ||x + t*y||``.

    The global minimum lies in [-L, L] with L = 2||x||/||y|| + 1, since
    outside that range ||x + t*y|| >= |t|*||y|| - ||x|| > ||x||.
    """
    x = as_vector(x, space.dim)
    y = _nonzero(space, y)
    lam = 2.0 * space.norm(x) / space.norm(y) + 1.0
    return golden_min(lambda t: space.norm(x + t * y), -lam, lam, tol.lambda_tol)


def is_birkhoff(space: Space, x, y, tol: OrthTolerance = DEFAULT_TOL) -> bool:
    """x is Birkhoff orthogonal to y: ``||x + t*y|| >= ||x||`` for all t."""
    x = _nonzero(space, x)
    y = _nonzero(space, y)
    _, value = min_along_line(space, x, y, tol)
    return value >= space.norm(x) * (1.0 - tol.rel_tol)


def is_isosceles(space: Space, x, y, tol: OrthTolerance = DEFAULT_TOL) -> bool:
    """``||x + y|| = ||x - y||`` up to rel_tol * (||x|| + ||y||)."""
    x = as_vector(x, space.dim)
    y = as_vector(y, space.dim)
    scale = space.norm(x) + space.norm(y)
    return abs(space.norm(x + y) - space.norm(x - y)) <= tol.rel_tol * scale


def is_singer(space: Space, x, y, tol: OrthTolerance = DEFAULT_TOL) -> bool:
    """Normalized sum and difference have equal norms (true if x or y is 0)."""
    x = as_vector(x, space.dim)
    y = as_vector(y, space.dim)
    nx, ny = space.norm(x), space.norm(y)
    if nx * ny == 0.0:
        return True
    u, v = x / nx, y / ny
    return abs(space.norm(u - v) - space.norm(u + v)) <= tol.rel_tol


def line_min_batch(space: Space, U: np.ndarray, V: np.ndarray, lam: float, tol: float):
    """Vectorized ``min_t ||U_i + t*V_i||`` over t in [-lam, lam]."""
    n = U.shape[0]

    def f(t):
        return space.norm(U + t[:, None] * V)

    lo = np.full(n, -lam)
    hi = np.full(n, lam)
    _, fmin = golden_min_vec(f, lo, hi, golden_iters(2.0 * lam, tol))
    return fmin


def birkhoff_partner_angles(
    space: Space,
    thetas_u,
    n_scan: int = 128,
    tol: OrthTolerance = DEFAULT_TOL,
) -> list[np.ndarray]:
    """For each angle in ``thetas_u``, angles of Birkhoff-orthogonal directions.

    Scans a full-circle grid of candidate directions.  Where the feasible
    set is an arc (polygonal norms) the arc boundaries are located by
    bisection and reported together with the arc's grid midpoint; where it
    is a point (smooth norms) the scan's local maxima of the line-minimum
    are polished by golden section.  Output angles come in antipodal pairs
    because the scan covers the whole circle.
    """
    thetas_u = np.atleast_1d(np.asarray(thetas_u, dtype=float))
    if n_scan < 32:
        raise ValueError(f"n_scan must be >= 32, got {n_scan}")
    N = thetas_u.shape[0]
    M = n_scan
    phis = grid_angles(M)
    U = directions_at(space, thetas_u)
    V = directions_at(space, phis)
    Ur = np.repeat(U, M, axis=0)
    Vr = np.tile(V, (N, 1))
    g = line_min_batch(space, Ur, Vr, 3.0, tol.lambda_tol).reshape(N, M) - 1.0
    feas = g >= -tol.rel_tol
    step = 2.0 * math.pi / M

    # candidate gathering: (row, angle) directs, boundary bisection tasks,
    # and peak-polish tasks, refined in vectorized batches below
    direct_rows, direct_angles = [], []
    bnd_rows, bnd_true, bnd_false = [], [], []
    peak_rows, peak_lo, peak_hi = [], [], []

    for i in range(N):
        fi = feas[i]
        if fi.any():
            # cyclic runs of feasible scan angles
            edges = np.flatnonzero(fi != np.roll(fi, 1))  # run starts/ends
            if edges.size == 0:
                # everything feasible cannot happen (v = +-u is never
                # feasible); guard anyway
                direct_rows.extend([i] * M)
                direct_angles.extend(phis.tolist())
                continue
            starts = edges[fi[edges]]
            for s in starts:
                e = s
                while fi[(e + 1) % M]:
                    e += 1
                # run is s..e (cyclic, inclusive); midpoint plus both
                # bisected boundaries
                direct_rows.append(i)
                direct_angles.append(phis[s % M] + step * 0.5 * (e - s))
                bnd_rows.append(i)
                bnd_true.append(phis[s % M])
                bnd_false.append(phis[s % M] - step)
                bnd_rows.append(i)
                bnd_true.append(phis[s % M] + step * (e - s))
                bnd_false.append(phis[s % M] + step * (e - s + 1))
        else:
            gi = g[i]
            peaks = np.flatnonzero((gi >= np.roll(gi, 1)) & (gi >= np.roll(gi, -1)))
            for p in peaks:
                peak_rows.append(i)
                peak_lo.append(phis[p] - step)
                peak_hi.append(phis[p] + step)

    def g_at(rows, angles):
        Us = directions_at(space, thetas_u[rows])
        Vs = directions_at(space, angles)
        return line_min_batch(space, Us, Vs, 3.0, tol.lambda_tol) - 1.0

    out_rows = list(direct_rows)
    out_angles = list(direct_angles)

    if bnd_rows:
        rows = np.asarray(bnd_rows)
        refined = bisect_predicate_vec(
            lambda a: g_at(rows, a) >= -tol.rel_tol,
            np.asarray(bnd_true),
            np.asarray(bnd_false),
            48,
        )
        out_rows.extend(rows.tolist())
        out_angles.extend(refined.tolist())

    if peak_rows:
        rows = np.asarray(peak_rows)
        ang, neg = golden_min_vec(
            lambda a: -g_at(rows, a),
            np.asarray(peak_lo),
            np.asarray(peak_hi),
            golden_iters(2.0 * step, 1e-12),
        )
        keep = -neg >= -tol.rel_tol
        # keep the polished peak even when slightly out of tolerance if the
        # row would otherwise be empty (a partner always exists in 2-D)
        for r, a, k in zip(rows.tolist(), ang.tolist(), keep.tolist()):
            if k or r not in out_rows:
                out_rows.append(r)
                out_angles.append(a)

    # point-like feasible sets produce a cluster (two bisected boundaries
    # plus a midpoint within ~sqrt(rel_tol) of each other); collapse
    # clusters tighter than 1e-3 rad to their circular midpoint
    results: list[np.ndarray] = []
    two_pi = 2.0 * math.pi
    for i in range(N):
        angs = np.sort(
            np.asarray([a % two_pi for a, r in zip(out_angles, out_rows) if r == i])
        )
        if angs.size > 1 and angs[0] + two_pi - angs[-1] <= 1e-3:
            # rotate so no cluster straddles the 0/2*pi seam
            gaps = np.diff(np.concatenate([angs, [angs[0] + two_pi]]))
            cut = int(np.argmax(gaps)) + 1
            angs = np.concatenate([angs[cut:], angs[:cut] + two_pi])
        if angs.size > 1:
            splits = np.flatnonzero(np.diff(angs) > 1e-3) + 1
            angs = np.asarray([c.mean() for c in np.split(angs, splits)]) % two_pi
            angs = np.sort(angs)
        results.append(angs)
    return results


def birkhoff_partners(
    space: Space,
    u: UnitVector,
    n_scan: int = 128,
    tol: OrthTolerance = DEFAULT_TOL,
) -> list[UnitVector]:
    """Unit vectors v with u Birkhoff-orthogonal to v (see
    :func:`birkhoff_partner_angles`)."""
    theta = math.atan2(u.vec[1], u.vec[0])
    angles = birkhoff_partner_angles(space, [theta], n_scan, tol)[0]
    return [UnitVector(d, space) for d in directions_at(space, angles)]


def isosceles_radii(
    space: Space,
    u: UnitVector,
    v: UnitVector,
    s_max: float,
    tol: OrthTolerance = DEFAULT_TOL,
) -> list[float]:
    """All radii s in (1e-6, s_max] with u isosceles-orthogonal to s*v.

    Sign-change scan of ``h(s) = ||u + s v|| - ||u - s v||`` on a log grid,
    then bisection.  When h vanishes identically on the grid (Euclidean
    symmetry) the full scan grid is returned.
    """
    if not (s_max > 0):
        raise ValueError("s_max must be > 0")
    grid = np.logspace(-6.0, math.log10(s_max), 1025)[1:]
    x = u.vec
    y = v.vec

    def h(s):
        s = np.asarray(s, dtype=float)[..., None]
        return np.asarray(space.norm(x + s * y)) - np.asarray(space.norm(x - s * y))

    hv = h(grid)
    scale = 1.0 + grid
    if np.all(np.abs(hv) <= 1e-12 * scale):
        return grid.tolist()

    roots: list[float] = []
    zero = np.abs(hv) <= 1e-12 * scale
    roots.extend(grid[zero].tolist())
    sign = np.sign(hv)
    flip = np.flatnonzero((sign[:-1] * sign[1:] < 0))
    for k in flip:
        lo, hi = grid[k], grid[k + 1]
        flo = hv[k]
        while hi - lo > 1e-10:
            mid = 0.5 * (lo + hi)
            fm = float(h(mid))
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return sorted(roots)
