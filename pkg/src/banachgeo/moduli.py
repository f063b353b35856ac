"""Classical geometric moduli of a normed plane.

Modulus of convexity and its characteristic, the James constant (computed
two independent ways), the Lindenstrauss modulus of smoothness with its
characteristic, and Joly's rectangular constant.

Supremum-type quantities are estimated by a dense sphere-grid scan plus
derivative-free local refinement, so every sup-estimate is a certified
lower bound (up to arithmetic rounding) and every inf-estimate an upper
bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optimize import coordinate_ascent, golden_iters, golden_min_vec
from .orthogonality import OrthTolerance, DEFAULT_TOL, birkhoff_partner_angles
from .spaces import Space, directions_at, grid_angles

__all__ = [
    "ConstantEstimate",
    "delta",
    "eps0",
    "james_direct",
    "james_via_delta",
    "rho",
    "rho_prime0",
    "rect_constant",
]


@dataclass(frozen=True)
class ConstantEstimate:
    """Numeric estimate of a sup- or inf-defined constant.

    Sup-estimates are biased low (grid search under-covers the sup),
    inf-estimates biased high; ``bias`` records the direction.
    """

    value: float
    kind: str  # "sup-estimate" | "inf-estimate"
    grid: int
    refined: bool

    def __post_init__(self):
        if self.kind not in ("sup-estimate", "inf-estimate"):
            raise ValueError(f"bad kind {self.kind!r}")
        if not math.isfinite(self.value):
            raise ValueError("estimate value must be finite")

    @property
    def bias(self) -> str:
        return "lower" if self.kind == "sup-estimate" else "upper"


def _pair_grid(space: Space, n_grid: int):
    """All ordered direction pairs of the sphere grid, as (N^2, 2) arrays."""
    dirs = directions_at(space, grid_angles(n_grid))
    n = dirs.shape[0]
    return np.repeat(dirs, n, axis=0), np.tile(dirs, (n, 1))


def _angles_of(idx: int, n_grid: int) -> tuple[float, float]:
    step = 2.0 * math.pi / n_grid
    return (idx // n_grid) * step, (idx % n_grid) * step


def delta(space: Space, eps: float, n_grid: int = 256) -> ConstantEstimate:
    """Modulus of convexity: ``inf{1 - ||(x+y)/2|| : x,y unit, ||x-y|| >= eps}``."""
    if not (0.0 <= eps <= 2.0):
        raise ValueError(f"eps must be in [0, 2], got {eps}")
    if n_grid < 64:
        raise ValueError(f"n_grid must be >= 64, got {n_grid}")
    n_grid += n_grid % 2  # keep antipodal pairs on the grid
    X, Y = _pair_grid(space, n_grid)
    D = np.asarray(space.norm(X - Y))
    feas = D >= eps - 1e-12
    obj = 1.0 - np.asarray(space.norm(0.5 * (X + Y)))
    obj = np.where(feas, obj, np.inf)
    k = int(obj.argmin())
    best = float(obj[k])

    def f(ang):
        x = directions_at(space, ang[0])
        y = directions_at(space, ang[1])
        if space.norm(x - y) < eps - 1e-12:
            return -math.inf
        return -(1.0 - space.norm(0.5 * (x + y)))

    _, neg = coordinate_ascent(f, _angles_of(k, n_grid), 2.0 * math.pi / n_grid,
                               min_step=1e-10)
    value = min(best, -neg)
    return ConstantEstimate(max(value, 0.0), "inf-estimate", n_grid, True)


def eps0(
    space: Space, n_grid: int = 256, zero_tol: float = 1e-4
) -> ConstantEstimate:
    """Characteristic of convexity: ``sup{eps : delta(eps) = 0}``.

    The exact-zero condition is operationalized as ``delta <= zero_tol``
    (inf-estimates carry upward bias, so exact zero is unattainable);
    located by bisection to eps-resolution 1e-4.
    """
    if not (0.0 < zero_tol <= 1e-3):
        raise ValueError(f"zero_tol must be in (0, 1e-3], got {zero_tol}")

    def zero_at(e):
        return delta(space, e, n_grid).value <= zero_tol

    if zero_at(2.0):
        return ConstantEstimate(2.0, "sup-estimate", n_grid, True)
    lo, hi = 0.0, 2.0
    while hi - lo > 1e-4:
        mid = 0.5 * (lo + hi)
        if zero_at(mid):
            lo = mid
        else:
            hi = mid
    return ConstantEstimate(lo, "sup-estimate", n_grid, True)


def james_direct(space: Space, n_grid: int = 256) -> ConstantEstimate:
    """James constant: ``sup min(||x+y||, ||x-y||)`` over unit pairs.

    The sup over the unit ball is attained on the sphere (the objective is
    convex in each argument), so only sphere pairs are scanned.
    """
    if n_grid < 64:
        raise ValueError(f"n_grid must be >= 64, got {n_grid}")
    X, Y = _pair_grid(space, n_grid)
    vals = np.minimum(space.norm(X + Y), space.norm(X - Y))
    k = int(vals.argmax())
    best = float(vals[k])

    def f(ang):
        x = directions_at(space, ang[0])
        y = directions_at(space, ang[1])
        return min(space.norm(x + y), space.norm(x - y))

    _, refined = coordinate_ascent(f, _angles_of(k, n_grid), 2.0 * math.pi / n_grid,
                                   min_step=1e-10)
    return ConstantEstimate(max(best, refined), "sup-estimate", n_grid, True)


def james_via_delta(space: Space) -> ConstantEstimate:
    """James constant from the convexity modulus:
    ``sup{eps : delta(eps) <= 1 - eps/2}``, by bisection.

    Independent cross-check of :func:`james_direct`.
    """
    n_grid = 256

    def below(e):
        return delta(space, e, n_grid).value <= 1.0 - e / 2.0 + 1e-6

    if below(2.0):
        return ConstantEstimate(2.0, "sup-estimate", n_grid, True)
    lo, hi = 0.0, 2.0
    while hi - lo > 1e-4:
        mid = 0.5 * (lo + hi)
        if below(mid):
            lo = mid
        else:
            hi = mid
    return ConstantEstimate(lo, "sup-estimate", n_grid, True)


def rho(space: Space, t: float, n_grid: int = 256) -> ConstantEstimate:
    """Modulus of smoothness: ``sup (||x+ty|| + ||x-ty||)/2 - 1``.

    Restricted to sphere pairs: the objective is convex in each variable,
    so the sup over the ball is attained at extreme points.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if n_grid < 64:
        raise ValueError(f"n_grid must be >= 64, got {n_grid}")
    if t == 0.0:
        return ConstantEstimate(0.0, "sup-estimate", n_grid, False)
    X, Y = _pair_grid(space, n_grid)
    vals = 0.5 * (np.asarray(space.norm(X + t * Y)) + np.asarray(space.norm(X - t * Y))) - 1.0
    k = int(vals.argmax())
    best = float(vals[k])

    def f(ang):
        x = directions_at(space, ang[0])
        y = directions_at(space, ang[1])
        return 0.5 * (space.norm(x + t * y) + space.norm(x - t * y)) - 1.0

    _, refined = coordinate_ascent(f, _angles_of(k, n_grid), 2.0 * math.pi / n_grid,
                                   min_step=1e-10)
    return ConstantEstimate(max(best, refined), "sup-estimate", n_grid, True)


def rho_prime0(space: Space, n_grid: int = 256) -> ConstantEstimate:
    """Characteristic of smoothness: right derivative of rho at 0.

    Evaluates rho(t)/t on a three-point halving ladder and Richardson-
    extrapolates; the result is clamped to the analytic range [0, 1]
    (``sqrt(1+t^2)-1 <= rho(t) <= t``).
    """
    ts = (1e-2, 5e-3, 2.5e-3)
    r = [rho(space, t, n_grid).value / t for t in ts]
    e1 = 2.0 * r[1] - r[0]
    e2 = 2.0 * r[2] - r[1]
    value = (4.0 * e2 - e1) / 3.0
    return ConstantEstimate(min(max(value, 0.0), 1.0), "sup-estimate", n_grid, True)


def rect_constant(
    space: Space,
    n_grid: int = 256,
    s_points: int = 64,
    tol: OrthTolerance = DEFAULT_TOL,
) -> ConstantEstimate:
    """Joly's rectangular constant: ``sup (||x|| + ||y||)/||x-y||`` over
    Birkhoff-orthogonal pairs.

    Birkhoff orthogonality is homogeneous, so the search runs over unit
    direction pairs (u, v) with u orthogonal to v and a radius ratio s,
    maximizing (1+s)/||u - s v||.  The partner list is closed under
    v -> -v, which makes this equal to the usual +-form of the constant.
    """
    if n_grid < 64 or s_points < 64:
        raise ValueError("n_grid and s_points must be >= 64")
    thetas = grid_angles(n_grid)
    partner_lists = birkhoff_partner_angles(space, thetas, _scan_size(n_grid), tol)
    U, V = _orthogonal_pairs(space, thetas, partner_lists)
    sgrid = np.logspace(-3.0, 3.0, s_points)
    best = 1.0  # s -> 0 limit
    best_per_pair = np.full(U.shape[0], -np.inf)
    best_s_idx = np.zeros(U.shape[0], dtype=int)
    for i, s in enumerate(sgrid):
        vals = (1.0 + s) / np.asarray(space.norm(U - s * V))
        upd = vals > best_per_pair
        best_per_pair = np.where(upd, vals, best_per_pair)
        best_s_idx = np.where(upd, i, best_s_idx)
    best = max(best, float(best_per_pair.max()))
    # per-pair golden refinement in log s around the best grid bracket
    ls = np.log(sgrid)
    lo = ls[np.maximum(best_s_idx - 1, 0)]
    hi = ls[np.minimum(best_s_idx + 1, s_points - 1)]

    def f(l):
        s = np.exp(l)
        return -(1.0 + s) / np.asarray(space.norm(U - s[:, None] * V))

    _, neg = golden_min_vec(f, lo, hi, golden_iters(float((hi - lo).max()), 1e-12))
    return ConstantEstimate(max(best, float(-neg.min())), "sup-estimate", n_grid, True)


def _scan_size(n_grid: int) -> int:
    return min(256, max(128, n_grid // 4))


def _orthogonal_pairs(space: Space, thetas, partner_lists):
    """Flatten per-direction partner angle lists into aligned pair arrays."""
    us, vs = [], []
    for th, angs in zip(thetas, partner_lists):
        us.extend([th] * len(angs))
        vs.extend(angs.tolist())
    U = directions_at(space, np.asarray(us))
    V = directions_at(space, np.asarray(vs))
    return U, V
