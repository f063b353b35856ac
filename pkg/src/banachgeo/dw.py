"""Weighted angular-distance constants of a normed plane.

The central quantity is the weighted Dunkl-Williams constant

    sup (alpha*||x|| + beta*||y||) / ||x - y|| * || x/||x|| - y/||y|| ||

over distinct nonzero x, y -- estimated both from this direct definition
(``dw_direct``) and from an equivalent one-parameter minimax form
(``dw_general``), which serve as independent cross-checks.  The same two
estimators restricted to Birkhoff-orthogonal pairs give ``dw_b`` and
``dw_b_direct``.  Companions: the Singer- and isosceles-constrained
variants ``dw_s`` and ``dw_i`` (unit weights), the Birkhoff-constrained
Massera-Schaffer quantity ``ms_b`` with ``max{||x||, ||y||}`` in place
of the weighted sum, and its unconstrained version ``psi_inf``.

Every estimator is a sup over a compact search space, scanned on a grid
and polished by derivative-free local search (12 step-halvings from the
grid resolution), so values are biased low.  The reported value is the
objective re-evaluated at the witness, hence exactly reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .moduli import ConstantEstimate, _scan_size
from .optimize import (
    bisect_predicate,
    bisect_root_vec,
    coordinate_ascent,
    golden_iters,
    golden_min,
    golden_min_vec,
)
from .orthogonality import DEFAULT_TOL, OrthTolerance, birkhoff_partner_angles
from .spaces import (
    Space,
    UnitVector,
    as_vector,
    direction2,
    directions_at,
    grid_angles,
)

__all__ = [
    "Weights",
    "DwResult",
    "dw_objective",
    "ms_objective",
    "tform_objective",
    "dw_general",
    "dw_direct",
    "dw_b",
    "dw_b_direct",
    "dw_s",
    "dw_i",
    "ms_b",
    "psi_inf",
]

NEAR_ZERO = 1e-9
TAU_TOL = 1e-13
TFORM_ITERS = golden_iters(1.0, TAU_TOL)
HALVINGS = 12


@dataclass(frozen=True)
class Weights:
    """The weight pair (alpha, beta), both strictly positive and finite."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name, v in (("alpha", self.alpha), ("beta", self.beta)):
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite real, got {v!r}")


@dataclass(frozen=True)
class DwResult:
    """Sup-estimate with a witness.

    ``witness`` is (u, v, t_or_s): for ``method == "t_form"`` the value is
    ``tform_objective(space, w, u.vec, v.vec, t)``; for ``"direct"`` it is
    the direct objective at (u.vec, s * v.vec).  Re-evaluation reproduces
    ``estimate.value`` to 1e-9.
    """

    estimate: ConstantEstimate
    witness: tuple[UnitVector, UnitVector, float]
    method: str

    def __post_init__(self):
        if self.method not in ("t_form", "direct"):
            raise ValueError(f"bad method {self.method!r}")


# ---------------------------------------------------------------------------
# objectives


def dw_objective(space: Space, w: Weights, x, y) -> float:
    """``(alpha*||x|| + beta*||y||) / ||x-y|| * ||x/||x|| - y/||y||||``."""
    x = as_vector(x, space.dim)
    y = as_vector(y, space.dim)
    nx, ny = space.norm(x), space.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ValueError("x and y must be nonzero")
    d = space.norm(x - y)
    if d == 0.0:
        raise ValueError("x and y must be distinct")
    return (w.alpha * nx + w.beta * ny) / d * space.norm(x / nx - y / ny)


def ms_objective(space: Space, x, y) -> float:
    """``max{||x||, ||y||} / ||x-y|| * ||x/||x|| - y/||y||||``."""
    x = as_vector(x, space.dim)
    y = as_vector(y, space.dim)
    nx, ny = space.norm(x), space.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ValueError("x and y must be nonzero")
    d = space.norm(x - y)
    if d == 0.0:
        raise ValueError("x and y must be distinct")
    return max(nx, ny) / d * space.norm(x / nx - y / ny)


def tform_objective(space: Space, w: Weights, u, v, t: float) -> float:
    """``||u+v|| / ||(1/alpha)(1 - beta*t)u + t*v||`` for unit u, v."""
    u = as_vector(u, space.dim)
    v = as_vector(v, space.dim)
    # evaluated as c1*(u+v) + (t - c1)*v: algebraically identical, but the
    # explicit u+v term stays relatively accurate when v is close to -u
    c1 = (1.0 - w.beta * t) / w.alpha
    den = space.norm(c1 * (u + v) + (t - c1) * v)
    if den == 0.0:
        raise ValueError("degenerate t-form denominator")
    return space.norm(u + v) / den


# ---------------------------------------------------------------------------
# shared search plumbing


def _check_params(n_grid: int, s_points: int | None = None) -> None:
    if n_grid < 64:
        raise ValueError(f"n_grid must be >= 64, got {n_grid}")
    if s_points is not None and s_points < 64:
        raise ValueError(f"s_points must be >= 64, got {s_points}")


def _pair_grid(space: Space, n_grid: int):
    dirs = directions_at(space, grid_angles(n_grid))
    n = dirs.shape[0]
    return np.repeat(dirs, n, axis=0), np.tile(dirs, (n, 1))


def _angles_of(idx: int, n_grid: int) -> tuple[float, float]:
    step = 2.0 * math.pi / n_grid
    return (idx // n_grid) * step, (idx % n_grid) * step


def _sgrid(s_points: int) -> np.ndarray:
    return np.logspace(-3.0, 3.0, s_points)


def _topk(vals: np.ndarray, k: int) -> list[int]:
    """Indices of the k largest entries, best first; ties keep lower index."""
    k = min(k, vals.size)
    idx = np.argpartition(-vals, k - 1)[:k]
    return idx[np.lexsort((idx, -vals[idx]))].tolist()


def _better(best, cand):
    """Larger value wins; exact ties go to lexicographically smaller coords."""
    if best is None:
        return cand
    if cand[0] > best[0] or (cand[0] == best[0] and cand[1:] < best[1:]):
        return cand
    return best


def _staged_ascent(make_obj, x0, steps0, halvings: int = HALVINGS):
    """Coordinate ascent with externally halved steps.

    ``make_obj(width)`` builds the objective for the current scale; the
    width hint lets constrained objectives shrink their re-solve windows
    along with the step size.
    """
    x = list(map(float, x0))
    steps = list(map(float, steps0))
    fx = -math.inf
    for _ in range(halvings + 1):
        f = make_obj(max(4.0 * steps[0], 1e-6))
        x, fx = coordinate_ascent(f, x, steps, min_step=max(steps) * 0.6)
        steps = [0.5 * s for s in steps]
    return x, fx


# scalar inner solves ------------------------------------------------------


_LS_MAX = 3.0 * math.log(10.0)


def _best_s2(space: Space, coef, u, v) -> tuple[float, float]:
    """Maximize ``coef(s) * ||u-v|| / ||u - s v||`` over s for unit u, v.

    Scans the global log-radius range, then polishes two brackets: the
    best coarse bracket and a window around s = 1 at the scale of
    ``||u - v||`` -- near-parallel pairs put the maximizer at
    ``s - 1 = O(||u-v||)``, far below coarse-grid resolution.
    Returns (value, s); (-inf, 1.0) for coincident directions.
    """
    d = space.norm2(u[0] - v[0], u[1] - v[1])
    if d < NEAR_ZERO:
        return -math.inf, 1.0

    def neg(ls):
        s = math.exp(ls)
        return -coef(s) * d / space.norm2(u[0] - s * v[0], u[1] - s * v[1])

    m = 48
    pts = [-_LS_MAX + 2.0 * _LS_MAX * j / m for j in range(m + 1)]
    vals = [neg(p) for p in pts]
    j = min(range(m + 1), key=lambda i: (vals[i], i))
    ls1, n1 = golden_min(neg, pts[max(j - 1, 0)], pts[min(j + 1, m)], 1e-12)
    half = math.log1p(8.0 * d) if d < 0.12 else math.log(2.0)
    ls2, n2 = golden_min(neg, -half, half, 1e-14 * max(d, 1e-12))
    if n2 < n1:
        ls1, n1 = ls2, n2
    return -n1, math.exp(ls1)


def _line_min2(space: Space, u, v) -> float:
    """``min_t ||u + t v||`` for unit u, v (minimizer lies in [-3, 3])."""
    return golden_min(
        lambda t: space.norm2(u[0] + t * v[0], u[1] + t * v[1]), -3.0, 3.0, 1e-12
    )[1]


def _tform_ratio2(space: Space, w: Weights, u, v) -> tuple[float, float]:
    """Scalar t-form ratio and minimizing t for unit u, v (tuples)."""
    p0, p1 = u[0] + v[0], u[1] + v[1]
    s = space.norm2(p0, p1)
    if s < NEAR_ZERO:
        return 0.0, 0.0
    ia, ib = 1.0 / w.alpha, 1.0 / w.beta

    def f(tau):
        c1 = ia * (1.0 - tau)
        d = ib * tau - c1
        return space.norm2(c1 * p0 + d * v[0], c1 * p1 + d * v[1])

    tau, fmin = golden_min(f, 0.0, 1.0, TAU_TOL)
    return s / fmin, tau * ib


def _tform_min_vec(space: Space, U: np.ndarray, V: np.ndarray, w: Weights):
    """Vectorized ``min over t in [0, 1/beta]`` of the t-form denominator,
    parameterized by tau = beta*t in [0, 1] so the search path is invariant
    under joint weight scaling."""
    ia, ib = 1.0 / w.alpha, 1.0 / w.beta
    P = U + V

    def f(tau):
        c1 = ia * (1.0 - tau)
        d = (ib * tau - c1)[..., None]
        return np.asarray(space.norm(c1[..., None] * P + d * V))

    n = U.shape[0]
    return golden_min_vec(f, np.zeros(n), np.ones(n), TFORM_ITERS)


def _tform_ratio_grid(space, U, V, w):
    S = np.asarray(space.norm(U + V))
    _, fmin = _tform_min_vec(space, U, V, w)
    return np.where(S >= NEAR_ZERO, S / np.where(fmin > 0.0, fmin, 1.0), 0.0)


# result assembly ----------------------------------------------------------


def _finish_tform(space, w, thu, thv, n_grid) -> DwResult:
    u = directions_at(space, float(thu))
    v = directions_at(space, float(thv))
    _, t = _tform_ratio2(space, w, (u[0], u[1]), (v[0], v[1]))
    val = tform_objective(space, w, u, v, t)
    return DwResult(
        ConstantEstimate(val, "sup-estimate", n_grid, True),
        (UnitVector(u, space), UnitVector(v, space), t),
        "t_form",
    )


def _finish_direct(space, objective, thu, thv, s, n_grid) -> DwResult:
    u = directions_at(space, float(thu))
    v = directions_at(space, float(thv))
    val = objective(u, s * v)
    return DwResult(
        ConstantEstimate(val, "sup-estimate", n_grid, True),
        (UnitVector(u, space), UnitVector(v, space), float(s)),
        "direct",
    )


# ---------------------------------------------------------------------------
# unconstrained estimators


def dw_general(space: Space, w: Weights, n_grid: int = 256) -> DwResult:
    """t-form estimator of the weighted constant:
    ``sup ||u+v|| / min_t ||(1/alpha)(1 - beta t)u + t v||`` over unit pairs.

    The inner minimum runs over the closed interval t in [0, 1/beta] (the
    endpoint values 1/alpha and 1/beta extend the open-interval infimum
    continuously).  Pairs with ``||u+v|| < 1e-9`` contribute 0: the ratio
    vanishes toward v = -u and cannot attain the sup.
    """
    _check_params(n_grid)
    X, Y = _pair_grid(space, n_grid)
    ratio = _tform_ratio_grid(space, X, Y, w)
    step = 2.0 * math.pi / n_grid
    best = None
    for idx in _topk(ratio, 3):

        def f(z):
            u = direction2(space, z[0])
            v = direction2(space, z[1])
            return _tform_ratio2(space, w, u, v)[0]

        z, val = coordinate_ascent(
            f, _angles_of(idx, n_grid), step, min_step=step * 2.0 ** -12.5
        )
        best = _better(best, (val, z[0], z[1]))
    return _finish_tform(space, w, best[1], best[2], n_grid)


def _direct_unconstrained(space, coef, objective, n_grid, s_points):
    """Grid/refine driver shared by dw_direct and psi_inf.

    ``coef(s)`` is the numerator weight (``alpha + beta*s`` or
    ``max{1, s}``); the objective per lane is ``coef(s) * ||u - v|| /
    ||u - s v||`` with x = u, y = s*v (scale invariance fixes ||x|| = 1).
    """
    X, Y = _pair_grid(space, n_grid)
    duv = np.asarray(space.norm(X - Y))
    mask = duv >= NEAR_ZERO
    sgrid = _sgrid(s_points)
    best_val = np.full(X.shape[0], -np.inf)
    for s in sgrid:
        vals = np.where(
            mask, coef(s) * duv / np.asarray(space.norm(X - s * Y)), -np.inf
        )
        np.maximum(best_val, vals, out=best_val)
    step = 2.0 * math.pi / n_grid
    best = None
    for idx in _topk(best_val, 3):

        def f(z):
            return _best_s2(
                space, coef, direction2(space, z[0]), direction2(space, z[1])
            )[0]

        z, val = coordinate_ascent(
            f, _angles_of(idx, n_grid), step, min_step=step * 2.0 ** -12.5
        )
        best = _better(best, (val, z[0], z[1]))
    _, s_best = _best_s2(
        space, coef, direction2(space, best[1]), direction2(space, best[2])
    )
    return _finish_direct(space, objective, best[1], best[2], s_best, n_grid)


def dw_direct(
    space: Space, w: Weights, n_grid: int = 256, s_points: int = 64
) -> DwResult:
    """Direct-definition estimator: samples x = u, y = s*v over direction
    pairs and log-spaced radii s in [1e-3, 1e3], then refines the best
    (theta_u, theta_v, log s) triple.  Independent cross-check of
    :func:`dw_general`."""
    _check_params(n_grid, s_points)
    return _direct_unconstrained(
        space,
        lambda s: w.alpha + w.beta * s,
        lambda x, y: dw_objective(space, w, x, y),
        n_grid,
        s_points,
    )


def psi_inf(space: Space, n_grid: int = 256, s_points: int = 64) -> DwResult:
    """Unconstrained max-weight companion:
    ``sup max{||x||,||y||}/||x-y|| * angular distance``; equals 2 in every
    Banach space, so this estimator doubles as an end-to-end sanity probe."""
    _check_params(n_grid, s_points)
    return _direct_unconstrained(
        space,
        lambda s: max(1.0, s),
        lambda x, y: ms_objective(space, x, y),
        n_grid,
        s_points,
    )


# ---------------------------------------------------------------------------
# Birkhoff-constrained estimators


def _flatten_pairs(thetas, partner_lists):
    us, vs = [], []
    for th, angs in zip(thetas, partner_lists):
        us.extend([float(th)] * angs.size)
        vs.extend(angs.tolist())
    return np.asarray(us), np.asarray(vs)


def _local_partners(space, th_u, center, width, tol: OrthTolerance):
    """Directions Birkhoff-orthogonal to u(th_u) within ``width`` of
    ``center``: feasible-run midpoints and bisected run boundaries, or a
    polished peak of the line-minimum when no sample is feasible."""
    u = direction2(space, th_u)

    def g(phi):
        return _line_min2(space, u, direction2(space, phi)) - 1.0

    m = 16
    phis = [center + width * (2.0 * j / m - 1.0) for j in range(m + 1)]
    gs = [g(p) for p in phis]
    feas = [gv >= -tol.rel_tol for gv in gs]
    out: list[float] = []
    if any(feas):
        j = 0
        while j <= m:
            if not feas[j]:
                j += 1
                continue
            k = j
            while k + 1 <= m and feas[k + 1]:
                k += 1
            out.append(0.5 * (phis[j] + phis[k]))
            pred = lambda a: g(a) >= -tol.rel_tol
            if j > 0:
                out.append(bisect_predicate(pred, phis[j], phis[j - 1], 1e-13))
            if k < m:
                out.append(bisect_predicate(pred, phis[k], phis[k + 1], 1e-13))
            j = k + 1
    else:
        a, neg = golden_min(lambda p: -g(p), center - width, center + width, 1e-13)
        if -neg >= -tol.rel_tol:
            out.append(a)
    return out


def _refine_birkhoff(space, eval_pair, seed, step, tol):
    """Two-stage refinement over Birkhoff-orthogonal pairs.

    ``eval_pair(th_u, th_v)`` is the objective with any inner parameter
    (t or radius) already optimized out.  Stage 1 walks th_u along the
    orthogonality manifold, re-solving the partner near its previous
    position after every step; stage 2 releases th_v under an explicit
    orthogonality feasibility check, which matters when the partner set
    is an arc.  Returns (value, th_u, th_v).
    """
    thu0, thv0 = seed
    state = {"thv": thv0, "best": None}

    def make_obj(width):
        def f(z):
            cands = _local_partners(space, z[0], state["thv"], width, tol)
            if not cands:
                return -math.inf
            best_here = None
            for phi in cands:
                best_here = _better(best_here, (eval_pair(z[0], phi), phi))
            state["thv"] = best_here[1]
            state["best"] = _better(state["best"], (best_here[0], z[0], best_here[1]))
            return best_here[0]

        return f

    _staged_ascent(make_obj, [thu0], [step])
    _, thu1, thv1 = state["best"]

    def f2(z):
        g = _line_min2(space, direction2(space, z[0]), direction2(space, z[1])) - 1.0
        if g < -tol.rel_tol:
            return -math.inf
        return eval_pair(z[0], z[1])

    z, val = coordinate_ascent(
        f2, [thu1, thv1], step, min_step=step * 2.0 ** -12.5
    )
    return _better(state["best"], (val, z[0], z[1]))


def dw_b(
    space: Space,
    w: Weights,
    n_grid: int = 256,
    tol: OrthTolerance = DEFAULT_TOL,
) -> DwResult:
    """t-form estimator restricted to Birkhoff-orthogonal unit pairs.

    Pairs come from the partner search (closed under v -> -v, as required
    for the t-form to see both signs); refinement re-solves the partner
    after each u-step and then polishes with the constraint explicit.
    """
    _check_params(n_grid)
    thetas = grid_angles(n_grid)
    partner_lists = birkhoff_partner_angles(space, thetas, _scan_size(n_grid), tol)
    thU, thV = _flatten_pairs(thetas, partner_lists)
    U = directions_at(space, thU)
    V = directions_at(space, thV)
    ratio = _tform_ratio_grid(space, U, V, w)
    step = 2.0 * math.pi / n_grid

    def eval_pair(th_u, th_v):
        return _tform_ratio2(
            space, w, direction2(space, th_u), direction2(space, th_v)
        )[0]

    best = None
    for idx in _topk(ratio, 2):
        cand = _refine_birkhoff(
            space, eval_pair, (float(thU[idx]), float(thV[idx])), step, tol
        )
        best = _better(best, cand)
    return _finish_tform(space, w, best[1], best[2], n_grid)


def _direct_over_birkhoff(space, coef, objective, n_grid, s_points, tol):
    """Direct-form driver over Birkhoff pairs, shared by dw_b_direct/ms_b."""
    thetas = grid_angles(n_grid)
    partner_lists = birkhoff_partner_angles(space, thetas, _scan_size(n_grid), tol)
    thU, thV = _flatten_pairs(thetas, partner_lists)
    U = directions_at(space, thU)
    V = directions_at(space, thV)
    duv = np.asarray(space.norm(U - V))
    mask = duv >= NEAR_ZERO
    best_val = np.full(U.shape[0], -np.inf)
    for s in _sgrid(s_points):
        vals = np.where(
            mask, coef(s) * duv / np.asarray(space.norm(U - s * V)), -np.inf
        )
        np.maximum(best_val, vals, out=best_val)
    step = 2.0 * math.pi / n_grid

    def eval_pair(th_u, th_v):
        return _best_s2(
            space, coef, direction2(space, th_u), direction2(space, th_v)
        )[0]

    best = None
    for idx in _topk(best_val, 2):
        cand = _refine_birkhoff(
            space, eval_pair, (float(thU[idx]), float(thV[idx])), step, tol
        )
        best = _better(best, cand)
    _, s_best = _best_s2(
        space, coef, direction2(space, best[1]), direction2(space, best[2])
    )
    return _finish_direct(space, objective, best[1], best[2], s_best, n_grid)


def dw_b_direct(
    space: Space,
    w: Weights,
    n_grid: int = 256,
    s_points: int = 64,
    tol: OrthTolerance = DEFAULT_TOL,
) -> DwResult:
    """Direct-definition estimator over Birkhoff-orthogonal pairs; the
    independent cross-check of :func:`dw_b`."""
    _check_params(n_grid, s_points)
    return _direct_over_birkhoff(
        space,
        lambda s: w.alpha + w.beta * s,
        lambda x, y: dw_objective(space, w, x, y),
        n_grid,
        s_points,
        tol,
    )


def ms_b(
    space: Space,
    n_grid: int = 256,
    s_points: int = 64,
    tol: OrthTolerance = DEFAULT_TOL,
) -> DwResult:
    """Massera-Schaffer-type constant over Birkhoff pairs:
    ``sup max{1, s}/||u - s v|| * ||u - v||``; at most 2 in any space."""
    _check_params(n_grid, s_points)
    return _direct_over_birkhoff(
        space,
        lambda s: max(1.0, s),
        lambda x, y: ms_objective(space, x, y),
        n_grid,
        s_points,
        tol,
    )


# ---------------------------------------------------------------------------
# Singer- and isosceles-constrained estimators (unit weights)


UNIT_W = Weights(1.0, 1.0)


def dw_s(
    space: Space,
    n_grid: int = 256,
    s_points: int = 64,
    tol: OrthTolerance = DEFAULT_TOL,
) -> DwResult:
    """Unit-weight constant over Singer-orthogonal pairs.

    Singer orthogonality depends only on directions, so feasible pairs are
    roots in theta_v of ``F = ||u - v|| - ||u + v||`` on the direction
    circle (plus entire rows where F vanishes identically), and the radius
    ratio s remains free.
    """
    _check_params(n_grid, s_points)
    thetas = grid_angles(n_grid)
    dirs = directions_at(space, thetas)
    n = n_grid
    X = np.repeat(dirs, n, axis=0)
    Y = np.tile(dirs, (n, 1))
    F = (np.asarray(space.norm(X - Y)) - np.asarray(space.norm(X + Y))).reshape(n, n)
    step = 2.0 * math.pi / n

    rows_z, cols_z = np.nonzero(np.abs(F) <= 1e-12)
    flip = F * np.roll(F, -1, axis=1) < 0
    rows_f, cols_f = np.nonzero(flip)
    if rows_f.size:
        lo = thetas[cols_f]
        hi = lo + step
        Uf = dirs[rows_f]

        def froot(ang):
            V = directions_at(space, ang)
            return np.asarray(space.norm(Uf - V)) - np.asarray(space.norm(Uf + V))

        roots = bisect_root_vec(froot, lo, hi, 45)
    else:
        roots = np.empty(0)
    thU = np.concatenate([thetas[rows_z], thetas[rows_f]])
    thV = np.concatenate([thetas[cols_z], roots])
    if thU.size == 0:
        raise RuntimeError("no Singer-orthogonal pairs found")
    U = directions_at(space, thU)
    V = directions_at(space, thV)
    duv = np.asarray(space.norm(U - V))
    mask = duv >= NEAR_ZERO
    best_val = np.full(U.shape[0], -np.inf)
    for s in _sgrid(s_points):
        vals = np.where(
            mask, (1.0 + s) * duv / np.asarray(space.norm(U - s * V)), -np.inf
        )
        np.maximum(best_val, vals, out=best_val)

    def F2(th_u, th_v):
        u = direction2(space, th_u)
        v = direction2(space, th_v)
        return space.norm2(u[0] - v[0], u[1] - v[1]) - space.norm2(
            u[0] + v[0], u[1] + v[1]
        )

    def resolve_root(th_u, center, width):
        """Root of F in theta_v near ``center``, or None."""
        m = 8
        phis = [center + width * (2.0 * j / m - 1.0) for j in range(m + 1)]
        fs = [F2(th_u, p) for p in phis]
        for j in range(m):
            if abs(fs[j]) <= 1e-13:
                return phis[j]
            if fs[j] * fs[j + 1] < 0:
                lo_a, hi_a, flo = phis[j], phis[j + 1], fs[j]
                while hi_a - lo_a > 1e-13:
                    mid = 0.5 * (lo_a + hi_a)
                    fm = F2(th_u, mid)
                    if fm == 0.0:
                        return mid
                    if (fm > 0) == (flo > 0):
                        lo_a, flo = mid, fm
                    else:
                        hi_a = mid
                return 0.5 * (lo_a + hi_a)
        if abs(fs[m]) <= 1e-13:
            return phis[m]
        return None

    coef = lambda s: 1.0 + s
    best = None
    for idx in _topk(best_val, 3):
        thu0 = float(thU[idx])
        state = {"thv": float(thV[idx]), "best": None}

        def make_obj(width):
            def f(z):
                phi = resolve_root(z[0], state["thv"], width)
                if phi is None:
                    return -math.inf
                state["thv"] = phi
                val, s = _best_s2(
                    space, coef, direction2(space, z[0]), direction2(space, phi)
                )
                state["best"] = _better(state["best"], (val, z[0], phi, s))
                return val

            return f

        _staged_ascent(make_obj, [thu0], [step])
        if state["best"] is not None:
            best = _better(best, state["best"])
    return _finish_direct(
        space,
        lambda x, y: dw_objective(space, UNIT_W, x, y),
        best[1],
        best[2],
        best[3],
        n_grid,
    )


def dw_i(
    space: Space,
    n_grid: int = 256,
    s_points: int = 64,
    tol: OrthTolerance = DEFAULT_TOL,
) -> DwResult:
    """Unit-weight constant over isosceles-orthogonal pairs.

    Isosceles orthogonality is not homogeneous, so per direction pair the
    feasible radii are the roots in s of ``h = ||u + s v|| - ||u - s v||``;
    the search keeps the constraint exact (roots located by bisection,
    identically-vanishing h treated as an s-free lane) rather than
    penalized, so the estimate stays a true lower bound.
    """
    _check_params(n_grid, s_points)
    X, Y = _pair_grid(space, n_grid)
    duv = np.asarray(space.norm(X - Y))
    mask = duv >= NEAR_ZERO
    sgrid = _sgrid(s_points)
    nl = X.shape[0]
    best_val = np.full(nl, -np.inf)
    best_si = np.zeros(nl, dtype=np.int64)
    flat_dev = np.zeros(nl)
    br_lanes, br_k = [], []
    H_prev = None
    for i, s in enumerate(sgrid):
        B = np.asarray(space.norm(X - s * Y))
        H = np.asarray(space.norm(X + s * Y)) - B
        flat_dev = np.maximum(flat_dev, np.abs(H) / (1.0 + s))
        feas = mask & (np.abs(H) <= tol.rel_tol * (1.0 + s))
        vals = np.where(feas, (1.0 + s) * duv / B, -np.inf)
        upd = vals > best_val
        best_val[upd] = vals[upd]
        best_si[upd] = i
        if H_prev is not None:
            fl = np.nonzero(mask & (H_prev * H < 0))[0]
            if fl.size:
                br_lanes.append(fl)
                br_k.append(np.full(fl.size, i - 1))
        H_prev = H
    cands: list[tuple[float, int, float]] = []  # (value, lane, log s)
    for idx in _topk(best_val, 3):
        if math.isfinite(best_val[idx]):
            cands.append((float(best_val[idx]), idx, math.log(sgrid[best_si[idx]])))
    if br_lanes:
        lanes = np.concatenate(br_lanes)
        ks = np.concatenate(br_k)
        Xl, Yl = X[lanes], Y[lanes]

        def hroot(ls):
            s = np.exp(ls)[:, None]
            return np.asarray(space.norm(Xl + s * Yl)) - np.asarray(
                space.norm(Xl - s * Yl)
            )

        ls_lo = np.log(sgrid[ks])
        ls_hi = np.log(sgrid[ks + 1])
        ls_root = bisect_root_vec(hroot, ls_lo, ls_hi, 50)
        s_root = np.exp(ls_root)
        vals = (
            (1.0 + s_root)
            * duv[lanes]
            / np.asarray(space.norm(Xl - s_root[:, None] * Yl))
        )
        for j in _topk(vals, 3):
            cands.append((float(vals[j]), int(lanes[j]), float(ls_root[j])))
    if not cands:
        raise RuntimeError("no isosceles-orthogonal pairs found")
    cands.sort(key=lambda c: (-c[0], c[1]))
    step = 2.0 * math.pi / n_grid
    dls = math.log(sgrid[1] / sgrid[0])

    def h2(th_u, th_v, s):
        u = direction2(space, th_u)
        v = direction2(space, th_v)
        return space.norm2(u[0] + s * v[0], u[1] + s * v[1]) - space.norm2(
            u[0] - s * v[0], u[1] - s * v[1]
        )

    def obj2(th_u, th_v, s):
        u = direction2(space, th_u)
        v = direction2(space, th_v)
        d = space.norm2(u[0] - v[0], u[1] - v[1])
        if d < NEAR_ZERO:
            return -math.inf
        return (1.0 + s) * d / space.norm2(u[0] - s * v[0], u[1] - s * v[1])

    best = None
    for val0, lane, ls0 in cands[:3]:
        thu0, thv0 = _angles_of(lane, n_grid)
        if flat_dev[lane] <= 1e-12:
            # h vanishes for every radius: s is a free coordinate, but
            # moves in (theta_u, theta_v) must preserve the constraint
            def f(z):
                s = math.exp(z[2])
                if abs(h2(z[0], z[1], s)) > tol.rel_tol * (1.0 + s):
                    return -math.inf
                return obj2(z[0], z[1], s)

            z, val = coordinate_ascent(
                f,
                (thu0, thv0, ls0),
                (step, step, dls),
                min_step=max(step, dls) * 2.0 ** -12.5,
            )
            best = _better(best, (val, z[0], z[1], z[2]))
        else:
            state = {"ls": ls0, "best": None}

            def make_obj(width):
                wls = max(width, dls * 1e-4)

                def f(z):
                    ls = _iso_radius_near(space, z[0], z[1], state["ls"], wls, h2)
                    if ls is None:
                        return -math.inf
                    state["ls"] = ls
                    val = obj2(z[0], z[1], math.exp(ls))
                    state["best"] = _better(state["best"], (val, z[0], z[1], ls))
                    return val

                return f

            _staged_ascent(make_obj, [thu0, thv0], [step, step])
            if state["best"] is not None:
                best = _better(best, state["best"])
    return _finish_direct(
        space,
        lambda x, y: dw_objective(space, UNIT_W, x, y),
        best[1],
        best[2],
        math.exp(best[3]),
        n_grid,
    )


def _iso_radius_near(space, th_u, th_v, center, width, h2):
    """Root of h in log s near ``center``, or None."""
    m = 8
    pts = [center + width * (2.0 * j / m - 1.0) for j in range(m + 1)]
    hs = [h2(th_u, th_v, math.exp(p)) for p in pts]
    for j in range(m):
        if hs[j] == 0.0:
            return pts[j]
        if hs[j] * hs[j + 1] < 0:
            lo, hi, flo = pts[j], pts[j + 1], hs[j]
            while hi - lo > 1e-13:
                mid = 0.5 * (lo + hi)
                fm = h2(th_u, th_v, math.exp(mid))
                if fm == 0.0:
                    return mid
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            return 0.5 * (lo + hi)
    if hs[m] == 0.0:
        return pts[m]
    return None
