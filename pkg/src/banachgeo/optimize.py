"""Derivative-free 1-D and coordinate search primitives.

All objectives here may be non-smooth (norms of polygonal balls), so the
toolkit is comparison-based only: golden-section on brackets, predicate
bisection, and coordinate descent with step halving.
"""

from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = 1.0 - INV_PHI


def golden_iters(width: float, tol: float) -> int:
    """Iterations needed to shrink a bracket of ``width`` below ``tol``."""
    if width <= tol:
        return 1
    return max(1, int(math.ceil(math.log(tol / width) / math.log(INV_PHI))))


def golden_min(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Minimize a unimodal scalar function on [lo, hi].

    Returns (x, f(x)) where x is a probed point whose value is the best
    seen, so the result is exactly reproducible by re-evaluation.
    """
    n = golden_iters(hi - lo, tol)
    h = hi - lo
    c = lo + INV_PHI2 * h
    d = lo + INV_PHI * h
    fc = f(c)
    fd = f(d)
    for _ in range(n - 1):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = lo + INV_PHI2 * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def golden_min_vec(f, lo, hi, n_iter: int):
    """Vectorized golden-section minimization over per-lane brackets.

    ``f`` maps an array of abscissae to an array of values (same shape).
    Runs a fixed iteration count so every lane follows the same schedule.
    Returns (x, fx) with fx the best probed value per lane.
    """
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    h = hi - lo
    c = lo + INV_PHI2 * h
    d = lo + INV_PHI * h
    fc = f(c)
    fd = f(d)
    for _ in range(n_iter - 1):
        left = fc < fd
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        h = hi - lo
        x = np.where(left, lo + INV_PHI2 * h, lo + INV_PHI * h)
        fx = f(x)
        # shift: on "left" the old c becomes d, on "right" the old d becomes c
        c_new = np.where(left, x, d)
        fc_new = np.where(left, fx, fd)
        d_new = np.where(left, c, x)
        fd_new = np.where(left, fc, fx)
        c, d, fc, fd = c_new, d_new, fc_new, fd_new
    take_c = fc <= fd
    return np.where(take_c, c, d), np.where(take_c, fc, fd)


def bisect_predicate(pred, x_true: float, x_false: float, tol: float) -> float:
    """Boundary of a predicate by bisection.

    ``pred(x_true)`` must hold and ``pred(x_false)`` must not; returns a
    point on the true side within ``tol`` of the boundary.
    """
    while abs(x_false - x_true) > tol:
        mid = 0.5 * (x_true + x_false)
        if pred(mid):
            x_true = mid
        else:
            x_false = mid
    return x_true


def bisect_predicate_vec(pred, x_true, x_false, n_iter: int):
    """Vectorized predicate-boundary bisection (fixed iteration count)."""
    x_true = np.asarray(x_true, dtype=float).copy()
    x_false = np.asarray(x_false, dtype=float).copy()
    for _ in range(n_iter):
        mid = 0.5 * (x_true + x_false)
        ok = pred(mid)
        x_true = np.where(ok, mid, x_true)
        x_false = np.where(ok, x_false, mid)
    return x_true


def bisect_root_vec(f, lo, hi, n_iter: int):
    """Vectorized sign-change bisection: f(lo) and f(hi) have opposite signs."""
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    flo = f(lo)
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        same = np.sign(fm) == np.sign(flo)
        lo = np.where(same, mid, lo)
        flo = np.where(same, fm, flo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def coordinate_ascent(
    f,
    x0,
    step0,
    *,
    min_step: float = 5e-14,
    max_moves_per_scale: int = 40,
):
    """Maximize ``f`` over R^k by per-coordinate stepping with halving.

    At each scale, repeatedly takes the best improving +/- step on any
    coordinate (up to ``max_moves_per_scale`` moves), then halves all
    steps.  ``step0`` is a scalar or one step per coordinate; ``min_step``
    applies to the largest step.  ``f`` may return ``-inf`` for infeasible
    points.  Returns (x, f(x)).
    """
    x = list(map(float, x0))
    k = len(x)
    steps = [float(step0)] * k if np.isscalar(step0) else list(map(float, step0))
    if len(steps) != k:
        raise ValueError("step0 length must match x0")
    fx = f(x)
    while max(steps) > min_step:
        for _ in range(max_moves_per_scale):
            best_val = fx
            best_x = None
            for i in range(k):
                for sgn in (1.0, -1.0):
                    trial = list(x)
                    trial[i] += sgn * steps[i]
                    val = f(trial)
                    if val > best_val:
                        best_val = val
                        best_x = trial
            if best_x is None:
                break
            x, fx = best_x, best_val
        steps = [s * 0.5 for s in steps]
    return x, fx
