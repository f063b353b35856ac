"""Norms on R^n and unit-sphere sampling.

A space is a concrete norm on R^n (n >= 2, default 2).  Four families are
built in:

* ``Lp``         -- the p-norms, 1 <= p <= inf (inf encoded as ``math.inf``)
* ``XMu``        -- the plane with ``max(l2, mu * linf)``, mu >= 1
* ``Polyhedral`` -- the Minkowski gauge of a symmetric polygon/polytope
* ``MaxOf``      -- pointwise max of scaled member norms

All norm evaluations are vectorized over the leading axes: ``norm_eval``
accepts arrays of shape ``(..., dim)`` and returns shape ``(...,)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull

__all__ = [
    "Space",
    "Lp",
    "XMu",
    "Polyhedral",
    "MaxOf",
    "UnitVector",
    "as_vector",
    "norm_eval",
    "unit_vector",
    "sphere_grid",
    "SpaceError",
    "DimensionError",
]

UNIT_TOL = 1e-12


class SpaceError(ValueError):
    """Invalid space specification."""


class DimensionError(ValueError):
    """Vector dimension does not match the space, or unsupported dimension."""


def as_vector(coords, dim: int | None = None) -> np.ndarray:
    """Validate and convert coordinates to a float vector.

    Requires length >= 2 and all entries finite.
    """
    x = np.asarray(coords, dtype=float)
    if x.ndim != 1 or x.shape[0] < 2:
        raise DimensionError(f"vector must be 1-D with length >= 2, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector coordinates must be finite")
    if dim is not None and x.shape[0] != dim:
        raise DimensionError(f"expected dimension {dim}, got {x.shape[0]}")
    return x


class Space:
    """Base class for norms.  Subclasses implement ``_norm`` on (..., dim)."""

    dim: int

    def _norm(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def norm(self, x) -> float | np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise DimensionError(
                f"vector dimension {x.shape[-1]} != space dimension {self.dim}"
            )
        out = self._norm(x)
        return float(out) if out.ndim == 0 else out

    def norm2(self, a: float, b: float) -> float:
        """Scalar norm of (a, b); fast path for planar search loops."""
        if self.dim != 2:
            raise DimensionError("norm2 requires a 2-dimensional space")
        return float(self._norm(np.array([a, b])))


@dataclass(frozen=True, eq=True)
class Lp(Space):
    """The p-norm on R^dim.  Use ``math.inf`` for the sup norm."""

    p: float
    dim: int = 2

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise SpaceError(f"Lp requires p >= 1, got {self.p}")
        if self.dim < 2:
            raise SpaceError(f"dim must be >= 2, got {self.dim}")

    def _norm(self, x):
        a = np.abs(x)
        if math.isinf(self.p):
            return a.max(axis=-1)
        if self.p == 1.0:
            return a.sum(axis=-1)
        if self.p == 2.0:
            return np.sqrt((x * x).sum(axis=-1))
        return (a ** self.p).sum(axis=-1) ** (1.0 / self.p)

    def norm2(self, a, b):
        if self.dim != 2:
            raise DimensionError("norm2 requires a 2-dimensional space")
        a, b = abs(a), abs(b)
        if math.isinf(self.p):
            return a if a > b else b
        if self.p == 1.0:
            return a + b
        if self.p == 2.0:
            return math.sqrt(a * a + b * b)
        return (a ** self.p + b ** self.p) ** (1.0 / self.p)


@dataclass(frozen=True, eq=True)
class XMu(Space):
    """The plane with norm ``max(||x||_2, mu * ||x||_inf)``, mu >= 1.

    Interpolates between the Euclidean plane (mu = 1) and square-like
    geometry; defined here for dim = 2.
    """

    mu: float
    dim: int = field(default=2, init=False)

    def __post_init__(self):
        if not (self.mu >= 1.0) or not math.isfinite(self.mu):
            raise SpaceError(f"XMu requires mu >= 1, got {self.mu}")

    def _norm(self, x):
        l2 = np.sqrt((x * x).sum(axis=-1))
        linf = np.abs(x).max(axis=-1)
        return np.maximum(l2, self.mu * linf)

    def norm2(self, a, b):
        a, b = abs(a), abs(b)
        return max(math.sqrt(a * a + b * b), self.mu * (a if a > b else b))


class Polyhedral(Space):
    """Minkowski gauge of the convex hull of a symmetric vertex set.

    The vertex set must be symmetric (v in set => -v in set), span R^dim,
    and have 0 strictly inside its convex hull.  Facet functionals a_i with
    <a_i, x> = 1 on the facet are precomputed; the gauge is max_i <a_i, x>.
    """

    def __init__(self, vertices):
        V = np.asarray(vertices, dtype=float)
        if V.ndim != 2 or V.shape[0] < 4 or V.shape[1] < 2:
            raise SpaceError("polyhedral norm needs >= 4 vertices in dimension >= 2")
        if not np.all(np.isfinite(V)):
            raise SpaceError("polyhedral vertices must be finite")
        # symmetry: every vertex must have its antipode in the set
        for v in V:
            d = np.abs(V + v).max(axis=1)
            if d.min() > 1e-9 * (1.0 + np.abs(v).max()):
                raise SpaceError(f"vertex set is not symmetric: -{v.tolist()} missing")
        if np.linalg.matrix_rank(V) < V.shape[1]:
            raise SpaceError("vertex set does not span the space")
        try:
            hull = ConvexHull(V)
        except Exception as exc:  # qhull degeneracy
            raise SpaceError(f"degenerate polyhedral vertex set: {exc}") from None
        # hull.equations rows are [normal, offset] with normal.x + offset <= 0
        # inside; 0 strictly interior iff every offset < 0.
        normals = hull.equations[:, :-1]
        offsets = hull.equations[:, -1]
        if np.any(offsets >= -1e-12):
            raise SpaceError("0 is not strictly interior to the vertex hull")
        self._functionals = normals / (-offsets[:, None])
        self._functional_rows = [tuple(row) for row in self._functionals]
        self.vertices = V
        self.vertices.setflags(write=False)
        self.dim = V.shape[1]

    def _norm(self, x):
        return (x @ self._functionals.T).max(axis=-1)

    def norm2(self, a, b):
        if self.dim != 2:
            raise DimensionError("norm2 requires a 2-dimensional space")
        return max(fa * a + fb * b for fa, fb in self._functional_rows)

    def __eq__(self, other):
        return isinstance(other, Polyhedral) and np.array_equal(
            self.vertices, other.vertices
        )

    def __hash__(self):
        return hash(("polyhedral", self.vertices.tobytes()))

    def __repr__(self):
        return f"Polyhedral(vertices={self.vertices.tolist()})"


class MaxOf(Space):
    """Pointwise maximum of scaled norms: ``max_i scale_i * norm_i(x)``."""

    def __init__(self, parts):
        parts = list(parts)
        if not parts:
            raise SpaceError("max_of needs at least one part")
        dims = {s.dim for _, s in parts}
        if len(dims) != 1:
            raise SpaceError(f"max_of parts have mixed dimensions {sorted(dims)}")
        for scale, _ in parts:
            if not (scale > 0) or not math.isfinite(scale):
                raise SpaceError(f"max_of scale must be > 0, got {scale}")
        self.parts = tuple((float(s), sp) for s, sp in parts)
        self.dim = dims.pop()

    def _norm(self, x):
        out = self.parts[0][0] * self.parts[0][1]._norm(x)
        for scale, sp in self.parts[1:]:
            out = np.maximum(out, scale * sp._norm(x))
        return out

    def norm2(self, a, b):
        return max(scale * sp.norm2(a, b) for scale, sp in self.parts)

    def __eq__(self, other):
        return isinstance(other, MaxOf) and self.parts == other.parts

    def __hash__(self):
        return hash(("max_of", self.parts))

    def __repr__(self):
        return f"MaxOf(parts={list(self.parts)})"


@dataclass(frozen=True, eq=False)
class UnitVector:
    """A vector certified to have norm 1 in a given space."""

    vec: np.ndarray
    space: Space

    def __post_init__(self):
        v = as_vector(self.vec, self.space.dim)
        v.setflags(write=False)
        object.__setattr__(self, "vec", v)
        if abs(self.space.norm(v) - 1.0) > UNIT_TOL:
            raise ValueError(f"vector {v.tolist()} is not unit: norm={self.space.norm(v)}")

    def __repr__(self):
        return f"UnitVector({self.vec.tolist()})"


def norm_eval(space: Space, x) -> float | np.ndarray:
    """Evaluate the norm of ``x`` (vectorized over leading axes)."""
    return space.norm(x)


def unit_vector(space: Space, direction) -> UnitVector:
    """Normalize a nonzero direction to the unit sphere of the space."""
    d = as_vector(direction, space.dim)
    n = space.norm(d)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return UnitVector(d / n, space)


def grid_angles(n_points: int) -> np.ndarray:
    """Angles 2*pi*k/n, k = 0..n-1."""
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    return 2.0 * np.pi * np.arange(n_points) / n_points


def directions_at(space: Space, angles) -> np.ndarray:
    """Unit vectors of the space in the directions (cos a, sin a).

    ``angles`` may be any array shape; output has one extra trailing axis.
    """
    if space.dim != 2:
        raise DimensionError("sphere parameterization is only supported in dimension 2")
    a = np.asarray(angles, dtype=float)
    d = np.stack([np.cos(a), np.sin(a)], axis=-1)
    return d / np.asarray(space.norm(d))[..., None]


def direction2(space: Space, theta: float) -> tuple[float, float]:
    """Scalar counterpart of :func:`directions_at` for one angle."""
    c, s = math.cos(theta), math.sin(theta)
    n = space.norm2(c, s)
    return c / n, s / n


def sphere_grid(space: Space, n_points: int) -> list[UnitVector]:
    """Deterministic grid on the unit sphere: normalized (cos, sin) at
    equally spaced angles.  Dimension 2 only."""
    dirs = directions_at(space, grid_angles(n_points))
    return [UnitVector(d, space) for d in dirs]
