"""Verification engine and report plumbing.

Parses JSON space specifications, runs the full estimator battery for a
space/weight pair, evaluates every implemented inequality with a fixed
slack, and serializes reports and sweep tables deterministically.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .dw import Weights, dw_b, dw_b_direct, dw_direct, dw_general, psi_inf
from .moduli import eps0, james_direct, rect_constant, rho_prime0
from .spaces import Lp, MaxOf, Polyhedral, Space, SpaceError, XMu

__all__ = [
    "SpecError",
    "parse_space_spec",
    "space_to_spec",
    "Profile",
    "PROFILES",
    "Check",
    "VerificationReport",
    "run_verify",
    "SweepRow",
    "sweep_mu",
    "emit_report",
]


class SpecError(ValueError):
    """Malformed space specification; message carries the field path."""


def _require_keys(obj: dict, allowed: set[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise SpecError(f"{path}.{key}: unknown key")


def _real(value, path: str, minimum: float | None = None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(f"{path}: expected a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise SpecError(f"{path}: must be finite")
    if minimum is not None and v < minimum:
        raise SpecError(f"{path}: must be >= {minimum}, got {v}")
    return v


def _build_space(obj, path: str) -> Space:
    if not isinstance(obj, dict):
        raise SpecError(f"{path}: expected an object")
    kind = obj.get("type")
    if kind is None:
        raise SpecError(f"{path}.type: required")
    try:
        if kind == "lp":
            _require_keys(obj, {"type", "p", "dim"}, path)
            if "p" not in obj:
                raise SpecError(f"{path}.p: required")
            p = math.inf if obj["p"] == "inf" else _real(obj["p"], f"{path}.p")
            dim = obj.get("dim", 2)
            if isinstance(dim, bool) or not isinstance(dim, int):
                raise SpecError(f"{path}.dim: expected an integer")
            return Lp(p, dim)
        if kind == "xmu":
            _require_keys(obj, {"type", "mu"}, path)
            if "mu" not in obj:
                raise SpecError(f"{path}.mu: required")
            return XMu(_real(obj["mu"], f"{path}.mu"))
        if kind == "polyhedral":
            _require_keys(obj, {"type", "vertices"}, path)
            verts = obj.get("vertices")
            if not isinstance(verts, list) or not verts:
                raise SpecError(f"{path}.vertices: expected a non-empty array")
            rows = []
            for i, row in enumerate(verts):
                if not isinstance(row, list):
                    raise SpecError(f"{path}.vertices[{i}]: expected an array")
                rows.append(
                    [_real(c, f"{path}.vertices[{i}][{j}]") for j, c in enumerate(row)]
                )
            if len({len(r) for r in rows}) != 1:
                raise SpecError(f"{path}.vertices: rows have mixed lengths")
            return Polyhedral(rows)
        if kind == "max_of":
            _require_keys(obj, {"type", "parts"}, path)
            parts = obj.get("parts")
            if not isinstance(parts, list) or not parts:
                raise SpecError(f"{path}.parts: expected a non-empty array")
            built = []
            for i, part in enumerate(parts):
                ppath = f"{path}.parts[{i}]"
                if not isinstance(part, dict):
                    raise SpecError(f"{ppath}: expected an object")
                _require_keys(part, {"scale", "space"}, ppath)
                if "scale" not in part or "space" not in part:
                    raise SpecError(f"{ppath}: requires 'scale' and 'space'")
                scale = _real(part["scale"], f"{ppath}.scale")
                built.append((scale, _build_space(part["space"], f"{ppath}.space")))
            return MaxOf(built)
    except SpaceError as exc:
        raise SpecError(f"{path}: {exc}") from None
    raise SpecError(f"{path}.type: unknown space type {kind!r}")


def parse_space_spec(text: str) -> Space:
    """Build a space from its JSON description.

    Accepted forms: ``{"type":"lp","p":<number|"inf">,"dim":<int>}``,
    ``{"type":"xmu","mu":<number>}``, ``{"type":"polyhedral","vertices":
    [[..],..]}``, ``{"type":"max_of","parts":[{"scale":..,"space":..}]}``.
    Unknown types or keys are rejected; errors name the offending field.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from None
    return _build_space(obj, "$")


def space_to_spec(space: Space) -> dict:
    """Inverse of :func:`parse_space_spec` (for echoing in reports)."""
    if isinstance(space, Lp):
        p = "inf" if math.isinf(space.p) else space.p
        return {"type": "lp", "p": p, "dim": space.dim}
    if isinstance(space, XMu):
        return {"type": "xmu", "mu": space.mu}
    if isinstance(space, Polyhedral):
        return {"type": "polyhedral", "vertices": space.vertices.tolist()}
    if isinstance(space, MaxOf):
        return {
            "type": "max_of",
            "parts": [
                {"scale": s, "space": space_to_spec(sp)} for s, sp in space.parts
            ],
        }
    raise TypeError(f"unsupported space {type(space).__name__}")


@dataclass(frozen=True)
class Profile:
    n_grid: int
    s_points: int
    slack: float


PROFILES = {
    "fast": Profile(n_grid=256, s_points=64, slack=0.03),
    "thorough": Profile(n_grid=1024, s_points=64, slack=0.02),
}


@dataclass(frozen=True)
class Check:
    """One verified inequality: lhs <relation> rhs, within slack."""

    name: str
    lhs: float
    relation: str  # "<=" | ">="
    rhs: float
    slack: float
    passed: bool
    refs: str


@dataclass(frozen=True)
class VerificationReport:
    space: dict
    weights: Weights
    checks: list[Check]
    all_pass: bool


@dataclass(frozen=True)
class SweepRow:
    mu: float
    lower_bound: float
    estimate: float
    upper_bound: float

    def __post_init__(self):
        if self.lower_bound > self.upper_bound + 1e-9:
            raise ValueError(
                f"inconsistent sweep bounds at mu={self.mu}: "
                f"{self.lower_bound} > {self.upper_bound}"
            )


def _max_workers() -> int:
    raw = os.environ.get("BANACH_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"BANACH_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"BANACH_THREADS must be >= 1, got {n}")
    return n


def _check(name, lhs, relation, rhs, slack, refs) -> Check:
    if relation == "<=":
        ok = lhs <= rhs + slack
    elif relation == ">=":
        ok = lhs >= rhs - slack
    else:
        raise ValueError(f"bad relation {relation!r}")
    return Check(name, float(lhs), relation, float(rhs), slack, ok, refs)


def run_verify(
    space: Space, w: Weights, profile: str = "fast"
) -> VerificationReport:
    """Compute the estimator battery and evaluate every implemented bound.

    Failing checks never abort the run; the report always contains the
    whole battery, in a fixed order.  Estimators may be evaluated
    concurrently (capped by the BANACH_THREADS environment variable), but
    the report content does not depend on scheduling.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    prof = PROFILES[profile]
    n, sp_, sl = prof.n_grid, prof.s_points, prof.slack

    tasks = {
        "dw-t-form": lambda: dw_general(space, w, n).estimate.value,
        "dw-direct": lambda: dw_direct(space, w, n, sp_).estimate.value,
        "dwb-t-form": lambda: dw_b(space, w, n).estimate.value,
        "dwb-direct": lambda: dw_b_direct(space, w, n, sp_).estimate.value,
        "psi-inf": lambda: psi_inf(space, n, sp_).estimate.value,
        "eps0": lambda: eps0(space, n).value,
        "james": lambda: james_direct(space, n).value,
        "rho-prime0": lambda: rho_prime0(space, n).value,
        "rectangular": lambda: rect_constant(space, n, sp_).value,
    }

    def run_task(item):
        name, fn = item
        try:
            return name, fn()
        except Exception as exc:
            raise RuntimeError(f"estimator '{name}' failed: {exc}") from exc

    workers = _max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = dict(pool.map(run_task, tasks.items()))
    else:
        values = dict(map(run_task, tasks.items()))

    a, b = w.alpha, w.beta
    ab = a + b
    dw_t = values["dw-t-form"]
    dwb_t = values["dwb-t-form"]
    checks = [
        _check("dw-lower-weight-sum", dw_t, ">=", ab, sl,
               "DW is at least alpha+beta (witness y = -x)"),
        _check("dw-upper-doubled-sum", dw_t, "<=", 2.0 * ab, sl,
               "DW is at most 2(alpha+beta)"),
        _check("dw-lower-convexity", dw_t, ">=",
               ab * max(values["eps0"], 1.0), sl,
               "DW >= (alpha+beta) max{eps0, 1} via the convexity characteristic"),
        _check("dw-upper-james", dw_t, "<=",
               ab * (1.0 + 0.5 * values["james"]), sl,
               "DW <= (alpha+beta)(1 + J/2) via the James constant"),
        _check("dw-lower-smoothness", dw_t, ">=",
               ab * max(2.0 * values["rho-prime0"], 1.0), sl,
               "DW >= (alpha+beta) max{2 rho'(0), 1} via the smoothness characteristic"),
        _check("dwb-lower-weight-sum", dwb_t, ">=", ab, sl,
               "Birkhoff-restricted DW is at least alpha+beta"),
        _check("dwb-upper-weighted-max", dwb_t, "<=",
               max(2.0 * a + b, a + 2.0 * b), sl,
               "Birkhoff-restricted DW is at most max{2a+b, a+2b}"),
        _check("dwb-lower-rectangular", dwb_t, ">=",
               min(a, b) * values["rectangular"], sl,
               "min{a,b} mu(X) <= DW_B via the rectangular constant"),
        _check("dwb-upper-rectangular", dwb_t, "<=",
               2.0 * max(a, b) * values["rectangular"], sl,
               "DW_B <= 2 max{a,b} mu(X) via the rectangular constant"),
        _check("dw-cross-agreement", abs(dw_t - values["dw-direct"]), "<=",
               0.0, sl,
               "t-form and direct-definition DW estimators agree"),
        _check("dwb-cross-agreement", abs(dwb_t - values["dwb-direct"]), "<=",
               0.0, sl,
               "t-form and direct-definition DW_B estimators agree"),
        _check("psi-inf-universal", abs(values["psi-inf"] - 2.0), "<=", 0.0, sl,
               "the unconstrained max-weight constant equals 2 in every space"),
        _check("dwb-below-dw", dwb_t, "<=", dw_t, sl,
               "constrained supremum cannot exceed the unconstrained one"),
    ]
    return VerificationReport(
        space=space_to_spec(space),
        weights=w,
        checks=checks,
        all_pass=all(c.passed for c in checks),
    )


_SQRT2 = math.sqrt(2.0)


def sweep_mu(mu_values, w: Weights, profile: str = "fast") -> list[SweepRow]:
    """DW estimates with analytic bounds across the X_mu family.

    Per row: lower = max{alpha+beta, 2(alpha+beta) sqrt(mu^2 - 1)} (the
    general lower bound beats the mu-specific one near mu = 1), upper =
    (alpha+beta) + (alpha+beta)/2 * min{2, mu sqrt(2)} (the James constant
    of X_mu is min{2, mu sqrt 2} restricted to this range).
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    prof = PROFILES[profile]
    ab = w.alpha + w.beta
    rows = []
    for mu in mu_values:
        mu = float(mu)
        if not (1.0 - 1e-12 <= mu <= _SQRT2 + 1e-12):
            raise ValueError(f"mu must lie in [1, sqrt(2)], got {mu}")
        mu_c = min(max(mu, 1.0), _SQRT2)
        est = dw_general(XMu(mu_c), w, prof.n_grid).estimate.value
        lower = max(ab, 2.0 * ab * math.sqrt(max(mu_c * mu_c - 1.0, 0.0)))
        upper = ab + 0.5 * ab * min(2.0, mu_c * _SQRT2)
        rows.append(SweepRow(mu, lower, est, upper))
    return rows


# ---------------------------------------------------------------------------
# serialization


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _fmt12(x: float) -> str:
    return f"{x:.12g}"


def _check_payload(c: Check) -> dict:
    return {
        "name": c.name,
        "lhs": _round12(c.lhs),
        "relation": c.relation,
        "rhs": _round12(c.rhs),
        "slack": _round12(c.slack),
        "pass": c.passed,
        "refs": c.refs,
    }


def emit_report(report, format: str = "json") -> str:
    """Serialize a VerificationReport or a list of SweepRow.

    Output is deterministic: fixed key order, reals at 12 significant
    digits, newline-terminated lines.
    """
    if format not in ("json", "csv"):
        raise ValueError(f"unknown format {format!r}")
    if isinstance(report, VerificationReport):
        if format == "json":
            payload = {
                "space": report.space,
                "weights": {
                    "alpha": _round12(report.weights.alpha),
                    "beta": _round12(report.weights.beta),
                },
                "checks": [_check_payload(c) for c in report.checks],
                "all_pass": report.all_pass,
            }
            return json.dumps(payload, indent=2) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "lhs", "relation", "rhs", "slack", "pass", "refs"])
        for c in report.checks:
            writer.writerow(
                [c.name, _fmt12(c.lhs), c.relation, _fmt12(c.rhs),
                 _fmt12(c.slack), str(c.passed).lower(), c.refs]
            )
        return buf.getvalue()
    if isinstance(report, list) and all(isinstance(r, SweepRow) for r in report):
        if format == "json":
            payload = [
                {
                    "mu": _round12(r.mu),
                    "lower_bound": _round12(r.lower_bound),
                    "estimate": _round12(r.estimate),
                    "upper_bound": _round12(r.upper_bound),
                }
                for r in report
            ]
            return json.dumps(payload, indent=2) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["mu", "lower_bound", "estimate", "upper_bound"])
        for r in report:
            writer.writerow(
                [_fmt12(r.mu), _fmt12(r.lower_bound), _fmt12(r.estimate),
                 _fmt12(r.upper_bound)]
            )
        return buf.getvalue()
    raise TypeError("report must be a VerificationReport or a list of SweepRow")
