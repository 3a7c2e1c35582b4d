"""Cluster coordinates y_k, z_k on C_V and their Laurent expansions.

Seeds are y1 = x1, y2 = x2, z1 = x1x2 − e0. The sequence obeys

    y_k y_{k+1} = z_k + e0
    z_{k-1} z_k = Q1(y_k) for odd k,  Q2(y_k) for even k

so from any adjacent pair (y_k, z_k) both neighbours are one division away.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DivisionFailure, ZeroDenominator
from ..numeric import BiLaurent, as_q, exact_divide, is_zero
from ..surfaces import V, ParamsV, SurfacePoint
from . import maps


def _q(P: ParamsV, k: int, t):
    return P.Q1(t) if k % 2 else P.Q2(t)


def _div(a, b, what):
    if is_zero(b):
        raise ZeroDenominator(f"{what} = 0 on the way to the requested index")
    return a / b


def cluster_values(point: SurfacePoint, lo: int, hi: int) -> dict:
    """All y_k, z_k with lo ≤ k ≤ hi, keyed ("y", k) / ("z", k)."""
    if point.family != V:
        raise ValueError("cluster coordinates live on C_V")
    P = point.params
    x1, x2, _ = point.x
    out = {("y", 1): x1, ("z", 1): x1 * x2 - P.e0}
    y, z = out[("y", 1)], out[("z", 1)]
    for k in range(1, hi):
        y = _div(P.P(z), y, f"y{k}")
        z = _div(_q(P, k + 1, y), z, f"z{k}")
        out[("y", k + 1)], out[("z", k + 1)] = y, z
    y, z = out[("y", 1)], out[("z", 1)]
    for k in range(1, lo, -1):
        z = _div(_q(P, k, y), z, f"z{k}")
        y = _div(P.P(z), y, f"y{k}")
        out[("y", k - 1)], out[("z", k - 1)] = y, z
    return {key: val for key, val in out.items() if lo <= key[1] <= hi}


def cluster_coord(k: int, point: SurfacePoint, kind: str = "y") -> Fraction:
    """Value of y_k (kind="y") or z_k (kind="z") at ``point``."""
    if kind not in ("y", "z"):
        raise ValueError("kind must be 'y' or 'z'")
    vals = cluster_values(point, min(k, 1), max(k, 1))
    return vals[(kind, k)]


def cluster_coord_polynomial(k: int, point: SurfacePoint, kind: str = "y") -> Fraction:
    """Same value read from the chart maps (g-powers and σ's, no division by y or z)."""
    if kind == "y":
        return maps.chart_p(k, point.x, point.params)[0]
    return maps.chart_p(k, point.x, point.params)[1]


def exchange_defects(vals: dict, P: ParamsV) -> list:
    """Residuals of every exchange relation available in ``vals`` (all zero when consistent)."""
    out = []
    for (kind, k), y in vals.items():
        if kind != "y":
            continue
        if ("y", k + 1) in vals and ("z", k) in vals:
            out.append(y * vals[("y", k + 1)] - P.P(vals[("z", k)]))
        if ("z", k - 1) in vals and ("z", k) in vals:
            out.append(vals[("z", k - 1)] * vals[("z", k)] - _q(P, k, y))
    return out


@dataclass(frozen=True)
class ClusterState:
    k: int
    y: BiLaurent
    z: BiLaurent
    params: ParamsV


@dataclass
class LaurentReport:
    states: list
    failed_at: int | None = None
    remainder: BiLaurent | None = None

    @property
    def ok(self) -> bool:
        return self.failed_at is None


def _bl_q(P: ParamsV, k: int, t: BiLaurent) -> BiLaurent:
    th1, th2, e0, th4 = P.theta
    a, b = (th1, th2) if k % 2 else (th2, th1)
    t2 = t * t
    return t2 * t2 - t2 * t * a + t2 * th4 - t * (e0 * b) + BiLaurent.const(e0 * e0)


def cluster_sequence_laurent(P: ParamsV, K: int) -> LaurentReport:
    """y_k, z_k for |k| ≤ K as Laurent polynomials in (u, v) = (y1, z1).

    Every step is an exact division; the first inexact one stops the run and
    is reported with its remainder. Exchange relations are re-checked as
    identities for every produced index.
    """
    u, v = BiLaurent.u(), BiLaurent.v()
    e0 = BiLaurent.const(P.e0)
    ys, zs = {1: u}, {1: v}
    try:
        for k in range(1, K):
            step = k + 1
            ys[k + 1] = exact_divide(zs[k] + e0, ys[k])
            zs[k + 1] = exact_divide(_bl_q(P, k + 1, ys[k + 1]), zs[k])
        for k in range(1, -K, -1):
            step = k - 1
            zs[k - 1] = exact_divide(_bl_q(P, k, ys[k]), zs[k])
            ys[k - 1] = exact_divide(zs[k - 1] + e0, ys[k])
    except DivisionFailure as exc:
        states = [ClusterState(k, ys[k], zs[k], P) for k in sorted(ys) if k in zs]
        return LaurentReport(states, step, exc.remainder)
    for k in range(-K, K):
        if ys[k] * ys[k + 1] != zs[k] + e0:
            raise AssertionError(f"y{k}·y{k + 1} = z{k} + e0 fails as a Laurent identity")
        if zs[k] * zs[k + 1] != _bl_q(P, k + 1, ys[k + 1]):
            raise AssertionError(f"z{k}·z{k + 1} = Q(y{k + 1}) fails as a Laurent identity")
    return LaurentReport([ClusterState(k, ys[k], zs[k], P) for k in range(-K, K + 1)])


def laurent_value(state: ClusterState, point: SurfacePoint, kind: str = "y") -> Fraction:
    """Evaluate a Laurent coordinate at the seeds (y1, z1) of ``point``."""
    y1, z1 = maps.p1(point.x, point.params)
    poly = state.y if kind == "y" else state.z
    return poly.evaluate(as_q(y1), as_q(z1))
