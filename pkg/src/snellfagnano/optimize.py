"""Brute-force weighted-perimeter minimizer over inscribed triangles.

Deliberately independent of the erected-triangle construction: a dense
grid over the three side parameters followed by cyclic coordinate descent
(golden-section per axis; the objective is convex in each parameter
separately, being a sum of two point-to-moving-point distances).  Used as
the oracle the geometric construction is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .construction import Weights
from .geometry import (InscribedTriangle, Triangle, dist,
                       inscribed_from_params, signed_area)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MinimizeReport:
    """Best inscribed triangle found, with convergence diagnostics.

    flatness is |area(best)| / area(reference); values below ~1e-3 indicate
    the minimizer has collapsed onto a doubled segment.
    """

    best: InscribedTriangle
    cost: float
    iterations: int
    converged: bool
    flatness: float


def weighted_perimeter(it: InscribedTriangle, w: Weights) -> float:
    """lam_A |pB pC| + lam_B |pC pA| + lam_C |pA pB|."""
    d1, d2, d3 = it.chord_lengths()
    return w.lam_A * d1 + w.lam_B * d2 + w.lam_C * d3


def _golden_1d(g, lo: float, hi: float, tol: float = 1e-13) -> float:
    u1 = hi - _INVPHI * (hi - lo)
    u2 = lo + _INVPHI * (hi - lo)
    f1, f2 = g(u1), g(u2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, u2, f2 = u2, u1, f1
            u1 = hi - _INVPHI * (hi - lo)
            f1 = g(u1)
        else:
            lo, u1, f1 = u1, u2, f2
            u2 = lo + _INVPHI * (hi - lo)
            f2 = g(u2)
    return 0.5 * (lo + hi)


def _descend(f, start, refine_iters: int):
    """Cyclic per-axis golden section with a Powell-style acceleration step.

    Plain coordinate descent zigzags down narrow diagonal valleys with cost
    improvements that vanish long before the minimum; the extra line search
    along each sweep's net displacement collapses exactly that mode, after
    which a stalling cost genuinely means a minimum.
    """
    params = list(start)
    prev = f(params)
    iterations = 0
    converged = False
    for sweep in range(refine_iters):
        iterations = sweep + 1
        old = list(params)
        for axis in range(3):
            q = list(params)

            def on_axis(u, q=q, axis=axis):
                q[axis] = u
                return f(q)

            params[axis] = _golden_1d(on_axis, 0.0, 1.0)
        d = [params[i] - old[i] for i in range(3)]
        scale = max(abs(v) for v in d)
        if scale > 1e-15:
            # largest multiple of the sweep displacement staying in the cube
            u_max = 8.0
            for v, o in zip(d, old):
                if v > 0:
                    u_max = min(u_max, (1.0 - o) / v)
                elif v < 0:
                    u_max = min(u_max, -o / v)

            def along(u):
                return f([min(1.0, max(0.0, o + u * v))
                          for o, v in zip(old, d)])

            u_star = _golden_1d(along, 0.0, u_max, tol=1e-13 * u_max)
            if along(u_star) < f(params):
                params = [min(1.0, max(0.0, o + u_star * v))
                          for o, v in zip(old, d)]
        cur = f(params)
        if prev - cur <= 1e-13 * max(1.0, abs(cur)):
            converged = True
            break
        prev = cur
    return params, f(params), iterations, converged


def _gradient(t: Triangle, w: Weights, p):
    """Exact derivatives of the weighted perimeter in the side parameters."""
    it = inscribed_from_params(t, *p)
    sa = t.vC - t.vB
    sb = t.vA - t.vC
    sc = t.vB - t.vA
    d1 = dist(it.pB, it.pC)
    d2 = dist(it.pC, it.pA)
    d3 = dist(it.pA, it.pB)
    if min(d1, d2, d3) < 1e-14:
        return None
    e1 = (it.pB - it.pC) * (1.0 / d1)
    e2 = (it.pC - it.pA) * (1.0 / d2)
    e3 = (it.pA - it.pB) * (1.0 / d3)
    return (
        (w.lam_B * (-e2.dot(sa)) + w.lam_C * e3.dot(sa)),
        (w.lam_C * (-e3.dot(sb)) + w.lam_A * e1.dot(sb)),
        (w.lam_A * (-e1.dot(sc)) + w.lam_B * e2.dot(sc)),
    )


def _polish_newton(t: Triangle, w: Weights, params, f):
    """Drive the free components of the gradient to zero.

    Value-only searches leave the position sqrt(eps)-fuzzy along soft valley
    directions; Newton on the exact stationarity system recovers machine
    precision.  Components pinned at 0/1 with an outward-pushing gradient
    stay fixed; a step that leaves the cube or raises the cost is rejected.
    """
    p = list(params)
    gscale = (w.lam_A + w.lam_B + w.lam_C) * t.diameter
    for _ in range(40):
        g = _gradient(t, w, p)
        if g is None:
            return params
        free = [i for i in range(3)
                if not (p[i] < 1e-9 and g[i] > 0)
                and not (p[i] > 1.0 - 1e-9 and g[i] < 0)]
        if not free or max(abs(g[i]) for i in free) <= 1e-14 * gscale:
            break
        h = 1e-7
        jac = np.empty((len(free), len(free)))
        for col, j in enumerate(free):
            q_hi, q_lo = list(p), list(p)
            q_hi[j] += h
            q_lo[j] -= h
            g_hi = _gradient(t, w, q_hi)
            g_lo = _gradient(t, w, q_lo)
            if g_hi is None or g_lo is None:
                return p
            for row, i in enumerate(free):
                jac[row, col] = (g_hi[i] - g_lo[i]) / (2.0 * h)
        try:
            step = np.linalg.solve(jac, [-g[i] for i in free])
        except np.linalg.LinAlgError:
            break
        trial = list(p)
        for s, i in zip(step, free):
            trial[i] = min(1.0, max(0.0, trial[i] + float(s)))
        if f(trial) > f(p) + 1e-9 * max(1.0, abs(f(p))):
            break
        p = trial
    return p if f(p) <= f(params) else list(params)


def _scan_seeds(t: Triangle, w: Weights, axes, count: int,
                min_separation: int = 4):
    """Best well-separated cells of a dense scan over the given axis grids."""
    ax, ay = np.array(t.vA)
    bx, by = np.array(t.vB)
    cx, cy = np.array(t.vC)
    # Foot coordinates per parameter value, one array per side.
    pax, pay = bx + axes[0] * (cx - bx), by + axes[0] * (cy - by)
    pbx, pby = cx + axes[1] * (ax - cx), cy + axes[1] * (ay - cy)
    pcx, pcy = ax + axes[2] * (bx - ax), ay + axes[2] * (by - ay)
    # Chord-length tables: D1[j,k] = |pB(j) pC(k)| and so on.
    d1 = np.hypot(pbx[:, None] - pcx[None, :], pby[:, None] - pcy[None, :])
    d2 = np.hypot(pcx[:, None] - pax[None, :], pcy[:, None] - pay[None, :])
    d3 = np.hypot(pax[:, None] - pbx[None, :], pay[:, None] - pby[None, :])
    cost = (w.lam_A * d1[None, :, :]
            + w.lam_B * d2.T[:, None, :]
            + w.lam_C * d3[:, :, None])
    order = np.argsort(cost.ravel())
    cells = []
    for idx in order[:4000]:
        cell = np.unravel_index(int(idx), cost.shape)
        if all(max(abs(cell[n] - c[n]) for n in range(3)) >= min_separation
               for c in cells):
            cells.append(cell)
        if len(cells) >= max(1, count):
            break
    return [[float(axes[n][cell[n]]) for n in range(3)] for cell in cells]


def minimize_inscribed(t: Triangle, w: Weights, grid: int = 64,
                       refine_iters: int = 200,
                       seeds: int = 4, zoom_levels: int = 2) -> MinimizeReport:
    """Multiscale grid scan plus accelerated coordinate descent.

    Multiple well-separated seeds from the full-cube scan guard against
    picking the wrong basin when an interior orbit competes with boundary
    configurations (feet at vertices, doubled altitudes).  The scan is then
    repeated in a shrinking window around the incumbent: minima hugging the
    parameter-cube boundary at scales below the global grid resolution sit
    next to collapsed-chord corner configurations whose conical cusp traps
    plain descent, and only a finer local scan separates the two.  A final
    Newton solve of the exact stationarity system sharpens the position
    past the noise floor of value-only search.
    """
    if grid < 16:
        raise ValueError("grid resolution below 16 is unreliable")
    ts = np.linspace(0.0, 1.0, grid)

    def f(p) -> float:
        return weighted_perimeter(inscribed_from_params(t, *p), w)

    best_params = None
    best_cost = math.inf
    iterations = 0
    converged = False
    for start in _scan_seeds(t, w, (ts, ts, ts), seeds):
        p, c, its, conv = _descend(f, start, refine_iters)
        iterations += its
        if c < best_cost:
            best_params, best_cost, converged = p, c, conv

    half = 2.0 / grid
    for _ in range(max(0, zoom_levels)):
        axes = tuple(
            np.linspace(max(0.0, best_params[n] - half),
                        min(1.0, best_params[n] + half), grid)
            for n in range(3))
        for start in _scan_seeds(t, w, axes, 2):
            p, c, its, conv = _descend(f, start, refine_iters)
            iterations += its
            if c < best_cost:
                best_params, best_cost, converged = p, c, conv
        half *= 4.0 / grid

    best_params = _polish_newton(t, w, best_params, f)
    best = inscribed_from_params(t, *best_params)
    area = abs(signed_area(best.pA, best.pB, best.pC))
    return MinimizeReport(best=best, cost=weighted_perimeter(best, w),
                          iterations=iterations, converged=converged,
                          flatness=area / t.area)
