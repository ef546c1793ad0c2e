"""Erected similar triangles, their concurrent cevians, and the orbit point.

Given positive weights (lam_A, lam_B, lam_C), erect on each side of the
reference triangle, outward, a triangle similar to the scaled "tilde"
triangle of side lengths (lam_A*a, lam_B*b, lam_C*c).  The three cevians
joining each vertex to the opposite apex are concurrent; when their meeting
point lies strictly inside and its perpendicular feet land strictly inside
the sides, its pedal triangle is the closed 3-bounce refractive billiard
orbit and the minimizer of the weighted chord-length sum.  When the angle
conditions fail outright the minimizer collapses onto a doubled altitude.

The in-between regime exists only for obtuse triangles: the point can be
interior while one pedal foot falls beyond a side endpoint, in which case
there is no closed orbit and the constrained minimizer sits on the
boundary of the inscribed-triangle parameter cube.  orbit_in_sides on the
result distinguishes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from . import coordinates
from .apollonius import TildeTriangle, tilde_triangle
from .geometry import (GeometryError, InscribedTriangle, Point2, Triangle,
                       altitudes, dist, inscribed_from_params, intersect_lines,
                       line_parameter, pedal_triangle, rotate)

STATUS_INTERIOR = "interior"
STATUS_DEGENERATE = "degenerate"
STATUS_NO_TILDE = "no_tilde_triangle"

# Strictness margin for the angle-sum interior tests.
EPS_ANGLE = 1e-10

# Relative tolerance for the cevian concurrency standing assertion.
EPS_CONCURRENCY = 1e-9


class TildeDegenerate(GeometryError):
    """The scaled side triple does not form a triangle."""


class ConcurrencyViolation(GeometryError):
    """The third cevian missed the intersection of the first two (a bug)."""


@dataclass(frozen=True)
class Weights:
    """Stiffness triple: lam_A weights the chord opposite vertex A."""

    lam_A: float
    lam_B: float
    lam_C: float

    def __post_init__(self):
        if min(self.lam_A, self.lam_B, self.lam_C) <= 0.0:
            raise ValueError("weights must be strictly positive")

    @property
    def triple(self):
        return (self.lam_A, self.lam_B, self.lam_C)


@dataclass(frozen=True)
class RefractionCoeffs:
    """Per-side sine ratios; their product is 1 by construction."""

    kap_a: float
    kap_b: float
    kap_c: float

    def __post_init__(self):
        if min(self.kap_a, self.kap_b, self.kap_c) <= 0.0:
            raise ValueError("coefficients must be strictly positive")
        prod = self.kap_a * self.kap_b * self.kap_c
        if abs(prod - 1.0) > 1e-9:
            raise ValueError(f"coefficient product must be 1, got {prod!r}")

    @property
    def triple(self):
        return (self.kap_a, self.kap_b, self.kap_c)


def coeffs_from_weights(w: Weights) -> RefractionCoeffs:
    """kap_a = lam_B/lam_C, kap_b = lam_C/lam_A, kap_c = lam_A/lam_B."""
    return RefractionCoeffs(w.lam_B / w.lam_C,
                            w.lam_C / w.lam_A,
                            w.lam_A / w.lam_B)


@dataclass(frozen=True)
class SnellOrbitResult:
    """Outcome of the orbit construction for one (triangle, weights) pair.

    status is "interior" (point valid), "degenerate" (minimizer collapses
    onto a doubled altitude) or "no_tilde_triangle" (the scaled side triple
    does not close up; also degenerate).  The doubled-altitude fallback
    fills orbit/weighted_perimeter in the last two cases, with both the
    weighted and the plain altitude ranking reported in degenerate_info.

    orbit_in_sides qualifies the interior case: True when every pedal foot
    lies strictly inside its side, so the orbit is a genuine closed billiard
    path.  False means the point is interior but one foot projects beyond a
    side endpoint (possible only for obtuse triangles); weighted_perimeter
    then prices chords to the side *lines* and undercuts the constrained
    minimum, which brute_force_cost reports instead.
    """

    status: str
    weighted_perimeter: float
    point: Optional[Point2] = None
    orbit: Optional[InscribedTriangle] = None
    erected: Optional[Tuple[Point2, Point2, Point2]] = None
    conditions: Optional[Tuple[bool, bool, bool]] = None
    orbit_in_sides: Optional[bool] = None
    degenerate_info: Optional[Dict[str, object]] = None
    brute_force_cost: Optional[float] = None


def erect_similar(t: Triangle, tt: TildeTriangle) -> Tuple[Point2, Point2, Point2]:
    """Apex points of the outward erected triangles, one per side.

    On side a the erected triangle has the second tilde angle at B and the
    third at C, so the apex A1 carries the first; the law of sines then
    gives d(B, A1) = a * sin(gamma~) / sin(alpha~) = c * lam_C / lam_A.
    Outward placement uses clockwise rotation of the side direction, valid
    because the reference triangle is counterclockwise.
    """
    if not tt.exists:
        raise TildeDegenerate("scaled side triple fails the triangle inequality")
    at, bt, gt = tt.angles
    sa, sb, sg = math.sin(at), math.sin(bt), math.sin(gt)
    uA = (t.vC - t.vB) * (1.0 / t.a)
    uB = (t.vA - t.vC) * (1.0 / t.b)
    uC = (t.vB - t.vA) * (1.0 / t.c)
    a1 = t.vB + (t.a * sg / sa) * rotate(uA, -bt)
    b1 = t.vC + (t.b * sa / sb) * rotate(uB, -gt)
    c1 = t.vA + (t.c * sb / sg) * rotate(uC, -at)
    return a1, b1, c1


def interior_conditions(t: Triangle, tt: TildeTriangle,
                        eps_angle: float = EPS_ANGLE) -> Tuple[bool, bool, bool]:
    """Strict tests angle + tilde-angle < pi, one per vertex."""
    if not tt.exists:
        raise TildeDegenerate("scaled side triple fails the triangle inequality")
    at, bt, gt = tt.angles
    return (t.alpha + at < math.pi - eps_angle,
            t.beta + bt < math.pi - eps_angle,
            t.gamma + gt < math.pi - eps_angle)


def _dist_to_line(p: Point2, q1: Point2, q2: Point2) -> float:
    d = (q2 - q1).unit()
    return abs(d.cross(p - q1))


def _weighted_cost(it: InscribedTriangle, w: Weights) -> float:
    d1, d2, d3 = it.chord_lengths()
    return w.lam_A * d1 + w.lam_B * d2 + w.lam_C * d3


def snell_fagnano_point(t: Triangle, w: Weights,
                        concurrency_tol: float = EPS_CONCURRENCY,
                        eps_angle: float = EPS_ANGLE,
                        include_brute_force: bool = True) -> SnellOrbitResult:
    """Construct the orbit point, or the degenerate fallback.

    The interior test is performed twice (angle sums and barycentric
    positivity); a disagreement away from the common boundary is treated as
    a convention bug and raises AssertionError.
    """
    tt = tilde_triangle(t, w)
    if not tt.exists:
        return _degenerate_result(t, w, STATUS_NO_TILDE,
                                  include_brute_force=include_brute_force)

    a1, b1, c1 = erect_similar(t, tt)
    f = intersect_lines(t.vA, a1, t.vB, b1)
    conds = interior_conditions(t, tt, eps_angle=eps_angle)
    if f is not None:
        miss = _dist_to_line(f, t.vC, c1)
        if miss > concurrency_tol * t.diameter:
            raise ConcurrencyViolation(
                f"third cevian misses by {miss:g} (diameter {t.diameter:g})")

    angle_interior = all(conds)
    if f is None:
        bary_interior = False
        bary_margin = 0.0
    else:
        bary = coordinates.to_barycentric(f, t)
        bary_interior = min(bary) > 0.0
        bary_margin = min(bary)
    if angle_interior != bary_interior:
        at, bt, gt = tt.angles
        angle_margin = min(math.pi - (t.alpha + at), math.pi - (t.beta + bt),
                           math.pi - (t.gamma + gt))
        assert min(abs(angle_margin), abs(bary_margin)) < 1e-8, (
            "interior tests disagree away from the boundary: "
            f"angle margin {angle_margin:g}, barycentric margin {bary_margin:g}")
        angle_interior = False  # boundary case: classify as degenerate

    if angle_interior:
        orbit = pedal_triangle(f, t)
        in_sides = all(0.0 < p < 1.0 for p in (orbit.tA, orbit.tB, orbit.tC))
        brute = None
        if not in_sides and include_brute_force:
            from . import optimize
            brute = optimize.minimize_inscribed(t, w).cost
        return SnellOrbitResult(status=STATUS_INTERIOR,
                                weighted_perimeter=_weighted_cost(orbit, w),
                                point=f, orbit=orbit, erected=(a1, b1, c1),
                                conditions=conds, orbit_in_sides=in_sides,
                                brute_force_cost=brute)
    return _degenerate_result(t, w, STATUS_DEGENERATE, point=f,
                              erected=(a1, b1, c1), conditions=conds,
                              include_brute_force=include_brute_force)


def cevian_ratio(t: Triangle, w: Weights, tt: TildeTriangle,
                 agreement_tol: float = 1e-9) -> Tuple[float, float, float]:
    """Directed foot ratios of the three cevians, by closed form.

    Each closed-form value (e.g. lam_B b^2 sin(gamma+gamma~) /
    (lam_C c^2 sin(beta+beta~)) for the cevian from A) is checked against
    the geometric ratio measured at the actual cevian foot; their product
    telescopes to exactly 1.
    """
    if not tt.exists:
        raise TildeDegenerate("scaled side triple fails the triangle inequality")
    at, bt, gt = tt.angles
    sA = math.sin(t.alpha + at)
    sB = math.sin(t.beta + bt)
    sC = math.sin(t.gamma + gt)
    lam = w.triple
    closed = (lam[1] * t.b ** 2 * sC / (lam[2] * t.c ** 2 * sB),
              lam[2] * t.c ** 2 * sA / (lam[0] * t.a ** 2 * sC),
              lam[0] * t.a ** 2 * sB / (lam[1] * t.b ** 2 * sA))
    a1, b1, c1 = erect_similar(t, tt)
    cev = ((t.vA, a1, t.vB, t.vC), (t.vB, b1, t.vC, t.vA), (t.vC, c1, t.vA, t.vB))
    for value, (v, apex, e1, e2) in zip(closed, cev):
        foot = intersect_lines(v, apex, e1, e2)
        if foot is None:
            continue
        geom = dist(e2, foot) / dist(e1, foot)
        assert abs(geom - abs(value)) <= agreement_tol * max(geom, abs(value)), (
            f"closed-form cevian ratio {value:g} disagrees with measured {geom:g}")
    return closed


def _sin_at(v: Point2, p: Point2, q: Point2) -> float:
    """Sine of the (unsigned) angle at v between rays v->p and v->q."""
    u1 = p - v
    u2 = q - v
    return abs(u1.cross(u2)) / (u1.norm() * u2.norm())


def verify_snell_point(f: Point2, t: Triangle, k: RefractionCoeffs,
                       eps: float = 1e-12) -> Tuple[float, float, float]:
    """Residuals of the three sine-ratio characterizations of the point.

    For the true orbit point: sin(FCA)/sin(FBA) = kap_a, sin(FAB)/sin(FCB)
    = kap_b and sin(FBC)/sin(FAC) = kap_c, all residuals vanishing.
    """
    f = Point2(*f)
    tl = coordinates.barycentric_to_trilinear(coordinates.to_barycentric(f, t), t)
    if min(abs(tl[0]), abs(tl[1]), abs(tl[2])) < eps * max(map(abs, tl)):
        raise coordinates.OnSideLine("sine ratios are undefined on the side lines")
    r_a = _sin_at(t.vC, f, t.vA) / _sin_at(t.vB, f, t.vA)
    r_b = _sin_at(t.vA, f, t.vB) / _sin_at(t.vC, f, t.vB)
    r_c = _sin_at(t.vB, f, t.vC) / _sin_at(t.vA, f, t.vC)
    return (abs(r_a - k.kap_a), abs(r_b - k.kap_b), abs(r_c - k.kap_c))


def eta_concurrency_test(it: InscribedTriangle, t: Triangle,
                         tol: float = 1e-9):
    """Sine-ratio concurrency test for the side-normals at the feet.

    eta_a is the ratio of the sines the two chords at the foot on side a
    make with that side's normal (chord toward the next-letter foot on
    top).  The normals are concurrent iff the product of the three etas is
    1; the product test and a direct three-line intersection test are both
    run and must agree for a True verdict.
    """
    normals = ((t.vC - t.vB).unit().perp(),
               (t.vA - t.vC).unit().perp(),
               (t.vB - t.vA).unit().perp())
    feet = it.points
    nxt = (it.pB, it.pC, it.pA)   # chord to the next letter
    prv = (it.pC, it.pA, it.pB)   # chord to the previous letter
    etas = []
    for n, foot, to_next, to_prev in zip(normals, feet, nxt, prv):
        s1 = _sin_against(n, to_next - foot)
        s2 = _sin_against(n, to_prev - foot)
        etas.append(s1 / s2)
    product = etas[0] * etas[1] * etas[2]
    q = intersect_lines(feet[0], feet[0] + normals[0],
                        feet[1], feet[1] + normals[1])
    direct = (q is not None and
              _dist_to_line(q, feet[2], feet[2] + normals[2]) <= tol * t.diameter)
    concurrent = abs(product - 1.0) < tol and direct
    return tuple(etas), concurrent


def _sin_against(n: Point2, v: Point2) -> float:
    return abs(n.cross(v)) / v.norm()


def degenerate_minimizer(t: Triangle, w: Weights,
                         include_brute_force: bool = True) -> SnellOrbitResult:
    """Doubled-altitude fallback when no interior orbit point exists.

    The degenerate inscribed triangle for the altitude from A has one
    vertex at the foot and the other two collapsed onto A itself, costing
    (lam_B + lam_C) times the altitude length; candidates from B and C are
    cyclic.  The weighted argmin is returned; both the weighted ranking and
    the plain shortest-altitude ranking are reported since they may differ
    for lopsided weights.

    The candidates are priced on the side lines.  In an obtuse triangle
    two altitude feet fall outside their segments; if the weights favour
    one of those vertices, no inscribed triangle can reach the returned
    cost, and the true segment-constrained minimizer is a non-flat path
    through a vertex (compare with the brute-force cost, which always
    respects the segments).
    """
    return _degenerate_result(t, w, STATUS_DEGENERATE,
                              include_brute_force=include_brute_force)


def _degenerate_result(t: Triangle, w: Weights, status: str,
                       point: Optional[Point2] = None,
                       erected=None, conditions=None,
                       include_brute_force: bool = True) -> SnellOrbitResult:
    (fA, hA), (fB, hB), (fC, hC) = altitudes(t)
    cands = {
        "A": (inscribed_from_params(t, line_parameter(fA, t.vB, t.vC), 1.0, 0.0),
              (w.lam_B + w.lam_C) * hA),
        "B": (inscribed_from_params(t, 0.0, line_parameter(fB, t.vC, t.vA), 1.0),
              (w.lam_C + w.lam_A) * hB),
        "C": (inscribed_from_params(t, 1.0, 0.0, line_parameter(fC, t.vA, t.vB)),
              (w.lam_A + w.lam_B) * hC),
    }
    heights = {"A": hA, "B": hB, "C": hC}
    best = min(cands, key=lambda v: cands[v][1])
    orbit, cost = cands[best]
    info: Dict[str, object] = {
        "weighted_costs": {v: cands[v][1] for v in "ABC"},
        "altitude_lengths": heights,
        "weighted_argmin": best,
        "shortest_altitude": min(heights, key=heights.get),
    }
    brute = None
    if include_brute_force:
        from . import optimize
        brute = optimize.minimize_inscribed(t, w).cost
    return SnellOrbitResult(status=status, weighted_perimeter=cost,
                            point=point, orbit=orbit, erected=erected,
                            conditions=conditions, degenerate_info=info,
                            brute_force_cost=brute)
