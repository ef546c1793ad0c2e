"""`sf` command line: compute, convert, simulate, minimize, solve, render.

Job specs are JSON (from --input or stdin), reports are JSON on stdout with
a fixed field layout and fixed float formatting, so identical inputs give
byte-identical outputs.  Exit codes: 0 success, 2 invalid input, 3 requested
object does not exist, 4 dynamics failure, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Tuple

from . import __version__, billiards, construction, coordinates, serialize
from .apollonius import apollonian_circle, apollonian_common_points
from .billiards import BilliardState, RiverInstance
from .construction import (STATUS_INTERIOR, STATUS_NO_TILDE, Weights,
                           coeffs_from_weights, snell_fagnano_point,
                           verify_snell_point)
from .geometry import (DegenerateTriangle, GeometryError, Point2, Triangle,
                       TriangleInequalityViolated, triangle_from_sides)
from .optimize import minimize_inscribed
from .render import render_scene

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISSING = 3
EXIT_DYNAMICS = 4
EXIT_IO = 5

# Tolerance registry: defaults here, overridable by --config then --tol.
DEFAULT_TOLS = {
    "concurrency": 1e-9,
    "interior_angle": 1e-10,
    "tripolar_validate": 1e-8,
    "periodicity": 1e-8,
}

COMMANDS = ("point", "convert", "simulate", "minimize", "river", "render")


class CliError(Exception):
    """Failure with a designated process exit code."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _reject_const(name: str):
    raise ValueError("non-finite number %r in input" % name)


def _loads(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_const)
    except ValueError as e:
        raise CliError(EXIT_INVALID, "invalid JSON: %s" % e)


def _finite(x: Any, what: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise CliError(EXIT_INVALID, "%s must be a number" % what)
    v = float(x)
    if not math.isfinite(v):
        raise CliError(EXIT_INVALID, "%s must be finite" % what)
    return v


def _triple(node: Any, what: str) -> Tuple[float, float, float]:
    if not isinstance(node, (list, tuple)) or len(node) != 3:
        raise CliError(EXIT_INVALID, "%s must be a list of three numbers" % what)
    return tuple(_finite(v, what) for v in node)  # type: ignore[return-value]


def _pair(node: Any, what: str) -> Point2:
    if not isinstance(node, (list, tuple)) or len(node) != 2:
        raise CliError(EXIT_INVALID, "%s must be an [x, y] pair" % what)
    return Point2(_finite(node[0], what), _finite(node[1], what))


def parse_triangle(spec: Dict[str, Any]) -> Triangle:
    node = spec.get("triangle")
    if not isinstance(node, dict):
        raise CliError(EXIT_INVALID, "spec needs a \"triangle\" object")
    has_v = "vertices" in node
    has_s = "sides" in node
    if has_v == has_s:
        raise CliError(EXIT_INVALID,
                       "triangle needs exactly one of \"vertices\"/\"sides\"")
    try:
        if has_v:
            vs = node["vertices"]
            if not isinstance(vs, (list, tuple)) or len(vs) != 3:
                raise CliError(EXIT_INVALID, "vertices must list three points")
            return Triangle(*(_pair(v, "vertex") for v in vs))
        return triangle_from_sides(*_triple(node["sides"], "sides"))
    except (TriangleInequalityViolated, DegenerateTriangle, ValueError) as e:
        raise CliError(EXIT_INVALID, str(e))


def parse_weights(spec: Dict[str, Any]) -> Weights:
    try:
        return Weights(*_triple(spec.get("weights"), "weights"))
    except ValueError as e:
        raise CliError(EXIT_INVALID, str(e))


def _xy(p) -> List[float]:
    return [float(p[0]), float(p[1])]


def _normalized(triple) -> Optional[List[float]]:
    s = sum(triple)
    if abs(s) <= 1e-12 * max(abs(v) for v in triple):
        return None
    return [v / s for v in triple]


def _point_block(p: Point2, t: Triangle) -> Dict[str, Any]:
    bc = coordinates.to_barycentric(p, t)
    tl = coordinates.barycentric_to_trilinear(bc, t)
    tp = coordinates.tripolar_of_point(p, t)
    return {
        "xy": _xy(p),
        "barycentric": list(bc),
        "trilinear": list(tl),
        "trilinear_normalized": _normalized(tl),
        "tripolar": list(tp),
    }


def _base_doc(command: str, spec: Dict[str, Any],
              tols: Dict[str, float]) -> Dict[str, Any]:
    return {
        "version": __version__,
        "command": command,
        "input": spec,
        "tolerances": dict(tols),
        "status": "ok",
    }


def _failing_tilde_inequality(t: Triangle, w: Weights) -> str:
    sides = (("lam_A*a", w.lam_A * t.a), ("lam_B*b", w.lam_B * t.b),
             ("lam_C*c", w.lam_C * t.c))
    for i in range(3):
        name, val = sides[i]
        others = [sides[j] for j in range(3) if j != i]
        if val >= others[0][1] + others[1][1]:
            return ("%s >= %s + %s (%.12g >= %.12g + %.12g)"
                    % (name, others[0][0], others[1][0],
                       val, others[0][1], others[1][1]))
    return "scaled side triple fails the triangle inequality"


def _orbit_block(res: construction.SnellOrbitResult) -> Dict[str, Any]:
    orbit = res.orbit
    block = {
        "params": [orbit.tA, orbit.tB, orbit.tC],
        "vertices": [_xy(p) for p in orbit.points],
        "weighted_perimeter": res.weighted_perimeter,
    }
    if res.orbit_in_sides is not None:
        block["in_sides"] = res.orbit_in_sides
    return block


def cmd_point(spec, tols) -> Tuple[Dict[str, Any], int]:
    t = parse_triangle(spec)
    w = parse_weights(spec)
    res = snell_fagnano_point(t, w, concurrency_tol=tols["concurrency"],
                              eps_angle=tols["interior_angle"])
    k = coeffs_from_weights(w)
    doc = _base_doc("point", spec, tols)
    doc["status"] = res.status
    doc["weights_normalized"] = _normalized(w.triple)
    doc["refraction_coefficients"] = list(k.triple)
    if res.conditions is not None:
        doc["interior_conditions"] = list(res.conditions)
    if res.erected is not None:
        doc["erected_apexes"] = [_xy(p) for p in res.erected]
    if res.point is not None:
        doc["point"] = _point_block(res.point, t)
    if res.orbit is not None:
        doc["orbit"] = _orbit_block(res)
    if res.status == STATUS_INTERIOR:
        doc["snell_residuals"] = list(verify_snell_point(res.point, t, k))
        bc = coordinates.to_barycentric(res.point, t)
        conj = coordinates.from_barycentric(coordinates.isogonal_conjugate(bc, t), t)
        ctp = coordinates.tripolar_of_point(conj, t)
        doc["isogonal_conjugate"] = {
            "xy": _xy(conj),
            "tripolar": list(ctp),
            "tripolar_normalized": _normalized(ctp),
        }
        if res.brute_force_cost is not None:
            doc["brute_force_cost"] = res.brute_force_cost
        return doc, EXIT_OK
    info = res.degenerate_info or {}
    doc["degenerate_info"] = {
        "weighted_costs": dict(info.get("weighted_costs", {})),
        "altitude_lengths": dict(info.get("altitude_lengths", {})),
        "weighted_argmin": info.get("weighted_argmin"),
        "shortest_altitude": info.get("shortest_altitude"),
    }
    if res.brute_force_cost is not None:
        doc["brute_force_cost"] = res.brute_force_cost
    if res.status == STATUS_NO_TILDE:
        doc["message"] = _failing_tilde_inequality(t, w)
        return doc, EXIT_MISSING
    return doc, EXIT_OK


def cmd_convert(spec, tols) -> Tuple[Dict[str, Any], int]:
    t = parse_triangle(spec)
    node = spec.get("coords")
    if not isinstance(node, dict):
        raise CliError(EXIT_INVALID, "spec needs a \"coords\" object")
    kind = node.get("kind")
    if kind not in ("barycentric", "trilinear", "tripolar"):
        raise CliError(EXIT_INVALID,
                       "coords.kind must be barycentric, trilinear or tripolar")
    values = _triple(node.get("values"), "coords.values")
    doc = _base_doc("convert", spec, tols)
    doc["kind"] = kind
    doc["values"] = list(values)
    doc["values_normalized"] = _normalized(values)

    points: List[Dict[str, Any]] = []
    if kind == "tripolar":
        if min(values) < 0.0:
            raise CliError(EXIT_INVALID, "tripolar distances must be >= 0")
        for p, s in coordinates.tripolar_to_points(
                coordinates.TripolarCoords(*values), t,
                validate_tol=tols["tripolar_validate"]):
            block = _point_block(p, t)
            block["scale"] = s
            points.append(block)
    else:
        bc = (coordinates.BarycentricCoords(*values) if kind == "barycentric"
              else coordinates.trilinear_to_barycentric(
                  coordinates.TrilinearCoords(*values), t))
        p = coordinates.from_barycentric(bc, t)
        points.append(_point_block(p, t))
    doc["points"] = points
    doc["count"] = len(points)
    return doc, EXIT_OK


def _state_block(t: Triangle, s: BilliardState) -> Dict[str, Any]:
    return {
        "side": s.side,
        "param": s.param,
        "xy": _xy(billiards.point_on_side(t, s.side, s.param)),
        "direction": _xy(s.direction),
    }


def cmd_simulate(spec, tols) -> Tuple[Dict[str, Any], int]:
    t = parse_triangle(spec)
    w = parse_weights(spec)
    k = coeffs_from_weights(w)
    steps = spec.get("steps", 3)
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
        raise CliError(EXIT_INVALID, "steps must be a positive integer")

    node = spec.get("start")
    if node is None:
        res = snell_fagnano_point(t, w, concurrency_tol=tols["concurrency"],
                                  eps_angle=tols["interior_angle"],
                                  include_brute_force=False)
        if res.status != STATUS_INTERIOR:
            raise CliError(EXIT_MISSING,
                           "no interior orbit to launch from (status %s); "
                           "provide an explicit start state" % res.status)
        start = billiards.orbit_start_state(t, res.orbit)
    else:
        if not isinstance(node, dict):
            raise CliError(EXIT_INVALID, "start must be an object")
        side = node.get("side")
        if side not in ("a", "b", "c"):
            raise CliError(EXIT_INVALID, "start.side must be a, b or c")
        param = _finite(node.get("param"), "start.param")
        if not 0.0 < param < 1.0:
            raise CliError(EXIT_INVALID, "start.param must lie in (0, 1)")
        d = _pair(node.get("direction"), "start.direction")
        if d.norm() <= 0.0:
            raise CliError(EXIT_INVALID, "start.direction must be nonzero")
        start = BilliardState(side, param, d.unit())

    states = [start]
    for i in range(steps):
        try:
            states.append(billiards.billiard_step(states[-1], t, k))
        except (billiards.TotalInternalReflection, billiards.HitVertex) as e:
            raise CliError(EXIT_DYNAMICS, "step %d: %s" % (i + 1, e))

    last = states[-1]
    side_match = last.side == start.side
    param_error = abs(last.param - start.param)
    direction_error = math.dist(last.direction, start.direction)
    periodic = (side_match and param_error < tols["periodicity"]
                and direction_error < tols["periodicity"])
    doc = _base_doc("simulate", spec, tols)
    doc["kappa"] = list(k.triple)
    doc["steps"] = steps
    doc["trajectory"] = [_state_block(t, s) for s in states]
    doc["periodic"] = periodic
    doc["closure"] = {
        "side_match": side_match,
        "param_error": param_error,
        "direction_error": direction_error,
    }
    return doc, EXIT_OK


def cmd_minimize(spec, tols) -> Tuple[Dict[str, Any], int]:
    t = parse_triangle(spec)
    w = parse_weights(spec)
    grid = spec.get("grid", 64)
    refine = spec.get("refine_iters", 200)
    for name, v in (("grid", grid), ("refine_iters", refine)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise CliError(EXIT_INVALID, "%s must be a positive integer" % name)
    try:
        rep = minimize_inscribed(t, w, grid=grid, refine_iters=refine)
    except ValueError as e:
        raise CliError(EXIT_INVALID, str(e))
    doc = _base_doc("minimize", spec, tols)
    doc["report"] = {
        "params": [rep.best.tA, rep.best.tB, rep.best.tC],
        "vertices": [_xy(p) for p in rep.best.points],
        "cost": rep.cost,
        "iterations": rep.iterations,
        "converged": rep.converged,
        "flatness": rep.flatness,
    }
    res = snell_fagnano_point(t, w, concurrency_tol=tols["concurrency"],
                              eps_angle=tols["interior_angle"],
                              include_brute_force=False)
    gap = ((rep.cost - res.weighted_perimeter)
           / max(abs(res.weighted_perimeter), 1e-300))
    doc["constructed"] = {
        "status": res.status,
        "weighted_perimeter": res.weighted_perimeter,
        "relative_gap": gap,
    }
    return doc, EXIT_OK


def cmd_river(spec, tols) -> Tuple[Dict[str, Any], int]:
    node = spec.get("river")
    if not isinstance(node, dict):
        raise CliError(EXIT_INVALID, "spec needs a \"river\" object")
    line = node.get("line")
    if not isinstance(line, (list, tuple)) or len(line) != 2:
        raise CliError(EXIT_INVALID, "river.line must list two points")
    try:
        inst = RiverInstance(
            _pair(node.get("a"), "river.a"), _pair(node.get("b"), "river.b"),
            (_pair(line[0], "river.line"), _pair(line[1], "river.line")),
            _finite(node.get("lam1"), "river.lam1"),
            _finite(node.get("lam2"), "river.lam2"))
    except ValueError as e:
        raise CliError(EXIT_INVALID, str(e))
    x, cost, residual = billiards.solve_river(inst)
    doc = _base_doc("river", spec, tols)
    doc["x"] = _xy(x)
    doc["cost"] = cost
    doc["snell_residual"] = residual
    return doc, EXIT_OK


def cmd_render(spec, tols) -> Tuple[Dict[str, Any], int]:
    t = parse_triangle(spec)
    w = parse_weights(spec)
    out = spec.get("svg_path")
    if not isinstance(out, str) or not out:
        raise CliError(EXIT_INVALID,
                       "render needs an output path (--svg or \"svg_path\")")
    res = snell_fagnano_point(t, w, concurrency_tol=tols["concurrency"],
                              eps_angle=tols["interior_angle"],
                              include_brute_force=False)
    layers = spec.get("layers") or {}
    circles = None
    common = None
    if isinstance(layers, dict) and layers.get("apollonius"):
        circles = [
            apollonian_circle(t.vA, t.vB, w.lam_A / w.lam_B),
            apollonian_circle(t.vB, t.vC, w.lam_B / w.lam_C),
            apollonian_circle(t.vC, t.vA, w.lam_C / w.lam_A),
        ]
        common = apollonian_common_points(t, w)
    svg = render_scene(t, res, apollonius=circles, common_points=common)
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as e:
        raise CliError(EXIT_IO, "cannot write %s: %s" % (out, e))
    doc = _base_doc("render", spec, tols)
    doc["construction_status"] = res.status
    doc["svg_path"] = out
    doc["svg_bytes"] = len(svg.encode("utf-8"))
    return doc, EXIT_OK


HANDLERS = {
    "point": cmd_point,
    "convert": cmd_convert,
    "simulate": cmd_simulate,
    "minimize": cmd_minimize,
    "river": cmd_river,
    "render": cmd_render,
}


def run_spec(command: str, spec: Any,
             tols: Dict[str, float]) -> Tuple[Dict[str, Any], int]:
    """Dispatch one job; never raises, always returns a report document."""
    if not isinstance(spec, dict):
        spec = {"_raw": spec}
        err: Optional[Tuple[int, str]] = (EXIT_INVALID,
                                          "job spec must be a JSON object")
    else:
        err = None
    if err is None:
        try:
            return HANDLERS[command](spec, tols)
        except CliError as e:
            err = (e.code, str(e))
        except (coordinates.NoSuchPoint, coordinates.FZero) as e:
            err = (EXIT_MISSING, str(e))
        except (coordinates.IdealPoint, coordinates.OnSideLine) as e:
            err = (EXIT_MISSING, str(e))
        except (billiards.TotalInternalReflection, billiards.HitVertex) as e:
            err = (EXIT_DYNAMICS, str(e))
        except (TriangleInequalityViolated, DegenerateTriangle) as e:
            err = (EXIT_INVALID, str(e))
        except GeometryError as e:
            err = (EXIT_INVALID, str(e))
        except (KeyError, TypeError, ValueError) as e:
            err = (EXIT_INVALID, "invalid job spec: %s" % e)
        except OSError as e:
            err = (EXIT_IO, str(e))
    doc = _base_doc(command, spec, tols)
    doc["status"] = "error"
    doc["message"] = err[1]
    return doc, err[0]


def _resolve_tols(config_path: Optional[str],
                  overrides: List[str]) -> Dict[str, float]:
    tols = dict(DEFAULT_TOLS)

    def apply(name: str, value: Any, origin: str):
        if name not in tols:
            raise CliError(EXIT_INVALID,
                           "unknown tolerance %r in %s (known: %s)"
                           % (name, origin, ", ".join(sorted(tols))))
        v = _finite(value, "tolerance %s" % name)
        if v <= 0.0:
            raise CliError(EXIT_INVALID, "tolerance %s must be positive" % name)
        tols[name] = v

    if config_path:
        try:
            with open(config_path, "r", encoding="utf-8") as fh:
                cfg = _loads(fh.read())
        except OSError as e:
            raise CliError(EXIT_IO, "cannot read config: %s" % e)
        if not isinstance(cfg, dict):
            raise CliError(EXIT_INVALID, "config must be a JSON object")
        section = cfg.get("tolerances", cfg)
        if not isinstance(section, dict):
            raise CliError(EXIT_INVALID, "config tolerances must be an object")
        for name, value in section.items():
            apply(name, value, "config")
    for item in overrides:
        name, sep, raw = item.partition("=")
        if not sep:
            raise CliError(EXIT_INVALID, "--tol expects NAME=VALUE, got %r" % item)
        try:
            value = float(raw)
        except ValueError:
            raise CliError(EXIT_INVALID, "--tol %s: bad number %r" % (name, raw))
        apply(name.strip(), value, "--tol")
    return tols


def _emit(doc: Dict[str, Any], compact: bool) -> None:
    sys.stdout.write(serialize.dumps(doc, indent=0 if compact else 2))
    if compact:
        sys.stdout.write("\n")


def _run_batch(command: str, path: str, tols: Dict[str, float],
               workers: int) -> int:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as e:
        sys.stderr.write("sf: cannot read batch file: %s\n" % e)
        return EXIT_IO

    def job(line: str) -> Tuple[Dict[str, Any], int]:
        try:
            spec = _loads(line)
        except CliError as e:
            doc = _base_doc(command, {}, tols)
            doc["status"] = "error"
            doc["message"] = str(e)
            return doc, e.code
        cmd = spec.get("command", command) if isinstance(spec, dict) else command
        if cmd not in HANDLERS:
            doc = _base_doc(command, spec, tols)
            doc["status"] = "error"
            doc["message"] = "unknown command %r" % cmd
            return doc, EXIT_INVALID
        return run_spec(cmd, spec, tols)

    worst = EXIT_OK
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        for doc, code in pool.map(job, lines):
            doc["exit_code"] = code
            _emit(doc, compact=True)
            worst = max(worst, code)
    return worst


def main(argv: Optional[List[str]] = None) -> int:
    ap = argparse.ArgumentParser(
        prog="sf",
        description="Weighted closed-orbit construction and optimization "
                    "for triangles.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", help="job spec JSON file (default: stdin)")
    ap.add_argument("--batch", help="JSON-lines file of job specs")
    ap.add_argument("--config", help="JSON file with a tolerances object")
    ap.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                    help="override one tolerance (repeatable)")
    ap.add_argument("--svg", help="output path for render")
    ap.add_argument("--compact", action="store_true",
                    help="one-line JSON output")
    ap.add_argument("--workers", type=int, default=4,
                    help="batch worker pool size")
    ap.add_argument("--version", action="version", version=__version__)
    args = ap.parse_args(argv)

    try:
        tols = _resolve_tols(args.config, args.tol)
    except CliError as e:
        sys.stderr.write("sf: %s\n" % e)
        return e.code

    if args.batch:
        return _run_batch(args.command, args.batch, tols, args.workers)

    if args.input:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            sys.stderr.write("sf: cannot read input: %s\n" % e)
            return EXIT_IO
    else:
        text = sys.stdin.read()
    try:
        spec = _loads(text)
    except CliError as e:
        sys.stderr.write("sf: %s\n" % e)
        return e.code
    if isinstance(spec, dict) and args.svg:
        spec = dict(spec)
        spec["svg_path"] = args.svg

    doc, code = run_spec(args.command, spec, tols)
    _emit(doc, args.compact)
    if code != EXIT_OK and "message" in doc:
        sys.stderr.write("sf: %s\n" % doc["message"])
    return code


if __name__ == "__main__":
    sys.exit(main())
