"""Command-line surface: scenario files in, classified results and work out.

Commands:
  classify <file>   isotropy residuals, vector classes, work-case tag
  work <file>       dispatched work value with cross-check metadata
  plane ...         2-plane case report and cross-direction work
  table1 ...        the eight-row work table
  verify            full invariant/oracle suite

Scenario files are single JSON documents:

  {"frame": {"phi": 1.5707963267948966},
   "force": {"P": "1", "R": "1", "S": "-1/2"},
   "curve": {"x": "t", "y": "2*t", "z": "-2*t/3", "alpha": 0, "beta": 1},
   "tol": 1e-10}

S and z may be omitted and are completed isotropically (z with z(alpha) =
curve.z0, default 0).  Tolerance precedence: --tol flag > file field >
ISOWORK_TOL env var > 1e-10.  Exit codes: 0 ok, 1 verification failure,
2 input error, 3 cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from . import __version__
from .algebra import ORTHONORMAL_PHI, Vec3Q, classify, orthonormal_frame
from .backend import BACKEND
from .errors import CrossCheckFailureError, IsoworkError
from .exprlang import parse, pretty_print
from .fields_curves import (
    ForceField,
    ParamCurve,
    chebyshev_points,
    complete_isotropic_curve,
    complete_isotropic_force,
)
from .plane2 import (
    PlaneCase,
    build_plane,
    iso_directions,
    table1_report,
    work_cross,
    work_right_angle,
)
from .quadrature import DEFAULT_TOL
from .verify import run_all
from .work3d import diagnose, work

SCHEMA_VERSION = 1


class ScenarioError(IsoworkError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def _parse_field(text, field):
    try:
        return parse(text)
    except IsoworkError as exc:
        raise ScenarioError(field, str(exc)) from exc


def load_scenario(path, tol_flag=None):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioError("file", str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError("file", f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError("file", "scenario must be a JSON object")

    frame = doc.get("frame") or {}
    phi = float(frame.get("phi", ORTHONORMAL_PHI))

    force = doc.get("force")
    if not isinstance(force, dict):
        raise ScenarioError("force", "missing force section")
    for key in ("P", "R"):
        if key not in force:
            raise ScenarioError(f"force.{key}", "missing expression")
    p = _parse_field(str(force["P"]), "force.P")
    r = _parse_field(str(force["R"]), "force.R")
    try:
        if force.get("S") is not None:
            s = _parse_field(str(force["S"]), "force.S")
            field = ForceField(p, r, s)
        else:
            field = complete_isotropic_force(p, r)
    except ValueError as exc:
        raise ScenarioError("force", str(exc)) from exc

    curve_doc = doc.get("curve")
    if not isinstance(curve_doc, dict):
        raise ScenarioError("curve", "missing curve section")
    for key in ("x", "y", "alpha", "beta"):
        if key not in curve_doc:
            raise ScenarioError(f"curve.{key}", "missing")
    alpha = float(curve_doc["alpha"])
    beta = float(curve_doc["beta"])
    if not alpha < beta:
        raise ScenarioError("curve.alpha", f"need alpha < beta, got [{alpha}, {beta}]")
    x = _parse_field(str(curve_doc["x"]), "curve.x")
    y = _parse_field(str(curve_doc["y"]), "curve.y")
    try:
        if curve_doc.get("z") is not None:
            z = _parse_field(str(curve_doc["z"]), "curve.z")
            curve = ParamCurve(x, y, z, alpha, beta)
        else:
            z0 = float(curve_doc.get("z0", 0.0))
            curve = complete_isotropic_curve(x, y, z0, alpha, beta)
    except (ValueError, IsoworkError) as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError("curve", str(exc)) from exc

    tol = DEFAULT_TOL
    env = os.environ.get("ISOWORK_TOL")
    if env:
        try:
            tol = float(env)
        except ValueError as exc:
            raise ScenarioError("ISOWORK_TOL", f"not a number: {env!r}") from exc
    if doc.get("tol") is not None:
        tol = float(doc["tol"])
    if tol_flag is not None:
        tol = tol_flag
    if not tol > 0:
        raise ScenarioError("tol", f"tolerance must be positive, got {tol}")

    echo = {
        "frame": {"phi": phi},
        "force": {"P": pretty_print(field.p), "R": pretty_print(field.r),
                  "S": pretty_print(field.s)},
        "curve": {"x": pretty_print(x), "y": pretty_print(y),
                  "alpha": alpha, "beta": beta},
        "tol": tol,
    }
    if curve_doc.get("z") is not None:
        echo["curve"]["z"] = pretty_print(curve.z)
    else:
        echo["curve"]["z"] = None
        echo["curve"]["z0"] = float(curve_doc.get("z0", 0.0))
    return phi, field, curve, tol, echo


def _emit(args, echo, results, text_lines):
    if args.json:
        print(json.dumps({"schema_version": SCHEMA_VERSION,
                          "inputs_echo": echo, "results": results},
                         indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_classify(args):
    phi, field, curve, tol, echo = load_scenario(args.scenario, args.tol)
    if abs(phi - ORTHONORMAL_PHI) > 1e-12:
        raise ScenarioError("frame.phi",
                            "3-space classification assumes the orthonormal "
                            f"frame phi = pi/2, got {phi}")
    diag = diagnose(field, curve)
    frame = orthonormal_frame()
    ts = chebyshev_points(curve.alpha, curve.beta, 5)
    st = curve.state(ts)
    ps, rs, ss = field.components(st.xs, st.ys, st.zs)
    classes = []
    for i, t in enumerate(ts):
        vc = classify(frame, Vec3Q(float(ps[i]), float(rs[i]), float(ss[i])))
        classes.append({"t": float(t), "class": vc.tag.value,
                        "f_norm": vc.f_norm})
    case = diag.tag.value if diag.isotropic else "not_isotropic"
    results = {
        "case": case,
        "isotropic": diag.isotropic,
        "force_residual": diag.force_residual,
        "curve_residual": diag.curve_residual,
        "collinear": diag.max_minor <= 1e-9,
        "max_minor": diag.max_minor,
        "vector_classes": classes,
    }
    lines = [
        f"force isotropy residual (max, scaled): {diag.force_residual:.3e}",
        f"curve isotropy residual (max, scaled): {diag.curve_residual:.3e}",
        f"collinearity max minor: {diag.max_minor:.3e}",
        "force vector classes along curve: "
        + ", ".join(f"t={c['t']:.3g}:{c['class']}" for c in classes),
        f"case: {case}",
    ]
    _emit(args, echo, results, lines)
    return 0


def cmd_work(args):
    phi, field, curve, tol, echo = load_scenario(args.scenario, args.tol)
    if abs(phi - ORTHONORMAL_PHI) > 1e-12:
        raise ScenarioError("frame.phi",
                            "work in 3-space assumes the orthonormal frame "
                            f"phi = pi/2, got {phi}")
    res = work(field, curve, tol)
    results = {
        "work": res.value,
        "method": res.method.value,
        "error_estimate": res.error_estimate,
        "cross_check_delta": res.cross_check_delta,
        "case_assumption_residual": res.case_assumption_residual,
        "flags": list(res.flags),
    }
    delta = ("-" if res.cross_check_delta is None
             else f"{res.cross_check_delta:.3e}")
    lines = [
        f"work: {res.value:.12g}",
        f"method: {res.method.value}",
        f"error estimate: {res.error_estimate:.3e}",
        f"cross-check delta: {delta}",
    ]
    if res.flags:
        lines.append(f"flags: {', '.join(res.flags)}")
    _emit(args, echo, results, lines)
    return 0


def _tol_from_env_or(flag):
    if flag is not None:
        return flag
    env = os.environ.get("ISOWORK_TOL")
    if env:
        return float(env)
    return DEFAULT_TOL


def cmd_plane(args):
    tol = _tol_from_env_or(args.tol)
    ctx = build_plane(args.phi)
    dirs = iso_directions(ctx)
    slopes = [d.label() for d in dirs]
    echo = {"phi": args.phi, "P": args.p, "source": args.source,
            "target": args.target, "alpha": args.alpha, "beta": args.beta,
            "tol": tol}
    results = {
        "case": ctx.case_tag.value,
        "discriminant": ctx.discriminant,
        "slopes": slopes,
        "k1": ctx.k1,
        "k2": ctx.k2,
        "work": None,
        "description": None,
    }
    lines = [
        f"case: {ctx.case_tag.value}",
        f"discriminant: {ctx.discriminant:.12g}",
        "isotropic directions: " + (", ".join(slopes) if slopes
                                    else "no isotropic directions"),
    ]
    p = parse(args.p)
    if ctx.case_tag is PlaneCase.A_NO_ISOTROPIC:
        lines.append("no isotropic directions: no work to compute")
    elif ctx.case_tag is PlaneCase.D_RIGHT_ANGLE:
        if args.source == args.target:
            results["work"] = 0.0
            results["description"] = "force along its own axis: work is zero"
            lines.append("work: 0")
        else:
            wr = work_right_angle(p, args.source, args.alpha, args.beta, tol)
            results["work"] = wr.value
            results["description"] = wr.description
            lines.append(f"work: {wr.value:.12g}   ({wr.description})")
    else:
        wr = work_cross(ctx, p, args.source, args.target,
                        args.alpha, args.beta, tol)
        results["work"] = wr.value
        results["description"] = wr.description
        lines.append(f"work: {wr.value:.12g}   ({wr.description})")
    _emit(args, echo, results, lines)
    return 0


def cmd_table1(args):
    tol = _tol_from_env_or(args.tol)
    rows = table1_report(parse(args.p), args.alpha, args.beta, tol,
                         phi_two_lines=args.phi_c)
    echo = {"P": args.p, "alpha": args.alpha, "beta": args.beta,
            "phi_c": args.phi_c, "tol": tol}
    results = {"rows": [{"regime": r.regime, "phi": r.phi,
                         "acts_on": r.acts_on, "trajectory": r.trajectory,
                         "formula": r.formula, "value": r.value}
                        for r in rows]}
    lines = [f"{'phi regime':42s} {'F acts on':18s} {'trajectory':18s} A"]
    for r in rows:
        val = "-" if r.value is None else f"{r.value:.12g}"
        lines.append(f"{r.regime:42s} {r.acts_on:18s} {r.trajectory:18s} {val}")
    _emit(args, echo, results, lines)
    return 0


def cmd_verify(args):
    start = time.perf_counter()
    sink = (lambda line: None) if args.json else print
    results = run_all(only=args.only, out=sink)
    elapsed = time.perf_counter() - start
    failed = [r for r in results if not r.ok]
    if args.json:
        print(json.dumps({
            "schema_version": SCHEMA_VERSION,
            "inputs_echo": {"only": args.only},
            "results": {
                "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail,
                            "seconds": r.seconds} for r in results],
                "passed": len(results) - len(failed),
                "failed": len(failed),
                "elapsed_seconds": elapsed,
            },
        }, indent=2, sort_keys=True))
    else:
        print(f"{len(results) - len(failed)}/{len(results)} properties passed "
              f"in {elapsed:.1f}s (backend: {BACKEND})")
        for r in failed:
            print(f"FAILED: {r.name}: {r.detail}")
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="isowork",
        description="Work of isotropic force fields along isotropic curves.")
    parser.add_argument("--version", action="version",
                        version=f"isowork {__version__} (backend: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("classify", help="classify a scenario file")
    pc.add_argument("scenario")
    pc.add_argument("--tol", type=float, default=None)
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(fn=cmd_classify)

    pw = sub.add_parser("work", help="compute the work for a scenario file")
    pw.add_argument("scenario")
    pw.add_argument("--tol", type=float, default=None)
    pw.add_argument("--json", action="store_true")
    pw.set_defaults(fn=cmd_work)

    pp = sub.add_parser("plane", help="2-plane case report and work")
    pp.add_argument("--phi", type=float, required=True)
    pp.add_argument("--p", default="1", help="force magnitude P(x, y)")
    pp.add_argument("--source", choices=("c1", "c2"), default="c2")
    pp.add_argument("--target", choices=("c1", "c2"), default="c1")
    pp.add_argument("--alpha", type=float, default=0.0)
    pp.add_argument("--beta", type=float, default=1.0)
    pp.add_argument("--tol", type=float, default=None)
    pp.add_argument("--json", action="store_true")
    pp.set_defaults(fn=cmd_plane)

    pt = sub.add_parser("table1", help="eight-row work table")
    pt.add_argument("--p", default="1", help="force magnitude P(x, y)")
    pt.add_argument("--alpha", type=float, default=0.0)
    pt.add_argument("--beta", type=float, default=1.0)
    pt.add_argument("--phi-c", dest="phi_c", type=float, default=math.pi / 3.0,
                    help="representative two-line angle")
    pt.add_argument("--tol", type=float, default=None)
    pt.add_argument("--json", action="store_true")
    pt.set_defaults(fn=cmd_table1)

    pv = sub.add_parser("verify", help="run the verification suite")
    pv.add_argument("--only", default=None,
                    help="run only checks whose name contains this substring")
    pv.add_argument("--json", action="store_true")
    pv.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CrossCheckFailureError as exc:
        print(f"cross-check failure: {exc}", file=sys.stderr)
        return 3
    except (IsoworkError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
