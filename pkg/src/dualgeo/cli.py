"""``dualgeo`` command-line front end.

Every subcommand reads one JSON document (``--in FILE`` or stdin) and writes
JSON or SVG to ``--out FILE`` or stdout.

Exit status: 0 success, 1 invalid input, 2 empty/infeasible/unbounded result
when ``--fail-on-empty`` is given, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import core, dual_d, envelope, halfplane, lifting, selftest
from .errors import DualGeoError, InvariantFailure, ValidationError
from .serialize import decode_params, dumps, encode, parse_input
from .svg import Scene, SceneElement, decode_scene, dual_scene, render_svg
from .tolerance import ENV_VAR, Tolerance, default_tolerance

log = logging.getLogger("dualgeo")

EXIT_OK, EXIT_INVALID, EXIT_EMPTY, EXIT_INTERNAL = 0, 1, 2, 3

COMMANDS = {
    "dual": "dual of a point, line, d-dim point or hyperplane",
    "classify": "involution / order class of the parameters",
    "hull": "convex hull of points",
    "envelope": "upper or lower envelope of lines",
    "halfplanes": "intersection of half-planes and x-clamps",
    "lp": "maximise a linear objective over half-planes",
    "kernel": "kernel of a simple polygon",
    "knn": "k nearest sites via the lifting map",
    "arrangement": "1-D sites as a line arrangement; topmost order at a query",
    "render": "render a scene document to SVG",
    "selftest": "run the randomised invariant suites",
}


class EmptyResult(Exception):
    pass


def build_parser():
    parser = argparse.ArgumentParser(prog="dualgeo", description="Duality transforms and their geometric applications.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", help="input JSON file (default: stdin)")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "svg"), default="json")
    common.add_argument("--preset", help="berg, orourke, jaja, edelsbrunner-p4, edelsbrunner-p13")
    common.add_argument("--alpha", type=float)
    common.add_argument("--mu", type=float)
    common.add_argument("--a", help="comma-separated d-dimensional coefficients a_1..a_d")
    common.add_argument("--eps", type=float, help=f"tolerance (overrides ${ENV_VAR})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--k", type=int)
    common.add_argument("--fail-on-empty", action="store_true",
                        help="exit 2 when the result is empty, infeasible or unbounded")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=text, description=text)
        if name == "dual":
            p.add_argument("--polar", action="store_true", help="use the polar map (r,s) <-> rx+sy+1=0")
        if name == "envelope":
            p.add_argument("--lower", action="store_true", help="lower instead of upper envelope")
        if name == "selftest":
            p.add_argument("--scale", type=float, default=1.0, help="multiplier on trial counts")
            p.add_argument("--workers", type=int, default=1)
    return parser


def _read(args):
    if args.infile:
        with open(args.infile, encoding="utf-8") as fh:
            text = fh.read()
    elif args.command in ("classify", "selftest") and sys.stdin.isatty():
        text = ""
    else:
        text = sys.stdin.read()
    return parse_input(text if text.strip() else "{}")


def _tolerance(args):
    if args.eps is not None:
        return Tolerance(args.eps, args.eps)
    return default_tolerance()


def _params(args, doc, d=None):
    """Transform parameters from flags or the document; exactly one source."""
    sources = [
        args.preset is not None,
        args.alpha is not None or args.mu is not None,
        args.a is not None,
        "params" in doc,
    ]
    if sum(sources) > 1:
        raise ValidationError("give exactly one of --preset, --alpha/--mu, --a or a 'params' entry", "params")
    if args.preset is not None:
        return decode_params({"preset": args.preset, "d": d}, "--preset", d)
    if args.alpha is not None or args.mu is not None:
        if args.alpha is None or args.mu is None:
            raise ValidationError("--alpha and --mu go together", "alpha")
        return core.DualParams(args.alpha, args.mu)
    if args.a is not None:
        try:
            a = tuple(float(v) for v in args.a.split(","))
        except ValueError:
            raise ValidationError("--a must be comma-separated numbers", "a") from None
        return dual_d.DualParamsD(a)
    if "params" in doc:
        return doc["params"]
    if d is not None and d != 2:
        return dual_d.preset_d("edelsbrunner-p4", d)
    return core.BERG


def _planar(params):
    if isinstance(params, dual_d.DualParamsD):
        return params.to_planar()
    return params


def _dimension(doc):
    for key in ("point", "point_d", "line", "hyperplane"):
        if key in doc:
            v = doc[key]
            return v.dim if hasattr(v, "dim") else 2
    for key in ("points", "lines"):
        if doc.get(key):
            v = doc[key][0]
            return v.dim if hasattr(v, "dim") else 2
    return None


# --------------------------------------------------------------------------
# subcommands; each returns (json_document, scene_or_None)


def cmd_dual(args, doc, tol):
    if args.polar:
        out = {}
        if "point" in doc:
            p = doc["point"]
            out["general_line"] = encode(core.polar_dual_point(p) if isinstance(p, core.Point2)
                                         else dual_d.polar_dual_d(p))
        if "general_line" in doc:
            out["point"] = encode(core.polar_dual_line(doc["general_line"]))
        if "normalized_hyperplane" in doc:
            out["point"] = encode(dual_d.polar_dual_d_inverse(doc["normalized_hyperplane"]))
        return out, None
    d = _dimension(doc)
    params = _params(args, doc, d)
    if isinstance(params, dual_d.DualParamsD) and params.dim != 2:
        return _dual_d(doc, params), None
    params = _planar(params)
    out = {"params": encode(params)}
    elements = []
    if "point" in doc:
        out["line"] = encode(core.dual_point(doc["point"], params))
        elements.append(SceneElement("point", doc["point"], "p"))
    if "line" in doc:
        out["point"] = encode(core.dual_line(doc["line"], params))
        elements.append(SceneElement("line", doc["line"], "L"))
    if "points" in doc:
        out["lines"] = [encode(core.dual_point(p, params)) for p in doc["points"]]
        elements += [SceneElement("point", p, f"p{i}") for i, p in enumerate(doc["points"])]
    if "lines" in doc:
        out["points"] = [encode(core.dual_line(ln, params)) for ln in doc["lines"]]
        elements += [SceneElement("line", ln, f"L{i}") for i, ln in enumerate(doc["lines"])]
    scene = None
    if elements:
        primal = Scene(tuple(elements))
        scene = Scene(primal.elements + dual_scene(primal, params).elements)
    return out, scene


def _dual_d(doc, params):
    out = {"params": encode(params)}
    if "point" in doc or "point_d" in doc:
        p = doc.get("point", doc.get("point_d"))
        out["hyperplane"] = encode(dual_d.dual_point_d(p, params))
    if "line" in doc or "hyperplane" in doc:
        h = doc.get("line", doc.get("hyperplane"))
        out["point"] = encode(dual_d.dual_hyperplane_d(h, params))
    if "points" in doc:
        out["hyperplanes"] = [encode(dual_d.dual_point_d(p, params)) for p in doc["points"]]
    if "lines" in doc:
        out["points"] = [encode(dual_d.dual_hyperplane_d(h, params)) for h in doc["lines"]]
    return out


def cmd_classify(args, doc, tol):
    params = _params(args, doc, doc.get("d"))
    if isinstance(params, dual_d.DualParamsD):
        cls = dual_d.classify_d(params, tol)
    else:
        cls = core.classify(params, tol)
    return {"params": encode(params), "class": encode(cls)}, None


def cmd_hull(args, doc, tol):
    pts = doc.get("points")
    if not pts:
        raise ValidationError("hull needs a non-empty 'points' array", "points")
    hull = envelope.convex_hull(pts)
    elements = [SceneElement("point", p) for p in pts]
    if len(hull) >= 3:
        elements.insert(0, SceneElement("polygon", halfplane.Polygon(hull.vertices), "hull"))
    return {"hull": encode(hull)}, Scene(tuple(elements))


def cmd_envelope(args, doc, tol):
    lines = doc.get("lines")
    if not lines:
        raise ValidationError("envelope needs a non-empty 'lines' array", "lines")
    lower = args.lower or doc.get("kind") == "lower"
    params = _planar(_params(args, doc))
    env = (envelope.lower_envelope if lower else envelope.upper_envelope)(lines, params)
    elements = [SceneElement("line", ln) for ln in lines] + [SceneElement("envelope", env, env.kind)]
    return {"envelope": encode(env)}, Scene(tuple(elements))


def _region(doc, tol, args):
    hps = doc.get("halfplanes", [])
    clamps = doc.get("clamps", [])
    params = _planar(_params(args, doc))
    return halfplane.intersect_halfplanes(hps, clamps, params, tol), hps, clamps


def _region_scene(hps, clamps, region):
    elements = [SceneElement("line", h.line) for h in hps]
    elements.append(SceneElement("region", (tuple(hps), tuple(clamps)), "region"))
    elements += [SceneElement("point", v) for v in region.vertices]
    return Scene(tuple(elements))


def cmd_halfplanes(args, doc, tol):
    region, hps, clamps = _region(doc, tol, args)
    if args.fail_on_empty and region.is_empty:
        raise EmptyResult("feasible region is empty")
    return {"region": encode(region)}, _region_scene(hps, clamps, region)


def cmd_lp(args, doc, tol):
    if "objective" not in doc:
        raise ValidationError("lp needs an 'objective'", "objective")
    region, hps, clamps = _region(doc, tol, args)
    res = halfplane.lp_maximize(region, doc["objective"], tol)
    if args.fail_on_empty and res.status != "optimal":
        raise EmptyResult(f"linear program is {res.status}")
    return {"region": encode(region), "lp": encode(res)}, _region_scene(hps, clamps, region)


def cmd_kernel(args, doc, tol):
    poly = doc.get("polygon")
    if poly is None:
        raise ValidationError("kernel needs a 'polygon'", "polygon")
    params = _planar(_params(args, doc))
    region = halfplane.polygon_kernel(poly, params=params, tol=tol)
    if args.fail_on_empty and region.is_empty:
        raise EmptyResult("polygon is not star-shaped")
    elements = [SceneElement("polygon", poly, "polygon")]
    if len(region.vertices) >= 3:
        elements.append(SceneElement("polygon", halfplane.Polygon(region.vertices), "kernel", "region"))
    return {"kernel": encode(region)}, Scene(tuple(elements))


def cmd_knn(args, doc, tol):
    sites, q = doc.get("sites"), doc.get("query")
    if not sites or q is None:
        raise ValidationError("knn needs 'sites' and 'query'", "sites")
    k = args.k if args.k is not None else doc.get("k", 1)
    res = lifting.knn_query(sites, q, k, tol)
    scene = None
    if q.dim == 2:
        elements = [SceneElement("point", core.Point2(*s.coords), f"s{i}") for i, s in enumerate(sites)]
        elements.append(SceneElement("point", core.Point2(*q.coords), "query", "dual"))
        scene = Scene(tuple(elements))
    return {"knn": encode(res)}, scene


def cmd_arrangement(args, doc, tol):
    sites = doc.get("sites")
    if not sites:
        raise ValidationError("arrangement needs 'sites'", "sites")
    arr = lifting.build_arrangement_1d(sites)
    out = {"arrangement": encode(arr)}
    if "query" in doc:
        x = doc["query"].coords[0]
        k = args.k if args.k is not None else doc.get("k", len(sites))
        out["topmost"] = lifting.topmost_at(arr, x, k, tol)
    scene = Scene(tuple(SceneElement("line", ln, f"z{i}") for i, ln in enumerate(arr.lines)))
    return out, scene


def cmd_render(args, doc, tol):
    if "scene" not in doc:
        raise ValidationError("render needs a 'scene'", "scene")
    scene = decode_scene(doc["scene"])
    if "params" in doc or args.preset or args.alpha is not None:
        scene = dual_scene(scene, _planar(_params(args, doc)))
    args.format = "svg"
    return None, scene


def cmd_selftest(args, doc, tol):
    report = selftest.run(args.seed, args.scale, workers=args.workers)
    if not report["passed"]:
        raise InvariantFailure(dumps(report))
    return report, None


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = globals()[f"cmd_{args.command}"]
    try:
        tol = _tolerance(args)
        doc = _read(args)
        result, scene = handler(args, doc, tol)
        if args.format == "svg":
            if scene is None:
                raise ValidationError(f"{args.command} has no SVG rendering for this input", "format")
            viewport = doc.get("viewport")
            _emit(args, render_svg(scene, viewport))
        else:
            _emit(args, dumps(result) + "\n")
        return EXIT_OK
    except EmptyResult as exc:
        log.error("%s", exc)
        return EXIT_EMPTY
    except InvariantFailure as exc:
        _emit(args, str(exc) + "\n")
        log.error("invariant failure")
        return EXIT_INTERNAL
    except DualGeoError as exc:
        print(f"dualgeo: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (KeyError, TypeError, ValueError) as exc:
        print(f"dualgeo: error: malformed input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception:  # noqa: BLE001
        log.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
