"""Command line entry point.

Exit codes:
  0 = computed (and, for verification commands, every claim held)
  1 = computed, but a verified property failed
  2 = input error or the computation could not be carried out
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .gp import InsufficientSubdivisionError, build_stages, verify_Gp
from .homology import cohomology_groups, relative_cohomology_groups
from .parallel import default_threads
from .product import FactorProfile, product_dimension_report
from .racg import rigidity_certificate, vcd_davis
from .simplicial import Graph, SimplicialComplex, flag_complex, load_json_input
from .spine import (
    aut_dimension_bounds,
    cell_bound,
    default_profiles,
    enumerate_trees,
    out_dimension_bounds,
    verify_stab_bound,
)

log = logging.getLogger("coxdim")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path: str | None):
    try:
        text = Path(path).read_text() if path and path != "-" else sys.stdin.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read JSON input: {e}") from e


def _load_complex(path: str | None) -> SimplicialComplex:
    try:
        obj = load_json_input(_read_json(path))
    except (ValueError, TypeError, KeyError) as e:
        raise InputError(str(e)) from e
    return flag_complex(obj) if isinstance(obj, Graph) else obj


def _load_profiles(args) -> list[FactorProfile] | None:
    raw = None
    if getattr(args, "profile", None):
        try:
            raw = json.loads(args.profile)
        except json.JSONDecodeError as e:
            raise InputError(f"--profile is not valid JSON: {e}") from e
    elif getattr(args, "profiles", None):
        raw = _read_json(args.profiles)
    if raw is None:
        return None
    if not isinstance(raw, list):
        raise InputError("profiles must be a JSON list")
    try:
        return [FactorProfile.from_json(p) for p in raw]
    except (ValueError, TypeError, KeyError) as e:
        raise InputError(f"bad factor profile: {e}") from e


# -- commands: each returns (inputs, results, ok) -------------------------------


def cmd_racg_check(args):
    l = _load_complex(args.input)
    try:
        cert = rigidity_certificate(l, args.threads)
    except ValueError as e:
        raise InputError(str(e)) from e
    return {"input": args.input or "-", "f_vector": l.f_vector()}, cert.to_json(), True


def cmd_racg_vcd(args):
    l = _load_complex(args.input)
    try:
        vcd = vcd_davis(l, args.threads, exhaustive=args.exhaustive)
    except ValueError as e:
        raise InputError(str(e)) from e
    return {"input": args.input or "-", "dimension": l.dim}, {"vcd": vcd}, True


def _triangulation(args) -> str:
    if args.triangulation:
        return args.triangulation
    return "barycentric" if args.subdivisions is not None else "nosquare"


def cmd_gp_verify(args):
    tri = _triangulation(args)
    k = args.subdivisions if args.subdivisions is not None else 3
    inputs = {"p": args.p, "triangulation": tri}
    if tri == "barycentric":
        inputs["subdivisions"] = k
    else:
        inputs.update(frequency=args.frequency, collar=args.collar)
    try:
        rep = verify_Gp(args.p, k, tri, args.frequency, args.collar, args.threads)
    except InsufficientSubdivisionError as e:
        return inputs, {"error": str(e), "failed_check": e.check, "verdict": False}, False
    return inputs, rep.to_json(), rep.verdict


STAGES = ("Z", "L", "L_sing", "Lprime", "K", "K_sing")


def cmd_gp_export(args):
    tri = _triangulation(args)
    k = args.subdivisions if args.subdivisions is not None else 3
    z, l_ec, l_sing, pair = build_stages(args.p, tri, k, args.frequency, args.collar)
    obj = {
        "Z": z.complex,
        "L": l_ec.complex,
        "L_sing": l_sing,
        "Lprime": pair.l_prime,
        "K": pair.k,
        "K_sing": pair.k_sing,
    }[args.stage]
    data = obj.to_json()
    if args.stage == "L":
        data["action"] = dict(sorted(l_ec.action.generator.items()))
    text = json.dumps(data, sort_keys=True)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    summary = {"stage": args.stage, "output": args.output or "-"}
    if isinstance(obj, SimplicialComplex):
        summary["f_vector"] = obj.f_vector()
    return {"p": args.p, "triangulation": tri, "stage": args.stage}, summary, True


def cmd_product_bounds(args):
    profiles = _load_profiles(args)
    if not profiles:
        raise InputError("give --profile JSON or --profiles PATH")
    rep = product_dimension_report(profiles)
    return {"profiles": [p.to_json() for p in profiles]}, rep.to_json(), True


def cmd_spine_enumerate(args):
    trees = enumerate_trees(args.r)
    results = {
        "count": len(trees),
        "trees": [{**t.to_json(), "max_cell_dim": cell_bound(t).max_cell_dim} for t in trees],
    }
    return {"r": args.r}, results, True


def cmd_spine_verify(args):
    rep = verify_stab_bound(args.r)
    return {"r": args.r}, rep.to_json(), rep.ok


def cmd_spine_bounds(args):
    profiles = _load_profiles(args) or default_profiles(args.r)
    if len(profiles) != args.r:
        raise InputError(f"-r {args.r} needs {args.r} profiles, got {len(profiles)}")
    out = out_dimension_bounds(args.r, profiles)
    aut = aut_dimension_bounds(args.r, profiles)
    results = {"out": out.to_json(), "aut": aut.to_json()}
    return {"r": args.r, "profiles": [p.to_json() for p in profiles]}, results, True


def cmd_cohomology(args):
    k = _load_complex(args.input)
    if args.relative:
        a = _load_complex(args.relative)
        if not a.is_subcomplex_of(k):
            raise InputError("--relative complex is not a subcomplex of --input")
        groups = relative_cohomology_groups(k, a)
    else:
        groups = cohomology_groups(k, reduced=args.reduced)
    return (
        {"input": args.input or "-", "reduced": args.reduced, "relative": args.relative},
        {"groups": {str(n): str(g) for n, g in sorted(groups.items())}},
        True,
    )


# -- output ----------------------------------------------------------------------


def _table(results, indent: str = "") -> list[str]:
    lines = []
    for key, val in results.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_table(val, indent + "  "))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}: [{len(val)} entries]")
        else:
            lines.append(f"{indent}{key}: {val}")
    return lines


def _human(results: dict) -> dict:
    """Collapse serialized groups to their text form for table output."""
    out = {}
    for k, v in results.items():
        if isinstance(v, dict) and "text" in v and "rank" in v:
            out[k] = v["text"]
        elif isinstance(v, dict):
            out[k] = _human(v)
        else:
            out[k] = v
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--threads", type=int, default=default_threads(), help="worker processes (default: all cores)")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(prog="coxdim", description="Dimension computations for right-angled Coxeter groups and their products.")
    parser.add_argument("--version", action="version", version=f"coxdim {__version__}")
    sub = parser.add_subparsers(dest="group", required=True)

    racg = sub.add_parser("racg", help="properties of a right-angled Coxeter group").add_subparsers(dest="action", required=True)
    p = racg.add_parser("check", parents=[common], help="graph conditions and rigidity certificate")
    p.add_argument("--input", help="graph or complex JSON (default: stdin)")
    p.set_defaults(func=cmd_racg_check)
    p = racg.add_parser("vcd", parents=[common], help="virtual cohomological dimension")
    p.add_argument("--input")
    p.add_argument("--exhaustive", action="store_true", help="scan every simplex complement")
    p.set_defaults(func=cmd_racg_vcd)

    gp = sub.add_parser("gp", help="the Z_p construction").add_subparsers(dest="action", required=True)
    for name, func in (("verify", cmd_gp_verify), ("export", cmd_gp_export)):
        p = gp.add_parser(name, parents=[common])
        p.add_argument("-p", type=int, required=True, help="odd prime")
        p.add_argument("--triangulation", choices=("nosquare", "barycentric"))
        p.add_argument("--subdivisions", type=int, help="barycentric subdivisions (implies --triangulation barycentric)")
        p.add_argument("--frequency", type=int, default=3, help="rows per wedge of the square-free triangulation")
        p.add_argument("--collar", type=int, default=1, help="strip rows of the square-free triangulation")
        p.set_defaults(func=func)
        if name == "export":
            p.add_argument("--stage", choices=STAGES, required=True)
            p.add_argument("--output", help="write the complex here (default: stdout)")

    prod = sub.add_parser("product", help="dimension bounds for direct products").add_subparsers(dest="action", required=True)
    p = prod.add_parser("bounds", parents=[common])
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--profile", help='JSON list like [{"d":3,"exponent":3,"mult":1}]')
    src.add_argument("--profiles", help="file holding such a list")
    p.set_defaults(func=cmd_product_bounds)

    spine = sub.add_parser("spine", help="quotient trees and Out/Aut bounds").add_subparsers(dest="action", required=True)
    for name, func in (("enumerate", cmd_spine_enumerate), ("verify", cmd_spine_verify), ("bounds", cmd_spine_bounds)):
        p = spine.add_parser(name, parents=[common])
        p.add_argument("-r", type=int, required=True, help="number of free factors")
        if name == "bounds":
            p.add_argument("--profiles", help="JSON file with one factor profile per factor")
        p.set_defaults(func=func)

    p = sub.add_parser("cohomology", parents=[common], help="integral cohomology of a complex")
    p.add_argument("--input")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--relative", help="subcomplex JSON for relative cohomology")
    p.set_defaults(func=cmd_cohomology)
    return parser


def _command_name(args) -> str:
    return " ".join(x for x in (args.group, getattr(args, "action", None)) if x)


def main(argv=None) -> int:
    level = os.environ.get("COXDIM_LOG", "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        level = "WARNING"
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "r", None) is not None and args.r < 2:
        parser.error("-r must be at least 2")
    if args.threads < 1:
        parser.error("--threads must be positive")
    start = time.perf_counter()
    try:
        inputs, results, ok = args.func(args)
    except (InputError, ValueError) as e:
        print(f"coxdim: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    elapsed = time.perf_counter() - start
    report = {
        "command": _command_name(args),
        "inputs": inputs,
        "results": results,
        "timing": {"seconds": round(elapsed, 3)} if args.timing else None,
        "version": __version__,
    }
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    elif not (args.group == "gp" and args.action == "export" and not args.output):
        print(f"{report['command']} (coxdim {__version__})")
        if args.group == "cohomology":
            for n, g in results["groups"].items():
                print(f"  H^{n} = {g}")
        else:
            for line in _table(_human(results), "  "):
                print(line)
        if args.timing:
            print(f"  time: {elapsed:.3f}s")
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
