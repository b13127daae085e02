"""Command-line front end.

Every subcommand writes one JSON report (to ``--out`` or standard output)
with the fields tool, command, config, results, summary, consistent and
wall_time, in that order.  Exit status: 0 when every check agrees with
theory, 1 when something disagrees, 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from random import Random

from . import __version__
from . import battery as bt
from . import collineations as co
from . import flats as fl
from . import models as md
from . import projectivities as pj
from . import serialize as se
from . import witnesses as wt
from .flats import DegenerateError
from .scalars import ring_from_tag

BATTERY_BUDGET = 200


class UsageError(Exception):
    pass


# -- input helpers ----------------------------------------------------------

def _ring(spec: str):
    try:
        return ring_from_tag(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _model(spec: str, height: int):
    try:
        return md.model_from_spec(spec, height)
    except (ValueError, OSError) as exc:
        raise UsageError(f"cannot build model {spec!r}: {exc}") from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _parsed(fn, data, what: str):
    try:
        return fn(data)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise UsageError(f"malformed {what}: {exc}") from None


def _quadruples_from_json(data: dict):
    src = [se.flat_from_json(x) for x in data["source"]]
    dst = [se.flat_from_json(x) for x in data["target"]]
    tags = {f.ring.tag for f in src + dst}
    if len(tags) != 1 or ("ring" in data and tags != {data["ring"]}):
        raise ValueError("points do not all belong to the declared ring")
    if any(not f.is_point for f in src + dst):
        raise ValueError("source and target must list points")
    return src, dst


def quadruples_to_json(src, dst) -> dict:
    return {"kind": "quadruples", "ring": src[0].ring.tag,
            "source": [se.flat_to_json(P) for P in src],
            "target": [se.flat_to_json(P) for P in dst]}


# -- subcommands ------------------------------------------------------------

def _classify(model, by_axiom: dict) -> str:
    if model.kind == "plane":
        ok = all(by_axiom[a] == md.PASS for a in md.AXIOM_SETS["P"] if a in by_axiom)
        return "plane of incidence" if ok else "not a plane of incidence"
    if any(by_axiom.get(a) != md.PASS for a in md.AXIOM_SETS["S"]):
        return "not a space of incidence"
    if by_axiom.get("G") == md.PASS:
        return "projective 3-space"
    return "space of incidence, non-Pappian"


def _expected_audit(spec: str, model, by_axiom: dict) -> bool:
    """Coordinate spaces satisfy S1-S8, and G iff the ring is commutative;
    the Moulton plane satisfies P1-P3.  Abstract files have no expectation."""
    if spec == "moulton":
        return all(by_axiom[a] == md.PASS for a in md.AXIOM_SETS["P"])
    if spec.startswith("file:"):
        return True
    ok = all(by_axiom[a] == md.PASS for a in md.AXIOM_SETS["S"])
    if "G" in by_axiom:
        want = md.PASS if model.ring.commutative else md.FAIL
        ok = ok and by_axiom["G"] == want
    return ok


def cmd_audit(args) -> tuple[list, dict, bool]:
    model = _model(args.model, args.height)
    requested = [s.strip() for s in args.sets.split(",")] if args.sets else (
        ["P"] if model.kind == "plane" else ["S"])
    if model.kind == "space" and "G" not in requested:
        requested.append("G")
    results = []
    if model.kind == "plane":
        # plane models have no planes of their own, so the space axioms are skipped
        requested = [s for s in requested if s not in ("S", "G")]
        for a in md.AXIOM_SETS["S"]:
            results.append(wt.audit_record(args.model, md.AuditResult(a, md.SKIPPED, coverage="none",
                                                                       seed=args.seed)))
    for s in requested:
        try:
            found = md.audit(model, s, args.budget, args.seed, True if args.exhaustive else None)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for r in found:
            rec = wt.audit_record(args.model, r)
            rec["checked"] = r.checked
            results.append(rec)
    by_axiom = {r["axiom"]: r["verdict"] for r in results}
    replays = [wt.recheck(r)["ok"] for r in results if r["verdict"] == md.FAIL]
    counts = {st: sum(1 for r in results if r["verdict"] == st) for st in (md.PASS, md.FAIL, md.SKIPPED)}
    summary = {"model_tag": model.tag, "classification": _classify(model, by_axiom), **counts,
               "witnesses_rechecked": sum(replays)}
    ok = all(replays) and _expected_audit(args.model, model, by_axiom)
    return results, summary, ok


def cmd_battery(args) -> tuple[list, dict, bool]:
    if args.model.startswith("file:"):
        raise UsageError("the battery needs a coordinate ring or the Moulton plane")
    if args.model != "moulton":
        _ring(args.model)
    report = bt.run_battery(args.model, args.budget, args.seed, args.height, args.exhaustive)
    suites = report["suites"]
    summary = {"suites": len(suites),
               "consistent_suites": sum(1 for s in suites if s["consistent"]),
               "fails": sum(s["fails"] for s in suites),
               "degenerate": sum(s["degenerate"] for s in suites)}
    return suites, summary, report["consistent"]


def _points_to_check(line, rng):
    pts = pj.sample_points(line, rng)
    return pts, ("exhaustive" if line.ring.finite else f"sampled({len(pts)})")


def cmd_reduce(args) -> tuple[dict, dict, bool]:
    if args.input:
        chain = _parsed(se.chain_from_json, _read_json(args.input), "chain file")
    else:
        ring = _ring(args.model)
        chain = pj.random_chain(ring, Random(args.seed), args.length, args.height)
    try:
        reduced = pj.reduce_chain(chain)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if isinstance(reduced, pj.AxialPerspectivity):
        out, length = se.axial_to_json(reduced), 1
    else:
        out, length = se.chain_to_json(reduced), len(reduced)
    pts, coverage = _points_to_check(chain.source, Random(args.seed))
    first_bad = pj.agree_on(chain, reduced, pts)
    equal = first_bad is None
    results = {"input": se.chain_to_json(chain), "reduced": out,
               "pointwise_equal": equal, "coverage": coverage}
    if not equal:
        results["first_disagreement"] = se.flat_to_json(first_bad)
    summary = {"input_length": len(chain), "reduced_length": length,
               "reduced_kind": out["kind"], "points_checked": len(pts), "pointwise_equal": equal}
    return results, summary, equal and length <= 2


def cmd_decompose(args) -> tuple[dict, dict, bool]:
    if args.input:
        src, dst = _parsed(_quadruples_from_json, _read_json(args.input), "quadruple file")
    else:
        ring = _ring(args.model)
        rng = Random(args.seed)
        src = co.random_general_quadruple(ring, rng, 3, args.height)
        dst = co.random_general_quadruple(ring, rng, 3, args.height)
    try:
        ks = co.decompose_four_points(src, dst)
        alt = co.decompose_four_points(src, dst, rng=Random(args.seed), force_phi0=True)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    except DegenerateError as exc:
        results = {"input": quadruples_to_json(src, dst), "error": str(exc)}
        return results, {"collineations": None, "composite_ok": False}, False
    composite_ok = all(co.compose(ks, P) == Q for P, Q in zip(src, dst))
    unique = co.uniqueness_check(src, dst, ks, alt, rng=Random(args.seed))
    plane = fl.span(*src)
    results = {"input": quadruples_to_json(src, dst),
               "collineations": [se.collineation_to_json(k) for k in ks],
               "composite_ok": composite_ok,
               "alternative": [se.collineation_to_json(k) for k in alt],
               "agrees_with_alternative": unique,
               "coverage": "exhaustive" if plane.ring.finite else "sampled"}
    summary = {"collineations": len(ks), "composite_ok": composite_ok,
               "agrees_with_alternative": unique}
    return results, summary, composite_ok and unique and len(ks) <= 4


def cmd_recheck(args) -> tuple[list, dict, bool]:
    data = _read_json(args.input)
    if isinstance(data, dict) and "kind" in data:
        records = [data]
    else:
        records = wt.records_in(data)
    if not records:
        raise UsageError("no witness records found")
    results = []
    for r in records:
        out = wt.recheck(r)
        results.append({"kind": r.get("kind"), "model": r.get("model"), **out})
    matched = sum(1 for r in results if r["ok"])
    summary = {"records": len(results), "reproduced": matched, "mismatched": len(results) - matched}
    return results, summary, matched == len(results)


def cmd_enumerate(args) -> tuple[dict, dict, bool]:
    ring = _ring(args.model)
    if not ring.finite:
        raise UsageError("enumeration needs a finite field gf:p")
    dim = 3 if args.plane else 4
    model = md.build_pg2(ring) if args.plane else md.build_pg3(ring, True)
    counts = model.counts()
    expected = md.expected_counts(ring.order, dim)
    match = counts == expected
    results = {"space": model.tag, "counts": counts, "expected": expected}
    return results, {"counts_match": match, **counts}, match


COMMANDS = {
    "audit": cmd_audit,
    "battery": cmd_battery,
    "reduce": cmd_reduce,
    "decompose": cmd_decompose,
    "recheck": cmd_recheck,
    "enumerate": cmd_enumerate,
}


# -- argument parsing ---------------------------------------------------------

def _seed(text: str) -> int:
    n = int(text)
    if not 0 <= n < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="gf:p | rational | quaternion | moulton | file:PATH")
    common.add_argument("--seed", type=_seed, default=md.DEFAULT_SEED,
                        help=f"random seed (default {md.DEFAULT_SEED})")
    common.add_argument("--budget", type=_positive, default=None,
                        help=f"sampled trials (audit {md.DEFAULT_BUDGET}, battery {BATTERY_BUDGET})")
    common.add_argument("--height", type=_positive, default=4,
                        help="coordinate height bound for infinite rings")
    common.add_argument("--out", help="write the JSON report here instead of standard output")
    common.add_argument("--exhaustive", action="store_true",
                        help="force exhaustive checks on finite models")

    parser = argparse.ArgumentParser(prog="projgeom", description="Synthetic projective geometry checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("audit", parents=[common], help="audit incidence axioms")
    p.add_argument("--sets", help="comma-separated axiom sets among P, S, VY, G")
    sub.add_parser("battery", parents=[common], help="run the configuration theorem battery")
    p = sub.add_parser("reduce", parents=[common], help="shorten a chain of perspectivities")
    p.add_argument("input", nargs="?", help="chain JSON file (default: seeded random chain)")
    p.add_argument("--length", type=_positive, default=5, help="length of the generated chain")
    p = sub.add_parser("decompose", parents=[common],
                       help="split a four-point collineation into central-axial ones")
    p.add_argument("input", nargs="?", help="quadruple JSON file (default: seeded random pair)")
    p = sub.add_parser("recheck", parents=[common], help="replay a witness file or report")
    p.add_argument("input", help="witness record or report JSON")
    p = sub.add_parser("enumerate", parents=[common], help="count the flats of PG(3, p)")
    p.add_argument("--plane", action="store_true", help="count PG(2, p) instead")
    return parser


def run(args) -> tuple[dict, int]:
    if args.budget is None:
        args.budget = BATTERY_BUDGET if args.command == "battery" else md.DEFAULT_BUDGET
    config = {"model": args.model, "seed": args.seed, "budget": args.budget, "height": args.height,
              "exhaustive": args.exhaustive, "input": getattr(args, "input", None)}
    if args.model is None and not getattr(args, "input", None):
        raise UsageError(f"{args.command} needs --model")
    start = time.perf_counter()
    results, summary, ok = COMMANDS[args.command](args)
    report = {
        "tool": {"name": "projgeom", "version": __version__},
        "command": args.command,
        "config": config,
        "results": results,
        "summary": summary,
        "consistent": ok,
        "wall_time": round(time.perf_counter() - start, 3),
    }
    return report, 0 if ok else 1


def _summary_lines(report: dict) -> list[str]:
    cfg = report["config"]
    target = cfg["input"] or cfg["model"]
    lines = [f"{report['command']} on {target} (seed {cfg['seed']})"]
    lines += [f"  {k}: {v}" for k, v in report["summary"].items()]
    lines.append("  consistent with theory" if report["consistent"] else "  INCONSISTENT")
    return lines


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = run(args)
    except UsageError as exc:
        print(f"projgeom: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2) + "\n"
    summary = "\n".join(_summary_lines(report))
    if args.out:
        Path(args.out).write_text(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
