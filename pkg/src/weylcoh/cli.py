"""Command-line front end.

Every command builds a report dictionary; ``--format json`` dumps it with
sorted keys, ``--format text`` prints it for humans.  All numbers are exact:
integers stay integers and rationals are written ``"num/den"``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .appendix import reproduce_appendix_a
from .cohomology import build_action, default_max_group, h1_kernel, twist_character
from .diagrams import (
    DiagramSpecError,
    as_collection,
    diagram_automorphisms,
    dynkaut_integrality,
    dynkin_diagram,
    fold,
    generate_permutation_group,
    gram_matrix,
    parse_diagram_spec,
    parse_permutation,
)
from .linalg import IntMatrix, RatMatrix
from .suites import SuiteError, load_suite, verify_kernel_suite
from .weyl import (
    OrderBoundError,
    collection_order,
    contains_minus_identity,
    default_max_order,
    folding_embed,
    generate_weyl,
    involution_classes,
    verify_folding_iso,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def exact(x: Any) -> Any:
    """Convert results into JSON-ready values without ever producing a float."""
    if isinstance(x, IntMatrix):
        return x.to_rows()
    if isinstance(x, RatMatrix):
        return [[exact(e) for e in x.row(i)] for i in range(x.rows)]
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [exact(v) for v in x]
    if isinstance(x, float):
        raise TypeError("floats are not allowed in reports")
    return str(x)


def _limits(args) -> tuple[int, int]:
    max_order = args.max_order if args.max_order is not None else default_max_order()
    max_group = args.max_group if args.max_group is not None else default_max_group()
    return max_order, max_group


def _perms(c, actions: Sequence[str] | None):
    return [parse_permutation(a, c.rank) for a in (actions or [])]


# -- commands -----------------------------------------------------------------

def cmd_gram(args) -> tuple[dict, bool]:
    c = parse_diagram_spec(args.spec)
    return {
        "diagram": c.label,
        "multiplicities": list(c.multiplicities),
        "gram": gram_matrix(c),
    }, True


def cmd_weyl(args) -> tuple[dict, bool]:
    c = parse_diagram_spec(args.spec)
    max_order, _ = _limits(args)
    w = generate_weyl(c, max_order=max_order)
    out: dict[str, Any] = {
        "diagram": c.label,
        "order": w.order,
        "expected_order": collection_order(c),
        "generators": w.generators,
    }
    if args.minus_identity:
        out["contains_minus_identity"] = contains_minus_identity(w)
    if args.involutions:
        out["involution_classes"] = [
            {
                "representative": cls.representative,
                "class_size": cls.class_size,
                "minus_one_multiplicity": cls.minus_one_multiplicity,
            }
            for cls in involution_classes(w)
        ]
    return out, w.order == collection_order(c)


def cmd_fold(args) -> tuple[dict, bool]:
    c = parse_diagram_spec(args.spec)
    max_order, max_group = _limits(args)
    subgroup = generate_permutation_group(_perms(c, args.action), c.rank, max_order=max_group)
    folded = fold(c, subgroup)
    w = generate_weyl(c, max_order=max_order)
    images = folding_embed(w, subgroup, folded)
    rep = verify_folding_iso(w, subgroup, folded, max_order=max_order)
    return {
        "diagram": c.label,
        "subgroup_order": len(subgroup),
        "orbits": [
            {
                "nodes": [i + 1 for i in orb],
                "kind": kind.value,
                "pairs": [[a + 1, b + 1] for a, b in pairs],
            }
            for orb, kind, pairs in zip(folded.orbits, folded.kinds, folded.pairs)
        ],
        "basis": folded.basis,
        "gram": folded.gram,
        "classified_type": folded.classified_type,
        "images": images,
        "fixed_order": rep.fixed_order,
        "image_order": rep.image_order,
        "quotient_order": rep.quotient_order,
        "abstract_order": rep.abstract_order,
        "images_invariant": rep.images_invariant,
        "isomorphism": rep.isomorphism,
    }, rep.isomorphism


def ade_diagrams(max_rank: int):
    for n in range(1, max_rank + 1):
        yield dynkin_diagram("A", n)
    for n in range(4, max_rank + 1):
        yield dynkin_diagram("D", n)
    for n in (6, 7, 8):
        if n <= max_rank:
            yield dynkin_diagram("E", n)


def lemma34_reports(max_rank: int):
    out = []
    for d in ade_diagrams(max_rank):
        for p in diagram_automorphisms(as_collection(d)):
            if not p.is_identity():
                out.append(dynkaut_integrality(d, p))
    return out


def cmd_lemma34(args) -> tuple[dict, bool]:
    reports = lemma34_reports(args.max_rank)
    ok = all(not r.all_integral for r in reports)
    return {
        "max_rank": args.max_rank,
        "checked": len(reports),
        "all_non_integral": ok,
        "cases": [
            {
                "diagram": r.diagram,
                "automorphism": r.permutation,
                "all_integral": r.all_integral,
                "witness": None if r.witness is None else
                {"row": r.witness[0], "col": r.witness[1], "value": r.witness[2]},
            }
            for r in reports
        ],
    }, ok


def _kernel_dict(a, rep) -> dict:
    reps = rep.classes.representatives
    return {
        "diagram": rep.diagram,
        "action": list(rep.action),
        "group_order": rep.group_order,
        "weyl_order": rep.weyl_order,
        "cocycle_count": rep.cocycle_count,
        "class_count": rep.class_count,
        "orbit_sizes": list(rep.classes.orbit_sizes),
        "trivial_class": rep.classes.trivial_index,
        "representatives": [
            {
                "values_at_generators": [IntMatrix(a.dim, a.dim, v) for v in c.generator_values],
                "character": list(twist_character(a, c).values),
            }
            for c in reps
        ],
    }


def cmd_h1(args) -> tuple[dict, bool]:
    c = parse_diagram_spec(args.spec)
    max_order, max_group = _limits(args)
    a = build_action(c, gens=_perms(c, args.action), max_order=max_order, max_group=max_group)
    rep = h1_kernel(a)
    out = _kernel_dict(a, rep)
    out["untwisted_character"] = list(twist_character(a).values)
    ok = True
    if args.kernel:
        out["kernel"] = list(rep.kernel)
        out["trivial_kernel"] = rep.trivial_kernel
        ok = rep.trivial_kernel
    return out, ok


def cmd_verify(args) -> tuple[dict, bool]:
    suite = load_suite(args.suite)
    max_order, max_group = _limits(args)
    rep = verify_kernel_suite(suite, max_order=max_order, max_group=max_group)
    entries = []
    for r in rep.results:
        e: dict[str, Any] = {
            "diagram": r.entry.diagram,
            "action": list(r.entry.action),
            "passed": r.passed,
            "checks": r.checks,
        }
        if r.error is not None:
            e["error"] = r.error
        if r.report is not None:
            e.update(
                weyl_order=r.report.weyl_order,
                group_order=r.report.group_order,
                cocycle_count=r.report.cocycle_count,
                class_count=r.report.class_count,
                trivial_kernel=r.report.trivial_kernel,
            )
        if r.entry.reference_cocycle is not None:
            e["reference_match"] = r.reference_match
        entries.append(e)
    out: dict[str, Any] = {"suite": rep.name, "entries": entries}
    ok = rep.passed
    if rep.name == "appendix-a":
        app = reproduce_appendix_a()
        out["appendix_a"] = {
            "weyl_order": app.weyl_order,
            "cocycle_count": app.cocycle_count,
            "class_count": app.class_count,
            "kernel_upper_bound": app.kernel_upper_bound,
            "trivial_kernel": app.trivial_kernel,
            "representative_match": app.representative_match,
            "nontrivial_representatives": app.representatives,
            "char_poly_g": app.char_poly_g.integer_coefficients(),
            "char_poly_wg": app.char_poly_wg.integer_coefficients(),
            "checks": app.checks,
        }
        ok = ok and app.passed
    out["passed"] = ok
    return out, ok


# -- output -------------------------------------------------------------------

def _is_matrix(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(r, list) for r in v) \
        and all(not isinstance(x, (list, dict)) for r in v for x in r)


def _render(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not (isinstance(v, list) and not _is_matrix(v)
                                                           and all(not isinstance(x, (dict, list)) for x in v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif _is_matrix(value):
        width = max(len(str(x)) for r in value for x in r)
        lines.extend(pad + "[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in value)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}- [{i}]")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def emit(report: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        stream.write("\n".join(_render(report)) + "\n")


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-order", type=int, default=None,
                        help="largest Weyl group to enumerate (env WEYLCOH_MAX_ORDER)")
    common.add_argument("--max-group", type=int, default=None,
                        help="largest automorphism group (env WEYLCOH_MAX_GROUP)")
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock time (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="weylcoh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gram", parents=[common], help="Gram matrix of a diagram collection")
    p.add_argument("spec")
    p.set_defaults(func=cmd_gram)

    for name, helptext in (("weyl", "enumerate a Weyl group"),
                           ("involutions", "involution classes of a Weyl group")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("spec")
        p.add_argument("--involutions", action="store_true", default=name == "involutions")
        p.add_argument("--minus-identity", action="store_true")
        p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("fold", parents=[common], help="fold a diagram and check the fixed-subgroup isomorphism")
    p.add_argument("spec")
    p.add_argument("--action", action="append", help="generator in cycle notation (repeatable)")
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("lemma34", parents=[common], help="non-integrality of (C - I) A^-1 for ADE automorphisms")
    p.add_argument("--max-rank", type=int, default=8)
    p.set_defaults(func=cmd_lemma34)

    p = sub.add_parser("h1", parents=[common], help="H^1(G, W) and its kernel in H^1(G, GL)")
    p.add_argument("spec")
    p.add_argument("--action", action="append", help="generator in cycle notation (repeatable)")
    p.add_argument("--kernel", action="store_true")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("verify", parents=[common], help="run a kernel-verification suite")
    p.add_argument("--suite", default="default", help="embedded suite name or manifest path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "format", "command", "timing")}
    start = time.perf_counter()
    try:
        results, ok = args.func(args)
    except (DiagramSpecError, SuiteError, OrderBoundError, OverflowError, FileNotFoundError,
            ValueError, IndexError) as exc:
        sys.stderr.write(f"weylcoh {args.command}: error: {exc}\n")
        return EXIT_ERROR
    report = {
        "command": args.command,
        "inputs": inputs,
        "results": exact(results),
        "version": __version__,
    }
    if args.timing:
        report["timing_ms"] = round((time.perf_counter() - start) * 1000)
    emit(report, args.format)
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
