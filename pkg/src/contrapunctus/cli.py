"""Command-line front end: parsing, dispatch, and formatting only.

Every data command prints deterministically (fixed ordering, no
timestamps), so identical invocations are byte-identical regardless of
the CONTRAPUNCTUS_THREADS worker count. Exit codes: 0 success, 2 usage
error (including unparseable world specs and morphisms), 1 engine error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .closure import close_involutive, close_iterated, close_single_step
from .counterpoint import (
    ContrapuntalContext,
    admitted_pairs,
    counterpoint_symmetries,
    is_restricted_family_morphism,
    report_entry,
    successors_document,
    successors_table,
)
from .errors import ContrapunctusError, ParseError
from .fuzzy import FuzzyConsonance, pseudocomplement
from .lattice import Carrier, SubSet
from .polarity import (
    classify_dichotomies,
    dichotomies_for,
    enumerate_quasipolarities,
    quasipolarities_for,
    search_nonpolar_quasipolarity,
)
from .worlds import WORLD_KINDS, World, parse_morphism, parse_world

FORMATS = ("table", "json", "csv")


def _parse_elements(world: World, text: str) -> list[int]:
    tokens = [tok for tok in text.split(",") if tok != ""]
    if not tokens:
        raise ParseError(f"empty element list {text!r}", token=text)
    return [world.parse_element(tok) for tok in tokens]


def _parse_grades(text: str) -> list[Fraction]:
    grades = []
    for token in text.split(","):
        try:
            grade = Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot parse grade {token!r}", token=token) from None
        grades.append(grade)
    return grades


def _labels(world: World, indices) -> str:
    return ",".join(world.element_label(i) for i in indices)


def _emit(args, doc: dict, table_lines: list[str], csv_header: list[str], csv_rows: list[list]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(csv_header)
        # booleans render as json-style true/false in every format
        writer.writerows(
            [["true" if v is True else "false" if v is False else v for v in row] for row in csv_rows]
        )
        sys.stdout.write(buffer.getvalue())
    else:
        for line in table_lines:
            sys.stdout.write(line + "\n")


def _cmd_worlds(args) -> int:
    rows = [
        {"kind": kind, "spec": spec, "morphisms": grammar, "example": example}
        for kind, spec, grammar, example in WORLD_KINDS
    ]
    _emit(
        args,
        {"worlds": rows},
        [f"{r['kind']:<10} {r['spec']:<20} {r['example']:<16} {r['morphisms']}" for r in rows],
        ["kind", "spec", "example", "morphisms"],
        [[r["kind"], r["spec"], r["example"], r["morphisms"]] for r in rows],
    )
    return 0


def _cmd_quasipolarities(args) -> int:
    world = parse_world(args.world)
    morphisms = [str(q) for q in enumerate_quasipolarities(world)]
    _emit(
        args,
        {"world": world.id, "quasipolarities": morphisms},
        morphisms,
        ["morphism"],
        [[m] for m in morphisms],
    )
    return 0


def _cmd_dichotomies(args) -> int:
    world = parse_world(args.world)
    if args.classify:
        classes = classify_dichotomies(world)
        rows = []
        for cls in classes:
            rep = cls.representative
            rows.append(
                {
                    "representative": rep.K.indices(),
                    "orbit_size": cls.orbit_size,
                    "has_quasipolarity": cls.has_quasipolarity,
                    "is_strong": cls.is_strong,
                    "witnesses": [str(w) for w in rep.witnesses],
                }
            )
        _emit(
            args,
            {"world": world.id, "classes": rows},
            [
                f"{_labels(world, r['representative'])}  orbit_size={r['orbit_size']} "
                f"quasipolarity={'yes' if r['has_quasipolarity'] else 'no'} "
                f"strong={'yes' if r['is_strong'] else 'no'}"
                for r in rows
            ],
            ["representative", "orbit_size", "has_quasipolarity", "is_strong", "witnesses"],
            [
                [
                    " ".join(str(i) for i in r["representative"]),
                    r["orbit_size"],
                    r["has_quasipolarity"],
                    r["is_strong"],
                    " ".join(r["witnesses"]),
                ]
                for r in rows
            ],
        )
        return 0
    if not args.polarity:
        raise ParseError("dichotomies needs --polarity or --classify")
    p = parse_morphism(args.polarity, world)
    halves = dichotomies_for(world, p)
    _emit(
        args,
        {
            "world": world.id,
            "polarity": str(p),
            "dichotomies": [half.indices() for half in halves],
        },
        [f"{_labels(world, half)} / {_labels(world, _complement(half))}" for half in halves],
        ["K", "D"],
        [
            [
                " ".join(str(i) for i in half.indices()),
                " ".join(str(i) for i in _complement(half).indices()),
            ]
            for half in halves
        ],
    )
    return 0


def _complement(half: SubSet) -> SubSet:
    return SubSet(half.carrier, half.bits ^ ((1 << half.carrier.size) - 1))


def _cmd_strong(args) -> int:
    world = parse_world(args.world)
    half = SubSet.from_indices(world.carrier, _parse_elements(world, args.kappa))
    witnesses = quasipolarities_for(world, half)
    strong = len(witnesses) == 1
    if strong:
        line = f"strong: true; polarity: {witnesses[0]}"
    elif witnesses:
        line = f"strong: false; witnesses: {', '.join(str(w) for w in witnesses)}"
    else:
        line = "strong: false; witnesses: none"
    _emit(
        args,
        {
            "world": world.id,
            "kappa": half.indices(),
            "strong": strong,
            "polarity": str(witnesses[0]) if strong else None,
            "witnesses": [str(w) for w in witnesses],
        },
        [line],
        ["strong", "polarity", "witnesses"],
        [[strong, str(witnesses[0]) if strong else "", " ".join(str(w) for w in witnesses)]],
    )
    return 0


def _build_context(args) -> ContrapuntalContext:
    world = parse_world(args.world)
    indices = _parse_elements(world, args.kappa)
    polarity = None
    if getattr(args, "polarity", None):
        polarity = parse_morphism(args.polarity, world)
    return ContrapuntalContext.build(world, indices, polarity)


def _admitted_tokens(ctx: ContrapuntalContext, report) -> list[str]:
    base = ctx.base
    return [
        f"{base.element_label(c)}:{base.element_label(k)}" for c, k in admitted_pairs(ctx, report)
    ]


def _cmd_symmetries(args) -> int:
    ctx = _build_context(args)
    interval = ctx.base.parse_element(args.interval)
    report = counterpoint_symmetries(
        ctx, (ctx.base.ring.zero, interval), restricted=args.restricted_family
    )
    entry = report_entry(ctx, interval, report)
    outside = sum(1 for g in report.symmetries if not is_restricted_family_morphism(g))
    doc = {
        "world": ctx.base.id,
        "K": ctx.dichotomy.K.indices(),
        "polarity": str(ctx.polarity),
        "restricted_family": args.restricted_family,
        "maxima_outside_restricted_family": outside,
        **entry,
    }
    lines = [
        f"world: {ctx.base.id}",
        f"K: {_labels(ctx.base, ctx.dichotomy.K)}",
        f"polarity: {ctx.polarity}",
        f"interval: {ctx.base.element_label(interval)}",
        f"max_meet_size: {report.max_meet_size}",
        f"symmetries: {' '.join(entry['symmetries'])}",
        f"admitted: {' '.join(_admitted_tokens(ctx, report))}",
    ]
    if outside:
        lines.append(f"maxima outside the restricted family e0+eU.(1+eW): {outside}")
    _emit(
        args,
        doc,
        lines,
        ["interval", "max_meet_size", "symmetries", "admitted"],
        [
            [
                ctx.base.element_label(interval),
                report.max_meet_size,
                " ".join(entry["symmetries"]),
                " ".join(_admitted_tokens(ctx, report)),
            ]
        ],
    )
    return 0


def _cmd_successors(args) -> int:
    ctx = _build_context(args)
    table = successors_table(ctx)
    doc = successors_document(ctx, table)
    lines = [
        f"world: {ctx.base.id}",
        f"K: {_labels(ctx.base, ctx.dichotomy.K)}",
        f"polarity: {ctx.polarity}",
    ]
    csv_rows = []
    for interval in sorted(table):
        report = table[interval]
        entry = report_entry(ctx, interval, report)
        lines.append(
            f"interval {ctx.base.element_label(interval)}: max_meet_size={report.max_meet_size}"
        )
        lines.append(f"  symmetries: {' '.join(entry['symmetries'])}")
        lines.append(f"  admitted: {' '.join(_admitted_tokens(ctx, report))}")
        csv_rows.append(
            [
                ctx.base.element_label(interval),
                report.max_meet_size,
                " ".join(entry["symmetries"]),
                " ".join(_admitted_tokens(ctx, report)),
            ]
        )
    _emit(args, doc, lines, ["interval", "max_meet_size", "symmetries", "admitted"], csv_rows)
    return 0


def _cmd_closure(args) -> int:
    world = parse_world(args.world)
    morphism = parse_morphism(args.map, world)
    subset = SubSet.from_indices(world.carrier, _parse_elements(world, args.set))
    if args.mode == "involutive":
        closed = close_involutive(morphism, subset)
    elif args.mode == "single":
        closed = close_single_step(morphism, subset)
    else:
        closed = close_iterated(morphism, subset)
    _emit(
        args,
        {
            "world": world.id,
            "map": str(morphism),
            "mode": args.mode,
            "set": subset.indices(),
            "closed": closed.indices(),
        },
        [f"closed: {_labels(world, closed)}"],
        ["mode", "set", "closed"],
        [[args.mode, " ".join(map(str, subset.indices())), " ".join(map(str, closed.indices()))]],
    )
    return 0


def _cmd_pseudocomplement(args) -> int:
    grades = _parse_grades(args.grades)
    carrier = Carrier(len(grades), f"graded {len(grades)}-element carrier")
    kappa = FuzzyConsonance.of(carrier, grades)
    result = pseudocomplement(kappa)
    _emit(
        args,
        {
            "grades": [str(g) for g in kappa.grades],
            "pseudocomplement": [str(g) for g in result.grades],
        },
        [",".join(str(g) for g in result.grades)],
        ["index", "grade", "pseudocomplement"],
        [[i, str(g), str(r)] for i, (g, r) in enumerate(zip(kappa.grades, result.grades))],
    )
    return 0


def _cmd_explore(args) -> int:
    world = parse_world(args.world)
    count = len(enumerate_quasipolarities(world))
    missing_dichotomy = search_nonpolar_quasipolarity(world, require="dichotomy")
    missing_strong = search_nonpolar_quasipolarity(world, require="strong")
    doc = {
        "world": world.id,
        "quasipolarities": count,
        "every_quasipolarity_has_dichotomy": missing_dichotomy is None,
        "first_without_dichotomy": str(missing_dichotomy[0]) if missing_dichotomy else None,
        "every_quasipolarity_is_polarity": missing_strong is None,
        "first_non_polar": str(missing_strong[0]) if missing_strong else None,
        "evidence": missing_strong[1] if missing_strong else None,
    }
    lines = [f"world: {world.id}", f"quasipolarities: {count}"]
    if missing_dichotomy is None:
        lines.append("dichotomy search: every quasipolarity admits a dichotomy")
    else:
        lines.append(f"dichotomy search: {missing_dichotomy[0]} admits no dichotomy")
    if missing_strong is None:
        lines.append("polarity search: every quasipolarity admits a strong dichotomy")
    else:
        p, evidence = missing_strong
        lines.append(
            f"polarity search: {p} admits no strong dichotomy "
            f"(tested {evidence['tested_subsets']} half-sets)"
        )
        if evidence.get("sample_witnesses"):
            sample = ",".join(str(i) for i in evidence["sample_subset"])
            lines.append(
                f"  e.g. {{{sample}}} is exchanged by: {', '.join(evidence['sample_witnesses'])}"
            )
    _emit(
        args,
        doc,
        lines,
        ["world", "quasipolarities", "all_have_dichotomy", "first_without_dichotomy",
         "all_are_polarities", "first_non_polar"],
        [[world.id, count, missing_dichotomy is None,
          str(missing_dichotomy[0]) if missing_dichotomy else "",
          missing_strong is None, str(missing_strong[0]) if missing_strong else ""]],
    )
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMATS, default="table", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contrapunctus",
        description="Counterpoint engine on finite morphism worlds.",
        epilog=(
            "Element lists are comma-separated; in power-set worlds elements are "
            "hyphen-joined member lists such as a-b, or S (full set) and 0 (empty set)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("worlds", help="list supported worlds")
    p.add_argument("action", choices=["list"])
    _add_format(p)
    p.set_defaults(handler=_cmd_worlds)

    p = sub.add_parser("quasipolarities", help="enumerate quasipolarities of a world")
    p.add_argument("--world", required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_quasipolarities)

    p = sub.add_parser("dichotomies", help="dichotomies of a polarity, or orbit classification")
    p.add_argument("--world", required=True)
    p.add_argument("--polarity")
    p.add_argument("--classify", action="store_true")
    _add_format(p)
    p.set_defaults(handler=_cmd_dichotomies)

    p = sub.add_parser("strong", help="test a half-set for strongness")
    p.add_argument("--world", required=True)
    p.add_argument("--kappa", required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_strong)

    p = sub.add_parser("symmetries", help="counterpoint symmetries for one interval")
    p.add_argument("--world", required=True)
    p.add_argument("--kappa", required=True)
    p.add_argument("--interval", required=True)
    p.add_argument("--restricted-family", action="store_true")
    p.add_argument("--polarity", help="explicit polarity for a non-strong dichotomy")
    _add_format(p)
    p.set_defaults(handler=_cmd_symmetries)

    p = sub.add_parser("successors", help="admitted-successor table for all intervals")
    p.add_argument("--world", required=True)
    p.add_argument("--kappa", required=True)
    p.add_argument("--polarity", help="explicit polarity for a non-strong dichotomy")
    _add_format(p)
    p.set_defaults(handler=_cmd_successors)

    p = sub.add_parser("closure", help="closure of a subset under an endomap")
    p.add_argument("--world", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--mode", choices=["involutive", "single", "iterated"], default="iterated")
    _add_format(p)
    p.set_defaults(handler=_cmd_closure)

    p = sub.add_parser("pseudocomplement", help="Heyting pseudocomplement of a fuzzy grading")
    p.add_argument("--grades", required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_pseudocomplement)

    p = sub.add_parser(
        "explore-open-questions",
        help="search a world for quasipolarities without (strong) dichotomies",
    )
    p.add_argument("--world", required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_explore)

    p = sub.add_parser("serve", help="run the HTTP query service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ContrapunctusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        witnesses = getattr(exc, "witnesses", ())
        if witnesses:
            print(f"witnesses: {', '.join(str(w) for w in witnesses)}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
