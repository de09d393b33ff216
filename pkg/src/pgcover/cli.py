"""Command line interface.

Exit status: 0 pass / success, 1 violations found, 2 parameter, hypothesis
or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import formats
from .constructions import KINDS, ConstructionError, ConstructionRecipe, build
from .covers import (CoverError, PartialCover, PointSet, dualize_cover, dualize_points, holes,
                     holes_collinear, holes_in_common_hyperplane, minimal_reduce)
from .galois import FieldError, field_new
from .projective import GeometryError
from .verify import (DEFAULT_BUDGET, VerifyError, verify_hole_theorem,
                     verify_reduction_uniqueness, verify_structure_theorem,
                     verify_tangent_bound)

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=2, help="projective dimension (default 2)")
    p.add_argument("--p", type=int, required=True, help="field characteristic")
    p.add_argument("--h", type=int, default=1, help="extension degree (default 1)")
    p.add_argument("--modulus", type=int, nargs="+",
                   help="irreducible polynomial coefficients c_0 .. c_h")


def _out_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--out", help="output file (.json for JSON, text otherwise)")
    p.add_argument("--format", choices=["auto", "json", "text"], default="auto",
                   help="stdout format; auto = text on a terminal, JSON otherwise")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgcover", description="Partial covers and blocking sets of PG(n, q).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an extremal configuration")
    p.add_argument("kind", choices=KINDS)
    _field_args(p)
    p.add_argument("--a", type=int, default=None, help="number of extra hyperplanes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--recipe", help="where to write the recipe (default: OUT.recipe.json)")
    _out_args(p)

    p = sub.add_parser("replay", help="rebuild a cover from a recipe file")
    p.add_argument("recipe")
    _out_args(p)

    for name, helptext in [("holes", "list the holes of a cover file"),
                           ("reduce", "reduce a cover to a minimal cover"),
                           ("dualize", "swap hyperplanes and points")]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input")
        _out_args(p)

    p = sub.add_parser("verify", help="check a theorem by enumeration")
    p.add_argument("theorem", choices=["holes", "structure", "tangents", "reduction"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p", type=int)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--modulus", type=int, nargs="+")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--sampler", choices=["uniform", "pencil_perturbed"], default="uniform")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None,
                   help=f"max exhaustive subsets (default $PGCOVER_BUDGET or {DEFAULT_BUDGET})")
    p.add_argument("--threads", type=int, default=0, help="worker processes (default: all cores)")
    p.add_argument("--input", help="point-set file for the tangent check")
    p.add_argument("--violations-dir", help="also write each stored counterexample as a cover file")
    _out_args(p)
    return parser


def _stdout_format(args) -> str:
    if args.format != "auto":
        return args.format
    return "text" if sys.stdout.isatty() else "json"


def _spec(args):
    if args.p is None:
        raise UsageError("--p is required")
    return field_new(args.p, args.h, args.modulus)


def _emit(obj, args) -> None:
    if args.out:
        formats.write(obj, args.out)
    else:
        sys.stdout.write(formats.dumps(obj, _stdout_format(args)))


def _hole_summary(cover: PartialCover) -> str:
    H = holes(cover)
    if not len(H):
        return "holes=0 (cover)"
    pg = cover.space
    where = "line" if pg.n == 2 else "hyperplane"
    if holes_in_common_hyperplane(H) is not None:
        return f"holes={len(H)}, in one {where}"
    if pg.n == 2 and _on_two_lines(H):
        return f"holes={len(H)}, on two lines"
    return f"holes={len(H)}, not in one {where}"


def _on_two_lines(H: PointSet) -> bool:
    pg = H.space
    pts = list(H.indices)
    first = pts[0]
    for other in pts[1:]:
        line = (pg.masks[first] & pg.masks[other]).bit_length() - 1
        rest = H.mask & ~pg.masks[line]
        rest_pts = PointSet.from_mask(pg, rest)
        if len(rest_pts) <= 1 or holes_collinear(rest_pts):
            return True
    return False


def cmd_construct(args) -> int:
    spec = _spec(args)
    a = args.a
    if a is None:
        a = (spec.q - 2) // 3 if args.kind == "example16" else 0
    con = build(ConstructionRecipe(args.kind, args.n, spec, a, args.seed))
    _emit(con.cover, args)
    recipe_path = args.recipe or (f"{args.out}.recipe.json" if args.out else None)
    if recipe_path:
        Path(recipe_path).write_text(json.dumps(con.recipe.to_json()) + "\n")
    summary = f"{args.kind}: {len(con.cover)} hyperplanes, {_hole_summary(con.cover)}"
    print(summary, file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_replay(args) -> int:
    recipe = ConstructionRecipe.from_json(json.loads(Path(args.recipe).read_text()))
    con = build(recipe)
    _emit(con.cover, args)
    print(f"{recipe.kind}: {len(con.cover)} hyperplanes, {_hole_summary(con.cover)}",
          file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def _read_cover(path: str) -> PartialCover:
    obj = formats.read(path)
    if not isinstance(obj, PartialCover):
        raise UsageError(f"{path} holds points, expected hyperplanes")
    return obj


def cmd_holes(args) -> int:
    cover = _read_cover(args.input)
    H = holes(cover)
    pg = cover.space
    fmt = _stdout_format(args)
    witness = holes_in_common_hyperplane(H) if len(H) else None
    if fmt == "json" or args.out:
        data = {"count": len(H), "holes": [list(p.coords) for p in H],
                "collinear": holes_collinear(H) if len(H) else None,
                "common_hyperplane": list(witness.coeffs) if witness else None}
        text = json.dumps(data) + "\n"
    else:
        lines = [f"holes={len(H)}"]
        lines += [" ".join(map(str, p.coords)) for p in H]
        if witness is not None:
            lines.append("common hyperplane: " + " ".join(map(str, witness.coeffs)))
        elif len(H):
            lines.append("no common " + ("line" if pg.n == 2 else "hyperplane"))
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_reduce(args) -> int:
    red = minimal_reduce(_read_cover(args.input))
    _emit(red.cover, args)
    print(f"reduced {len(red.cover) + len(red.removed)} -> {len(red.cover)} hyperplanes, "
          f"uniqueness_guaranteed: {str(red.uniqueness_guaranteed).lower()}",
          file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_dualize(args) -> int:
    obj = formats.read(args.input)
    dual = dualize_cover(obj) if isinstance(obj, PartialCover) else dualize_points(obj)
    _emit(dual, args)
    return EXIT_OK


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("PGCOVER_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"PGCOVER_BUDGET={env!r} is not an integer") from None
    return DEFAULT_BUDGET


def cmd_verify(args) -> int:
    if args.theorem == "tangents":
        if not args.input:
            raise UsageError("verify tangents needs --input POINTSET")
        obj = formats.read(args.input)
        B = dualize_cover(obj) if isinstance(obj, PartialCover) else obj
        report = verify_tangent_bound(B)
    elif args.theorem == "reduction":
        report = verify_reduction_uniqueness(args.n, _spec(args), args.trials, args.seed)
    else:
        fn = verify_hole_theorem if args.theorem == "holes" else verify_structure_theorem
        report = fn(args.n, _spec(args), args.a, mode=args.mode, seed=args.seed,
                    samples=args.samples, budget=_budget(args), threads=args.threads,
                    sampler=args.sampler)
    data = report.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data, indent=2) + "\n")
    if args.violations_dir:
        d = Path(args.violations_dir)
        d.mkdir(parents=True, exist_ok=True)
        for k, cover in enumerate(report.violations + report.witnesses):
            if "hyperplanes" in cover:
                (d / f"{args.theorem}_{k:04d}.json").write_text(json.dumps(cover) + "\n")
    if _stdout_format(args) == "json" and not args.out:
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        print(report.summary() + f" ({report.wall_time:.2f}s)")
    if report.verdict == "FAIL":
        return EXIT_VIOLATION
    if report.verdict == "HYPOTHESIS_NOT_MET":
        return EXIT_ERROR
    return EXIT_OK


COMMANDS = {"construct": cmd_construct, "replay": cmd_replay, "holes": cmd_holes,
            "reduce": cmd_reduce, "dualize": cmd_dualize, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except formats.FormatError as exc:
        print(f"pgcover: malformed input: {exc}", file=sys.stderr)
    except (UsageError, FieldError, GeometryError, CoverError, ConstructionError,
            VerifyError, OSError, json.JSONDecodeError) as exc:
        print(f"pgcover: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
