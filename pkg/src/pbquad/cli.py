"""Command line interface.

Exit codes: 0 success or verified, 1 verification failed, 2 parse error,
3 invalid input, 4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .core import PseudoBooleanFunction
from .errors import CapExceededError, NotSubmodularError, ParseError, UniverseMismatchError
from .flowmin import min_cut_minimize
from .generate import gen_star_family
from .methods import METHODS, quadratize
from .pbfio import emit_pbf, read_function
from .verify import (
    DEFAULT_CAP,
    SECOND_DIFF_CAP,
    brute_force_min,
    is_quadratization,
    is_submodular_second_diff,
    quadratic_submodularity,
)

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3, 4


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _metric_lines(m) -> list[str]:
    return [
        f"aux_count {m.aux_count}",
        f"term_count {m.term_count}",
        f"positive_quadratic_terms {m.positive_quadratic_terms}",
        f"max_abs_coefficient {m.max_abs_coefficient}",
    ]


def cmd_quadratize(args) -> int:
    f = read_function(args.input)
    q = quadratize(f, args.method, fallback=args.fallback)
    comments = [f"quadratization method={q.method} original={q.n_original} aux={len(q.aux)}"]
    _write(args.output, emit_pbf(q.g, comments))
    if args.report:
        print("\n".join(_metric_lines(q.metrics)))
    return EXIT_OK


def cmd_verify(args) -> int:
    f = read_function(args.f)
    g = read_function(args.g)
    if args.aux < 0 or g.n_vars - args.aux != f.n_vars:
        raise UniverseMismatchError(
            f"G has {g.n_vars} variables; with --aux {args.aux} that leaves "
            f"{g.n_vars - args.aux}, but F has {f.n_vars}"
        )
    ok = is_quadratization(f, g, cap=args.cap)
    print("verified" if ok else "not a quadratization")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_minimize(args) -> int:
    g = read_function(args.g)
    if args.engine == "flow":
        res = min_cut_minimize(g)
    else:
        res = brute_force_min(g, cap=args.cap)
    print(f"value {res.value}")
    print("argmin " + " ".join(str(b) for b in res.argmin))
    return EXIT_OK


def _submodularity(f: PseudoBooleanFunction) -> str:
    if f.degree <= 2:
        return "yes" if quadratic_submodularity(f) else "no"
    if f.n_vars > SECOND_DIFF_CAP:
        return f"unknown (more than {SECOND_DIFF_CAP} variables)"
    return "yes" if is_submodular_second_diff(f) else "no"


def cmd_stats(args) -> int:
    f = read_function(args.f)
    print(f"variables {f.n_vars}")
    print(f"degree {f.degree}")
    print(f"terms {len(f)}")
    print(f"submodular {_submodularity(f)}")
    return EXIT_OK


def cmd_compare(args) -> int:
    f = read_function(args.f)
    header = ("method", "aux", "terms", "pos_quad", "max_coef")
    rows = [header]
    for method in METHODS:
        try:
            m = quadratize(f, method, fallback=args.fallback).metrics
        except ValueError:
            rows.append((method, "n/a", "n/a", "n/a", "n/a"))
            continue
        rows.append((method, str(m.aux_count), str(m.term_count),
                     str(m.positive_quadratic_terms), str(m.max_abs_coefficient)))
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    for r in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return EXIT_OK


def _read_edges(path: str) -> list[tuple[int, int]]:
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError(f"{path}:{lineno}: expected two vertex numbers")
            edges.append((int(parts[0]), int(parts[1])))
    return edges


def cmd_gen(args) -> int:
    edges = _read_edges(args.edges)
    n = args.n if args.n is not None else max((max(e) for e in edges), default=0)
    f = gen_star_family(edges, n)
    _write(args.output, emit_pbf(f, [f"star family, hub x0 is variable {n + 1}"]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pbquad", description="Quadratization of pseudo-Boolean polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quadratize", help="quadratize a .pbf polynomial")
    p.add_argument("input")
    p.add_argument("--method", choices=METHODS, default="aggregate")
    p.add_argument("--fallback", choices=("ishikawa", "chain"), default="ishikawa",
                   help="positive-term rule used after aggregation")
    p.add_argument("-o", "--output")
    p.add_argument("--report", action="store_true", help="print quadratization metrics")
    p.set_defaults(func=cmd_quadratize)

    p = sub.add_parser("verify", help="check that G quadratizes F")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--aux", type=int, required=True, help="number of trailing auxiliary variables of G")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("minimize", help="exact minimum of a polynomial")
    p.add_argument("g")
    p.add_argument("--engine", choices=("brute", "flow"), default="brute")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("stats", help="degree, size and submodularity")
    p.add_argument("f")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("compare", help="metrics of every method")
    p.add_argument("f")
    p.add_argument("--fallback", choices=("ishikawa", "chain"), default="ishikawa")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="generate instance families")
    p.add_argument("--family", choices=("star",), required=True)
    p.add_argument("--edges", required=True, help="file with one 'i j' edge per line")
    p.add_argument("--n", type=int, help="vertex count (default: largest vertex in the edge file)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UniverseMismatchError, NotSubmodularError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
