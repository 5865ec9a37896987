"""ccx command line.

Exit codes: 0 ok, 1 a check found a violation, 2 invalid input, 3 resource
cap exceeded.  ``-i`` takes a file path, a fixture name, or ``-`` / nothing
for standard input; ``-o`` defaults to standard output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import formats
from .checks import CHECKS, check_median_graph, check_suite
from .config import DEFAULT_GEODESIC_CAP, DEFAULT_VERTEX_CAP
from .constructions import fixture, generate, realize_crossing_graph, recubulate
from .errors import InvalidInputError, ResourceCapError
from .hyperbolicity import analyze
from .hypgraphs import contact_graph, crossing_graph
from .median_core import CubeComplex, bits_to_str, sageev_dual
from .quasitree import grade_hyperplanes, graded_root_tree

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


# ---------------------------------------------------------------- I/O helpers

def _read(src: str | None) -> str:
    if src in (None, "-"):
        return sys.stdin.read()
    with open(src) as fh:
        return fh.read()


def _write(dest: str | None, text: str) -> None:
    if dest in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text)


def _complex(src: str | None) -> CubeComplex:
    if src not in (None, "-") and not os.path.exists(src):
        return fixture(src)
    text = _read(src)
    fmt = formats.document_format(text)
    if fmt == formats.WALLSPACE_FORMAT:
        return sageev_dual(formats.load_wallspace(text))
    return formats.load_complex(text)


def _wall(X: CubeComplex, token: str) -> int:
    names = [X.name(i) for i in X.walls]
    if token in names:
        return names.index(token)
    try:
        i = int(token)
    except ValueError:
        raise InvalidInputError(f"unknown wall {token!r}") from None
    if not 0 <= i < X.num_walls:
        raise InvalidInputError(f"wall index {i} out of range")
    return i


def _wall_labels(X: CubeComplex) -> dict:
    return {i: X.name(i) for i in X.walls}


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


# ---------------------------------------------------------------- commands

def cmd_cubulate(args) -> int:
    ws = formats.load_wallspace(_read(args.input))
    X = sageev_dual(ws, base=args.base, cap=args.cap)
    _write(args.output, formats.dump_complex(X))
    return EXIT_OK


def cmd_skeleton(args) -> int:
    X = _complex(args.input)
    labels = {v: bits_to_str(v, X.num_walls) for v in X.vertices}
    if args.dot:
        _write(args.dot, formats.graph_to_dot(X.skeleton, labels, name="skeleton"))
    if args.output or not args.dot:
        _write(args.output, formats.dump_graph(X.skeleton, labels))
    return EXIT_OK


def _hypgraph_cmd(args, kind: str) -> int:
    X = _complex(args.input)
    G = contact_graph(X)
    D = crossing_graph(X)
    main = G if kind == "contact" else D
    labels = _wall_labels(X)
    if args.dot:
        if args.overlay:
            dashed = G.edges - D.edges
            _write(args.dot, formats.graph_to_dot(G.graph, labels, dashed=dashed, name=kind))
        else:
            _write(args.dot, formats.graph_to_dot(main.graph, labels, name=kind))
    if args.output or not args.dot:
        _write(args.output, formats.dump_graph(main.graph, labels))
    return EXIT_OK


def cmd_contact(args) -> int:
    return _hypgraph_cmd(args, "contact")


def cmd_crossing(args) -> int:
    return _hypgraph_cmd(args, "crossing")


def cmd_grade(args) -> int:
    X = _complex(args.input)
    G = contact_graph(X).graph
    gr = grade_hyperplanes(G, _wall(X, args.base))
    attrs = {i: {"grade": gr.grade[i], "root": gr.root_id[i]} for i in X.walls}
    _write(args.output, formats.dump_graph(G, _wall_labels(X), attrs))
    return EXIT_OK


def cmd_root_tree(args) -> int:
    X = _complex(args.input)
    G = contact_graph(X).graph
    gr = grade_hyperplanes(G, _wall(X, args.base))
    T = graded_root_tree(gr, G)
    labels = {r: "+".join(X.name(w) for w in sorted(gr.roots[r])) for r in range(len(T.grades))}
    attrs = {r: {"grade": T.grades[r]} for r in range(len(T.grades))}
    if args.dot:
        _write(args.dot, formats.ranked_dot(T.graph, labels, dict(enumerate(T.grades)), name="roots"))
    if args.output or not args.dot:
        _write(args.output, formats.dump_graph(T.graph, labels, attrs))
    return EXIT_OK


def cmd_check(args) -> int:
    if args.input not in (None, "-") and not os.path.exists(args.input):
        X = fixture(args.input)
    else:
        text = _read(args.input)
        fmt = formats.document_format(text)
        if fmt == formats.GRAPH_FORMAT:
            if args.which != "median":
                raise InvalidInputError("graph documents support only the median check")
            results = [check_median_graph(formats.load_graph(text))]
            return _report(results)
        if fmt == formats.WALLSPACE_FORMAT:
            X = sageev_dual(formats.load_wallspace(text))
        else:
            X = formats.load_complex(text)
    delta = Fraction(args.delta)
    results = check_suite(X, args.which, mode=args.mode, delta=delta, cap=args.geodesic_cap)
    return _report(results)


def _report(results) -> int:
    ok = all(r.passed for r in results)
    for r in results:
        status = "ok" if r.passed else "FAIL"
        print(f"{r.name}: {status}: {r.summary}")
    print(json.dumps({"passed": ok, "results": [r.to_doc() for r in results]}, sort_keys=True))
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_realize(args) -> int:
    D = formats.load_graph(_read(args.input))
    X = realize_crossing_graph(D, cap=args.cap)
    _write(args.output, formats.dump_complex(X))
    return EXIT_OK


def cmd_recubulate(args) -> int:
    X = _complex(args.input)
    _write(args.output, formats.dump_complex(recubulate(X, cap=args.cap)))
    return EXIT_OK


def cmd_gen(args) -> int:
    X = generate(args.kind, args.params, args.seed, cap=args.cap)
    _write(args.output, formats.dump_complex(X))
    return EXIT_OK


def cmd_analyze(args) -> int:
    X = _complex(args.input)
    _write(args.output, formats.dumps(analyze(X).to_doc()))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ccx", description="Finite CAT(0) cube complexes from wallspaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("-i", "--input", help="input file, fixture name, or - for stdin")
        return sp

    sp = add("cubulate", cmd_cubulate, "dual complex of a wallspace")
    sp.add_argument("-o", "--output")
    sp.add_argument("--base", help="base element (default: first element)")
    sp.add_argument("--cap", type=_positive, default=DEFAULT_VERTEX_CAP)

    sp = add("skeleton", cmd_skeleton, "1-skeleton as a graph document or DOT")
    sp.add_argument("-o", "--output")
    sp.add_argument("--dot")

    for name, func in (("contact", cmd_contact), ("crossing", cmd_crossing)):
        sp = add(name, func, f"{name} graph of the hyperplanes")
        sp.add_argument("-o", "--output")
        sp.add_argument("--dot")
        sp.add_argument("--overlay", action="store_true",
                        help="DOT of the contact graph with osculations dashed")

    sp = add("grade", cmd_grade, "grades and roots relative to a base wall")
    sp.add_argument("--base", required=True)
    sp.add_argument("-o", "--output")

    sp = add("root-tree", cmd_root_tree, "graded root tree relative to a base wall")
    sp.add_argument("--base", required=True)
    sp.add_argument("-o", "--output")
    sp.add_argument("--dot")

    sp = add("check", cmd_check, "run property checks")
    sp.add_argument("which", choices=CHECKS + ("all",))
    sp.add_argument("--mode", choices=("contact", "crossing"), default="contact")
    sp.add_argument("--delta", default="3/2", help="bottleneck scale, a half-integer (default 3/2)")
    sp.add_argument("--geodesic-cap", type=_positive, default=DEFAULT_GEODESIC_CAP)

    sp = add("realize", cmd_realize, "complex whose crossing graph is the input graph")
    sp.add_argument("-o", "--output")
    sp.add_argument("--cap", type=_positive, default=DEFAULT_VERTEX_CAP)

    sp = add("recubulate", cmd_recubulate, "turn osculations into crossings")
    sp.add_argument("-o", "--output")
    sp.add_argument("--cap", type=_positive, default=DEFAULT_VERTEX_CAP)

    sp = sub.add_parser("gen", help="generate a complex")
    sp.set_defaults(func=cmd_gen)
    sp.add_argument("--kind", required=True, choices=("grid", "tree", "wedge", "random-wallspace", "fixture"))
    sp.add_argument("--params", default="")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.add_argument("--cap", type=_positive, default=DEFAULT_VERTEX_CAP)

    sp = add("analyze", cmd_analyze, "finite-scale hyperbolicity and quasi-tree report")
    sp.add_argument("-o", "--output")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"ccx: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InvalidInputError, ValueError, OSError) as exc:
        print(f"ccx: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
