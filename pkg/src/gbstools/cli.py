"""Command-line entry point: ``gbs <verb> ...``.

Exit status is 0 on success, 1 on domain errors (invalid input, failed
preconditions, failed checks) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bound, chains, graph, moves, tree_ball, words
from .errors import GbsError


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise GbsError(f"{path}: {exc.strerror}") from None


def _load_graph(path: str) -> graph.GbsGraph:
    return graph.parse_graph(_read(path), source=path)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _table(headers, rows, porcelain: bool) -> str:
    rows = [[str(x) for x in row] for row in rows]
    if porcelain:
        return "".join("\t".join(r) + "\n" for r in [list(headers)] + rows)
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(headers)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def _emit_move(out, g, rec_list, args):
    out.write(graph.format_graph(g))
    if getattr(args, "log", None):
        Path(args.log).write_text(moves.write_move_log(rec_list))


# -- verbs ------------------------------------------------------------------------


def cmd_validate(args, out):
    g = _load_graph(args.graph)
    problems = graph.validate(g)
    if not problems:
        out.write("valid\n")
        return 0
    for p in problems:
        out.write(p + "\n")
    return 1


def cmd_reduce(args, out):
    g, recs = moves.reduce_graph(_load_graph(args.graph))
    _emit_move(out, g, recs, args)
    return 0


def cmd_collapse(args, out):
    g, rec = moves.collapse(_load_graph(args.graph), args.edge)
    _emit_move(out, g, [rec], args)
    return 0


def cmd_expand(args, out):
    ends = [f for f in args.ends.split(",") if f] if args.ends else []
    g, rec = moves.expand(_load_graph(args.graph), args.vertex, ends, args.divisor,
                          args.new_vertex, args.new_edge)
    _emit_move(out, g, [rec], args)
    return 0


def cmd_subdivide(args, out):
    g, rec = moves.subdivide(_load_graph(args.graph), args.edge)
    _emit_move(out, g, [rec], args)
    return 0


def cmd_essential(args, out):
    g = _load_graph(args.graph)
    ess = moves.essential_vertices(g)
    rows = [(v, "essential" if v in ess else "inessential") for v in sorted(g.vertices)]
    out.write(_table(("vertex", "status"), rows, args.porcelain))
    return 0


def cmd_word(args, out):
    g = _load_graph(args.graph)
    if args.word:
        ws = [words.parse_word(args.word, source="--word")]
    elif args.words:
        ws = words.parse_words(_read(args.words), source=args.words)
    else:
        raise GbsError("give a word file or --word")
    rows = []
    for w in ws:
        r = words.reduce_word(g, w)
        length = words.translation_length(g, w)
        rows.append((words.format_word(w), words.format_word(r),
                     "elliptic" if length == 0 else "hyperbolic", length))
    out.write(_table(("word", "reduced", "type", "translation_length"), rows, args.porcelain))
    return 0


def cmd_ball(args, out):
    g = _load_graph(args.graph)
    b = tree_ball.expand_ball(g, args.base, args.radius)
    out.write(_table(("address", "vertex", "depth", "valence"), tree_ball.ball_table(b),
                     args.porcelain))
    return 0


def cmd_fold_type(args, out):
    g = _load_graph(args.graph)
    b = tree_ball.expand_ball(g, args.base, args.radius)
    e1 = tuple(tree_ball.parse_address(a) for a in args.edge1)
    e2 = tuple(tree_ball.parse_address(a) for a in args.edge2)
    out.write(tree_ball.classify_fold(b, e1, e2) + "\n")
    return 0


def cmd_bound(args, out):
    c = bound.parse_complex(_read(args.complex), source=args.complex)
    if args.beta1_from_complex:
        beta1 = bound.h1_dim_mod2(c)
        note = "beta1 source: dim H^1(L;Z/2), an upper bound for the group's first Betti number"
    else:
        beta1 = args.beta1
        note = "beta1 source: caller"
    rep = bound.accessibility_bounds(c, beta1)
    out.write(_table(("quantity", "value"), rep.rows(), args.porcelain))
    if not args.porcelain:
        out.write(note + "\n")
    return 0


def _spec(args) -> chains.ChainSpec:
    return chains.ChainSpec(args.q, args.r)


def cmd_chain(args, out):
    out.write(graph.format_graph(chains.make_chain(_spec(args))))
    return 0


def cmd_check_2gen(args, out):
    out.write(("true" if chains.is_two_generated(_spec(args)) else "false") + "\n")
    return 0


def cmd_verify_family(args, out):
    rep = chains.verify_family(args.kmax)
    rows = []
    for row in rep.rows:
        rows.append((row.k, row.vertices, row.edges, row.complexity,
                     "yes" if row.reduced else "no", "yes" if row.two_generated else "no",
                     ",".join(map(str, row.valences)), row.essential,
                     "pass" if row.passed else "FAIL: " + "; ".join(row.failures)))
    out.write(_table(("k", "vertices", "edges", "complexity", "reduced", "2gen",
                      "valences", "essential", "status"), rows, args.porcelain))
    return 0 if rep.passed else 1


def cmd_replay(args, out):
    g = _load_graph(args.graph)
    recs = moves.read_move_log(_read(args.log), source=args.log)
    out.write(graph.format_graph(moves.replay(g, recs)))
    return 0


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gbs", description="Computations with GBS graphs of groups.")
    sub = p.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("--porcelain", action="store_true", help="tab-separated output")
    log = argparse.ArgumentParser(add_help=False)
    log.add_argument("--log", help="write the move log (JSON lines) to this file")

    s = sub.add_parser("validate", help="list violations of the GBS graph invariants")
    s.add_argument("graph")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("reduce", parents=[log], help="collapse edges until reduced")
    s.add_argument("graph")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("collapse", parents=[log], help="elementary collapse of one edge")
    s.add_argument("graph")
    s.add_argument("--edge", required=True, help="oriented edge (name or ~name)")
    s.set_defaults(func=cmd_collapse)

    s = sub.add_parser("expand", parents=[log], help="elementary expansion at a vertex")
    s.add_argument("graph")
    s.add_argument("--vertex", required=True)
    s.add_argument("--ends", default="", help="comma-separated edge ends to move")
    s.add_argument("--divisor", type=int, required=True)
    s.add_argument("--new-vertex")
    s.add_argument("--new-edge")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("subdivide", parents=[log], help="subdivide one edge")
    s.add_argument("graph")
    s.add_argument("--edge", required=True)
    s.set_defaults(func=cmd_subdivide)

    s = sub.add_parser("essential", parents=[table], help="essential / inessential vertices")
    s.add_argument("graph")
    s.set_defaults(func=cmd_essential)

    s = sub.add_parser("word", parents=[table], help="reduce words, test ellipticity")
    s.add_argument("graph")
    s.add_argument("words", nargs="?", help="file of 'word <base>: ...' lines")
    s.add_argument("--word", help="a single word given inline")
    s.set_defaults(func=cmd_word)

    s = sub.add_parser("ball", parents=[table], help="Bass-Serre tree ball table")
    s.add_argument("graph")
    s.add_argument("--base", required=True)
    s.add_argument("--radius", type=int, required=True)
    s.set_defaults(func=cmd_ball)

    s = sub.add_parser("fold-type", help="classify the fold of two tree edges")
    s.add_argument("graph")
    s.add_argument("--base", required=True)
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("--edge1", nargs=2, required=True, metavar=("ORIGIN", "TERMINUS"))
    s.add_argument("--edge2", nargs=2, required=True, metavar=("ORIGIN", "TERMINUS"))
    s.set_defaults(func=cmd_fold_type)

    s = sub.add_parser("bound", parents=[table], help="delta and accessibility bounds")
    s.add_argument("complex")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--beta1", type=int)
    grp.add_argument("--beta1-from-complex", action="store_true",
                     help="use dim H^1(L;Z/2) as an upper bound for beta1")
    s.set_defaults(func=cmd_bound)

    for verb, func, help_ in (("chain", cmd_chain, "emit the chain graph"),
                              ("check-2gen", cmd_check_2gen, "2-generation gcd criterion")):
        s = sub.add_parser(verb, help=help_)
        s.add_argument("--q", type=_ints, required=True, help="q_0,...,q_{k-1}")
        s.add_argument("--r", type=_ints, required=True, help="r_1,...,r_k")
        s.set_defaults(func=func)

    s = sub.add_parser("verify-family", parents=[table], help="check the valence-5 chain family")
    s.add_argument("--kmax", type=int, required=True)
    s.set_defaults(func=cmd_verify_family)

    s = sub.add_parser("replay", help="replay a move log on a graph")
    s.add_argument("graph")
    s.add_argument("log")
    s.set_defaults(func=cmd_replay)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except GbsError as exc:
        err.write(f"gbs {args.verb}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
