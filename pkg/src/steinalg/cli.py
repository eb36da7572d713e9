"""Command-line front door.

Subcommands: validate, mul, grade, relations, collapse, morita-check.
Every run is a pure function of (input files, flags, seed) and the reports
are rendered deterministically, so repeated runs are byte-identical.

Exit codes: 0 all checks pass, 1 usage error, 2 unreadable or invalid
input, 3 a certified check failed, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .collapse import CollapseSpec, check_phi_fin_image, collapse, \
    pointed_groupoid_iso_check, validate_collapsible
from .graph import GraphFormatError, load_graph_file
from .leavitt import WordSyntaxError, check_ck_relations, eval_word
from .morita import morita_report
from .report import Report
from .rings import ring_from_spec
from .steinberg import convolve, grade


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on; the seed pins all sampling."""

    command: str
    graph: str
    t0: tuple = None
    ring: str = "z"
    depth: int = 3
    seed: int = 0
    fmt: str = "text"
    words: tuple = ()


def build_parser() -> _Parser:
    parser = _Parser(prog="steinalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def common(sp, t0=False, ring=False, depth=False, seed=False):
        sp.add_argument("--graph", required=True, help="graph file")
        if t0:
            sp.add_argument("--t0", default=None,
                            help="comma-separated vertices to collapse")
        if ring:
            sp.add_argument("--ring", default="z", help="z, q, or zmod:N")
        if depth:
            sp.add_argument("--depth", type=int, default=3,
                            help="window depth for bounded checks")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", dest="fmt", choices=("text", "kv"),
                        default="text")

    sp = sub.add_parser("validate", help="check a graph file and optionally a collapse set")
    common(sp, t0=True)
    sp = sub.add_parser("mul", help="multiply two generator words")
    common(sp, ring=True)
    sp.add_argument("words", nargs=2, metavar="word")
    sp = sub.add_parser("grade", help="evaluate a word and split it by degree")
    common(sp, ring=True)
    sp.add_argument("words", nargs=1, metavar="word")
    sp = sub.add_parser("relations", help="certify the generator relations")
    common(sp, ring=True)
    sp = sub.add_parser("collapse", help="collapse a vertex set and certify the move")
    common(sp, t0=True, depth=True)
    sp = sub.add_parser("morita-check", help="run the full context pipeline")
    common(sp, t0=True, ring=True, depth=True, seed=True)
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    t0 = getattr(ns, "t0", None)
    if t0 is not None:
        t0 = tuple(v.strip() for v in t0.split(",") if v.strip())
    return RunConfig(command=ns.command, graph=ns.graph, t0=t0,
                     ring=getattr(ns, "ring", "z"),
                     depth=getattr(ns, "depth", 3),
                     seed=getattr(ns, "seed", 0),
                     fmt=ns.fmt, words=tuple(getattr(ns, "words", ())))


# -- subcommands ------------------------------------------------------------


def _graph_section(rep, g):
    rep.add("graph", "vertices", ", ".join(g.vertices))
    rep.add("graph", "edges", len(g.edges))
    rep.check("graph", "well-formed", True)


def cmd_validate(config) -> Report:
    g = load_graph_file(config.graph)
    rep = Report("validate")
    _graph_section(rep, g)
    if config.t0 is not None:
        rep.absorb(validate_collapsible(CollapseSpec(g, config.t0)))
    return rep


def _element_rows(rep, section, f):
    rep.add(section, "canonical", f.render())
    decomposition = grade(f)
    for n in decomposition.degrees():
        rep.add(section, "degree %d" % n, decomposition.component(n).render())
    return decomposition


def cmd_mul(config) -> Report:
    g = load_graph_file(config.graph)
    ring = ring_from_spec(config.ring)
    rep = Report("mul")
    rep.add("inputs", "left", config.words[0])
    rep.add("inputs", "right", config.words[1])
    rep.add("inputs", "ring", ring.name)
    product = convolve(eval_word(g, config.words[0], ring),
                       eval_word(g, config.words[1], ring))
    _element_rows(rep, "product", product)
    return rep


def cmd_grade(config) -> Report:
    g = load_graph_file(config.graph)
    ring = ring_from_spec(config.ring)
    rep = Report("grade")
    rep.add("inputs", "word", config.words[0])
    rep.add("inputs", "ring", ring.name)
    f = eval_word(g, config.words[0], ring)
    decomposition = _element_rows(rep, "element", f)
    total = None
    for n in decomposition.degrees():
        part = decomposition.component(n)
        total = part if total is None else total + part
    rep.check("element", "components-sum-back",
              (total if total is not None else f) == f)
    return rep


def cmd_relations(config) -> Report:
    g = load_graph_file(config.graph)
    ring = ring_from_spec(config.ring)
    rep = Report("relations")
    _graph_section(rep, g)
    rep.add("graph", "ring", ring.name)
    rep.absorb(check_ck_relations(g, ring))
    return rep


def cmd_collapse(config) -> Report:
    g = load_graph_file(config.graph)
    spec = CollapseSpec(g, config.t0 or ())
    rep = Report("collapse")
    rep.absorb(validate_collapsible(spec))
    if not rep.ok:
        return rep
    cert = collapse(spec)
    rep.add("collapsed-graph", "vertices", ", ".join(cert.collapsed.vertices))
    for e in cert.collapsed.edges:
        rep.add("collapsed-graph", e.id, "%s <- %s" % (e.range_vertex, e.source_vertex))
    rep.absorb(check_phi_fin_image(cert, max_len=config.depth + 2), prefix="paths.")
    rep.absorb(pointed_groupoid_iso_check(cert, depth=config.depth), prefix="groupoid.")
    return rep


def cmd_morita(config) -> Report:
    g = load_graph_file(config.graph)
    ring = ring_from_spec(config.ring)
    spec = CollapseSpec(g, config.t0 or ())
    pre = validate_collapsible(spec)
    if not pre.ok:
        return pre
    return morita_report(g, spec.t0, ring, depth=config.depth, seed=config.seed)


_COMMANDS = {"validate": cmd_validate, "mul": cmd_mul, "grade": cmd_grade,
             "relations": cmd_relations, "collapse": cmd_collapse,
             "morita-check": cmd_morita}


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    try:
        rep = _COMMANDS[config.command](config)
    except (GraphFormatError, WordSyntaxError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (AssertionError, RuntimeError) as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return 4
    sys.stdout.write(rep.render(config.fmt))
    return 0 if rep.ok else 3


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
