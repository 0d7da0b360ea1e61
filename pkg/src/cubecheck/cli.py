"""Command-line front end: ``cubecheck {generate,recognize,classify,census,analyze}``.

Exit status is 0 on clean verdicts, 1 when any graph is classified as
contradicting the classification, and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from typing import Iterator, TextIO

from . import generators as gen
from .classifier import CONTRADICTS, ClassificationVerdict, census, classify
from .coxeter import DEFAULT_ELEMENT_CAP, CoxeterMatrix, coxeter_cayley
from .cycles import (
    ConvexCycleIndex,
    HypothesisViolation,
    TraverseNotFound,
    all_incident_pairs_covered,
    claims_audit,
    euler_report,
    find_convex_traverse,
    girth_signature,
)
from .graph import Graph, GraphError, cartesian_product, is_cubic
from .graph6 import Graph6Error, parse_graph6, read_graph6_lines, write_graph6
from .metric import is_partial_cube

SCHEMA_VERSION = 1

EXIT_OK, EXIT_CONTRADICTION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# generate

def _ints(params: list[str], count: int, family: str) -> list[int]:
    if len(params) != count:
        raise UsageError(f"{family} takes {count} integer parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError(f"{family} parameters must be integers: {params}") from None


def build_family(family: str, params: list[str], element_cap: int = DEFAULT_ELEMENT_CAP) -> Graph:
    if family == "cycle":
        return gen.cycle(*_ints(params, 1, family))
    if family == "hypercube":
        return gen.hypercube(*_ints(params, 1, family))
    if family == "prism":
        return gen.prism(*_ints(params, 1, family))
    if family == "gp":
        return gen.generalized_petersen(*_ints(params, 2, family))
    if family == "middle-levels":
        return gen.middle_levels(*_ints(params, 1, family))
    if family == "graph-x":
        _ints(params, 0, family)
        return gen.graph_X()
    if family == "coxeter":
        return coxeter_cayley(CoxeterMatrix.from_orders(*_ints(params, 3, family)), element_cap)
    if family == "permutahedron":
        _ints(params, 0, family)
        return gen.cubic_permutahedron(element_cap)
    if family == "trunc-cubocta":
        _ints(params, 0, family)
        return gen.truncated_cuboctahedron(element_cap)
    if family == "trunc-icosidodeca":
        _ints(params, 0, family)
        return gen.truncated_icosidodecahedron(element_cap)
    if family == "product":
        if len(params) != 2:
            raise UsageError("product takes two graph6 strings")
        return cartesian_product(parse_graph6(params[0]), parse_graph6(params[1]))
    raise UsageError(f"unknown family {family!r}")


FAMILIES = ("cycle", "hypercube", "prism", "gp", "middle-levels", "graph-x", "coxeter",
            "permutahedron", "trunc-cubocta", "trunc-icosidodeca", "product")


def _label_json(x):
    if isinstance(x, tuple):
        return [_label_json(y) for y in x]
    return x


def _dumps(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def cmd_generate(args, out: TextIO) -> int:
    g = build_family(args.family, args.params, args.element_cap)
    out.write(write_graph6(g) + "\n")
    if args.meta is not None:
        labels = g.labels if g.labels is not None else list(range(g.n))
        meta = {
            "schema_version": SCHEMA_VERSION,
            "family": args.family,
            "params": args.params,
            "n": g.n,
            "m": g.m,
            "vertices": [_label_json(x) for x in labels],
        }
        if args.meta == "-":
            out.write(_dumps(meta) + "\n")
        else:
            with open(args.meta, "w", encoding="utf-8") as fh:
                fh.write(_dumps(meta) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------
# input and reports

def _inputs(paths: list[str]) -> Iterator[tuple[str, int, str, Graph]]:
    """Parse every graph6 line; a malformed one raises :class:`Graph6Error`."""
    for path in paths or ["-"]:
        if path == "-":
            yield from _parse_stream("-", sys.stdin)
        else:
            with open(path, encoding="ascii", errors="replace") as fh:
                yield from _parse_stream(path, fh)


def _parse_stream(name: str, stream: TextIO) -> Iterator[tuple[str, int, str, Graph]]:
    for lineno, text in read_graph6_lines(stream):
        try:
            g = parse_graph6(text)
        except Graph6Error as exc:
            raise Graph6Error(f"{name}:{lineno}: {exc.detail}", exc.offset) from None
        yield name, lineno, text, g


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.ms: dict[str, float] = {}

    @contextmanager
    def __call__(self, key: str):
        t = time.perf_counter()
        yield
        if self.enabled:
            self.ms[key] = round((time.perf_counter() - t) * 1000, 3)


def _descriptor(source: str, line: int, text: str, g: Graph) -> dict:
    return {"source": source, "line": line, "graph6": text, "n": g.n, "m": g.m}


def _recognition(g: Graph) -> dict:
    v = is_partial_cube(g)
    doc: dict = {"partial_cube": v.is_partial_cube}
    if v:
        doc["dimension"] = v.labeling.dim
        doc["theta_classes"] = [[list(g.edges[i]) for i in cls] for cls in v.theta.classes]
        doc["labels"] = v.labeling.hex_labels()
    else:
        doc["reason"] = v.reason
        doc["witness"] = _label_json(tuple(v.witness or ()))
        if v.theta is not None:
            doc["theta_classes"] = [[list(g.edges[i]) for i in cls] for cls in v.theta.classes]
    return doc


def _emit(doc: dict, args, out: TextIO, text_lines: list[str]) -> None:
    if args.json:
        out.write(_dumps(doc) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def cmd_recognize(args, out: TextIO) -> int:
    for source, line, text, g in _inputs(args.inputs):
        clock = _Clock(args.timings)
        with clock("recognize"):
            rec = _recognition(g)
        doc = {"schema_version": SCHEMA_VERSION, "input": _descriptor(source, line, text, g), **rec}
        if args.timings:
            doc["timings_ms"] = clock.ms
        lines = [f"{text}: n={g.n} m={g.m}"]
        if rec["partial_cube"]:
            lines.append(f"  partial cube: yes, dimension {rec['dimension']}")
            for i, cls in enumerate(rec["theta_classes"]):
                lines.append(f"  class {i}: {len(cls)} edges {cls}")
            lines.append(f"  labels: {' '.join(rec['labels'])}")
        else:
            lines.append(f"  partial cube: no ({rec['reason']}) witness {rec['witness']}")
        _emit(doc, args, out, lines)
    return EXIT_OK


def _signature_json(sig) -> dict | None:
    if sig is None:
        return None
    return {"triple": list(sig.as_tuple()), "constant": sig.constant,
            "per_vertex": [list(t) for t in sig.per_vertex]}


def _verdict_json(v: ClassificationVerdict) -> dict:
    return {
        "verdict": v.label,
        "tag": v.tag,
        "param": v.param,
        "mapping": list(v.mapping) if v.mapping is not None else None,
        "witness": v.witness,
        "signature": _signature_json(v.signature),
        "stabilizer_order": v.stabilizer_order,
        "note": v.note,
    }


def cmd_classify(args, out: TextIO) -> int:
    status = EXIT_OK
    for source, line, text, g in _inputs(args.inputs):
        clock = _Clock(args.timings)
        with clock("classify"):
            v = classify(g)
        if v.tag == CONTRADICTS:
            status = EXIT_CONTRADICTION
        doc = {"schema_version": SCHEMA_VERSION, "input": _descriptor(source, line, text, g), **_verdict_json(v)}
        if args.timings:
            doc["timings_ms"] = clock.ms
        lines = [f"{text}: {v.label}"]
        if v.signature is not None:
            lines.append(f"  girth signature {v.signature.as_tuple()}")
        if v.note:
            lines.append(f"  note: {v.note}")
        if v.witness:
            lines.append(f"  witness: {v.witness}")
        _emit(doc, args, out, lines)
    return status


def cmd_census(args, out: TextIO) -> int:
    clock = _Clock(args.timings)
    with clock("census"):
        result = census(args.max_n, jobs=args.jobs)
    summary = {"schema_version": SCHEMA_VERSION, **result.summary()}
    if args.timings:
        summary["timings_ms"] = clock.ms
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(_dumps(summary) + "\n")
    if args.json:
        out.write(_dumps(summary) + "\n")
    else:
        out.write(result.tsv())
    for row in result.contradictions:
        sys.stderr.write(f"ContradictsTheorem: n={row.n} {row.graph6}\n")
    return EXIT_CONTRADICTION if result.contradictions else EXIT_OK


def _traverses(g: Graph, index: ConvexCycleIndex) -> list[dict]:
    v = is_partial_cube(g)
    out = []
    for cls in v.theta.classes:
        first = g.edges[cls[0]]
        for j in cls[1:]:
            try:
                t = find_convex_traverse(g, first, g.edges[j], index)
            except TraverseNotFound as exc:
                out.append({"from": list(first), "to": list(g.edges[j]), "error": str(exc)})
                continue
            out.append({
                "from": list(t.start_edge),
                "to": list(t.end_edge),
                "cycles": [list(c.vertices) for c in t.cycles],
                "side_v": list(t.side_v),
                "side_u": list(t.side_u),
            })
    return out


def cmd_analyze(args, out: TextIO) -> int:
    euler = args.euler or args.all
    traverses = args.traverses or args.all
    for source, line, text, g in _inputs(args.inputs):
        clock = _Clock(args.timings)
        doc: dict = {"schema_version": SCHEMA_VERSION, "input": _descriptor(source, line, text, g)}
        lines = [f"{text}: n={g.n} m={g.m}"]
        with clock("recognize"):
            pc = is_partial_cube(g)
        doc["partial_cube"] = pc.is_partial_cube
        if not pc:
            doc["reason"] = pc.reason
            lines.append(f"  not a partial cube ({pc.reason})")
            _emit(doc, args, out, lines)
            continue
        with clock("convex_cycles"):
            index = ConvexCycleIndex(g, args.max_cycle_len)
        doc["convex_cycles"] = [list(c.vertices) for c in index.cycles]
        lines.append(f"  convex cycles: {len(index.cycles)} "
                     f"(lengths {sorted({c.length for c in index.cycles})})")
        if is_cubic(g):
            with clock("signature"):
                sig = girth_signature(g, index)
                cover = all_incident_pairs_covered(g, index)
            doc["signature"] = _signature_json(sig)
            doc["incident_pairs_covered"] = cover.covered
            doc["uncovered_pair"] = list(cover.uncovered) if cover.uncovered else None
            lines.append(f"  girth signature {sig.as_tuple()} constant={sig.constant}")
            lines.append(f"  every incident pair on a convex cycle: {cover.covered}")
        with clock("claims"):
            audit = claims_audit(g, index)
        doc["claims"] = {
            "passed": audit.passed,
            "four_cycles": audit.four_cycles,
            "nonconvex_four_cycles": [list(c) for c in audit.nonconvex_four_cycles],
            "non_intertwining_pairs": [[list(a), list(b)] for a, b in audit.non_intertwining_pairs],
            "four_cycle_overlaps": [[list(a), list(b)] for a, b in audit.four_cycle_overlaps],
        }
        lines.append(f"  claims audit: {'pass' if audit.passed else 'FAIL'}")
        if euler:
            with clock("euler"):
                try:
                    r = euler_report(g, index)
                    doc["euler"] = {"n": r.n, "e": r.e, "f4": r.f4, "f6": r.f6, "f": r.f, "chi": r.chi}
                    lines.append(f"  Euler: n={r.n} e={r.e} f4={r.f4} f6={r.f6} chi={r.chi}")
                except HypothesisViolation as exc:
                    doc["euler"] = {"error": str(exc)}
                    lines.append(f"  Euler: not applicable ({exc})")
        if traverses:
            with clock("traverses"):
                doc["traverses"] = _traverses(g, index)
            lines.append(f"  convex traverses found: {sum('error' not in t for t in doc['traverses'])}"
                         f"/{len(doc['traverses'])}")
        if args.timings:
            doc["timings_ms"] = clock.ms
        _emit(doc, args, out, lines)
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubecheck", description="Partial-cube toolkit for cubic graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inputs=True):
        sp.add_argument("--json", action="store_true", help="JSON output (one document per line)")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings in milliseconds")
        if inputs:
            sp.add_argument("inputs", nargs="*", help="graph6 files; '-' or nothing reads stdin")

    g = sub.add_parser("generate", help="print a named graph as graph6")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("params", nargs="*")
    g.add_argument("--meta", nargs="?", const="-", default=None, metavar="PATH",
                   help="also write the vertex-meaning JSON (to PATH, or stdout after the graph6 line)")
    g.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)

    common(sub.add_parser("recognize", help="partial-cube test with Θ-classes and labels"))
    common(sub.add_parser("classify", help="classify cubic vertex-transitive partial cubes"))

    c = sub.add_parser("census", help="classify every connected cubic graph up to --max-n")
    common(c, inputs=False)
    c.add_argument("--max-n", type=int, default=12)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--summary", metavar="PATH", help="also write the JSON summary to PATH")

    a = sub.add_parser("analyze", help="convex cycles, signature, claims audit, Euler count, traverses")
    common(a)
    a.add_argument("--max-cycle-len", type=int, default=None)
    a.add_argument("--euler", action="store_true")
    a.add_argument("--traverses", action="store_true")
    a.add_argument("--all", action="store_true", help="same as --euler --traverses")
    return p


COMMANDS = {
    "generate": cmd_generate,
    "recognize": cmd_recognize,
    "classify": cmd_classify,
    "census": cmd_census,
    "analyze": cmd_analyze,
}


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        sys.stderr.write("cubecheck: --jobs must be at least 1\n")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except Graph6Error as exc:
        sys.stderr.write(f"cubecheck: parse error: {exc}\n")
        return EXIT_USAGE
    except (UsageError, GraphError) as exc:
        sys.stderr.write(f"cubecheck: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
