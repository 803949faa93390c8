"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a verification mismatch, 2 on a
usage or input error. Errors are reported on stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .config_complex import build_complex, chain_complex
from .decomposer import decompose, multiplicity_table
from .homology import betti
from .linalg import DEFAULT_PRIME
from .metric_graph import (GraphError, MetricGraph, ParamPoint, build_graph, format_rational,
                           generalized_h, parse_rational, star, subdivide_spec)
from .param_chambers import ChamberArrangement, arrangement, critical_lines
from .persistence_module import build_module, restrict_support
from .verify import Family, decomposition_checks, mv_checks, rank_sweep


class UsageError(ValueError):
    pass


def _fr(q: Fraction) -> str:
    return format_rational(Fraction(q))


def _positive_rational(text: str) -> Fraction:
    try:
        q = parse_rational(text)
    except GraphError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if q <= 0:
        raise argparse.ArgumentTypeError(f"{text} must be positive")
    return q


def _pair(text: str) -> tuple[int, int]:
    try:
        m, n = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected M,N") from exc
    return m, n


def _graph_options(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--star", type=int, metavar="K", help="star with K edges; e1 has length L")
    src.add_argument("--h", type=_pair, metavar="M,N", help="generalized H graph with bridge length L")
    src.add_argument("--graph", type=Path, metavar="FILE", help="JSON tree spec")


def _param_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=_positive_rational, required=True, help="restraint parameter, p/q")
    p.add_argument("--L", type=_positive_rational, required=True, help="variable edge parameter, p/q")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", type=Path, help="write to this file instead of stdout")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="configph", description="Homology of two-robot configuration spaces on metric trees")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="Betti numbers and torsion at one parameter")
    _graph_options(p)
    _param_options(p)
    _common(p)

    p = sub.add_parser("complex", help="cell counts (and optionally incidences) at one parameter")
    _graph_options(p)
    _param_options(p)
    _common(p)
    p.add_argument("--full", action="store_true", help="list every cell and its boundary")

    p = sub.add_parser("chambers", help="critical lines, chambers and covering relations")
    _graph_options(p)
    _common(p)

    p = sub.add_parser("module", help="persistence module on the chamber poset")
    _graph_options(p)
    _common(p)
    p.add_argument("--degree", type=int, choices=(0, 1), default=0)
    p.add_argument("--support", action="store_true", help="restrict to chambers with nonzero fiber")

    p = sub.add_parser("decompose", help="indecomposable summands and multiplicities")
    _graph_options(p)
    _common(p)
    p.add_argument("--degree", type=int, choices=(0, 1), default=0)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="compare the pipeline with the closed forms on every chamber")
    _graph_options(p)
    _common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mv", action="store_true", help="also check the Mayer-Vietoris pages")
    p.add_argument("--csv", type=Path, metavar="FILE", help="write the per-chamber table as CSV")

    p = sub.add_parser("plot", help="SVG of the chamber arrangement labelled with (h0, h1)")
    _graph_options(p)
    p.add_argument("--output", type=Path, help="SVG file (stdout if omitted)")
    p.add_argument("--size", type=int, default=480)

    p = sub.add_parser("subdivide", help="insert midpoints into loops and repeated edges of a spec")
    p.add_argument("spec", type=Path)
    p.add_argument("--output", type=Path)
    return ap


def _load_graph(args) -> tuple[MetricGraph, Family]:
    L = getattr(args, "L", None) or Fraction(1)
    if args.star is not None:
        if args.star < 3:
            raise UsageError("--star needs K >= 3")
        return star(args.star, L), Family("star", (args.star,))
    if args.h is not None:
        m, n = args.h
        if m < 3 or n < 3:
            raise UsageError("--h needs M, N >= 3")
        return generalized_h(m, n, L), Family("h", (m, n))
    try:
        text = args.graph.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from exc
    return build_graph(text, getattr(args, "L", None)), Family("tree")


def _emit(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out is not None:
        out.write_text(text)
    else:
        sys.stdout.write(text)


def _dump(args, record: dict, lines: list[str]) -> None:
    if getattr(args, "format", "text") == "json":
        _emit(args, json.dumps(record, indent=2, sort_keys=False) + "\n")
    else:
        _emit(args, "".join(line + "\n" for line in lines))


# ------------------------------------------------------------------ commands

def cmd_betti(args) -> int:
    g, family = _load_graph(args)
    pt = ParamPoint(args.r, args.L)
    summ = betti(chain_complex(build_complex(g, pt)))
    h = summ.betti
    record = {"graph": g.name, "r": _fr(pt.r), "L": _fr(pt.L), "betti": list(h),
              "torsion": [list(t) for t in summ.torsion]}
    lines = [f"h0={h[0]} h1={h[1]} h2={h[2]}"]
    if not summ.torsion_free:
        lines.append("torsion=" + json.dumps(record["torsion"]))
    _dump(args, record, lines)
    return 0


def cmd_complex(args) -> int:
    g, _ = _load_graph(args)
    cx = build_complex(g, ParamPoint(args.r, args.L))
    v, e, f = cx.counts
    record = {"graph": g.name, "r": _fr(args.r), "L": _fr(args.L), "counts": [v, e, f],
              "euler_characteristic": cx.euler_characteristic(), "generic": cx.generic}
    lines = [f"vertices={v} edges={e} faces={f} euler={cx.euler_characteristic()} generic={cx.generic}"]
    if args.full:
        def pt(gp):
            return gp.name if gp.kind == 0 else f"{gp.name}@{_fr(gp.t)}"

        verts = [f"({pt(a)}, {pt(b)})" for a, b in cx.vertices]
        edges = [[cx.vertex_index[t], cx.vertex_index[h]] for t, h in cx.edges]
        faces = [[[i, s] for i, s in bd] for bd in cx.face_boundary]
        record.update(vertices=verts, edges=edges, faces=faces)
        lines += [f"v{i} {s}" for i, s in enumerate(verts)]
        lines += [f"e{i} v{t} -> v{h}" for i, (t, h) in enumerate(edges)]
        lines += ["f{} {}".format(i, " ".join(f"{'+' if s > 0 else '-'}e{j}" for j, s in bd))
                  for i, bd in enumerate(faces)]
    _dump(args, record, lines)
    return 0


def _arrangement(g: MetricGraph) -> ChamberArrangement:
    return arrangement(critical_lines(g))


def cmd_chambers(args) -> int:
    g, _ = _load_graph(args)
    arr = _arrangement(g)
    record = {
        "graph": g.name,
        "lines": [str(ln) for ln in arr.lines],
        "window": _fr(arr.bound),
        "chambers": [{"id": c.id, "sample_r": _fr(c.sample.r), "sample_L": _fr(c.sample.L),
                      "signs": list(c.signs)} for c in arr.chambers],
        "covering": [[w.source, w.target, w.line] for w in arr.walls],
    }
    lines = [f"graph {g.name}", f"window (0, {_fr(arr.bound)})^2"]
    lines += [f"line {i}: {ln}" for i, ln in enumerate(arr.lines)]
    lines += [f"chamber {c.id}: sample r={_fr(c.sample.r)} L={_fr(c.sample.L)}" for c in arr.chambers]
    lines += [f"cover {w.source} -> {w.target} across line {w.line}" for w in arr.walls]
    _dump(args, record, lines)
    return 0


def cmd_module(args) -> int:
    g, _ = _load_graph(args)
    M = build_module(g, args.degree, args.prime)
    if args.support:
        M = restrict_support(M)
    record = {"graph": g.name, "degree": args.degree, "prime": M.p,
              "dims": {str(c): M.dims[c] for c in M.chambers},
              "maps": [{"source": s, "target": t, "matrix": M.maps[(s, t)].tolist()} for s, t in M.edges]}
    lines = [f"graph {g.name} degree {args.degree} prime {M.p}"]
    lines += [f"dim {c} = {M.dims[c]}" for c in M.chambers]
    lines += [f"map {s} -> {t} = {json.dumps(M.maps[(s, t)].tolist())}" for s, t in M.edges]
    _dump(args, record, lines)
    return 0


def cmd_decompose(args) -> int:
    g, _ = _load_graph(args)
    M = build_module(g, args.degree, args.prime)
    parts = decompose(M, args.seed)
    table = multiplicity_table(parts)
    record = {
        "graph": g.name, "degree": args.degree, "seed": args.seed,
        "classes": [{"kind": cl.kind, "support": sorted(cl.support),
                     "dims": {str(c): d for c, d in sorted(cl.dims.items()) if d},
                     "multiplicity": cl.multiplicity} for cl in table],
        "summands": [{"kind": s.kind, "dims": {str(c): d for c, d in sorted(s.dims.items()) if d}} for s in parts],
    }
    lines = [f"graph {g.name} degree {args.degree} seed {args.seed}", f"summands {len(parts)}"]
    lines += [f"class {cl.descriptor()} multiplicity {cl.multiplicity}" for cl in table]
    _dump(args, record, lines)
    return 0


CSV_COLUMNS = ["chamber_id", "sample_r", "sample_L", "h0", "h1", "h2", "oracle_h0", "oracle_h1", "match"]


def cmd_verify(args) -> int:
    g, family = _load_graph(args)
    arr = _arrangement(g)
    rows = rank_sweep(g, family, arr)
    checks = decomposition_checks(g, family, args.seed, arr)
    if args.mv:
        checks += mv_checks(g, family)
    ok = all(r.match for r in rows) and all(c.ok for c in checks)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        o = r.oracle or ("", "")
        w.writerow([r.chamber_id, _fr(r.sample_r), _fr(r.sample_L), *r.betti, *o, "PASS" if r.match else "FAIL"])
    if args.csv:
        args.csv.write_text(buf.getvalue())

    record = {
        "graph": g.name, "seed": args.seed, "result": "PASS" if ok else "FAIL",
        "chambers": [dict(zip(CSV_COLUMNS, row)) for row in csv.reader(io.StringIO(buf.getvalue()))][1:],
        "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks],
    }
    lines = [f"verify {g.name} seed {args.seed}"]
    for r in rows:
        o = "-" if r.oracle is None else f"({r.oracle[0]},{r.oracle[1]})"
        lines.append(f"chamber {r.chamber_id} r={_fr(r.sample_r)} L={_fr(r.sample_L)} "
                     f"h=({r.betti[0]},{r.betti[1]},{r.betti[2]}) oracle={o} {'PASS' if r.match else 'FAIL'}")
    for c in checks:
        lines.append(f"{'PASS' if c.ok else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else ""))
    lines.append(f"RESULT {'PASS' if ok else 'FAIL'}")
    _dump(args, record, lines)
    return 0 if ok else 1


# ------------------------------------------------------------------ SVG

_PALETTE = ["#f7f7f7", "#fde0c5", "#facba6", "#f8b58b", "#f59e72", "#f2855d", "#ef6a4c", "#eb4a40",
            "#c93a55", "#a3306a", "#7a2a77", "#4b2991"]


def render_svg(g: MetricGraph, arr: ChamberArrangement, size: int = 480) -> str:
    pad, legend_w = 40, 140
    B = arr.bound
    scale = Fraction(size) / B

    def X(r):
        return float(pad + r * scale)

    def Y(L):
        return float(pad + size - L * scale)

    values = []
    for c in arr.chambers:
        h = betti(chain_complex(build_complex(g, c.sample))).betti
        values.append(h)
    levels = sorted({h[0] for h in values})
    color = {v: _PALETTE[i % len(_PALETTE)] for i, v in enumerate(levels)}
    W, H = size + 2 * pad + legend_w, size + 2 * pad
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
           f'<title>{g.name}: (h0, h1) per chamber</title>',
           '<g stroke="#333" stroke-width="1">']
    for c, h in zip(arr.chambers, values):
        pts = " ".join(f"{X(x):.2f},{Y(y):.2f}" for x, y in c.polygon.vertices)
        out.append(f'<polygon points="{pts}" fill="{color[h[0]]}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="11" text-anchor="middle">')
    for c, h in zip(arr.chambers, values):
        cx = sum(float(x) for x, _ in c.polygon.vertices) / len(c.polygon.vertices)
        cy = sum(float(y) for _, y in c.polygon.vertices) / len(c.polygon.vertices)
        out.append(f'<text x="{X(Fraction(cx)):.2f}" y="{Y(Fraction(cy)):.2f}">({h[0]},{h[1]})</text>')
    out.append("</g>")
    out.append(f'<g font-family="sans-serif" font-size="12"><text x="{pad + size / 2}" y="{H - 8}" text-anchor="middle">r</text>'
               f'<text x="12" y="{pad + size / 2}">L</text>'
               f'<text x="{pad}" y="{H - 24}" text-anchor="middle">0</text>'
               f'<text x="{pad + size}" y="{H - 24}" text-anchor="middle">{_fr(B)}</text></g>')
    lx = pad + size + 20
    out.append(f'<g font-family="sans-serif" font-size="12"><text x="{lx}" y="{pad}">h0</text>')
    for i, v in enumerate(levels):
        y = pad + 12 + 20 * i
        out.append(f'<rect x="{lx}" y="{y}" width="14" height="14" fill="{color[v]}" stroke="#333"/>'
                   f'<text x="{lx + 20}" y="{y + 12}">{v}</text>')
    out.append("</g></svg>")
    return "\n".join(out) + "\n"


def cmd_plot(args) -> int:
    g, _ = _load_graph(args)
    _emit(args, render_svg(g, _arrangement(g), args.size))
    return 0


def cmd_subdivide(args) -> int:
    try:
        text = args.spec.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from exc
    _emit(args, json.dumps(subdivide_spec(text), indent=2) + "\n")
    return 0


COMMANDS = {"betti": cmd_betti, "complex": cmd_complex, "chambers": cmd_chambers, "module": cmd_module,
            "decompose": cmd_decompose, "verify": cmd_verify, "plot": cmd_plot, "subdivide": cmd_subdivide}


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def run(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = int(exc.code or 0)
        if code:
            return _error("UsageError", "invalid command line (see message above)", 2)
        return 0
    if getattr(args, "prime", DEFAULT_PRIME) < 3 or not _is_prime(getattr(args, "prime", DEFAULT_PRIME)):
        return _error("UsageError", "--prime must be an odd prime", 2)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GraphError) as exc:
        return _error(type(exc).__name__, str(exc), 2)
    except Exception as exc:  # noqa: BLE001  (reported, not swallowed)
        return _error(type(exc).__name__, str(exc), 1)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "render_svg", "CSV_COLUMNS"]
