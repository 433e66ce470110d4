"""Command-line interface: ``bei <subcommand> ...``.

Exit codes: 0 success, 1 a disagreement, failed identity or uncertified
result, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .binomial import EdgeBinomialKind, binomial_edge_ideal, colon_identity_bridge, colon_identity_parity, colon_identity_path, graph_ring
from .cache import ENV_VAR
from .corpus import CORPUS_DIR, load_corpus, write_corpus
from .dseq import SequenceOrdering, canonical_ordering, check_d_sequence, classification_csv, classify_unicyclic, graph_id, search_d_sequence
from .field import CoefficientField
from .graphs import enumerate_graphs, enumerate_unicyclic, load_graph
from .harness import REGISTRY, HarnessConfig, results_csv, results_json, summarize, verify
from .ideal import ideal_power
from .resolution import minimal_free_resolution
from .ring import MonomialOrder


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..4"`` or ``"1,3,5"`` (pieces may mix)."""
    out: list[int] = []
    for piece in text.split(","):
        piece = piece.strip()
        if ".." in piece:
            lo, hi = piece.split("..", 1)
            out += range(int(lo), int(hi) + 1)
        elif piece:
            out.append(int(piece))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def _range_arg(text: str) -> list[int]:
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from exc


def _field_arg(text: str) -> CoefficientField:
    try:
        return CoefficientField.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _edge_arg(text: str) -> tuple[int, int]:
    parts = text.replace("-", " ").replace(",", " ").split()
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"bad edge {text!r}; use i-j")
    return int(parts[0]), int(parts[1])


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", type=_field_arg, default=None, help="q or fp:<p> (default fp:32003; q for dseq)")
    p.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bei", description="Binomial edge ideal toolkit.")
    ap.add_argument("--version", action="version", version=f"bei {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check registered formulas and identities on the corpus")
    _common(p)
    p.add_argument("--theorem", action="append", required=True, help="theorem id, repeatable, or 'all'")
    p.add_argument("--n", type=_range_arg, default=None, help="vertex-count range, e.g. 3..5")
    p.add_argument("--s", type=_range_arg, default=None, help="power range, e.g. 1..2")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--csv", type=Path, default=None)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--corpus", type=Path, default=CORPUS_DIR)
    p.add_argument("--reverify-q", action="store_true", help="recompute each table over the rationals")
    p.add_argument("--timings", action="store_true", help="include runtimes in JSON output")

    p = sub.add_parser("dseq", help="d-sequence check or search for one graph")
    _common(p)
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--kind", default="standard")
    p.add_argument("--ordering", default=None, help="edges in order, e.g. 1-2,2-3,1-3")
    p.add_argument("--exhaustive", action="store_true", help="search every ordering")
    p.add_argument("--budget", type=int, default=None)

    for name, help_ in (("regularity", "reg S/I^s for a graph"), ("betti", "graded Betti table of S/I^s")):
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.add_argument("--graph", type=Path, required=True)
        p.add_argument("--kind", default="standard")
        p.add_argument("--s", type=int, default=1)
        p.add_argument("--cap", type=int, default=None)

    p = sub.add_parser("colon", help="check a colon identity for a graph and a pair of vertices")
    _common(p)
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--edge", type=_edge_arg, required=True)
    p.add_argument("--identity", choices=["path", "bridge", "parity"], default="path")

    p = sub.add_parser("enumerate", help="list graphs up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--unicyclic", action="store_true")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--out", type=Path, default=None, help="write one edge-list file per graph")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="d-sequence verdicts for all unicyclic graphs")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--no-parity", action="store_true")
    p.add_argument("--csv", type=Path, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("corpus", help="regenerate or list the pinned instance corpus")
    p.add_argument("--write", type=Path, default=None, help="write the corpus to this directory")
    p.add_argument("--json", action="store_true")
    return ap


def _ring_for(g, args, default_field: CoefficientField | None = None):
    fld = args.field or default_field or CoefficientField.prime()
    return graph_ring(g, fld, MonomialOrder.parse(args.order))


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, sort_keys=True, indent=1) if args.json else text)


def cmd_verify(args) -> int:
    ids = list(REGISTRY) if "all" in args.theorem else args.theorem
    for tid in ids:
        if tid not in REGISTRY:
            raise UsageError(f"unknown theorem id {tid!r}; known: {', '.join(REGISTRY)}")
    cfg = HarnessConfig(
        field=args.field or CoefficientField.prime(),
        order=MonomialOrder.parse(args.order),
        cap=args.cap,
        cache_dir=args.cache_dir or None,
        reverify_q=args.reverify_q,
        jobs=args.jobs,
    )
    if cfg.cache_dir is None:
        import os

        cfg.cache_dir = os.environ.get(ENV_VAR) or None
    corpus = load_corpus(args.corpus)
    rows, hits, misses = [], 0, 0
    for tid in ids:
        r, man = verify(tid, args.n, args.s, cfg, corpus)
        rows += r
        hits += man.cache_hits
        misses += man.cache_misses
    totals = summarize(rows)
    if args.csv:
        args.csv.write_text(results_csv(rows))
    if args.json:
        print(results_json(rows, timings=args.timings))
    else:
        for r in rows:
            mark = "PASS" if r.agree else "FAIL"
            inst = r.instance
            extra = "".join(f" {k}={inst[k]}" for k in ("s", "prefix") if k in inst)
            print(f"{mark} {r.theorem_id} {inst.get('id', '')} n={inst.get('n', '')}{extra} "
                  f"predicted={r.predicted} computed={r.computed.value} [{r.reason}]")
        print(f"totals: {json.dumps(totals, sort_keys=True)} cache: hits={hits} misses={misses}", file=sys.stderr)
    return 0 if totals["agree"] == totals["rows"] else 1


def cmd_dseq(args) -> int:
    g = load_graph(args.graph)
    kind = EdgeBinomialKind.parse(args.kind)
    ring = _ring_for(g, args, CoefficientField(0))
    if args.exhaustive:
        rep = search_d_sequence(g, kind, args.budget, ring)
    else:
        if args.ordering:
            ordering = SequenceOrdering(_edge_arg(e) for e in args.ordering.split(","))
        else:
            ordering = canonical_ordering(g)
        rep = check_d_sequence(g, kind, ordering, ring)
    text = f"{rep.verdict.value}"
    if rep.ordering is not None:
        text += " ordering: " + " ".join(f"{a}-{b}" for a, b in rep.ordering.edges)
    if rep.violation:
        text += f" violation: {rep.violation}"
    _emit(args, rep.to_json(), text)
    return 0 if rep.is_dsequence else 1


def _power_table(args):
    g = load_graph(args.graph)
    ring = _ring_for(g, args)
    ideal = ideal_power(binomial_edge_ideal(g, EdgeBinomialKind.parse(args.kind), ring), args.s)
    return minimal_free_resolution(ideal, args.cap)


def cmd_regularity(args) -> int:
    t = _power_table(args)
    payload = {"value": t.regularity, "certified": t.certified}
    _emit(args, payload, f"{t.regularity}" + ("" if t.certified else " (uncertified lower bound)"))
    return 0 if t.certified else 1


def cmd_betti(args) -> int:
    t = _power_table(args)
    _emit(args, {**t.to_json(), "regularity": t.regularity}, t.pretty())
    return 0 if t.certified else 1


def cmd_colon(args) -> int:
    g = load_graph(args.graph)
    ring = _ring_for(g, args, CoefficientField(0))
    check = {"path": colon_identity_path, "bridge": colon_identity_bridge, "parity": colon_identity_parity}[args.identity]
    res = check(g, args.edge, ring)
    _emit(args, res.to_json(), f"{res.identity_name} {res.edge}: {'holds' if res.equal else 'FAILS'}")
    return 0 if res.equal else 1


def cmd_enumerate(args) -> int:
    if args.unicyclic:
        graphs = list(enumerate_unicyclic(args.n, args.n))
    else:
        graphs = enumerate_graphs(args.n)
        if args.connected:
            graphs = [g for g in graphs if g.is_connected()]
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        for k, g in enumerate(graphs, 1):
            (args.out / f"n{g.n}-{k:04d}.edges").write_text(f"n {g.n}\n" + g.to_edge_list())
    if args.json:
        print(json.dumps([{"id": graph_id(g), "n": g.n, "edges": [list(e) for e in g.sorted_edges()]} for g in graphs], indent=1))
    else:
        for g in graphs:
            print(graph_id(g))
    return 0


def cmd_classify(args) -> int:
    rows = classify_unicyclic(args.n_max, parity=not args.no_parity, n_min=args.n_min)
    text = classification_csv(rows)
    if args.csv:
        args.csv.write_text(text)
    if args.json:
        print(json.dumps([{**r.csv_row(), "agree": r.agree} for r in rows], indent=1, sort_keys=True))
    elif not args.csv:
        print(text, end="")
    return 0 if all(r.agree for r in rows) else 1


def cmd_corpus(args) -> int:
    if args.write:
        path = write_corpus(args.write)
        print(path)
        return 0
    insts = load_corpus()
    counts: dict[str, int] = {}
    for i in insts:
        counts[i.theorem] = counts.get(i.theorem, 0) + 1
    _emit(args, counts, "\n".join(f"{k}: {v}" for k, v in sorted(counts.items())))
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "dseq": cmd_dseq,
    "regularity": cmd_regularity,
    "betti": cmd_betti,
    "colon": cmd_colon,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "corpus": cmd_corpus,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, KeyError, FileNotFoundError) as exc:
        msg = str(exc).strip("'\"")
        if getattr(args, "json", False):
            print(json.dumps({"error": type(exc).__name__, "message": msg}), file=sys.stderr)
        else:
            print(f"bei: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
