"""Command-line interface.

Standard output carries machine-parseable data only (a single value or CSV);
all diagnostics go to standard error. Exit codes: 0 success, 1 validation or
tamper failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, attacks, rpg, serialize, sip
from .errors import FormatError, GraphmarkError, TamperError

USAGE_ERROR = 2
TAMPER_ERROR = 1


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot write {path}: {exc}") from exc


def _flatten(parts):
    for part in parts:
        if isinstance(part, tuple):
            yield from _flatten(part)
        else:
            yield part


def _load_graph(path: str):
    """Read either graph format, picking the parser by the header line."""
    text = _read_text(path)
    head = text.split("\n", 1)[0]
    if head.startswith("EDGES"):
        return serialize.read_unlabeled(text), True
    return serialize.read_rpg(text), False


def _cmd_encode(args) -> int:
    sip.check_watermark(args.watermark)
    graph = rpg.sip_to_rpg(sip.watermark_to_sip(args.watermark))
    _write_text(args.output, serialize.write_rpg(graph))
    if args.dot:
        _write_text(args.dot, serialize.export_dot(graph, annotate=args.annotate))
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


def _cmd_sip(args) -> int:
    sip.check_watermark(args.watermark)
    sys.stdout.write(serialize.write_permutation(sip.watermark_to_sip(args.watermark)))
    return 0


def _cmd_decode(args) -> int:
    graph, unlabeled = _load_graph(args.input)
    if unlabeled:
        raise TamperError("graph is unlabeled; run restore first")
    if not args.lenient:
        report = analysis.validate_rpg(graph)
        if not report.ok:
            print(f"tamper detected: {report}", file=sys.stderr)
            return TAMPER_ERROR
        graph = analysis.as_rpg(graph)
    sequence = rpg.rpg_to_sip(graph)
    print(sip.sip_to_watermark(sequence, strict=not args.lenient))
    return 0


def _cmd_validate(args) -> int:
    graph, unlabeled = _load_graph(args.input)
    if unlabeled:
        print("layer,check,status,detail")
        print("graph,labels,fail,graph is unlabeled")
        return TAMPER_ERROR
    failed = False
    lines = ["layer,check,status,detail"]
    report = analysis.validate_rpg(graph)
    if report.ok:
        lines.append("graph,structure,pass,")
    else:
        failed = True
        for node, kind in report.violations:
            lines.append(f"graph,{kind},fail,node {node}")
    if report.ok:
        sip_report = sip.validate_sip(rpg.rpg_to_sip(analysis.as_rpg(graph)))
        for name, flag in (("length", sip_report.length_ok),
                           ("sip", sip_report.sip_ok),
                           ("bitonic", sip_report.bitonic_ok),
                           ("block", sip_report.block_ok)):
            status = {True: "pass", False: "fail", None: "skipped"}[flag]
            failed = failed or flag is False
            lines.append(f"sip,{name},{status},")
        for detail in sip_report.details:
            print(detail, file=sys.stderr)
    else:
        for name in ("length", "sip", "bitonic", "block"):
            lines.append(f"sip,{name},skipped,graph structure invalid")
    print("\n".join(lines))
    return TAMPER_ERROR if failed else 0


def _cmd_hp(args) -> int:
    graph, unlabeled = _load_graph(args.input)
    if unlabeled:
        raise TamperError("graph is unlabeled; run restore first")
    path = analysis.hamiltonian_path(graph, neighbor_order=args.order)
    sys.stdout.write(serialize.write_permutation(path))
    return 0


def _cmd_restore(args) -> int:
    graph, _ = _load_graph(args.input)
    restored = analysis.restore_labels(graph)
    _write_text(args.output, serialize.write_rpg(restored))
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


def _cmd_repair(args) -> int:
    graph, unlabeled = _load_graph(args.input)
    if unlabeled:
        raise TamperError("graph is unlabeled; run restore first")
    result = analysis.repair_list_pointers(graph)
    _write_text(args.output, serialize.write_rpg(result.graph))
    print("action,from,to")
    for a, b in result.rebuilt:
        print(f"rebuilt,{a},{b}")
    for a, b in result.removed:
        print(f"removed,{a},{b}")
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


def _cmd_attack(args) -> int:
    graph, unlabeled = _load_graph(args.input)
    if unlabeled:
        raise TamperError("attacks here run on labeled graph files")
    spec = attacks.AttackSpec(args.kind, args.count, args.seed)
    result = attacks.apply_graph_attack(graph, spec)
    if result.unlabeled:
        _write_text(args.output, serialize.write_unlabeled(result.graph))
    else:
        _write_text(args.output, serialize.write_rpg(result.graph))
    print("edit,detail")
    for edit in result.edits:
        print(f"{edit[0]},{' '.join(str(x) for x in _flatten(edit[1:]))}")
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


def _cmd_fuzz(args) -> int:
    failures = 0
    for w in range(1, args.max_w + 1):
        permutation = sip.watermark_to_sip(w)
        if sip.sip_to_watermark(permutation) != w:
            failures += 1
            print(f"round-trip failure at watermark {w}", file=sys.stderr)
            continue
        if rpg.rpg_to_sip(rpg.sip_to_rpg(permutation)) != permutation:
            failures += 1
            print(f"graph round-trip failure at watermark {w}", file=sys.stderr)
    if failures:
        print(f"{failures} round-trip failures", file=sys.stderr)
        return TAMPER_ERROR
    print(f"round-trip clean for 1..{args.max_w}", file=sys.stderr)

    watermarks = range(1, args.max_w + 1)
    specs = [attacks.AttackSpec(kind, 1, args.seed + i)
             for i, kind in enumerate(attacks.ATTACK_KINDS)]
    reports = [attacks.run_detection_campaign(watermarks, specs, args.trials)]
    if args.exhaustive_attacks:
        reports.append(attacks.run_exhaustive_edge_campaign(watermarks))
    combined = attacks.CampaignReport.combine(reports)
    sys.stdout.write(combined.to_csv())
    print(combined.summary(), file=sys.stderr)
    if args.figures:
        from .figures import render_campaign_figures

        for path in render_campaign_figures(combined, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphmark",
        description="Encode integer watermarks as tamper-evident permutation flow-graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode a watermark into a graph file")
    p.add_argument("-w", "--watermark", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--dot", help="also export Graphviz DOT to this path")
    p.add_argument("--annotate", action="store_true",
                   help="label s/t and body nodes in the DOT export")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("sip", help="print the self-inverting permutation for a watermark")
    p.add_argument("-w", "--watermark", type=int, required=True)
    p.set_defaults(func=_cmd_sip)

    p = sub.add_parser("decode", help="decode a graph file back to its watermark")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--lenient", action="store_true",
                   help="skip tamper checks and decode best-effort")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("validate", help="run every structural check on a graph file")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("hp", help="print the unique Hamiltonian path of a graph file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--order", choices=("ascending", "descending"),
                   default="ascending", help="DFS tie-breaking policy")
    p.set_defaults(func=_cmd_hp)

    p = sub.add_parser("restore", help="restore codec labels of an unlabeled graph")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_restore)

    p = sub.add_parser("repair", help="rebuild damaged list pointers of a graph file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_repair)

    p = sub.add_parser("attack", help="apply a seeded attack to a graph file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--kind", required=True, choices=attacks.GRAPH_ATTACK_KINDS)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_attack)

    p = sub.add_parser("fuzz", help="round-trip sweep plus a detection campaign (CSV)")
    p.add_argument("--max-w", type=int, required=True,
                   help="sweep watermarks 1..N")
    p.add_argument("--exhaustive-attacks", action="store_true",
                   help="also delete and flip every single edge of every graph")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--figures", metavar="DIR",
                   help="render campaign charts as PNG files into DIR")
    p.set_defaults(func=_cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TamperError as exc:
        print(f"tamper detected: {exc}", file=sys.stderr)
        return TAMPER_ERROR
    except (FormatError, GraphmarkError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
