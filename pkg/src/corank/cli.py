"""Command-line entry point: ``corank summarize|eval|corpus|trace-example``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from corank.community import detect, format_sets
from corank.graphcore import example_graph
from corank.pipeline import SCHEMA_VERSION, PipelineConfig, summarize_text
from corank.ranker import RankConfig, select_influential
from corank.rouge import rouge_text

log = logging.getLogger("corank")

# Communities listed for the example network in the original write-up.
# The conductance merge rule does not produce the fourth one, so it is
# kept as fixture input for the ranking trace.
EXAMPLE_COMMUNITIES = [
    {1, 2, 3, 4},
    {1, 2, 3, 4, 5, 6},
    {4, 5, 6, 7, 8, 9, 10},
    {1, 2, 3, 4, 8, 9, 10},
    {8, 9, 10},
]
EXAMPLE_LNS = [{1, 2, 3, 4}, {4, 5}, {4, 6}, {4, 5, 6, 7, 8, 9, 10}, {5, 6}, {8, 9}, {8, 9, 10}]


class ManifestError(ValueError):
    pass


def _n_list(text: str) -> list[int]:
    try:
        ns = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if not ns or any(n < 1 for n in ns):
        raise argparse.ArgumentTypeError(f"n values must be >= 1: {text!r}")
    return ns


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    # every default is None so that only flags actually given override --config
    p.add_argument("--config", type=Path, help="JSON file with flat config keys")
    p.add_argument("--delta-e", type=float, dest="delta_e")
    p.add_argument("--lambda", type=float, dest="lambda")
    p.add_argument("--delta-csoan", type=float, dest="delta_csoan")
    p.add_argument("--alpha-decay", type=float, dest="alpha_decay")
    p.add_argument("--max-iter", type=int, dest="max_iter")
    p.add_argument("-k", "--sentences", type=int, dest="k")
    p.add_argument("--word-budget", type=int, dest="word_budget")


def _add_rouge_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--stem", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--stopwords", action=argparse.BooleanOptionalAction, default=None,
                   help="remove stopwords before scoring")


_FLAT_KEYS = ("delta_e", "lambda", "delta_csoan", "alpha_decay", "max_iter", "k", "word_budget", "stem", "stopwords")


def resolve_config(args: argparse.Namespace) -> PipelineConfig:
    """Defaults, then the ``--config`` file, then explicit flags."""
    config = PipelineConfig()
    if getattr(args, "config", None):
        values = json.loads(Path(args.config).read_text(encoding="utf-8"))
        if not isinstance(values, dict):
            raise ValueError(f"{args.config}: expected a JSON object")
        config = config.updated(values)
    flags = {k: getattr(args, k) for k in _FLAT_KEYS if getattr(args, k, None) is not None}
    return config.updated(flags)


def _read(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc


def cmd_summarize(args) -> int:
    config = resolve_config(args)
    result = summarize_text(_read(args.input), config)
    for w in result.warnings:
        log.warning(w)
    if args.json:
        print(result.to_json(config))
    elif result.summary.text:
        print(result.summary.text)
    return 0


def cmd_eval(args) -> int:
    config = resolve_config(args)
    cand = _read(args.candidate)
    ref = _read(args.reference)
    scores = [
        rouge_text(cand, ref, n, stem=config.rouge_stem, stopwords=config.rouge_stopwords)
        for n in args.n
    ]
    if args.json:
        print(json.dumps({"schemaVersion": SCHEMA_VERSION, "scores": [s.as_dict() for s in scores]},
                         indent=2, sort_keys=True))
    else:
        print(f"{'metric':<10}{'recall':>10}{'precision':>11}{'f1':>10}")
        for s in scores:
            print(f"{'ROUGE-' + str(s.n):<10}{s.recall:>10.6f}{s.precision:>11.6f}{s.f1:>10.6f}")
    return 0


def load_manifest(path: Path) -> list[dict]:
    """Validate a corpus manifest; relative paths resolve against its folder."""
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise ManifestError(f"{path}: top level must be a list")
    base = Path(path).parent
    entries = []
    for pos, entry in enumerate(data):
        if not isinstance(entry, dict):
            raise ManifestError(f"{path}: entry {pos} is not an object")
        doc = entry.get("document")
        refs = entry.get("references")
        if not isinstance(doc, str):
            raise ManifestError(f"{path}: entry {pos} needs a 'document' path")
        if not isinstance(refs, list) or not refs or not all(isinstance(r, str) for r in refs):
            raise ManifestError(f"{path}: entry {pos} needs a non-empty 'references' list of paths")
        entries.append({"document": base / doc, "references": [base / r for r in refs]})
    return entries


def _score_document(job: tuple[dict, PipelineConfig]) -> dict:
    entry, config = job
    result = summarize_text(_read(entry["document"]), config)
    refs = [_read(r) for r in entry["references"]]
    row = {"document": str(entry["document"]), "sentences": result.summary.indices}
    for n in (1, 2):
        recalls = [
            rouge_text(result.summary.text, ref, n, stem=config.rouge_stem,
                       stopwords=config.rouge_stopwords).recall
            for ref in refs
        ]
        row[f"rouge{n}Recall"] = sum(recalls) / len(recalls)
    return row


def corpus_report(entries: list[dict], config: PipelineConfig, jobs: int = 1) -> dict:
    work = [(e, config) for e in entries]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_score_document, work))
    else:
        rows = [_score_document(w) for w in work]
    mean = {}
    for key in ("rouge1Recall", "rouge2Recall"):
        mean[key] = sum(r[key] for r in rows) / len(rows) if rows else 0.0
    return {"schemaVersion": SCHEMA_VERSION, "documents": rows, "mean": mean,
            "config": config.as_flat_dict()}


def format_report(report: dict) -> str:
    lines = [f"{'document':<40}{'R-1 recall':>12}{'R-2 recall':>12}"]
    for r in report["documents"]:
        lines.append(f"{Path(r['document']).name:<40}{r['rouge1Recall']:>12.4f}{r['rouge2Recall']:>12.4f}")
    m = report["mean"]
    lines.append(f"{'mean':<40}{m['rouge1Recall']:>12.4f}{m['rouge2Recall']:>12.4f}")
    return "\n".join(lines)


def cmd_corpus(args) -> int:
    config = resolve_config(args)
    report = corpus_report(load_manifest(args.manifest), config, args.jobs)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.report:
        Path(args.report).write_text(text + "\n", encoding="utf-8")
    print(text if args.json else format_report(report))
    return 0


def trace_example() -> dict:
    g = example_graph()
    det = detect(g)
    foan, first = det.history[0], det.history[1]
    degrees = {v: g.weighted_degree_in(v, EXAMPLE_COMMUNITIES[3]) for v in sorted(EXAMPLE_COMMUNITIES[3])}
    sel_fixture = select_influential(g, EXAMPLE_COMMUNITIES, RankConfig(k=5))
    sel_detected = select_influential(g, det.communities, RankConfig(k=5))
    return {
        "graph": g,
        "foan": foan.sets,
        "csoan1": first.sets,
        "stable": det.state.sets,
        "iterations": det.state.iteration - 1,
        "lns": det.link_node_sets,
        "fixture_lns": [(sorted(s), g.conductance(s)) for s in EXAMPLE_LNS],
        "communities": det.communities,
        "degrees": degrees,
        "selection_fixture": sel_fixture.ordered_nodes,
        "selection_detected": sel_detected.ordered_nodes,
    }


def _fmt_set(s) -> str:
    return "{" + ", ".join(str(x) for x in sorted(s)) + "}"


def format_trace(t: dict) -> str:
    g = t["graph"]
    out = ["# First-order neighbours", format_sets(g, t["foan"]),
           "", "# Constrained neighbours after iteration 1", format_sets(g, t["csoan1"]),
           "", f"# Stable neighbours ({t['iterations']} iterations), link node sets, conductance"]
    for e in g.edge_ids:
        i, j = g.endpoints(e)
        lns = t["lns"][e]
        phi = "n/a" if lns == g.nodes else f"{g.conductance(lns):.3f}"
        out.append(f"({i}, {j}) {_fmt_set(t['stable'][e])} {_fmt_set(lns)} {phi}")
    out += ["", "# Conductance of the reference link node sets"]
    out += [f"{_fmt_set(s)} {phi:.3f}" for s, phi in t["fixture_lns"]]
    out += ["", "# Detected communities"]
    out += [f"{_fmt_set(c.members)} {c.phi:.3f}" for c in t["communities"]]
    out += ["", "# Weighted degree in {1, 2, 3, 4, 8, 9, 10}"]
    out += [f"{v} {d:g}" for v, d in t["degrees"].items()]
    out += ["", "# Selection (reference communities)", " ".join(map(str, t["selection_fixture"])),
            "", "# Selection (detected communities)", " ".join(map(str, t["selection_detected"]))]
    return "\n".join(out)


def trace_json(t: dict) -> dict:
    g = t["graph"]
    as_lists = lambda sets: {str(e): sorted(sets[e]) for e in sorted(sets)}
    return {
        "schemaVersion": SCHEMA_VERSION,
        "edges": {str(e): list(g.endpoints(e)) for e in g.edge_ids},
        "foan": as_lists(t["foan"]),
        "csoanIteration1": as_lists(t["csoan1"]),
        "stable": as_lists(t["stable"]),
        "iterations": t["iterations"],
        "linkNodeSets": {str(e): sorted(s) for e, s in sorted(t["lns"].items())},
        "referenceLinkNodeSets": [{"members": s, "conductance": phi} for s, phi in t["fixture_lns"]],
        "communities": [{"members": c.sorted_members(), "conductance": c.phi} for c in t["communities"]],
        "weightedDegrees": {str(v): d for v, d in t["degrees"].items()},
        "selectionReference": t["selection_fixture"],
        "selectionDetected": t["selection_detected"],
    }


def cmd_trace(args) -> int:
    t = trace_example()
    print(json.dumps(trace_json(t), indent=2, sort_keys=True) if args.json else format_trace(t))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corank", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="extract a summary from a text file")
    p.add_argument("input", type=Path)
    p.add_argument("--json", action="store_true")
    _add_config_flags(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("eval", help="ROUGE-N of a candidate against a reference")
    p.add_argument("candidate", type=Path)
    p.add_argument("reference", type=Path)
    p.add_argument("--n", type=_n_list, default=[1, 2], help="comma-separated orders, e.g. 1,2,3")
    p.add_argument("--json", action="store_true")
    p.add_argument("--config", type=Path)
    _add_rouge_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("corpus", help="summarize and score every document in a manifest")
    p.add_argument("manifest", type=Path)
    p.add_argument("--json", action="store_true")
    p.add_argument("--report", type=Path, help="also write the JSON report here")
    p.add_argument("--jobs", type=int, default=1)
    _add_config_flags(p)
    _add_rouge_flags(p)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("trace-example", help="dump every stage on the bundled example network")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"corank: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
