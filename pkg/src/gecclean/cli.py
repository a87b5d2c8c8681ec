"""Command-line front end wiring the pipeline together.

Every command is deterministic: the same configuration and inputs produce
byte-identical outputs, independent of ``--threads``.  File-writing commands
record their configuration in a ``<output>.meta.json`` sidecar.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import __version__
from .corpus import (
    ParallelFormatError,
    filter_groups,
    group_by_source,
    normalize,
    parse_parallel,
    write_parallel,
)
from .edits import (
    M2FormatError,
    apply_edits,
    extract_edits,
    read_m2_file,
    to_m2,
    write_m2_file,
)
from .onetarget import (
    STRATEGY_NAMES,
    SelectionConfig,
    Strategy,
    build_ablation,
    clean_corpus,
)
from .scorer import evaluate_corpus
from .scorer import render_report as render_score_report
from .stats import bucket_stats, overall_stats, render_report as render_stats_report

# Groups handed to each worker task; large enough to amortize pickling.
_POOL_CHUNK = 8192


def _read_samples(args) -> list:
    with open(args.input, "rb") as stream:
        return list(parse_parallel(stream, multi_target=args.multi_target_lines))


def _read_groups(args) -> list:
    with open(args.input, "rb") as stream:
        groups = group_by_source(
            parse_parallel(stream, multi_target=args.multi_target_lines)
        )
    if getattr(args, "drop_correct", False):
        groups = filter_groups(groups, drop_correct=True, drop_identity_targets=True)
    return groups


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        out.write(text)


def _write_meta(output: str, command: str, config: dict) -> None:
    meta = {
        "tool": "gecclean",
        "version": __version__,
        "command": command,
        "config": config,
    }
    payload = json.dumps(meta, indent=2, sort_keys=True) + "\n"
    _write_text(f"{output}.meta.json", payload)


def _emit(args, text: str, command: str, config: dict) -> None:
    if args.output is None:
        sys.stdout.write(text)
    else:
        _write_text(args.output, text)
        _write_meta(args.output, command, config)


def _cmd_clean(args) -> int:
    groups = _read_groups(args)
    config = SelectionConfig(Strategy.parse(args.strategy), args.seed)
    if args.threads > 1 and groups:
        # map() preserves chunk order, so the output is byte-identical to
        # the sequential path regardless of worker count.
        chunk = max(1, min(_POOL_CHUNK, -(-len(groups) // (args.threads * 4))))
        chunks = [groups[i : i + chunk] for i in range(0, len(groups), chunk)]
        samples = []
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            for part in pool.map(partial(clean_corpus, config=config), chunks):
                samples.extend(part)
    else:
        samples = clean_corpus(groups, config)
    with open(args.output, "w", encoding="utf-8", newline="\n") as out:
        count = write_parallel(samples, out)
    _write_meta(
        args.output,
        "clean",
        {
            "input": args.input,
            "strategy": args.strategy,
            "seed": args.seed,
            "multi_target_lines": args.multi_target_lines,
            "drop_correct": args.drop_correct,
            "samples": count,
        },
    )
    return 0


def _cmd_stats(args) -> int:
    samples = _read_samples(args)
    overall = overall_stats(samples)
    # The per-target-count table is defined over erroneous sources only.
    groups = filter_groups(
        group_by_source(samples), drop_correct=True, drop_identity_targets=True
    )
    text = render_stats_report(overall, bucket_stats(groups), as_json=args.json)
    _emit(
        args,
        text,
        "stats",
        {
            "input": args.input,
            "multi_target_lines": args.multi_target_lines,
            "json": args.json,
        },
    )
    return 0


def _cmd_to_m2(args) -> int:
    groups = _read_groups(args)
    blocks = (
        to_m2(
            group.source,
            [
                extract_edits(group.source, target, annotator_id=i)
                for i, target in enumerate(group.targets)
            ],
        )
        for group in groups
    )
    with open(args.output, "w", encoding="utf-8", newline="\n") as out:
        count = write_m2_file(blocks, out)
    _write_meta(
        args.output,
        "to-m2",
        {
            "input": args.input,
            "multi_target_lines": args.multi_target_lines,
            "drop_correct": args.drop_correct,
            "entries": count,
        },
    )
    return 0


def _cmd_apply_m2(args) -> int:
    lines = []
    with open(args.input, "r", encoding="utf-8", newline="") as stream:
        for source, annotations in read_m2_file(stream):
            for annotation in annotations:
                lines.append(apply_edits(source, annotation))
    _write_text(args.output, "".join(line + "\n" for line in lines))
    _write_meta(
        args.output, "apply-m2", {"input": args.input, "sentences": len(lines)}
    )
    return 0


def _cmd_ablate(args) -> int:
    groups = _read_groups(args)
    n_values = sorted({int(part) for part in args.n_values.split(",") if part})
    datasets = build_ablation(
        groups, args.k_min, n_values, args.seed, max_groups=args.max_groups
    )
    written = {}
    for n, samples in datasets.items():
        path = f"{args.output}.n{n}.tsv"
        with open(path, "w", encoding="utf-8", newline="\n") as out:
            written[path] = write_parallel(samples, out)
    _write_meta(
        args.output,
        "ablate",
        {
            "input": args.input,
            "k_min": args.k_min,
            "n_values": n_values,
            "seed": args.seed,
            "max_groups": args.max_groups,
            "multi_target_lines": args.multi_target_lines,
            "outputs": written,
        },
    )
    return 0


def _cmd_score(args) -> int:
    with open(args.hyp, "r", encoding="utf-8") as stream:
        hypotheses = [normalize(line) for line in stream]
    with open(args.gold, "r", encoding="utf-8", newline="") as stream:
        gold = list(read_m2_file(stream))
    if len(gold) != len(hypotheses):
        raise ValueError(
            f"{len(gold)} gold entries but {len(hypotheses)} hypothesis lines"
        )
    entries = [
        (source, hypothesis, annotations)
        for (source, annotations), hypothesis in zip(gold, hypotheses)
    ]
    report = evaluate_corpus(entries)
    text = render_score_report(report, as_json=args.json)
    _emit(
        args,
        text,
        "score",
        {"gold": args.gold, "hyp": args.hyp, "json": args.json},
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gecclean",
        description="Corpus curation toolkit for grammatical error correction data.",
    )
    parser.add_argument("--version", action="version", version=f"gecclean {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_corpus_input(sub):
        sub.add_argument("input", help="parallel corpus (TSV, UTF-8)")
        sub.add_argument(
            "--multi-target-lines",
            action="store_true",
            help="lines carry source<TAB>t1<TAB>t2... instead of one pair",
        )

    clean = commands.add_parser(
        "clean", help="keep exactly one target per unique source"
    )
    add_corpus_input(clean)
    clean.add_argument("-o", "--output", required=True, help="output TSV path")
    clean.add_argument(
        "--strategy", required=True, choices=STRATEGY_NAMES, help="selection strategy"
    )
    clean.add_argument("--seed", type=int, default=42, help="seed for the random strategy")
    clean.add_argument(
        "--drop-correct",
        action="store_true",
        help="drop identity targets and fully grammatical sources first",
    )
    clean.add_argument(
        "--threads", type=int, default=1, help="worker processes (output is identical)"
    )
    clean.set_defaults(handler=_cmd_clean)

    stats = commands.add_parser("stats", help="corpus statistics report")
    add_corpus_input(stats)
    stats.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    stats.add_argument("--json", action="store_true", help="machine-readable output")
    stats.set_defaults(handler=_cmd_stats)

    to_m2_cmd = commands.add_parser(
        "to-m2", help="convert a parallel corpus to multi-annotator M2"
    )
    add_corpus_input(to_m2_cmd)
    to_m2_cmd.add_argument("-o", "--output", required=True, help="output M2 path")
    to_m2_cmd.add_argument(
        "--drop-correct",
        action="store_true",
        help="drop identity targets and fully grammatical sources first",
    )
    to_m2_cmd.set_defaults(handler=_cmd_to_m2)

    apply_m2 = commands.add_parser(
        "apply-m2", help="apply M2 edits, one corrected line per annotation"
    )
    apply_m2.add_argument("input", help="M2 file")
    apply_m2.add_argument("-o", "--output", required=True, help="output text path")
    apply_m2.set_defaults(handler=_cmd_apply_m2)

    ablate = commands.add_parser(
        "ablate", help="build fixed-source datasets with 1..n targets each"
    )
    add_corpus_input(ablate)
    ablate.add_argument(
        "-o", "--output", required=True, help="output prefix; writes <prefix>.n<N>.tsv"
    )
    ablate.add_argument(
        "--k-min", type=int, required=True, help="minimum targets per kept group"
    )
    ablate.add_argument(
        "--n-values", required=True, help="comma-separated target counts, e.g. 1,2,3"
    )
    ablate.add_argument("--seed", type=int, default=42, help="shuffle seed")
    ablate.add_argument(
        "--max-groups", type=int, default=None, help="sub-sample to this many groups"
    )
    ablate.set_defaults(handler=_cmd_ablate)

    score = commands.add_parser(
        "score", help="edit-level P/R/F0.5 against multi-annotator M2 gold"
    )
    score.add_argument("--gold", required=True, help="gold M2 file")
    score.add_argument("--hyp", required=True, help="hypothesis file, one sentence per line")
    score.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    score.add_argument("--json", action="store_true", help="machine-readable output")
    score.set_defaults(handler=_cmd_score)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ParallelFormatError, M2FormatError, ValueError, OSError) as exc:
        print(f"gecclean {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
