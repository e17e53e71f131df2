"""Command-line interface wiring the toolkit into reproducible pipelines.

Exit codes: 0 success / transformation applied, 1 fatal error, 2 usage
error (argparse), 3 strategy not applicable. Logs go to stderr; data goes
to stdout or --out files only.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from codemorph import metrics as metrics_mod
from codemorph import report as report_mod
from codemorph.corpus import (
    CorpusRecord,
    SymbolNameTable,
    filter_transformable,
    load_corpus,
    preprocess_for_search,
    split_long,
    write_corpus,
)
from codemorph.errors import CodemorphError, LanguageMismatch
from codemorph.lang import Language, SourceSnippet
from codemorph.parse import parse
from codemorph.strategies import (
    Category,
    InsertLocation,
    SitePolicy,
    TransformConfig,
    apply,
    get_strategy,
    is_applicable,
    list_strategies,
)
from codemorph.tree import has_errors, tokens_dfs
from codemorph.verify import verify_preservation

log = logging.getLogger("codemorph")

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_USAGE = 2
EXIT_NOT_APPLICABLE = 3

COUNTS_NOTE = (
    "The catalog defines 32 strategies: 28 are available for Java and 25 for "
    "Python, per the per-strategy language flags printed by `list`. Prose "
    "summaries elsewhere quote 24-27 per language depending on counting "
    "convention; the flags here are the ground truth this tool enforces."
)


def _language(value: str) -> Language:
    try:
        return Language.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _category(value: str) -> Category:
    try:
        return Category.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _config_from(args: argparse.Namespace) -> TransformConfig:
    return TransformConfig(
        seed=args.seed,
        site_policy=SitePolicy(args.site_policy),
        insert_location=InsertLocation(args.insert_location),
        junk_template_index=args.junk_template,
    )


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="seed for all random choices (default 0)")
    parser.add_argument("--site-policy", choices=[p.value for p in SitePolicy],
                        default=SitePolicy.ALL.value, help="which candidate sites to rewrite")
    parser.add_argument("--insert-location", choices=[l.value for l in InsertLocation],
                        default=InsertLocation.MIDDLE.value,
                        help="where ID-1/ID-2 insert (default middle)")
    parser.add_argument("--junk-template", type=int, default=None,
                        help="fixed junk-code template index for ID-2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codemorph",
        description="Semantic-preserving Java/Python code transformations "
                    "and robustness-delta reporting.",
        epilog=COUNTS_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="print the strategy catalog",
                            description="Print the strategy catalog.", epilog=COUNTS_NOTE)
    p_list.add_argument("--language", type=_language, default=None)
    p_list.add_argument("--category", type=_category, default=None)
    p_list.add_argument("--format", choices=["table", "json"], default="table")

    p_apply = sub.add_parser("apply", help="apply one strategy to a source file")
    p_apply.add_argument("file", type=Path)
    p_apply.add_argument("--language", type=_language, required=True)
    p_apply.add_argument("--strategy", required=True)
    p_apply.add_argument("--out", type=Path, default=None)
    _add_config_flags(p_apply)

    p_batch = sub.add_parser("batch", help="transform a JSONL corpus")
    p_batch.add_argument("--corpus", type=Path, required=True)
    p_batch.add_argument("--out", type=Path, required=True)
    group = p_batch.add_mutually_exclusive_group(required=True)
    group.add_argument("--strategy")
    group.add_argument("--category", type=_category)
    p_batch.add_argument("--language", type=_language, required=True)
    p_batch.add_argument("--manifest", type=Path, default=None)
    p_batch.add_argument("--strict", action="store_true")
    p_batch.add_argument("--jobs", type=int, default=1)
    _add_config_flags(p_batch)

    p_filter = sub.add_parser("filter", help="keep only transformable records")
    p_filter.add_argument("--corpus", type=Path, required=True)
    p_filter.add_argument("--out", type=Path, required=True)
    group = p_filter.add_mutually_exclusive_group(required=True)
    group.add_argument("--strategy")
    group.add_argument("--category", type=_category)
    p_filter.add_argument("--language", type=_language, required=True)
    p_filter.add_argument("--stats", type=Path, default=None)
    p_filter.add_argument("--strict", action="store_true")

    p_tokens = sub.add_parser("tokens", help="print the DFS token sequence")
    p_tokens.add_argument("file", type=Path)
    p_tokens.add_argument("--language", type=_language, required=True)
    p_tokens.add_argument("--code-only", action="store_true",
                          help="drop comment tokens")
    p_tokens.add_argument("--search-preprocess", action="store_true",
                          help="apply the code-search filtering/renaming")
    p_tokens.add_argument("--format", choices=["lines", "json"], default="lines")

    p_verify = sub.add_parser("verify", help="verify a transformed file against the original")
    p_verify.add_argument("--language", type=_language, required=True)
    p_verify.add_argument("--original", type=Path, required=True)
    p_verify.add_argument("--transformed", type=Path, required=True)
    p_verify.add_argument("--verify-cmd", default=None,
                          help="external checker; {file} expands to a temp path")
    p_verify.add_argument("--code-only", action="store_true")

    p_metrics = sub.add_parser("metrics", help="score predictions against references")
    p_metrics.add_argument("--metric", choices=["bleu", "rouge-l", "meteor", "mrr"], required=True)
    p_metrics.add_argument("--candidates", type=Path)
    p_metrics.add_argument("--references", type=Path)
    p_metrics.add_argument("--ranks", type=Path)

    p_report = sub.add_parser("report", help="before/after delta report")
    p_report.add_argument("--task", default="summarization")
    p_report.add_argument("--language", default="java")
    p_report.add_argument("--metric", choices=["bleu", "rouge-l", "meteor", "mrr"], default=None)
    p_report.add_argument("--references", type=Path)
    p_report.add_argument("--candidates-before", type=Path)
    p_report.add_argument("--candidates-after", type=Path)
    p_report.add_argument("--ranks-before", type=Path)
    p_report.add_argument("--ranks-after", type=Path)
    p_report.add_argument("--pairs", type=Path,
                          help="JSON file of rows {scope, metric, before, after} "
                               "with optional category grouping")
    p_report.add_argument("--average", type=Path, nargs="+", default=None,
                          help="average previously rendered JSON reports")
    p_report.add_argument("--tall-mode", choices=["categories", "strategies"],
                          default="categories")
    p_report.add_argument("--format", choices=["json", "csv", "markdown"], default="markdown")
    p_report.add_argument("--out", type=Path, default=None)

    return parser


# ------------------------------------------------------------------ commands

def cmd_list(args) -> int:
    strategies = list_strategies(language=args.language, category=args.category)
    if args.format == "json":
        rows = [{"id": s.id, "category": s.category.value,
                 "languages": sorted(l.value for l in s.languages),
                 "description": s.description} for s in strategies]
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    for s in strategies:
        langs = "+".join(sorted(l.value for l in s.languages))
        print(f"{s.id:6} {s.category.value:5} {langs:12} {s.description}")
    print(f"# {len(strategies)} strategies", file=sys.stderr)
    return EXIT_OK


def cmd_apply(args) -> int:
    text = args.file.read_bytes()
    snippet = SourceSnippet(str(args.file), args.language, text)
    strategy = get_strategy(args.strategy)
    outcome = apply(strategy, snippet, _config_from(args))
    if not outcome.applied:
        print(f"not applicable: {outcome.reason}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    if args.out:
        args.out.write_bytes(outcome.new_text)
    else:
        sys.stdout.buffer.write(outcome.new_text)
    return EXIT_OK


def _batch_selectors(args, language: Language):
    if args.strategy:
        strategy = get_strategy(args.strategy)
        return [strategy] if strategy.supports(language) else []
    return list_strategies(language=language, category=args.category)


def cmd_batch(args) -> int:
    config = _config_from(args)
    strategies = _batch_selectors(args, args.language)
    records = list(load_corpus(args.corpus, strict=args.strict, default_language=args.language))
    manifest = {"seed": config.seed, "language": args.language.value,
                "selector": args.strategy or args.category.value,
                "total_records": len(records),
                "applied": 0, "not_applicable": 0, "parse_errors": 0}

    def work(record: CorpusRecord):
        results = []
        snippet = record.snippet()
        for strategy in strategies:
            if record.language is not args.language:
                continue
            outcome = apply(strategy, snippet, config)
            results.append((strategy, outcome))
        return record, results

    out_records = []
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        for record, results in pool.map(work, records):
            for strategy, outcome in results:
                if outcome.applied:
                    manifest["applied"] += 1
                    meta = dict(record.meta)
                    meta["strategy"] = strategy.id
                    out_records.append(CorpusRecord(
                        id=f"{record.id}@{strategy.id}" if len(strategies) > 1 else record.id,
                        language=record.language,
                        code=outcome.new_text.decode("utf-8"),
                        summary=record.summary, meta=meta))
                elif outcome.reason == "parse errors":
                    manifest["parse_errors"] += 1
                else:
                    manifest["not_applicable"] += 1
    write_corpus(out_records, args.out)
    if args.manifest:
        args.manifest.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    log.info("batch: %s", manifest)
    return EXIT_OK


def cmd_filter(args) -> int:
    selector = args.strategy if args.strategy else args.category
    records = load_corpus(args.corpus, strict=args.strict, default_language=args.language)
    kept, stats = filter_transformable(records, selector, args.language)
    write_corpus(kept, args.out)
    payload = json.dumps(stats.to_json(), indent=2, sort_keys=True) + "\n"
    if args.stats:
        args.stats.write_text(payload)
    else:
        sys.stderr.write(payload)
    return EXIT_OK


def cmd_tokens(args) -> int:
    text = args.file.read_bytes()
    snippet = SourceSnippet(str(args.file), args.language, text)
    if args.search_preprocess:
        record = CorpusRecord(id=snippet.id, language=args.language, code=snippet.str_text)
        tokens = preprocess_for_search(record, SymbolNameTable())
    else:
        tokens = tokens_dfs(parse(snippet), include_comments=not args.code_only).texts()
    if args.format == "json":
        print(json.dumps(tokens))
    else:
        for token in tokens:
            print(token)
    return EXIT_OK


def cmd_verify(args) -> int:
    original = SourceSnippet(str(args.original), args.language, args.original.read_bytes())
    transformed_text = args.transformed.read_bytes()
    from codemorph.edits import EditSet
    from codemorph.strategies.base import Status, TransformOutcome
    outcome = TransformOutcome(Status.APPLIED, new_text=transformed_text, edits=EditSet())
    report = verify_preservation(original, outcome,
                                 include_comments=not args.code_only,
                                 verify_cmd=args.verify_cmd)
    print(json.dumps({
        "parse_valid": report.parse_valid,
        "token_delta": {"added": report.token_delta.added,
                        "removed": report.token_delta.removed,
                        "changed": report.token_delta.changed},
        "notes": list(report.notes),
    }, indent=2))
    return EXIT_OK


def _read_token_file(path: Path) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    with path.open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            stripped = line.strip()
            if stripped.startswith("{"):
                obj = json.loads(stripped)
                out[str(obj["id"])] = list(obj["tokens"])
            else:
                out[str(line_no)] = stripped.split()
    return out


def _read_rank_file(path: Path) -> dict[str, int]:
    out: dict[str, int] = {}
    with path.open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            stripped = line.strip()
            if stripped.startswith("{"):
                obj = json.loads(stripped)
                out[str(obj["id"])] = int(obj["rank"])
            else:
                out[str(line_no)] = int(stripped)
    return out


_METRIC_FNS = {
    "bleu": metrics_mod.bleu,
    "rouge-l": metrics_mod.rouge_l,
    "meteor": metrics_mod.meteor,
}


def _check_ids(a: dict, b: dict, label: str) -> None:
    missing = sorted(set(a) ^ set(b))
    if missing:
        raise CodemorphError(f"id mismatch between {label}: {missing[:20]}")


def _score_candidates(metric: str, candidates: Path, references: Path) -> float:
    cands = _read_token_file(candidates)
    refs = _read_token_file(references)
    if not refs:
        raise CodemorphError(f"empty reference file: {references}")
    _check_ids(cands, refs, "candidates/references")
    pairs = [(cands[k], refs[k]) for k in sorted(cands)]
    return metrics_mod.corpus_score(pairs, _METRIC_FNS[metric])


def _score_ranks(ranks: Path) -> float:
    data = _read_rank_file(ranks)
    if not data:
        raise CodemorphError(f"empty rank file: {ranks}")
    return metrics_mod.mrr(list(data.values()))


def cmd_metrics(args) -> int:
    if args.metric == "mrr":
        if not args.ranks:
            raise CodemorphError("--metric mrr requires --ranks")
        score = _score_ranks(args.ranks)
        rendered = metrics_mod.render_score(score, "raw4")
    else:
        if not (args.candidates and args.references):
            raise CodemorphError(f"--metric {args.metric} requires --candidates and --references")
        score = _score_candidates(args.metric, args.candidates, args.references)
        rendered = metrics_mod.render_score(score, "x100")
    print(json.dumps({"metric": args.metric, "score": score, "rendered": rendered}))
    return EXIT_OK


def cmd_report(args) -> int:
    if args.average:
        reports = [report_mod.Report.from_json(json.loads(p.read_text())) for p in args.average]
        final = report_mod.average_runs(reports)
    elif args.pairs:
        data = json.loads(args.pairs.read_text())
        rows = [report_mod.DeltaRow(scope=r["scope"], metric_name=r.get("metric", args.metric or "score"),
                                    before=float(r["before"]), after=float(r["after"]))
                for r in data["rows"]]
        categories = [r for r in rows if r.scope.startswith("T_")]
        strategy_rows = [r for r in rows if not r.scope.startswith("T_")]
        if not categories:
            categories = rows
            strategy_rows = None
        final = report_mod.build_report(args.task, args.language, categories,
                                        tall_mode=args.tall_mode, strategy_rows=strategy_rows)
    elif args.ranks_before and args.ranks_after:
        before = _score_ranks(args.ranks_before)
        after = _score_ranks(args.ranks_after)
        row = report_mod.DeltaRow(scope="overall", metric_name="mrr", before=before, after=after)
        final = report_mod.Report(task=args.task, language=args.language, rows=(row,))
    elif args.candidates_before and args.candidates_after and args.references and args.metric:
        before = _score_candidates(args.metric, args.candidates_before, args.references)
        after = _score_candidates(args.metric, args.candidates_after, args.references)
        row = report_mod.DeltaRow(scope="overall", metric_name=args.metric, before=before, after=after)
        final = report_mod.Report(task=args.task, language=args.language, rows=(row,))
    else:
        raise CodemorphError(
            "report needs --average, --pairs, --ranks-before/--ranks-after, or "
            "--candidates-before/--candidates-after with --references and --metric")
    payload = report_mod.render(final, args.format)
    if args.out:
        args.out.write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
    return EXIT_OK


_COMMANDS = {
    "list": cmd_list,
    "apply": cmd_apply,
    "batch": cmd_batch,
    "filter": cmd_filter,
    "tokens": cmd_tokens,
    "verify": cmd_verify,
    "metrics": cmd_metrics,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except LanguageMismatch as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except (CodemorphError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
