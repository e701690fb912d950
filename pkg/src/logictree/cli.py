"""Batch command-line surface.

Subcommands cover the pipeline end to end: build logic trees from parsed
corpora, textualize them into prompt tables, compute relation statistics,
encode trees into vectors, score predictions, and run the zero-shot
detection/classification loop against a chat-completion endpoint (or in
replay mode from logged responses). Every run writes a manifest with input
digests so outputs are attributable to exact inputs.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import click

from . import logic_tree as lt
from .corpus_stats import CorpusRecord, class_distribution, read_corpus
from .encoder import (
    EncoderParams,
    VectorTable,
    encode_tree,
    init_params,
    load_vectors,
    project,
)
from .gateway import (
    GatewayConfig,
    Outcome,
    UNPARSED,
    load_responses,
    parse_classification,
    parse_detection,
    run_batch,
)
from .metrics import (
    FALLACY,
    NO_FALLACY,
    build_label_map,
    classification_metrics,
    detection_metrics,
)
from .syntax import TreeParseError, parse_bracketed, read_grouped_trees
from .taxonomy import Taxonomy, load_taxonomy
from .textualize import (
    CotExample,
    load_catalog,
    build_classification_prompt,
    build_detection_prompt,
    render_table,
    to_triplets,
)

NO_FALLACY_LABEL = "no fallacy"


def _sha256(path: Optional[str]) -> Optional[str]:
    if path is None:
        return None
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _utcnow() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


class ManifestWriter:
    def __init__(self, command: str, out_dir: Path, seed: Optional[int] = None):
        self.data: dict = {
            "command": command,
            "inputs": {},
            "options": {},
            "outputs": [],
            "seed": seed,
            "records": 0,
            "soft_failures": 0,
            "started_at": _utcnow(),
        }
        self.out_dir = out_dir

    def add_input(self, name: str, path: Optional[str]) -> None:
        if path is not None:
            self.data["inputs"][name] = {"path": str(path), "sha256": _sha256(path)}

    def write(self) -> Path:
        self.data["finished_at"] = _utcnow()
        self.out_dir.mkdir(parents=True, exist_ok=True)
        target = self.out_dir / "manifest.json"
        target.write_text(
            json.dumps(self.data, indent=2, ensure_ascii=False) + "\n", "utf-8"
        )
        return target


def _load_taxonomy_opt(path: Optional[str]) -> Taxonomy:
    try:
        return load_taxonomy(path)
    except Exception as exc:
        raise click.ClickException(f"taxonomy: {exc}") from exc


def _parse_record_trees(
    corpus: Sequence[CorpusRecord], trees_path: str
) -> tuple[dict[str, list], list[tuple[str, str]]]:
    """Parse the grouped trees file; returns per-id trees and soft failures."""
    groups = read_grouped_trees(trees_path)
    corpus_ids = [r.id for r in corpus]
    missing = sorted(set(corpus_ids) - set(groups))
    extra = sorted(set(groups) - set(corpus_ids))
    if missing or extra:
        raise click.ClickException(
            f"id mismatch between corpus and trees file: missing {missing[:5]}, "
            f"unexpected {extra[:5]}"
        )
    parsed: dict[str, list] = {}
    failures: list[tuple[str, str]] = []
    for record_id in corpus_ids:
        trees = []
        error = None
        for line in groups[record_id]:
            try:
                trees.append(parse_bracketed(line))
            except TreeParseError as exc:
                error = str(exc)
                break
        if error is not None or not trees:
            failures.append((record_id, error or "no trees for record"))
        else:
            parsed[record_id] = trees
    return parsed, failures


@click.group()
def main() -> None:
    """Logical structure trees for fallacy reasoning."""


@main.command("build")
@click.option("--trees", "trees_path", required=True, type=click.Path(exists=True))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--taxonomy", "taxonomy_path", type=click.Path(exists=True))
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_build(
    trees_path: str,
    corpus_path: str,
    taxonomy_path: Optional[str],
    jobs: int,
    out_dir: str,
) -> None:
    """Build one serialized logic tree per corpus record."""
    out = Path(out_dir)
    manifest = ManifestWriter("build", out)
    manifest.add_input("trees", trees_path)
    manifest.add_input("corpus", corpus_path)
    manifest.add_input("taxonomy", taxonomy_path)
    taxonomy = _load_taxonomy_opt(taxonomy_path)
    corpus = read_corpus(corpus_path)
    parsed, failures = _parse_record_trees(corpus, trees_path)
    failure_map = dict(failures)

    def build_one(record) -> dict:
        if record.id in failure_map:
            return {"id": record.id, "error": failure_map[record.id]}
        tree = lt.build_logic_tree(parsed[record.id], taxonomy)
        return {"id": record.id, "tree": lt.to_dict(tree), "_tree": tree}

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(build_one, corpus))
    else:
        rows = [build_one(record) for record in corpus]

    out.mkdir(parents=True, exist_ok=True)
    counts: dict[str, int] = {}
    with open(out / "logic_trees.jsonl", "w", encoding="utf-8") as handle:
        for row in rows:
            tree = row.pop("_tree", None)
            if tree is not None:
                for relation, n in lt.relation_counts(tree).items():
                    counts[relation.value] = counts.get(relation.value, 0) + n
            handle.write(json.dumps(row, ensure_ascii=False) + "\n")

    manifest.data["records"] = len(corpus)
    manifest.data["soft_failures"] = len(failures)
    manifest.data["relation_counts"] = dict(sorted(counts.items()))
    manifest.data["outputs"] = ["logic_trees.jsonl"]
    manifest.write()
    summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items())) or "none"
    click.echo(f"built {len(corpus) - len(failures)}/{len(corpus)} trees ({summary})")
    for record_id, error in failures:
        click.echo(f"  skipped {record_id}: {error}", err=True)


def _read_logic_trees(path: str) -> dict[str, lt.LogicTree]:
    trees: dict[str, lt.LogicTree] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            if "tree" in data:
                trees[str(data["id"])] = lt.from_dict(data["tree"])
    return trees


def _load_cot(path: Optional[str]) -> Optional[CotExample]:
    if path is None:
        return None
    data = json.loads(Path(path).read_text("utf-8"))
    return CotExample(
        text=data["text"], explanation=data["explanation"], label=data["label"]
    )


@main.command("textualize")
@click.option("--logic-trees", "trees_path", required=True, type=click.Path(exists=True))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--dataset", type=str, default=None)
@click.option("--task", type=click.Choice(["detection", "classification"]), default=None)
@click.option("--with-tree", is_flag=True, default=False)
@click.option("--cot-example", "cot_path", type=click.Path(exists=True), default=None)
def cmd_textualize(
    trees_path: str,
    corpus_path: str,
    out_dir: str,
    dataset: Optional[str],
    task: Optional[str],
    with_tree: bool,
    cot_path: Optional[str],
) -> None:
    """Render triplet tables (and prompts, when a task is given)."""
    out = Path(out_dir)
    manifest = ManifestWriter("textualize", out)
    manifest.add_input("logic_trees", trees_path)
    manifest.add_input("corpus", corpus_path)
    manifest.data["options"] = {
        "dataset": dataset,
        "task": task,
        "with_tree": with_tree,
    }
    if task is not None and dataset is None:
        raise click.ClickException("--task requires --dataset")
    corpus = read_corpus(corpus_path)
    trees = _read_logic_trees(trees_path)
    catalog = load_catalog()
    cot = _load_cot(cot_path)

    out.mkdir(parents=True, exist_ok=True)
    soft = 0
    with open(out / "prompts.jsonl", "w", encoding="utf-8") as handle:
        for record in corpus:
            tree = trees.get(record.id)
            if tree is None:
                soft += 1
                handle.write(
                    json.dumps({"id": record.id, "error": "no logic tree"}) + "\n"
                )
                continue
            table = to_triplets(tree)
            row: dict = {"id": record.id, "table": render_table(table)}
            try:
                if task == "detection":
                    row["prompt"] = build_detection_prompt(
                        record.text, table, catalog, dataset, with_tree, cot
                    )
                elif task == "classification":
                    row["prompt"] = build_classification_prompt(
                        record.text, table, catalog, dataset, with_tree, cot
                    )
            except ValueError as exc:
                raise click.ClickException(str(exc)) from exc
            handle.write(json.dumps(row, ensure_ascii=False) + "\n")
    manifest.data["records"] = len(corpus)
    manifest.data["soft_failures"] = soft
    manifest.data["outputs"] = ["prompts.jsonl"]
    manifest.write()
    click.echo(f"textualized {len(corpus) - soft}/{len(corpus)} records")


@main.command("stats")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--trees", "trees_path", type=click.Path(exists=True), default=None)
@click.option("--taxonomy", "taxonomy_path", type=click.Path(exists=True), default=None)
@click.option("--mode", type=click.Choice(["tree", "raw"]), default="tree")
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_stats(
    corpus_path: str,
    trees_path: Optional[str],
    taxonomy_path: Optional[str],
    mode: str,
    out_dir: str,
) -> None:
    """Per-class relation presence ratios (Appendix-style table)."""
    out = Path(out_dir)
    manifest = ManifestWriter("stats", out)
    manifest.add_input("corpus", corpus_path)
    manifest.add_input("trees", trees_path)
    manifest.add_input("taxonomy", taxonomy_path)
    manifest.data["options"] = {"mode": mode}
    taxonomy = _load_taxonomy_opt(taxonomy_path)
    corpus = read_corpus(corpus_path)
    if mode == "tree":
        if trees_path is None:
            raise click.ClickException("mode=tree requires --trees")
        parsed, failures = _parse_record_trees(corpus, trees_path)
        if failures:
            raise click.ClickException(
                f"unparseable trees for records: {[f[0] for f in failures[:5]]}"
            )
        corpus = [
            CorpusRecord(
                id=r.id,
                text=r.text,
                label=r.label,
                split=r.split,
                trees=tuple(parsed[r.id]),
            )
            for r in corpus
        ]
    try:
        table = class_distribution(corpus, taxonomy, mode=mode)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    out.mkdir(parents=True, exist_ok=True)
    (out / "stats.tsv").write_text(table.render_tsv() + "\n", "utf-8")
    manifest.data["records"] = len(corpus)
    manifest.data["outputs"] = ["stats.tsv"]
    manifest.write()
    click.echo(table.render_tsv())


@main.command("encode")
@click.option("--logic-trees", "trees_path", required=True, type=click.Path(exists=True))
@click.option("--vectors", "vectors_path", required=True, type=click.Path(exists=True))
@click.option("--params", "params_path", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--d-prime", type=int, default=None, help="projection size (defaults to d)")
@click.option("--save-params", "save_params_flag", is_flag=True, default=False)
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_encode(
    trees_path: str,
    vectors_path: str,
    params_path: Optional[str],
    seed: int,
    d_prime: Optional[int],
    save_params_flag: bool,
    out_dir: str,
) -> None:
    """Encode logic trees into tree embeddings and projected vectors."""
    out = Path(out_dir)
    manifest = ManifestWriter("encode", out, seed=seed)
    manifest.add_input("logic_trees", trees_path)
    manifest.add_input("vectors", vectors_path)
    manifest.add_input("params", params_path)
    try:
        table: VectorTable = load_vectors(vectors_path)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    if params_path is not None:
        params = EncoderParams.load(params_path)
        if params.d != table.dim:
            raise click.ClickException(
                f"params dimension {params.d} != vector dimension {table.dim}"
            )
    else:
        params = init_params(seed, table.dim, d_prime or table.dim)
    trees = _read_logic_trees(trees_path)

    out.mkdir(parents=True, exist_ok=True)
    soft = 0
    with open(out / "embeddings.jsonl", "w", encoding="utf-8") as handle:
        for record_id in trees:
            try:
                embedding = encode_tree(trees[record_id], params, table)
                projected = project(embedding, params)
                row = {
                    "id": record_id,
                    "embedding": embedding.tolist(),
                    "projected": projected.tolist(),
                }
            except ValueError as exc:
                soft += 1
                row = {"id": record_id, "error": str(exc)}
            handle.write(json.dumps(row) + "\n")
    outputs = ["embeddings.jsonl"]
    if save_params_flag:
        params.save(out / "params.npz")
        outputs.append("params.npz")
    manifest.data["records"] = len(trees)
    manifest.data["soft_failures"] = soft
    manifest.data["options"] = {"d": params.d, "d_prime": params.d_prime}
    manifest.data["outputs"] = outputs
    manifest.write()
    click.echo(f"encoded {len(trees) - soft}/{len(trees)} trees (d={params.d}, d'={params.d_prime})")


def _detection_gold(record: CorpusRecord) -> str:
    return NO_FALLACY if record.label.strip().lower() == NO_FALLACY_LABEL else FALLACY


@main.command("eval")
@click.option("--preds", "preds_path", required=True, type=click.Path(exists=True))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option(
    "--task",
    type=click.Choice(["detection", "classification"]),
    required=True,
)
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_eval(preds_path: str, corpus_path: str, task: str, out_dir: str) -> None:
    """Score a predictions file against corpus gold labels."""
    out = Path(out_dir)
    manifest = ManifestWriter("eval", out)
    manifest.add_input("preds", preds_path)
    manifest.add_input("corpus", corpus_path)
    manifest.data["options"] = {"task": task}
    corpus = read_corpus(corpus_path)
    preds: dict[str, str] = {}
    with open(preds_path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                data = json.loads(line)
                preds[str(data["id"])] = data["label"]
    missing = [r.id for r in corpus if r.id not in preds]
    if missing:
        raise click.ClickException(f"missing predictions for: {missing[:5]}")
    catalog = load_catalog()
    label_map = build_label_map(catalog)
    try:
        if task == "detection":
            report = detection_metrics(
                [preds[r.id] for r in corpus], [_detection_gold(r) for r in corpus]
            )
        else:
            rows = [r for r in corpus if _detection_gold(r) == FALLACY]
            report = classification_metrics(
                [preds[r.id] for r in rows], [r.label for r in rows], label_map
            )
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(
        json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n", "utf-8"
    )
    manifest.data["records"] = report.total
    manifest.data["outputs"] = ["report.json"]
    manifest.write()
    _echo_report(task, report)


def _echo_report(task: str, report) -> None:
    if task == "detection":
        fallacy = report.per_class.get(FALLACY)
        if fallacy is not None:
            click.echo(
                f"fallacy: P={fallacy.precision:.2f} R={fallacy.recall:.2f} "
                f"F1={fallacy.f1:.2f} Acc={report.accuracy:.2f}"
            )
        else:
            click.echo(f"Acc={report.accuracy:.2f}")
    else:
        click.echo(
            f"macro: P={report.macro_precision:.2f} R={report.macro_recall:.2f} "
            f"F1={report.macro_f1:.2f} Acc={report.accuracy:.2f}"
        )
    for note in report.diagnostics:
        click.echo(f"  note: {note}", err=True)


@main.command("zeroshot")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--trees", "trees_path", required=True, type=click.Path(exists=True))
@click.option("--taxonomy", "taxonomy_path", type=click.Path(exists=True), default=None)
@click.option("--dataset", required=True, type=str)
@click.option(
    "--task",
    type=click.Choice(["detection", "classification"]),
    default="detection",
    show_default=True,
)
@click.option("--with-tree", is_flag=True, default=False)
@click.option("--cot-example", "cot_path", type=click.Path(exists=True), default=None)
@click.option("--endpoint", type=str, default=None)
@click.option("--model", type=str, default="gpt-3.5-turbo", show_default=True)
@click.option("--auth-env", type=str, default="LLM_API_KEY", show_default=True)
@click.option("--jobs", type=int, default=4, show_default=True)
@click.option("--replay", "replay_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_zeroshot(
    corpus_path: str,
    trees_path: str,
    taxonomy_path: Optional[str],
    dataset: str,
    task: str,
    with_tree: bool,
    cot_path: Optional[str],
    endpoint: Optional[str],
    model: str,
    auth_env: str,
    jobs: int,
    replay_path: Optional[str],
    out_dir: str,
) -> None:
    """Zero-shot fallacy run: textualize, query the endpoint, score.

    With --replay, answers come from a logged responses file instead of the
    network, so scoring is reproducible offline.
    """
    out = Path(out_dir)
    manifest = ManifestWriter("zeroshot", out)
    manifest.add_input("corpus", corpus_path)
    manifest.add_input("trees", trees_path)
    manifest.add_input("taxonomy", taxonomy_path)
    manifest.add_input("replay", replay_path)
    manifest.data["options"] = {
        "dataset": dataset,
        "task": task,
        "with_tree": with_tree,
        "model": model,
        "endpoint": endpoint,
        "jobs": jobs,
        "replay": replay_path is not None,
    }
    if replay_path is None and endpoint is None:
        raise click.ClickException("either --endpoint or --replay is required")

    taxonomy = _load_taxonomy_opt(taxonomy_path)
    corpus = read_corpus(corpus_path)
    if task == "classification":
        corpus = [r for r in corpus if _detection_gold(r) == FALLACY]
        if not corpus:
            raise click.ClickException("no fallacy records to classify")
    parsed, failures = _parse_record_trees(corpus, trees_path)
    if failures:
        raise click.ClickException(
            f"unparseable trees for records: {[f[0] for f in failures[:5]]}"
        )
    catalog = load_catalog()
    label_map = build_label_map(catalog)
    cot = _load_cot(cot_path)

    prompts: list[tuple[str, str]] = []
    try:
        for record in corpus:
            tree = lt.build_logic_tree(parsed[record.id], taxonomy)
            table = to_triplets(tree)
            if task == "detection":
                prompt = build_detection_prompt(
                    record.text, table, catalog, dataset, with_tree, cot
                )
            else:
                prompt = build_classification_prompt(
                    record.text, table, catalog, dataset, with_tree, cot
                )
            prompts.append((record.id, prompt))
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc

    out.mkdir(parents=True, exist_ok=True)
    if replay_path is not None:
        responses = load_responses(replay_path)
        outcomes = [
            Outcome(
                id=record_id,
                response=responses.get(record_id),
                error=None if record_id in responses else "no logged response",
            )
            for record_id, _ in prompts
        ]
    else:
        config = GatewayConfig(
            endpoint=endpoint, model=model, auth_env=auth_env, max_concurrent=jobs
        )
        outcomes = run_batch(prompts, config, log_path=out / "responses.jsonl")

    preds: list[str] = []
    golds: list[str] = []
    parse_failures = 0
    gateway_failures = 0
    with open(out / "outcomes.jsonl", "w", encoding="utf-8") as handle:
        for record, outcome in zip(corpus, outcomes):
            gold = _detection_gold(record) if task == "detection" else record.label
            if outcome.response is None:
                gateway_failures += 1
                parsed_label = NO_FALLACY if task == "detection" else UNPARSED
                note = outcome.error
            elif task == "detection":
                maybe = parse_detection(outcome.response)
                parsed_label = maybe if maybe is not None else NO_FALLACY
                note = None if maybe is not None else "unparseable answer"
                parse_failures += maybe is None
            else:
                parsed_label = parse_classification(
                    outcome.response, catalog, label_map, dataset
                )
                note = "unparseable answer" if parsed_label == UNPARSED else None
                parse_failures += parsed_label == UNPARSED
            preds.append(parsed_label)
            golds.append(gold)
            handle.write(
                json.dumps(
                    {
                        "id": record.id,
                        "response": outcome.response,
                        "label": parsed_label,
                        "gold": gold,
                        "note": note,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )

    if task == "detection":
        report = detection_metrics(preds, golds)
    else:
        report = classification_metrics(preds, golds, label_map)
    (out / "report.json").write_text(
        json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n", "utf-8"
    )
    manifest.data["records"] = len(corpus)
    manifest.data["soft_failures"] = parse_failures + gateway_failures
    manifest.data["outputs"] = sorted(
        p.name for p in out.iterdir() if p.name != "manifest.json"
    )
    manifest.write()
    _echo_report(task, report)


if __name__ == "__main__":
    main()
