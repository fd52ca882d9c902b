"""Command-line surface.

Exit codes: 0 success, 2 usage error, 3 gate/validation failure, 4 I/O
error. Scripts depend on these staying stable.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from gamesmith.domain.canonical import canonical_json
from gamesmith.domain.types import GameDocument, GateId, Verdict
from gamesmith.domain.validation import (
    SchemaValidationError,
    parse_document,
    serialize_document,
)
from gamesmith.gates.quality import qg1_certify, qg2_validate_plan, qg3_validate_scene, qg4_final
from gamesmith.library import DuplicateGameError, GameLibrary, LibraryError, game_id_for
from gamesmith.pipeline.config import PipelineConfig
from gamesmith.pipeline.engine import PipelineEngine
from gamesmith.providers.base import ProviderError
from gamesmith.providers.scenarios import CORPUS_SCENARIOS, LIBRARY_SCENARIOS
from gamesmith.providers.stub import StubProvider
from gamesmith.tracing.events import TraceEvent
from gamesmith.tracing.recorder import export_trace

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GATE = 3
EXIT_IO = 4


def _provider(name: str, seed: int):
    if name == "stub":
        return StubProvider(seed=seed)
    if name == "openai":
        from gamesmith.providers.http import OpenAIChatProvider

        return OpenAIChatProvider()
    if name == "gemini":
        from gamesmith.providers.http import GeminiProvider

        return GeminiProvider()
    raise click.UsageError(f"unknown provider {name!r}; choose stub, openai, or gemini")


@click.group()
def main() -> None:
    """Generate, validate, store, and serve educational game documents."""


@main.command()
@click.argument("question")
@click.option("--subject", default=None, help="Subject domain hint.")
@click.option("--audience", default=None, help="Target audience hint.")
@click.option("--difficulty", default=None, type=click.Choice(["beginner", "intermediate", "advanced"]))
@click.option("--provider", "provider_name", default="stub", show_default=True)
@click.option("--seed", default=42, show_default=True, type=int)
@click.option("--out", "out_dir", default=".", show_default=True, type=click.Path(file_okay=False))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True, dir_okay=False))
def generate(
    question: str,
    subject: Optional[str],
    audience: Optional[str],
    difficulty: Optional[str],
    provider_name: str,
    seed: int,
    out_dir: str,
    config_path: Optional[str],
) -> None:
    """Run the pipeline for QUESTION and write document + trace files."""
    context = {
        key: value
        for key, value in (("subject", subject), ("audience", audience), ("difficulty", difficulty))
        if value
    }
    config = PipelineConfig.from_file(Path(config_path)) if config_path else PipelineConfig()
    engine = PipelineEngine(_provider(provider_name, seed), config=config)
    try:
        result = engine.run(question, context=context or None, seed=seed)
    except ProviderError as exc:
        click.echo(f"provider error: {exc}", err=True)
        sys.exit(EXIT_IO)

    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        export_trace(result.trace, out / "trace.ndjson")
    except OSError as exc:
        click.echo(f"cannot write outputs: {exc}", err=True)
        sys.exit(EXIT_IO)

    if not result.success:
        decision, phase = result.failure  # type: ignore[misc]
        click.echo(f"pipeline failed at {decision.gate.value} in phase {phase.value}", err=True)
        for failure in decision.failure_codes:
            click.echo(f"  {failure.code.value}: {failure.detail}", err=True)
        sys.exit(EXIT_GATE)

    document = result.document
    assert document is not None
    doc_path = out / "document.json"
    try:
        doc_path.write_text(serialize_document(document), encoding="utf-8")
    except OSError as exc:
        click.echo(f"cannot write document: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(
        f"ok game_id={game_id_for(document)} tokens={result.totals['tokens']} "
        f"cost=${result.totals['cost_usd']:.4f} degraded={document.is_degraded} -> {doc_path}"
    )


def reverify_document(document: GameDocument) -> list[tuple[str, Verdict, Verdict, bool]]:
    """Re-run every gate on a stored document; returns rows of
    (gate label, fresh verdict, certified verdict, match)."""
    embedded: dict[tuple[str, Optional[int]], Verdict] = {}
    for decision in document.validation_certificate:
        embedded[(decision.gate.value, decision.scene_index)] = decision.verdict

    rows: list[tuple[str, Verdict, Verdict, bool]] = []

    def compare(label: str, gate: GateId, scene_index: Optional[int], verdict: Verdict) -> None:
        certified = embedded.get((gate.value, scene_index)) or embedded.get((gate.value, None))
        match = certified == verdict
        rows.append((label, verdict, certified if certified else Verdict.FAIL, match))

    compare("QG1", GateId.QG1, None, qg1_certify(document.blueprint).verdict)
    compare("QG2", GateId.QG2, None, qg2_validate_plan(document.plan).verdict)
    for plan_scene in document.plan.scene_plans:
        units = [u for u in document.scene_contents if u.scene_index == plan_scene.scene_index]
        verdict = qg3_validate_scene(units, plan_scene, document.blueprint).verdict
        compare(f"QG3[scene {plan_scene.scene_index}]", GateId.QG3, plan_scene.scene_index, verdict)
    compare("QG4", GateId.QG4, None, qg4_final(document).verdict)
    return rows


@main.command()
@click.argument("document_path", type=click.Path(dir_okay=False))
def validate(document_path: str) -> None:
    """Re-run all Quality Gates on a stored document."""
    path = Path(document_path)
    if not path.exists():
        click.echo(f"no such file: {path}", err=True)
        sys.exit(EXIT_IO)
    try:
        document = parse_document(path.read_text(encoding="utf-8"), "game_document.v1")
    except SchemaValidationError as exc:
        click.echo("schema violations:", err=True)
        for violation in exc.violations:
            click.echo(f"  {violation}", err=True)
        sys.exit(EXIT_GATE)

    rows = reverify_document(document)
    all_ok = True
    for label, fresh, certified, match in rows:
        status = "ok" if (fresh is not Verdict.FAIL and match) else "MISMATCH" if not match else "FAIL"
        if fresh is Verdict.FAIL or not match:
            all_ok = False
        click.echo(f"{label:16s} reverified={fresh.value:13s} certified={certified.value:13s} {status}")
    if not all_ok:
        click.echo("verdict mismatch or gate failure: document altered after certification", err=True)
        sys.exit(EXIT_GATE)
    click.echo("all gates re-passed; certificate verified")


@main.group()
def library() -> None:
    """Manage the persistent game library."""


@library.command("add")
@click.argument("document_path", type=click.Path(dir_okay=False))
@click.option("--library", "library_dir", default="library", show_default=True, type=click.Path(file_okay=False))
@click.option("--trace", "trace_path", default=None, type=click.Path(dir_okay=False))
def library_add(document_path: str, library_dir: str, trace_path: Optional[str]) -> None:
    path = Path(document_path)
    if not path.exists():
        click.echo(f"no such file: {path}", err=True)
        sys.exit(EXIT_IO)
    try:
        document = parse_document(path.read_text(encoding="utf-8"), "game_document.v1")
    except SchemaValidationError as exc:
        click.echo(f"invalid document: {exc}", err=True)
        sys.exit(EXIT_GATE)
    trace_text = Path(trace_path).read_text(encoding="utf-8") if trace_path else None
    try:
        game_id = GameLibrary(Path(library_dir)).add(document, trace_text=trace_text)
    except DuplicateGameError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_GATE)
    click.echo(f"added {game_id}")


@library.command("list")
@click.option("--library", "library_dir", default="library", show_default=True, type=click.Path(file_okay=False))
def library_list(library_dir: str) -> None:
    for entry in GameLibrary(Path(library_dir)).entries():
        meta = entry.metadata
        click.echo(
            f"{entry.game_id}  {meta.get('bloom', '?'):10s} {meta.get('composition', '?'):13s} "
            f"{', '.join(meta.get('mechanics', []))}"
        )


@library.command("stats")
@click.option("--library", "library_dir", default="library", show_default=True, type=click.Path(file_okay=False))
def library_stats(library_dir: str) -> None:
    click.echo(json.dumps(GameLibrary(Path(library_dir)).stats(), indent=2, sort_keys=True))


@library.command("ingest-outcome")
@click.argument("outcome_path", type=click.Path(dir_okay=False))
@click.option("--game", "game_id", required=True)
@click.option("--library", "library_dir", default="library", show_default=True, type=click.Path(file_okay=False))
def library_ingest(outcome_path: str, game_id: str, library_dir: str) -> None:
    path = Path(outcome_path)
    if not path.exists():
        click.echo(f"no such file: {path}", err=True)
        sys.exit(EXIT_IO)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        record = GameLibrary(Path(library_dir)).ingest_outcome(game_id, payload)
    except (SchemaValidationError, LibraryError, ValueError) as exc:
        click.echo(f"outcome rejected: {exc}", err=True)
        sys.exit(EXIT_GATE)
    click.echo(f"ingested outcome score={record.score}")


@main.group()
def corpus() -> None:
    """Bundled fixture corpora."""


@corpus.command("run")
@click.option("--seed", default=42, show_default=True, type=int)
def corpus_run(seed: int) -> None:
    """Run the 30-question regression corpus against the stub provider."""
    engine = PipelineEngine(StubProvider(seed=seed))
    failures = 0
    for scenario in CORPUS_SCENARIOS:
        result = engine.run(scenario.question, seed=seed)
        status = "pass" if result.success else "FAIL"
        if not result.success:
            failures += 1
        click.echo(f"{status}  {scenario.key:24s} tokens={result.totals['tokens']}")
    click.echo(f"{len(CORPUS_SCENARIOS) - failures}/{len(CORPUS_SCENARIOS)} passed")
    if failures:
        sys.exit(EXIT_GATE)


@corpus.command("build-library")
@click.option("--library", "library_dir", default="library", show_default=True, type=click.Path(file_okay=False))
@click.option("--seed", default=42, show_default=True, type=int)
def corpus_build_library(library_dir: str, seed: int) -> None:
    """Generate the bundled 50-game library into a directory."""
    engine = PipelineEngine(StubProvider(seed=seed))
    store = GameLibrary(Path(library_dir))
    added = 0
    for scenario in LIBRARY_SCENARIOS:
        result = engine.run(scenario.question, seed=seed)
        if not result.success:
            click.echo(f"FAIL {scenario.key}", err=True)
            sys.exit(EXIT_GATE)
        assert result.document is not None
        trace_lines = "\n".join(canonical_json(e.to_payload()) for e in result.trace) + "\n"
        try:
            store.add(result.document, trace_text=trace_lines)
            added += 1
        except DuplicateGameError:
            pass
    click.echo(f"library ready: {added} games in {library_dir}")


@corpus.command("defects")
def corpus_defects() -> None:
    """Classify the bundled 20-defect corpus and print the taxonomy."""
    from gamesmith.defects import build_defect_corpus, detect_defect

    mismatches = 0
    for fixture in build_defect_corpus():
        code, gate = detect_defect(fixture)
        ok = code is fixture.expected_code and gate is fixture.expected_gate
        if not ok:
            mismatches += 1
        click.echo(
            f"{'ok ' if ok else 'BAD'} {fixture.name:20s} {fixture.mechanic:22s} "
            f"{code.value} @ {gate.value}"
        )
    if mismatches:
        sys.exit(EXIT_GATE)
    click.echo("20/20 defects classified at their stated gates")


@main.command()
@click.option("--library", "library_dir", default="library", show_default=True, type=click.Path(file_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8750, show_default=True, type=int)
def serve(library_dir: str, host: str, port: int) -> None:
    """Serve documents, traces, and the outcome ingest endpoint."""
    import uvicorn

    from gamesmith.server import create_app

    uvicorn.run(create_app(Path(library_dir)), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
