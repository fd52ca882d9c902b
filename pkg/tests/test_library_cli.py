"""Library persistence, outcome ingestion, and the CLI surface."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from gamesmith.cli import main
from gamesmith.domain.validation import serialize_document
from gamesmith.library import DuplicateGameError, GameLibrary, LibraryError, game_id_for


@pytest.fixture()
def populated_library(tmp_path, plant_cell_document):
    library = GameLibrary(tmp_path / "lib")
    library.add(plant_cell_document, trace_text="{}\n")
    return library


class TestLibrary:
    def test_game_id_stable_under_reserialization(self, plant_cell_document):
        from gamesmith.domain.validation import parse_document

        text = serialize_document(plant_cell_document)
        again = parse_document(text, "game_document.v1")
        assert game_id_for(again) == game_id_for(plant_cell_document)

    def test_duplicate_add_rejected(self, populated_library, plant_cell_document):
        with pytest.raises(DuplicateGameError):
            populated_library.add(plant_cell_document)

    def test_outcome_over_max_score_rejected(self, populated_library, plant_cell_document):
        game_id = game_id_for(plant_cell_document)
        max_score = plant_cell_document.plan.total_max_score
        with pytest.raises(LibraryError):
            populated_library.ingest_outcome(
                game_id,
                {
                    "score": max_score + 1,
                    "interaction_trace": [],
                    "inferred_bloom": "analyze",
                    "duration_ms": 1000,
                },
            )

    def test_outcome_updates_stats(self, populated_library, plant_cell_document):
        game_id = game_id_for(plant_cell_document)
        before = populated_library.stats()
        populated_library.ingest_outcome(
            game_id,
            {"score": 60.0, "interaction_trace": [{"kind": "drop"}], "inferred_bloom": "analyze", "duration_ms": 90000},
        )
        after = populated_library.stats()
        assert after["outcomes"] == before["outcomes"] + 1
        assert after["mean_score"] == 60.0

    def test_stats_recomputable_from_entries_alone(self, tmp_path, library_results):
        library = GameLibrary(tmp_path / "lib50")
        for result in library_results.values():
            library.add(result.document)
        stats = library.stats()
        assert stats["games"] == 50
        assert len(stats["mechanic_counts"]) == 15
        proportions = stats["composition_proportions"]
        assert abs(proportions["single_single"] - 0.34) <= 0.02
        assert abs(proportions["single_multi"] - 0.41) <= 0.02
        assert abs(proportions["multi_multi"] - 0.25) <= 0.02


class TestCli:
    def test_generate_writes_document_and_trace(self, tmp_path):
        runner = CliRunner()
        out = tmp_path / "out"
        result = runner.invoke(
            main, ["generate", "Label the parts of a plant cell.", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        assert (out / "document.json").exists()
        assert (out / "trace.ndjson").exists()

    def test_missing_question_is_usage_error(self):
        result = CliRunner().invoke(main, ["generate"])
        assert result.exit_code == 2

    def test_forced_qg3_failure_names_gate_and_phase(self, tmp_path, monkeypatch):
        import gamesmith.cli as cli_module
        from gamesmith.providers.stub import StubProvider

        def scripted_provider(name, seed):
            return StubProvider(seed=seed, script={"scene_content_generator": "op_count_reduction"})

        monkeypatch.setattr(cli_module, "_provider", scripted_provider)
        result = CliRunner().invoke(
            main, ["generate", "Label the parts of a plant cell.", "--out", str(tmp_path / "o")]
        )
        assert result.exit_code == 3
        assert "QG3" in result.output
        assert "scene_content" in result.output

    def test_validate_fresh_document_passes(self, tmp_path, plant_cell_document):
        doc_path = tmp_path / "document.json"
        doc_path.write_text(serialize_document(plant_cell_document), encoding="utf-8")
        result = CliRunner().invoke(main, ["validate", str(doc_path)])
        assert result.exit_code == 0, result.output
        assert "all gates re-passed" in result.output

    def test_validate_detects_hand_edited_anchor(self, tmp_path, plant_cell_document):
        payload = plant_cell_document.to_payload()
        payload["assets"][0]["anchors"][0][1] = 1.3
        doc_path = tmp_path / "document.json"
        doc_path.write_text(json.dumps(payload), encoding="utf-8")
        result = CliRunner().invoke(main, ["validate", str(doc_path)])
        assert result.exit_code == 3
        assert "anchors" in result.output or "ANCHOR" in result.output

    def test_validate_missing_file_is_io_error(self):
        result = CliRunner().invoke(main, ["validate", "/nonexistent/doc.json"])
        assert result.exit_code == 4

    def test_library_add_twice_rejected(self, tmp_path, plant_cell_document):
        doc_path = tmp_path / "document.json"
        doc_path.write_text(serialize_document(plant_cell_document), encoding="utf-8")
        runner = CliRunner()
        lib_dir = str(tmp_path / "lib")
        first = runner.invoke(main, ["library", "add", str(doc_path), "--library", lib_dir])
        assert first.exit_code == 0
        second = runner.invoke(main, ["library", "add", str(doc_path), "--library", lib_dir])
        assert second.exit_code == 3

    def test_ingest_outcome_cli(self, tmp_path, plant_cell_document):
        doc_path = tmp_path / "document.json"
        doc_path.write_text(serialize_document(plant_cell_document), encoding="utf-8")
        lib_dir = str(tmp_path / "lib")
        runner = CliRunner()
        runner.invoke(main, ["library", "add", str(doc_path), "--library", lib_dir])
        outcome_path = tmp_path / "outcome.json"
        outcome_path.write_text(
            json.dumps(
                {"score": 30.0, "interaction_trace": [], "inferred_bloom": "analyze", "duration_ms": 5000}
            ),
            encoding="utf-8",
        )
        result = runner.invoke(
            main,
            [
                "library",
                "ingest-outcome",
                str(outcome_path),
                "--game",
                game_id_for(plant_cell_document),
                "--library",
                lib_dir,
            ],
        )
        assert result.exit_code == 0, result.output

    def test_validate_is_idempotent_and_side_effect_free(self, tmp_path, plant_cell_document):
        doc_path = tmp_path / "document.json"
        text = serialize_document(plant_cell_document)
        doc_path.write_text(text, encoding="utf-8")
        runner = CliRunner()
        first = runner.invoke(main, ["validate", str(doc_path)])
        second = runner.invoke(main, ["validate", str(doc_path)])
        assert first.output == second.output
        assert doc_path.read_text(encoding="utf-8") == text


class TestValidateDefectCorpus:
    def test_cli_validate_flags_defective_documents(self, tmp_path):
        # push a few bundled defect fixtures through the re-verification path
        from gamesmith.defects import build_defect_corpus

        corpus = {f.name: f for f in build_defect_corpus()}
        for name in ("trace_oob_1", "memory_score", "tree_depth"):
            fixture = corpus[name]
            doc_path = tmp_path / f"{name}.json"
            doc_path.write_text(json.dumps(fixture.plan_payload), encoding="utf-8")
            result = CliRunner().invoke(main, ["validate", str(doc_path)])
            assert result.exit_code == 3, f"{name}: {result.output}"


def test_parse_document_unknown_schema_is_distinct_error():
    from gamesmith.domain import UnknownSchemaError, parse_document

    with pytest.raises(UnknownSchemaError):
        parse_document("{}", "mystery.v1")
