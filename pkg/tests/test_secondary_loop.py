"""End-to-end player loop: scripted perfect play of the drag-drop fixture
through the TypeScript player, outcome ingestion via the CLI, and library
stats updating by one. Skips when the frontend build is absent."""

from __future__ import annotations

import json
import shutil
import subprocess
from pathlib import Path

import pytest
from click.testing import CliRunner

from gamesmith.cli import main
from gamesmith.domain.validation import serialize_document
from gamesmith.library import GameLibrary, game_id_for

FRONTEND = Path(__file__).resolve().parent.parent / "frontend"
PLAYER_SCRIPT = FRONTEND / "dist" / "scripts" / "play_scripted.js"

pytestmark = pytest.mark.skipif(
    shutil.which("node") is None or not PLAYER_SCRIPT.exists(),
    reason="frontend not built; run `npm run build` in frontend/",
)


def test_player_loop_perfect_play_ingest_and_replay(tmp_path, plant_cell_document):
    doc_path = tmp_path / "document.json"
    doc_path.write_text(serialize_document(plant_cell_document), encoding="utf-8")

    # scripted perfect play; the script itself verifies replay determinism
    completed = subprocess.run(
        ["node", str(PLAYER_SCRIPT), str(doc_path)],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert completed.returncode == 0, completed.stderr
    outcome = json.loads(completed.stdout)
    assert outcome["score"] == plant_cell_document.plan.total_max_score
    assert outcome["inferred_bloom"] == plant_cell_document.blueprint.bloom.value
    assert len(outcome["interaction_trace"]) == 6

    # the emitted record is schema-valid on the engine side
    from gamesmith.domain.validation import validate_message

    assert validate_message("outcome_record.v1", outcome) == []

    # CLI ingestion updates library stats by one outcome
    lib_dir = tmp_path / "lib"
    GameLibrary(lib_dir).add(plant_cell_document)
    before = GameLibrary(lib_dir).stats()
    outcome_path = tmp_path / "outcome.json"
    outcome_path.write_text(json.dumps(outcome), encoding="utf-8")
    result = CliRunner().invoke(
        main,
        [
            "library",
            "ingest-outcome",
            str(outcome_path),
            "--game",
            game_id_for(plant_cell_document),
            "--library",
            str(lib_dir),
        ],
    )
    assert result.exit_code == 0, result.output
    after = GameLibrary(lib_dir).stats()
    assert after["outcomes"] == before["outcomes"] + 1
    assert after["mean_score"] == outcome["score"]

    # replaying the recorded trace through the player reproduces the score
    second = subprocess.run(
        ["node", str(PLAYER_SCRIPT), str(doc_path)],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert json.loads(second.stdout)["score"] == outcome["score"]
