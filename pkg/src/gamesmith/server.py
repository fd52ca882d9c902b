"""Local HTTP surface: read-only documents and traces, plus outcome ingest.

The player UI reads game documents and trace files from here and posts
OutcomeRecords back; everything travels in the canonical document format.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from gamesmith.domain.canonical import load_json
from gamesmith.domain.validation import SchemaValidationError
from gamesmith.library import DuplicateGameError, GameLibrary, LibraryError


def create_app(library_dir: Path) -> FastAPI:
    library = GameLibrary(Path(library_dir))
    app = FastAPI(title="gamesmith library")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    @app.get("/library")
    def list_games() -> list[dict[str, Any]]:
        return [entry.metadata for entry in library.entries()]

    @app.get("/library/stats")
    def stats() -> dict[str, Any]:
        return library.stats()

    @app.get("/library/{game_id}/document")
    def document(game_id: str) -> JSONResponse:
        try:
            text = library.document_text(game_id)
        except LibraryError:
            raise HTTPException(status_code=404, detail=f"no such game: {game_id}")
        return JSONResponse(content=load_json(text))

    @app.get("/library/{game_id}/trace", response_class=PlainTextResponse)
    def trace(game_id: str) -> str:
        text = library.trace_text(game_id)
        if text is None:
            raise HTTPException(status_code=404, detail=f"no trace for game: {game_id}")
        return text

    @app.get("/library/{game_id}/outcomes")
    def outcomes(game_id: str) -> list[dict[str, Any]]:
        try:
            return [record.to_payload() for record in library.outcomes(game_id)]
        except LibraryError:
            raise HTTPException(status_code=404, detail=f"no such game: {game_id}")

    @app.post("/library/{game_id}/outcomes")
    def ingest(game_id: str, payload: dict[str, Any]) -> dict[str, Any]:
        try:
            record = library.ingest_outcome(game_id, payload)
        except SchemaValidationError as exc:
            raise HTTPException(
                status_code=422,
                detail=[violation.to_payload() for violation in exc.violations],
            )
        except (LibraryError, DuplicateGameError) as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return {"accepted": True, "score": record.score}

    return app
