"""Declarative pipeline configuration: per-agent model presets, retry
budgets, and the worker cap."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from gamesmith.domain.mechanics import Family
from gamesmith.providers.base import ModelPreset
from gamesmith.providers.pricing import PricingTable, calibration_pricing


@dataclass(frozen=True)
class RetryPolicy:
    qg1: int = 1
    qg2: int = 1
    qg3_per_scene: int = 2
    qg4: int = 0
    boundary: int = 1  # phase-0 and asset steps, which have no gate of their own

    def __post_init__(self) -> None:
        for name in ("qg1", "qg2", "qg3_per_scene", "qg4", "boundary"):
            if getattr(self, name) < 0:
                raise ValueError(f"retry budget {name} must be >= 0")


_DEFAULT_STEP_MODELS = {
    "input_analyzer": "text-calib",
    "knowledge_retriever": "text-calib",
    "concept_designer": "text-calib",
    "game_planner": "text-calib",
    "scene_content_generator": "text-calib",
    "asset_worker@interactive_diagram": "vision-calib",
    "asset_worker@interactive_algorithm": "text-calib",
}

_DEFAULT_TEMPERATURES = {
    "asset_worker@interactive_diagram": 0.4,
}


@dataclass(frozen=True)
class PipelineConfig:
    step_models: dict[str, str] = field(default_factory=lambda: dict(_DEFAULT_STEP_MODELS))
    step_temperatures: dict[str, float] = field(default_factory=lambda: dict(_DEFAULT_TEMPERATURES))
    retry_policy: RetryPolicy = field(default_factory=RetryPolicy)
    worker_cap: int = 8
    pricing: PricingTable = field(default_factory=calibration_pricing)

    def preset_for(self, step_name: str, seed: int, family: Optional[Family] = None) -> ModelPreset:
        key = step_name
        if family is not None and f"{step_name}@{family.value}" in self.step_models:
            key = f"{step_name}@{family.value}"
        model_id = self.step_models.get(key, self.step_models.get(step_name, "text-calib"))
        temperature = self.step_temperatures.get(key, self.step_temperatures.get(step_name, 0.3))
        return ModelPreset(model_id=model_id, temperature=temperature, seed=seed)

    @classmethod
    def from_file(cls, path: Path) -> "PipelineConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        models = dict(_DEFAULT_STEP_MODELS)
        temperatures = dict(_DEFAULT_TEMPERATURES)
        for step, entry in raw.get("steps", {}).items():
            if "model_id" in entry:
                models[step] = entry["model_id"]
            if "temperature" in entry:
                temperatures[step] = entry["temperature"]
        budgets = raw.get("retry_budgets", {})
        policy = RetryPolicy(
            qg1=budgets.get("QG1", 1),
            qg2=budgets.get("QG2", 1),
            qg3_per_scene=budgets.get("QG3", 2),
            qg4=budgets.get("QG4", 0),
            boundary=budgets.get("boundary", 1),
        )
        pricing = calibration_pricing()
        if isinstance(raw.get("pricing"), str) and raw["pricing"] != "calibration":
            pricing = PricingTable.from_file(Path(raw["pricing"]))
        return cls(
            step_models=models,
            step_temperatures=temperatures,
            retry_policy=policy,
            worker_cap=raw.get("worker_cap", 8),
            pricing=pricing,
        )
