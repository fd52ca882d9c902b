"""Generative-step interface shared by the stub and the hosted-model adapters."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Protocol, runtime_checkable

from gamesmith.domain.canonical import digest_payload


class ProviderError(RuntimeError):
    """Transport or protocol failure after the retry budget was spent."""


class FixtureGapError(ProviderError):
    """The stub had no fixture for this step and synthesis was disabled."""


@dataclass(frozen=True)
class ModelPreset:
    model_id: str
    temperature: float = 0.0
    seed: int = 0

    def to_payload(self) -> dict[str, Any]:
        return {"model_id": self.model_id, "temperature": self.temperature, "seed": self.seed}


@dataclass(frozen=True)
class StepSpec:
    step_name: str
    role_prompt: str
    task_payload: dict[str, Any]
    model_preset: ModelPreset

    def payload_digest(self) -> str:
        return digest_payload(self.task_payload)


@dataclass(frozen=True)
class Usage:
    prompt_tokens: int
    completion_tokens: int

    @property
    def total(self) -> int:
        return self.prompt_tokens + self.completion_tokens

    def to_payload(self) -> dict[str, Any]:
        return {"prompt_tokens": self.prompt_tokens, "completion_tokens": self.completion_tokens}


@dataclass(frozen=True)
class StepOutput:
    payload: dict[str, Any]
    usage: Usage
    latency_ms: int


@runtime_checkable
class GenerativeProvider(Protocol):
    # Deterministic providers let the engine drive a virtual clock so whole
    # pipeline results are byte-stable.
    deterministic: bool

    def generate(self, spec: StepSpec) -> StepOutput:
        ...
