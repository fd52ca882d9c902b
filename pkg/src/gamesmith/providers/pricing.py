"""Token/cost accounting primitives."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from gamesmith.providers.base import Usage


class UnpricedModelError(KeyError):
    """A ledger referenced a model absent from the pricing table."""


@dataclass(frozen=True)
class ModelRate:
    prompt_per_1k: float
    completion_per_1k: float

    def __post_init__(self) -> None:
        if self.prompt_per_1k <= 0 or self.completion_per_1k <= 0:
            raise ValueError("pricing rates must be positive")


@dataclass(frozen=True)
class LedgerEntry:
    model_id: str
    usage: Usage


class PricingTable:
    def __init__(self, rates: dict[str, ModelRate]):
        self._rates = dict(rates)

    def rate_for(self, model_id: str) -> ModelRate:
        try:
            return self._rates[model_id]
        except KeyError:
            raise UnpricedModelError(f"no pricing for model {model_id!r}") from None

    def cost_of(self, model_id: str, usage: Usage) -> float:
        rate = self.rate_for(model_id)
        return (
            usage.prompt_tokens * rate.prompt_per_1k
            + usage.completion_tokens * rate.completion_per_1k
        ) / 1000.0

    @classmethod
    def from_config(cls, raw: dict) -> "PricingTable":
        return cls(
            {
                model_id: ModelRate(
                    prompt_per_1k=entry["prompt_per_1k"],
                    completion_per_1k=entry["completion_per_1k"],
                )
                for model_id, entry in raw["models"].items()
            }
        )

    @classmethod
    def from_file(cls, path: Path) -> "PricingTable":
        return cls.from_config(json.loads(Path(path).read_text(encoding="utf-8")))


def calibration_pricing() -> PricingTable:
    raw = resources.files("gamesmith.providers").joinpath("data/pricing_calibration.json")
    return PricingTable.from_config(json.loads(raw.read_text(encoding="utf-8")))


def estimate_cost(ledger: Iterable[LedgerEntry], pricing: PricingTable) -> float:
    """Exact linear combination of ledger usage against the pricing table.

    Every model in the ledger must be priced; an unpriced model raises
    rather than defaulting to zero cost.
    """
    total = 0.0
    for entry in ledger:
        total += pricing.cost_of(entry.model_id, entry.usage)
    return total
