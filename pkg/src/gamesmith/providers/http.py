"""HTTP adapters for hosted chat-completion models.

Adapters send the role prompt plus the canonical task payload and return
the raw text for boundary validation downstream; nothing here interprets
document content. Transport failures are retried once, then surface as
ProviderError. Credentials come from environment variables.
"""

from __future__ import annotations

import json
import os
import time
from typing import Any, Optional

import httpx

from gamesmith.domain.canonical import canonical_json
from gamesmith.providers.base import ProviderError, StepOutput, StepSpec, Usage


def _parse_json_payload(text: str) -> dict[str, Any]:
    # Models occasionally wrap JSON in code fences; strip them before parsing.
    stripped = text.strip()
    if stripped.startswith("```"):
        stripped = stripped.strip("`")
        if stripped.startswith("json"):
            stripped = stripped[4:]
    try:
        parsed = json.loads(stripped)
    except ValueError as exc:
        raise ProviderError(f"model returned non-JSON output: {exc}") from None
    if not isinstance(parsed, dict):
        raise ProviderError("model output must be a JSON object")
    return parsed


class _HttpAdapterBase:
    deterministic = False
    endpoint: str
    env_var: str

    def __init__(self, *, client: Optional[httpx.Client] = None, timeout: float = 60.0):
        self._client = client or httpx.Client(timeout=timeout)

    def _api_key(self) -> str:
        key = os.environ.get(self.env_var, "")
        if not key:
            raise ProviderError(f"missing credential: set {self.env_var}")
        return key

    def _post_with_retry(self, url: str, **kwargs: Any) -> httpx.Response:
        last_error: Optional[Exception] = None
        for attempt in range(2):
            try:
                response = self._client.post(url, **kwargs)
                response.raise_for_status()
                return response
            except (httpx.TransportError, httpx.HTTPStatusError) as exc:
                last_error = exc
                if attempt == 0:
                    time.sleep(0.5)
        raise ProviderError(f"transport failure after retry: {last_error}")


class OpenAIChatProvider(_HttpAdapterBase):
    """Chat-completions wire protocol (api.openai.com compatible)."""

    endpoint = "https://api.openai.com/v1/chat/completions"
    env_var = "OPENAI_API_KEY"

    def generate(self, spec: StepSpec) -> StepOutput:
        started = time.monotonic()
        body = {
            "model": spec.model_preset.model_id,
            "temperature": spec.model_preset.temperature,
            "seed": spec.model_preset.seed,
            "response_format": {"type": "json_object"},
            "messages": [
                {"role": "system", "content": spec.role_prompt},
                {"role": "user", "content": canonical_json(spec.task_payload)},
            ],
        }
        response = self._post_with_retry(
            self.endpoint,
            json=body,
            headers={"Authorization": f"Bearer {self._api_key()}"},
        )
        data = response.json()
        text = data["choices"][0]["message"]["content"]
        usage = data.get("usage", {})
        return StepOutput(
            payload=_parse_json_payload(text),
            usage=Usage(
                prompt_tokens=int(usage.get("prompt_tokens", 0)),
                completion_tokens=int(usage.get("completion_tokens", 0)),
            ),
            latency_ms=int((time.monotonic() - started) * 1000),
        )


class GeminiProvider(_HttpAdapterBase):
    """generateContent wire protocol (generativelanguage.googleapis.com)."""

    endpoint = "https://generativelanguage.googleapis.com/v1beta/models/{model}:generateContent"
    env_var = "GEMINI_API_KEY"

    def generate(self, spec: StepSpec) -> StepOutput:
        started = time.monotonic()
        body = {
            "system_instruction": {"parts": [{"text": spec.role_prompt}]},
            "contents": [{"role": "user", "parts": [{"text": canonical_json(spec.task_payload)}]}],
            "generationConfig": {
                "temperature": spec.model_preset.temperature,
                "responseMimeType": "application/json",
            },
        }
        url = self.endpoint.format(model=spec.model_preset.model_id)
        response = self._post_with_retry(url, json=body, params={"key": self._api_key()})
        data = response.json()
        text = data["candidates"][0]["content"]["parts"][0]["text"]
        usage = data.get("usageMetadata", {})
        return StepOutput(
            payload=_parse_json_payload(text),
            usage=Usage(
                prompt_tokens=int(usage.get("promptTokenCount", 0)),
                completion_tokens=int(usage.get("candidatesTokenCount", 0)),
            ),
            latency_ms=int((time.monotonic() - started) * 1000),
        )
