"""Client for OpenAI-compatible chat-completion endpoints.

Drives the zero-shot baselines: prompts go out with bounded concurrency and
exponential-backoff retries; answers come back as raw text and are parsed
into detection or classification labels without touching the network again,
so parsing is unit-testable and replayable from logs.
"""

from __future__ import annotations

import json
import logging
import os
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence

import httpx

from .metrics import FALLACY, NO_FALLACY, unify_label
from .textualize import FallacyCatalog

logger = logging.getLogger(__name__)

UNPARSED = "unparsed"

_RETRYABLE_STATUS = {429, 500, 502, 503, 504}


class GatewayError(RuntimeError):
    """Endpoint unreachable, persistent failure, or malformed response."""


@dataclass(frozen=True)
class GatewayConfig:
    endpoint: str
    model: str
    auth_env: str = "LLM_API_KEY"
    temperature: float = 0.0
    max_tokens: int = 256
    timeout: float = 30.0
    max_concurrent: int = 4
    max_retries: int = 3
    backoff: float = 0.5

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_concurrent < 1:
            raise ValueError("max_concurrent must be >= 1")

    @property
    def url(self) -> str:
        base = self.endpoint.rstrip("/")
        if base.endswith("/chat/completions"):
            return base
        return base + "/chat/completions"


def complete(
    prompt: str, config: GatewayConfig, client: Optional[httpx.Client] = None
) -> str:
    """Send one chat completion and return the first choice's message text."""
    payload = {
        "model": config.model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": config.temperature,
        "max_tokens": config.max_tokens,
    }
    headers = {"Content-Type": "application/json"}
    token = os.environ.get(config.auth_env)
    if token:
        headers["Authorization"] = f"Bearer {token}"

    owned = client is None
    session = client or httpx.Client(timeout=config.timeout)
    try:
        last_error: Optional[str] = None
        for attempt in range(config.max_retries + 1):
            if attempt:
                time.sleep(config.backoff * (2 ** (attempt - 1)))
            try:
                response = session.post(
                    config.url, json=payload, headers=headers, timeout=config.timeout
                )
            except httpx.HTTPError as exc:
                last_error = f"transport error: {exc}"
                logger.warning("attempt %d failed: %s", attempt + 1, last_error)
                continue
            if response.status_code in _RETRYABLE_STATUS:
                last_error = f"status {response.status_code}"
                logger.warning("attempt %d failed: %s", attempt + 1, last_error)
                continue
            if response.status_code != 200:
                raise GatewayError(
                    f"request failed with status {response.status_code}: "
                    f"{response.text[:200]}"
                )
            try:
                body = response.json()
                content = body["choices"][0]["message"]["content"]
            except (ValueError, KeyError, IndexError, TypeError) as exc:
                raise GatewayError(f"malformed response body: {exc}") from exc
            if not isinstance(content, str):
                raise GatewayError("malformed response body: content is not text")
            return content
        raise GatewayError(
            f"request failed after {config.max_retries + 1} attempts ({last_error})"
        )
    finally:
        if owned:
            session.close()


@dataclass(frozen=True)
class Outcome:
    id: str
    response: Optional[str]
    error: Optional[str] = None


def run_batch(
    prompts: Sequence[tuple[str, str]],
    config: GatewayConfig,
    log_path: Optional[str | Path] = None,
) -> list[Outcome]:
    """Complete every (id, prompt) pair, at most max_concurrent in flight.

    Every record yields exactly one outcome, failures included. Outcomes are
    returned (and logged) in input order.
    """
    client = httpx.Client(timeout=config.timeout)

    def one(item: tuple[str, str]) -> Outcome:
        record_id, prompt = item
        try:
            return Outcome(id=record_id, response=complete(prompt, config, client))
        except GatewayError as exc:
            return Outcome(id=record_id, response=None, error=str(exc))

    try:
        with ThreadPoolExecutor(max_workers=config.max_concurrent) as pool:
            outcomes = list(pool.map(one, prompts))
    finally:
        client.close()

    if log_path is not None:
        with open(log_path, "w", encoding="utf-8") as handle:
            for (record_id, prompt), outcome in zip(prompts, outcomes):
                handle.write(
                    json.dumps(
                        {
                            "id": record_id,
                            "prompt": prompt,
                            "response": outcome.response,
                            "error": outcome.error,
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )
    return outcomes


def load_responses(path: str | Path) -> dict[str, str]:
    """Read a responses log back for replay scoring."""
    responses: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            if data.get("response") is not None:
                responses[str(data["id"])] = data["response"]
    return responses


_SCAFFOLD_RE = re.compile(r"^(?:answer|output|label)\s*[:\-]\s*", re.IGNORECASE)
_YESNO_RE = re.compile(r"^(yes|no)\b", re.IGNORECASE)


def parse_detection(answer: str) -> Optional[str]:
    """Map a model answer to fallacy/no_fallacy; None when unresolvable."""
    text = answer.strip().strip('"').strip("*").strip()
    for _ in range(3):  # peel stacked scaffolds like "Output: Answer: Yes"
        stripped = _SCAFFOLD_RE.sub("", text).strip()
        if stripped == text:
            break
        text = stripped
    match = _YESNO_RE.match(text)
    if match is None:
        return None
    return FALLACY if match.group(1).lower() == "yes" else NO_FALLACY


def parse_classification(
    answer: str,
    catalog: FallacyCatalog,
    label_map: Mapping[str, str],
    dataset: str,
) -> str:
    """Longest catalog-name or alias substring in the answer, unified.

    Candidates are the dataset's fallacy names plus any alias resolving to
    them. Returns the 'unparsed' sentinel when nothing matches.
    """
    names = set(catalog.names_for(dataset))
    candidates = set(names)
    candidates.update(
        alias for alias, canonical in catalog.aliases.items() if canonical in names
    )
    haystack = answer.lower()
    best: Optional[str] = None
    best_key: tuple[int, int] = (0, 0)
    for candidate in sorted(candidates):
        position = haystack.find(candidate.lower())
        if position < 0:
            continue
        key = (len(candidate), -position)
        if best is None or key > best_key:
            best, best_key = candidate, key
    if best is None:
        return UNPARSED
    return unify_label(best, label_map)
