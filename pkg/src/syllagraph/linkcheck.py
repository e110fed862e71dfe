"""Resource-link health audit with a bounded concurrent request window.

Probing is HEAD-first with a ranged-GET fallback for hosts that reject HEAD
(405/501); a full GET of media bytes would be wasteful.  Network failures
become per-entry outcomes, never exceptions: an audit always returns a
complete report, entries ordered by (node id, resource index) regardless of
completion order.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from urllib.parse import urlparse

import httpx

from .model import CourseGraph, Resource

MAX_REDIRECTS = 5

USER_AGENT_DEFAULT = "syllagraph-linkcheck/0.1"


class Outcome(Enum):
    OK = "ok"
    BROKEN = "broken"
    TIMEOUT = "timeout"
    INVALID_URL = "invalid_url"


@dataclass(frozen=True)
class CheckConfig:
    max_concurrent: int = 8
    timeout_ms: int = 10_000
    retries: int = 1
    user_agent: str = USER_AGENT_DEFAULT

    def __post_init__(self) -> None:
        if self.max_concurrent < 1:
            raise ValueError("max_concurrent must be at least 1")
        if self.timeout_ms < 1:
            raise ValueError("timeout_ms must be at least 1")
        if self.retries < 0:
            raise ValueError("retries must be nonnegative")


@dataclass(frozen=True)
class LinkEntry:
    node_id: str
    url: str
    outcome: Outcome
    http_status: int | None
    latency_ms: int


@dataclass(frozen=True)
class LinkReport:
    entries: tuple[LinkEntry, ...]

    @property
    def summary(self) -> dict[str, int]:
        counts = {o.value: 0 for o in Outcome}
        for e in self.entries:
            counts[e.outcome.value] += 1
        return counts


def _url_is_well_formed(url: str) -> bool:
    try:
        parsed = urlparse(url)
    except ValueError:
        return False
    return parsed.scheme in ("http", "https") and bool(parsed.netloc)


def _probe_once(client: httpx.Client, url: str) -> tuple[Outcome, int | None]:
    response = client.head(url)
    if response.status_code in (405, 501):
        response = client.get(url, headers={"Range": "bytes=0-0"})
    if 200 <= response.status_code < 400:
        return Outcome.OK, response.status_code
    return Outcome.BROKEN, response.status_code


def _check_one(
    client: httpx.Client, node_id: str, resource: Resource, config: CheckConfig
) -> LinkEntry:
    start = time.monotonic()

    def elapsed_ms() -> int:
        return int((time.monotonic() - start) * 1000)

    if not _url_is_well_formed(resource.url):
        return LinkEntry(node_id, resource.url, Outcome.INVALID_URL, None, 0)

    last_outcome = Outcome.BROKEN
    status: int | None = None
    for _ in range(config.retries + 1):
        try:
            outcome, status = _probe_once(client, resource.url)
            return LinkEntry(node_id, resource.url, outcome, status, elapsed_ms())
        except httpx.TimeoutException:
            last_outcome = Outcome.TIMEOUT
            status = None
        except httpx.TooManyRedirects:
            return LinkEntry(node_id, resource.url, Outcome.BROKEN, None, elapsed_ms())
        except httpx.HTTPError:
            last_outcome = Outcome.BROKEN
            status = None
    return LinkEntry(node_id, resource.url, last_outcome, status, elapsed_ms())


def check_links(graph: CourseGraph, config: CheckConfig | None = None) -> LinkReport:
    """Audit every (node, resource) pair; at most max_concurrent in flight."""
    cfg = config or CheckConfig()
    tasks = [
        (node.id, index, resource)
        for node in sorted(graph.nodes, key=lambda n: n.id)
        for index, resource in enumerate(node.resources)
    ]
    if not tasks:
        return LinkReport(entries=())

    timeout = httpx.Timeout(cfg.timeout_ms / 1000)
    entries: dict[tuple[str, int], LinkEntry] = {}
    with httpx.Client(
        timeout=timeout,
        follow_redirects=True,
        max_redirects=MAX_REDIRECTS,
        headers={"User-Agent": cfg.user_agent},
    ) as client:
        with ThreadPoolExecutor(max_workers=cfg.max_concurrent) as pool:
            futures = {
                (node_id, index): pool.submit(_check_one, client, node_id, res, cfg)
                for node_id, index, res in tasks
            }
            for key, fut in futures.items():
                entries[key] = fut.result()

    ordered = tuple(entries[key] for key in sorted(entries))
    return LinkReport(entries=ordered)
