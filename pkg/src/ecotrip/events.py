"""Append-only session event log with asynchronous, order-preserving writes.

Contract:
  * submit() never blocks on disk; a dedicated writer thread appends.
  * Within one session the file holds events in strictly increasing seq
    order. Out-of-order arrivals are buffered until the gap fills; whatever
    is still buffered at close() is flushed in seq order.
  * Duplicate (session_id, seq) submissions are accepted but stored exactly
    once. Seqs at or below a session's highest logged value are treated as
    duplicates, which also keeps a restarted log consistent with what is
    already on disk.

One self-describing JSON record per line, UTF-8.
"""

from __future__ import annotations

import json
import queue
import threading
from dataclasses import dataclass, field as dc_field
from datetime import datetime, timezone
from pathlib import Path

from .config import DEFAULT_EVENT_KINDS

ACCEPTED = "accepted"
DUPLICATE = "duplicate"


class EventError(Exception):
    pass


class InvalidEvent(EventError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(message)


@dataclass(frozen=True)
class SessionEvent:
    session_id: str
    seq: int
    kind: str
    payload: dict = dc_field(default_factory=dict)
    received_at: datetime = dc_field(
        default_factory=lambda: datetime.now(timezone.utc)
    )


def validate_event(
    body: dict, kinds: tuple[str, ...] = DEFAULT_EVENT_KINDS
) -> SessionEvent:
    """Build a SessionEvent from a request body, stamping received_at."""
    session_id = body.get("session_id")
    if not isinstance(session_id, str) or not session_id.strip():
        raise InvalidEvent("session_id", "session_id must be a non-empty string")
    seq = body.get("seq")
    if not isinstance(seq, int) or isinstance(seq, bool) or seq < 1:
        raise InvalidEvent("seq", "seq must be a positive integer")
    kind = body.get("kind")
    if kind not in kinds:
        raise InvalidEvent("kind", f"unknown event kind {kind!r}")
    payload = body.get("payload", {})
    if not isinstance(payload, dict):
        raise InvalidEvent("payload", "payload must be an object")
    return SessionEvent(session_id=session_id, seq=seq, kind=kind, payload=payload)


class EventLog:
    """Single-writer append-only event log; see module docstring for the contract."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._queue: queue.Queue = queue.Queue()
        self._lock = threading.Lock()
        self._flushed: dict[str, int] = {}  # session -> highest seq written
        self._pending: dict[str, dict[int, SessionEvent]] = {}
        self._writer: threading.Thread | None = None
        self._fh = None

    def open(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._recover()
        self._fh = open(self.path, "a", encoding="utf-8")
        self._writer = threading.Thread(target=self._write_loop, daemon=True)
        self._writer.start()

    def _recover(self) -> None:
        """Seed per-session high-water marks from whatever is already logged."""
        if not self.path.exists():
            return
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                record = json.loads(line)
                sid, seq = record["session_id"], record["seq"]
                if seq > self._flushed.get(sid, 0):
                    self._flushed[sid] = seq

    def submit(self, event: SessionEvent) -> str:
        """Accept an event for eventual append; returns ACCEPTED or DUPLICATE.

        Returns immediately; durability comes from the writer thread and is
        guaranteed only after close().
        """
        if self._writer is None:
            raise EventError("event log is not open")
        with self._lock:
            pending = self._pending.setdefault(event.session_id, {})
            high = self._flushed.get(event.session_id, 0)
            if event.seq <= high or event.seq in pending:
                return DUPLICATE
            pending[event.seq] = event
            # Hand every now-contiguous event to the writer in order.
            while high + 1 in pending:
                high += 1
                self._queue.put(pending.pop(high))
            self._flushed[event.session_id] = high
        return ACCEPTED

    def _write_loop(self) -> None:
        while True:
            item = self._queue.get()
            if item is None:
                return
            try:
                self._fh.write(json.dumps(_event_to_dict(item), sort_keys=True) + "\n")
                self._fh.flush()
            except OSError:  # keep draining; a dead writer would hang close()
                continue

    def close(self) -> None:
        """Flush everything (buffered gaps included, in seq order) and stop."""
        if self._writer is None:
            return
        with self._lock:
            for sid in sorted(self._pending):
                for seq in sorted(self._pending[sid]):
                    self._queue.put(self._pending[sid][seq])
                    self._flushed[sid] = max(self._flushed.get(sid, 0), seq)
            self._pending.clear()
        self._queue.put(None)
        self._writer.join()
        self._writer = None
        self._fh.close()
        self._fh = None

    def stored_events(self) -> list[dict]:
        """Read the log back (testing/inspection helper)."""
        if not self.path.exists():
            return []
        with open(self.path, "r", encoding="utf-8") as fh:
            return [json.loads(line) for line in fh if line.strip()]


def _event_to_dict(event: SessionEvent) -> dict:
    return {
        "session_id": event.session_id,
        "seq": event.seq,
        "kind": event.kind,
        "payload": event.payload,
        "received_at": event.received_at.isoformat(),
    }
