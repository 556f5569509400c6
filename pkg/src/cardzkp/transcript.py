"""Transcript events: what a verifier observes during one run.

Each event is a JSON-compatible dict ``{"type", "location", "faces", ...}``.
Event types are ``place``, ``shuffle``, ``reveal`` and ``decision``. Card uids
never appear in events. Hidden permutations go to the separate ``sealed`` log,
which is only serialized on explicit request.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

Location = dict[str, Any]


@dataclass
class Transcript:
    events: list[dict] = field(default_factory=list)
    sealed: list[dict] | None = field(default_factory=list)

    @property
    def decision(self) -> dict | None:
        if self.events and self.events[-1]["type"] == "decision":
            return self.events[-1]
        return None

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e, sort_keys=True) + "\n" for e in self.events)

    def sealed_jsonl(self) -> str:
        return "".join(json.dumps(e, sort_keys=True) + "\n" for e in (self.sealed or []))

    @classmethod
    def from_jsonl(cls, text: str, sealed_text: str | None = None) -> "Transcript":
        events = [json.loads(ln) for ln in text.splitlines() if ln.strip()]
        sealed = None
        if sealed_text is not None:
            sealed = [json.loads(ln) for ln in sealed_text.splitlines() if ln.strip()]
        return cls(events, sealed)


class TranscriptWriter:
    """Builds events in the one schema shared by real runs and the simulator."""

    def __init__(self, keep_sealed: bool = True):
        self.transcript = Transcript(sealed=[] if keep_sealed else None)
        self._events = self.transcript.events

    def setup(self, location: Location, faces: list | None) -> None:
        self._events.append({"type": "place", "location": dict(location), "faces": faces})

    def matrix_row(self, check: int, row: int, source: Location | str, faces: list | None) -> None:
        self._events.append({"type": "place",
                             "location": {"check": check, "row": row, "from": source},
                             "faces": faces})

    def marks(self, check: int, line: str, values: list[int]) -> None:
        self._events.append({"type": "place",
                             "location": {"check": check, "marks": line},
                             "faces": list(values)})

    def shuffle(self, check: int, purpose: str, sealed: dict | None = None) -> None:
        self._events.append({"type": "shuffle",
                             "location": {"check": check, "purpose": purpose},
                             "faces": []})
        if sealed is not None and self.transcript.sealed is not None:
            self.transcript.sealed.append({"check": check, "purpose": purpose, **sealed})

    def reveal(self, check: int, stage: str, positions: list[tuple[int, int]], faces: list) -> None:
        self._events.append({"type": "reveal",
                             "location": {"check": check, "stage": stage,
                                          "positions": [list(p) for p in positions]},
                             "faces": list(faces)})

    def decision(self, accepted: bool, location: Location | None) -> None:
        self._events.append({"type": "decision",
                             "location": location,
                             "faces": [],
                             "result": "accept" if accepted else "reject"})
