"""Reading observables out of transcripts, and the hygiene scan."""

from __future__ import annotations

from dataclasses import dataclass

from ..transcript import Transcript


@dataclass(frozen=True)
class CheckObservation:
    """Everything random a verifier sees during one verification phase."""

    check: int
    subject: tuple
    a: int
    b: int
    column: int
    heart_rows: tuple[int, ...]
    revealed_p: tuple[int, ...]
    revealed_q: tuple[int, ...]

    @property
    def reveal(self) -> tuple:
        return (self.a, self.b, self.column, self.heart_rows)


def _subject_key(loc) -> tuple:
    return tuple(sorted((k, tuple(v) if isinstance(v, list) else v) for k, v in loc.items()))


def observations(transcript: Transcript) -> list[CheckObservation]:
    checks: dict[int, dict] = {}
    for ev in transcript.events:
        loc = ev.get("location") or {}
        if "check" not in loc:
            continue
        c = checks.setdefault(loc["check"], {"a": 0, "b": 0})
        if ev["type"] == "place" and "row" in loc:
            c["a"] = max(c["a"], loc["row"])
            if loc["row"] == 1:
                c["subject"] = _subject_key(loc["from"])
        elif ev["type"] == "place" and loc.get("marks") == "row0":
            c["b"] = len(ev["faces"])
        elif ev["type"] == "reveal":
            stage = loc["stage"]
            if stage == "row1":
                c["column"] = next(pos[1] for pos, f in zip(loc["positions"], ev["faces"]) if f == "H")
            elif stage == "column":
                c["hearts"] = tuple(pos[0] for pos, f in zip(loc["positions"], ev["faces"]) if f == "H")
            elif stage == "column0_marks":
                c["p"] = tuple(ev["faces"])
            elif stage == "row0_marks":
                c["q"] = tuple(ev["faces"])
    out = []
    for idx in sorted(checks):
        c = checks[idx]
        if "q" not in c:
            continue
        out.append(CheckObservation(idx, c["subject"], c["a"], c["b"], c["column"],
                                    c.get("hearts", ()), c["p"], c["q"]))
    return out


def hygiene_violations(transcript: Transcript, public=None) -> list[str]:
    """Structural scan: no event may expose a secret card outside the legal reveals.

    Secret sequences are placed without faces and may only be seen through the
    Row 1 and column-j reveals of a verification phase, after its shuffle.
    ``public`` optionally lists the setup locations allowed to show faces.
    """
    allowed = None if public is None else {_subject_key(loc) for loc in public}
    problems: list[str] = []
    events = transcript.events
    secret: set[tuple] = set()
    state: dict[int, dict] = {}

    def walk(obj, path="event"):
        if isinstance(obj, dict):
            for key, val in obj.items():
                if key == "uid" or key == "uids":
                    problems.append(f"{path} carries a card uid")
                walk(val, f"{path}.{key}")
        elif isinstance(obj, list):
            for item in obj:
                walk(item, path)

    decisions = [i for i, ev in enumerate(events) if ev["type"] == "decision"]
    if decisions != [len(events) - 1]:
        problems.append("transcript must end with exactly one decision")

    for n, ev in enumerate(events):
        walk(ev, f"event {n}")
        loc = ev.get("location") or {}
        kind = ev["type"]
        if kind == "place" and "check" not in loc:
            if ev["faces"] is None:
                secret.add(_subject_key(loc))
            elif allowed is not None and _subject_key(loc) not in allowed:
                problems.append(f"event {n}: secret sequence {loc} placed face-up")
            continue
        if "check" not in loc:
            continue
        st = state.setdefault(loc["check"], {"a": 0, "b": 0, "phase": "build", "column": None})
        if kind == "place":
            if st["phase"] != "build":
                problems.append(f"event {n}: placement after the shuffle of check {loc['check']}")
            if "row" in loc:
                st["a"] = max(st["a"], loc["row"])
                src = loc["from"]
                if isinstance(src, dict) and _subject_key(src) in secret and ev["faces"] is not None:
                    problems.append(f"event {n}: faces of secret sequence {src} placed in the open")
            elif loc.get("marks") == "row0":
                st["b"] = len(ev["faces"])
        elif kind == "shuffle":
            st["phase"] = "shuffled" if loc["purpose"] == "verify" else "rearranging"
            if ev["faces"]:
                problems.append(f"event {n}: a shuffle exposed faces")
        elif kind == "reveal":
            stage = loc["stage"]
            positions = [tuple(p) for p in loc["positions"]]
            faces = ev["faces"]
            a, b = st["a"], st["b"]
            if stage == "row1":
                ok = st["phase"] == "shuffled" and positions == [(1, c) for c in range(1, b + 1)]
                ok = ok and all(f in ("C", "H") for f in faces)
                if ok and faces.count("H") == 1:
                    st["column"] = faces.index("H") + 1
            elif stage == "column":
                j = st["column"]
                ok = st["phase"] == "shuffled" and j is not None
                ok = ok and positions == [(r, j) for r in range(2, a + 1)]
                ok = ok and all(f in ("C", "H") for f in faces)
                st["column"] = None
            elif stage == "column0_marks":
                ok = st["phase"] == "rearranging" and positions == [(r, 0) for r in range(2, a + 1)]
                ok = ok and all(isinstance(f, int) for f in faces)
            elif stage == "row0_marks":
                ok = st["phase"] == "rearranging" and positions == [(0, c) for c in range(1, b + 1)]
                ok = ok and all(isinstance(f, int) for f in faces)
            else:
                ok = False
            if not ok:
                problems.append(f"event {n}: illegal reveal {stage!r} at {positions}")
            if len(faces) != len(positions):
                problems.append(f"event {n}: reveal lists {len(faces)} faces for {len(positions)} positions")
    return problems
