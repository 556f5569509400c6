"""Encoding and marking cards, orientation, and the one-heart number encoding.

All cards of one protocol run live in a :class:`Table`, which stores faces and
orientations in flat arrays indexed by card uid. :class:`Card` objects are
light views onto that storage. A face-down card refuses to show its face unless
the caller presents the :data:`SEAL` token, which only test oracles use.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import MalformedSequenceError, RangeError, VisibilityError


class Kind(enum.IntEnum):
    CLUB = 0
    HEART = 1
    MARK = 2


class Orientation(enum.Enum):
    FACE_UP = "up"
    FACE_DOWN = "down"


@dataclass(frozen=True)
class CardFace:
    kind: Kind
    mark_value: int | None = None

    def __post_init__(self):
        if self.kind is Kind.MARK:
            if self.mark_value is None or self.mark_value < 1:
                raise ValueError("a marking card needs a value >= 1")
        elif self.mark_value is not None:
            raise ValueError("encoding cards carry no mark value")

    def symbol(self) -> str | int:
        """Wire form: ``"C"``, ``"H"`` or the integer on a marking card."""
        if self.kind is Kind.MARK:
            return self.mark_value
        return "H" if self.kind is Kind.HEART else "C"


CLUB = CardFace(Kind.CLUB)
HEART = CardFace(Kind.HEART)


class _Seal:
    __slots__ = ()

    def __repr__(self):
        return "<sealed oracle access>"


#: Token granting read access to face-down cards. Never handed to a verifier.
SEAL = _Seal()


class CardCount(NamedTuple):
    encoding: int
    marking: int


class Table:
    """Storage for every card of one run; uids are dense indices."""

    def __init__(self, capacity: int = 64):
        self.kind = np.zeros(capacity, dtype=np.int8)
        self.mark = np.zeros(capacity, dtype=np.int32)
        self.up = np.zeros(capacity, dtype=np.uint8)
        self.size = 0
        self._marking = 0

    def _grow(self, needed: int) -> None:
        cap = len(self.kind)
        if needed <= cap:
            return
        while cap < needed:
            cap *= 2
        for name in ("kind", "mark", "up"):
            old = getattr(self, name)
            new = np.zeros(cap, dtype=old.dtype)
            new[: self.size] = old[: self.size]
            setattr(self, name, new)

    def add_encoding(self, heart_at: int, width: int) -> np.ndarray:
        """Create ``width`` face-down encoding cards with one heart at 0-based ``heart_at``."""
        start = self.size
        self._grow(start + width)
        self.kind[start : start + width] = Kind.CLUB
        self.kind[start + heart_at] = Kind.HEART
        self.size = start + width
        return np.arange(start, start + width, dtype=np.int32)

    def add_marks(self, values) -> np.ndarray:
        values = list(values)
        start = self.size
        self._grow(start + len(values))
        self.kind[start : start + len(values)] = Kind.MARK
        self.mark[start : start + len(values)] = values
        self.size = start + len(values)
        self._marking += len(values)
        return np.arange(start, start + len(values), dtype=np.int32)

    def card(self, uid: int) -> "Card":
        return Card(self, int(uid))

    def count(self) -> CardCount:
        return CardCount(self.size - self._marking, self._marking)

    def face_of(self, uid: int) -> CardFace:
        k = Kind(int(self.kind[uid]))
        if k is Kind.MARK:
            return CardFace(k, int(self.mark[uid]))
        return HEART if k is Kind.HEART else CLUB


class Card:
    """View of one card on a :class:`Table`."""

    __slots__ = ("table", "uid")

    def __init__(self, table: Table, uid: int):
        self.table = table
        self.uid = uid

    @property
    def orientation(self) -> Orientation:
        return Orientation.FACE_UP if self.table.up[self.uid] else Orientation.FACE_DOWN

    @property
    def face(self) -> CardFace:
        if not self.table.up[self.uid]:
            raise VisibilityError(f"card {self.uid} is face-down")
        return self.table.face_of(self.uid)

    def peek(self, seal: _Seal) -> CardFace:
        if seal is not SEAL:
            raise VisibilityError("sealed access requires the oracle seal")
        return self.table.face_of(self.uid)

    def turn_up(self) -> None:
        self.table.up[self.uid] = 1

    def turn_down(self) -> None:
        self.table.up[self.uid] = 0

    def __repr__(self):
        return f"Card(uid={self.uid}, {self.orientation.value})"


class Sequence:
    """An ordered row of cards sharing one table."""

    __slots__ = ("table", "uids")

    def __init__(self, table: Table, uids):
        self.table = table
        self.uids = np.asarray(uids, dtype=np.int32)

    @property
    def cards(self) -> list[Card]:
        return [Card(self.table, int(u)) for u in self.uids]

    def __len__(self) -> int:
        return len(self.uids)

    def faces(self, seal: _Seal | None = None) -> list[CardFace]:
        if seal is None:
            return [c.face for c in self.cards]
        return [c.peek(seal) for c in self.cards]

    def turn_up(self) -> None:
        self.table.up[self.uids] = 1

    def turn_down(self) -> None:
        self.table.up[self.uids] = 0


def encode(x: int, y: int, table: Table | None = None) -> Sequence:
    """Face-down sequence of ``y`` encoding cards, all clubs but a heart at position ``x``."""
    if not 1 <= x <= y:
        raise RangeError(f"cannot encode {x} with width {y}")
    table = table if table is not None else Table(max(y, 1))
    return Sequence(table, table.add_encoding(x - 1, y))


def decode(seq: Sequence, seal: _Seal | None = None) -> int:
    """1-indexed heart position. Face-down cards require ``seal``."""
    hearts = []
    for pos, card in enumerate(seq.cards, start=1):
        face = card.face if seal is None else card.peek(seal)
        if face.kind is Kind.MARK:
            raise MalformedSequenceError("marking card inside an encoding sequence")
        if face.kind is Kind.HEART:
            hearts.append(pos)
    if len(hearts) != 1:
        raise MalformedSequenceError(f"expected one heart, found {len(hearts)}")
    return hearts[0]
