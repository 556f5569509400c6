"""The proof matrix D(a, b), its shuffles, reveals and the rearrangement protocol.

Matrix coordinates follow the physical layout: row 0 holds the column marks,
column 0 holds the row marks from row 2 down, rows ``1..a`` and columns
``1..b`` hold encoding cards. Positions (0, 0) and (1, 0) stay empty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .deck import Card, CardFace, Sequence, Table
from .errors import DimensionError, MalformedRowError, ProtocolOrderError
from .rng import PermutationSource


@dataclass(frozen=True)
class HiddenPermutations:
    """Sealed shuffle outcome, 1-indexed.

    ``p[i - 2]`` is the destination of row ``i`` (rows ``2..a``) and
    ``q[j - 1]`` the destination of column ``j``.
    """

    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.p) != list(range(2, len(self.p) + 2)):
            raise ValueError(f"p={self.p} is not a permutation of 2..{len(self.p) + 1}")
        if sorted(self.q) != list(range(1, len(self.q) + 1)):
            raise ValueError(f"q={self.q} is not a permutation of 1..{len(self.q)}")


class MarkingPool:
    """Reusable marking cards, created on first need and never destroyed.

    Row 0 and column 0 draw from separate sets because both are on the table
    at once.
    """

    def __init__(self, table: Table):
        self.table = table
        self._row: list[int] = []
        self._col: list[int] = []

    def row_marks(self, b: int) -> np.ndarray:
        if len(self._row) < b:
            self._row.extend(int(u) for u in self.table.add_marks(range(len(self._row) + 1, b + 1)))
        return np.asarray(self._row[:b], dtype=np.int32)

    def column_marks(self, a: int) -> np.ndarray:
        need = max(a - 1, 0)
        if len(self._col) < need:
            self._col.extend(int(u) for u in self.table.add_marks(range(len(self._col) + 2, need + 2)))
        return np.asarray(self._col[:need], dtype=np.int32)


class ProofMatrix:
    """Incomplete (a+1) x (b+1) card layout."""

    def __init__(self, table: Table, a: int, b: int, grid: np.ndarray):
        self.table = table
        self.a = a
        self.b = b
        self.grid = grid
        self.marks_live = True

    def card_at(self, row: int, col: int) -> Card | None:
        uid = self.grid[row, col]
        return None if uid < 0 else Card(self.table, int(uid))

    def faces_at(self, positions) -> list[CardFace]:
        """Faces of face-up cards; raises on a face-down one."""
        return [self.card_at(r, c).face for r, c in positions]

    def row_uids(self, row: int) -> np.ndarray:
        return self.grid[row, 1:].copy()

    def uid_layout(self) -> np.ndarray:
        return self.grid.copy()

    def face_up_count(self) -> int:
        return kernels.count_face_up(self.grid, self.table.up)

    def hide(self) -> None:
        """Publicly turn every face-up card face-down."""
        kernels.set_orientation(self.grid, self.table.up, 0, self.a + 1, 0, self.b + 1, 0)

    def release(self) -> list[np.ndarray]:
        """Dismantle the matrix, returning encoding rows 1..a; marks go back to the pool."""
        if not self.marks_live:
            raise ProtocolOrderError("matrix already dismantled")
        if self.face_up_count():
            raise ProtocolOrderError("cannot dismantle a matrix with face-up cards")
        self.marks_live = False
        return [self.row_uids(r) for r in range(1, self.a + 1)]


def build_matrix(row1: Sequence, other_rows: list[Sequence], b: int,
                 marks: MarkingPool | None = None) -> ProofMatrix:
    """Lay out D(a, b) with ``row1`` on top and ``other_rows`` below, then add marks."""
    table = row1.table
    rows = [row1, *other_rows]
    for idx, seq in enumerate(rows, start=1):
        if len(seq) != b:
            raise DimensionError(f"row {idx} has width {len(seq)}, expected {b}")
        if seq.table is not table:
            raise DimensionError(f"row {idx} lives on a different table")
    if b < 1:
        raise DimensionError("matrix needs at least one column")
    a = len(rows)
    pool = marks if marks is not None else MarkingPool(table)
    grid = np.full((a + 1, b + 1), -1, dtype=np.int32)
    for r, seq in enumerate(rows, start=1):
        grid[r, 1:] = seq.uids
    row_marks = pool.row_marks(b)
    col_marks = pool.column_marks(a)
    table.up[row_marks] = 0
    table.up[col_marks] = 0
    grid[0, 1:] = row_marks
    grid[2:, 0] = col_marks
    return ProofMatrix(table, a, b, grid)


def _require_face_down(m: ProofMatrix) -> None:
    if m.face_up_count():
        raise ProtocolOrderError("shuffling requires every card face-down")


def apply_permutations(m: ProofMatrix, hidden: HiddenPermutations) -> None:
    """Move row i to row p_i and column j to column q_j; marks travel along."""
    if len(hidden.p) != m.a - 1 or len(hidden.q) != m.b:
        raise DimensionError("permutation sizes do not match the matrix")
    kernels.permute_lines(m.grid, [t - 2 for t in hidden.p], [t - 1 for t in hidden.q])


def double_scramble(m: ProofMatrix, randomness: PermutationSource) -> HiddenPermutations:
    """Uniformly permute rows 2..a and columns 1..b; returns the sealed outcome."""
    _require_face_down(m)
    p = randomness.permutation(m.a - 1)
    q = randomness.permutation(m.b)
    kernels.permute_lines(m.grid, p, q)
    return HiddenPermutations(tuple(t + 2 for t in p), tuple(t + 1 for t in q))


def pile_scramble(m: ProofMatrix, randomness: PermutationSource) -> tuple[int, ...]:
    """Uniformly permute columns 1..b only; returns the sealed ``q``."""
    _require_face_down(m)
    q = randomness.permutation(m.b)
    kernels.permute_lines(m.grid, [], q)
    return tuple(t + 1 for t in q)


def reveal_row1(m: ProofMatrix) -> int:
    """Turn Row 1 face-up and return the column of its heart."""
    up = m.table.up
    row = m.grid[1, 1:]
    if up[row].any():
        raise ProtocolOrderError("row 1 is already face-up")
    kernels.set_orientation(m.grid, up, 1, 2, 1, m.b + 1, 1)
    hearts = kernels.heart_positions(m.grid, m.table.kind, 1, 2, 1, m.b + 1)
    if len(hearts) != 1:
        raise MalformedRowError(f"row 1 shows {len(hearts)} hearts")
    return hearts[0][1]


def reveal_column_others(m: ProofMatrix, j: int) -> tuple[int, tuple[int, ...]]:
    """Turn rows 2..a of column ``j`` face-up; returns (heart count, heart rows)."""
    if not 1 <= j <= m.b:
        raise DimensionError(f"column {j} outside 1..{m.b}")
    up = m.table.up
    col = m.grid[2:, j]
    if up[col].any():
        raise ProtocolOrderError(f"column {j} is already face-up")
    kernels.set_orientation(m.grid, up, 2, m.a + 1, j, j + 1, 1)
    rows = tuple(r for r, _ in kernels.heart_positions(m.grid, m.table.kind, 2, m.a + 1, j, j + 1))
    return len(rows), rows


@dataclass(frozen=True)
class Rearrangement:
    """Public outcome of one rearrangement: the mark values read in each step."""

    matrix: ProofMatrix
    revealed_p: tuple[int, ...]
    revealed_q: tuple[int, ...]
    hidden: HiddenPermutations


def rearrange(m: ProofMatrix, randomness: PermutationSource) -> Rearrangement:
    """Return every card of ``m`` to its position at build time without leaking faces."""
    if not m.marks_live:
        raise ProtocolOrderError("marking cards of this matrix were already consumed")
    hidden = double_scramble(m, randomness)
    up = m.table.up

    kernels.set_orientation(m.grid, up, 2, m.a + 1, 0, 1, 1)
    p = tuple(kernels.mark_values(m.grid, m.table.mark, 2, m.a + 1, 0, 1))
    kernels.permute_lines(m.grid, [t - 2 for t in p], [])

    kernels.set_orientation(m.grid, up, 0, 1, 1, m.b + 1, 1)
    q = tuple(kernels.mark_values(m.grid, m.table.mark, 0, 1, 1, m.b + 1))
    kernels.permute_lines(m.grid, [], [t - 1 for t in q])

    m.hide()
    return Rearrangement(m, p, q, hidden)
