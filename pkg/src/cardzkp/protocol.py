"""Protocol runs: placement, per-cell or per-vertex verification, rearrangement, decision.

Every verification phase lays the sequence under test in Row 1, its neighbors'
sequences below in a fixed order, and any public filler rows at the bottom.
After a double-scramble shuffle the verifier opens Row 1, reads the heart
column ``j``, opens the rest of column ``j`` and compares the heart count with
the expected value. The matrix is then closed, rearranged and put back.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Hashable

import numpy as np

from .deck import SEAL, CardCount, Sequence, Table
from .dpp_graph import Coloring, DppInstance, Labeling, check_labeling, greedy_coloring
from .errors import CardZKError, InstanceError, MalformedSequenceError
from .numberlink import Filling, Puzzle, check_filling
from .rng import PermutationSource
from .table import MarkingPool, build_matrix, double_scramble, rearrange, reveal_column_others, reveal_row1
from .transcript import Location, Transcript, TranscriptWriter


class Variant(enum.Enum):
    WELL_DESIGNED = "well-designed"
    GENERAL = "general"
    UKDPP = "ukdpp"
    DKDPP = "dkdpp"

    @property
    def is_graph(self) -> bool:
        return self in (Variant.UKDPP, Variant.DKDPP)


@dataclass(frozen=True)
class CheckPlan:
    """Public description of one verification phase."""

    subject: Location
    row1: Hashable
    others: tuple[Hashable, ...]
    fillers: tuple[int, ...]
    expected: int

    @property
    def a(self) -> int:
        return 1 + len(self.others) + len(self.fillers)


@dataclass(frozen=True)
class Layout:
    """Public structure of a run: where sequences lie and which checks follow."""

    width: int
    slots: tuple[Hashable, ...]
    public: dict
    checks: tuple[CheckPlan, ...]
    filler_rows: int
    locate: Any = field(repr=False, compare=False)


def _cell_loc(cell) -> Location:
    return {"cell": [cell[0], cell[1]]}


def _vertex_loc(v, rnd: str | None = None) -> Location:
    return {"vertex": v} if rnd is None else {"vertex": v, "round": rnd}


def numberlink_layout(puzzle: Puzzle, variant: Variant) -> Layout:
    if variant is Variant.WELL_DESIGNED:
        width, filler_rows = puzzle.k, 0
    elif variant is Variant.GENERAL:
        width, filler_rows = puzzle.k + 2, 2
    else:
        raise InstanceError(f"{variant.value} is not a Numberlink variant")
    slots = tuple(puzzle.cells())
    checks = []
    for cell in slots:
        nbrs = tuple(puzzle.neighbors(cell))
        if puzzle.is_terminal(cell):
            checks.append(CheckPlan(_cell_loc(cell), cell, nbrs, (), 1))
        elif variant is Variant.GENERAL:
            even = (cell[0] + cell[1]) % 2 == 0
            filler = puzzle.k + 1 if even else puzzle.k + 2
            checks.append(CheckPlan(_cell_loc(cell), cell, nbrs, (filler, filler), 2))
        else:
            checks.append(CheckPlan(_cell_loc(cell), cell, nbrs, (), 2))
    return Layout(width, slots, dict(puzzle.terminals), tuple(checks), filler_rows, _cell_loc)


def graph_layout(inst: DppInstance, variant: Variant, coloring: Coloring) -> Layout:
    k, d = inst.k, inst.d
    width = k + d + 1
    slots = tuple(range(1, inst.n_vertices + 1))
    public = dict(inst.terminal_index)
    checks = []
    if variant is Variant.UKDPP:
        for v in slots:
            nbrs = inst.neighbors[v]
            if v in public:
                checks.append(CheckPlan(_vertex_loc(v), v, nbrs, (), 1))
            else:
                fill = k + coloring[v]
                checks.append(CheckPlan(_vertex_loc(v), v, nbrs, (fill, fill), 2))
        filler_rows = 2
    elif variant is Variant.DKDPP:
        for v in slots:
            for rnd, nbrs in (("in", inst.in_neighbors[v]), ("out", inst.out_neighbors[v])):
                if v in inst.sources:
                    checks.append(CheckPlan(_vertex_loc(v, rnd), v, nbrs, (), 0 if rnd == "in" else 1))
                elif v in inst.sinks:
                    checks.append(CheckPlan(_vertex_loc(v, rnd), v, nbrs, (), 1 if rnd == "in" else 0))
                else:
                    checks.append(CheckPlan(_vertex_loc(v, rnd), v, nbrs, (k + coloring[v],), 1))
        filler_rows = 1
    else:
        raise InstanceError(f"{variant.value} is not a graph variant")
    return Layout(width, slots, public, tuple(checks), filler_rows, _vertex_loc)


def card_requirements(variant: Variant | str, *, m: int = 0, n: int = 0, k: int = 0,
                      vertices: int = 0, d: int = 0) -> CardCount:
    """Encoding and marking card totals for one run of ``variant``."""
    variant = Variant(variant)
    if variant is Variant.WELL_DESIGNED:
        return CardCount(k * m * n, k + 4)
    if variant is Variant.GENERAL:
        return CardCount((k + 2) * (m * n + 2), k + 8)
    if variant is Variant.UKDPP:
        return CardCount((k + d + 1) * (vertices + 2), k + 2 * d + 3)
    return CardCount((k + d + 1) * (vertices + 1), k + 2 * d + 2)


class FillerSupply:
    """Encoding cards for public filler rows, rearranged openly for each value."""

    def __init__(self, table: Table, width: int, rows: int):
        self.table = table
        self.width = width
        self.rows = rows
        self._hearts: list[int] = []
        self._clubs: list[np.ndarray] = []
        self._out = 0

    def take(self, values: tuple[int, ...]) -> list[Sequence]:
        if self._out:
            raise CardZKError("filler rows are still on the table")
        if len(values) > self.rows:
            raise CardZKError("filler supply too small")
        while len(self._hearts) < len(values):
            uids = self.table.add_encoding(0, self.width)
            self._hearts.append(int(uids[0]))
            self._clubs.append(uids[1:])
        out = []
        for i, value in enumerate(values):
            clubs = self._clubs[i]
            uids = np.concatenate([clubs[: value - 1], [self._hearts[i]], clubs[value - 1:]]).astype(np.int32)
            out.append(Sequence(self.table, uids))
        self._out = len(values)
        return out

    def give_back(self, rows: list[np.ndarray]) -> bool:
        """Return filler rows; True if exactly the lent cards came back."""
        lent = set()
        for i in range(self._out):
            lent.add(self._hearts[i])
            lent.update(int(u) for u in self._clubs[i])
        back = {int(u) for r in rows for u in r}
        self._out = 0
        return back == lent


@dataclass
class RunResult:
    accepted: bool
    transcript: Transcript
    failing: Location | None
    cards: CardCount
    phases: int
    restoration_violations: int = 0

    @property
    def decision(self) -> str:
        return "accept" if self.accepted else "reject"

    def __iter__(self):
        yield self.decision
        yield self.transcript


class Session:
    """One protocol run over a board of face-down sequences."""

    def __init__(self, layout: Layout, values: dict, randomness: PermutationSource,
                 keep_sealed: bool = True):
        self.layout = layout
        self.randomness = randomness
        self.table = Table(capacity=max(64, layout.width * (len(layout.slots) + 3) + 32))
        self.marks = MarkingPool(self.table)
        self.supply = FillerSupply(self.table, layout.width, layout.filler_rows)
        self.writer = TranscriptWriter(keep_sealed)
        self.board: dict[Hashable, np.ndarray] = {}
        self.restoration_violations = 0
        self.phases = 0
        for slot in layout.slots:
            seq = self.table.add_encoding(values[slot] - 1, layout.width)
            self.board[slot] = seq
            if slot in layout.public:
                faces = [f.symbol() for f in Sequence(self.table, seq).faces(SEAL)]
                self.writer.setup(layout.locate(slot), faces)
            else:
                self.writer.setup(layout.locate(slot), None)

    @property
    def transcript(self) -> Transcript:
        return self.writer.transcript

    def verify(self, index: int, plan: CheckPlan) -> bool:
        """Run one verification phase and return whether it passed."""
        w = self.writer
        sources = (plan.row1, *plan.others)
        snapshot = {s: self.board[s].copy() for s in sources}
        rows = [Sequence(self.table, self.board[s]) for s in sources]
        for r, s in enumerate(sources, start=1):
            w.matrix_row(index, r, self.layout.locate(s), None)
        fillers = self.supply.take(plan.fillers) if plan.fillers else []
        for r, seq in enumerate(fillers, start=len(sources) + 1):
            w.matrix_row(index, r, "supply", [f.symbol() for f in seq.faces(SEAL)])
        m = build_matrix(rows[0], rows[1:] + fillers, self.layout.width, self.marks)
        w.marks(index, "row0", list(range(1, m.b + 1)))
        w.marks(index, "column0", list(range(2, m.a + 1)))

        hidden = double_scramble(m, self.randomness)
        w.shuffle(index, "verify", {"p": list(hidden.p), "q": list(hidden.q)})
        try:
            j = reveal_row1(m)
        except MalformedSequenceError:
            j = None
        pos = [(1, c) for c in range(1, m.b + 1)]
        w.reveal(index, "row1", pos, [f.symbol() for f in m.faces_at(pos)])
        passed = False
        if j is not None:
            count, _ = reveal_column_others(m, j)
            pos = [(r, j) for r in range(2, m.a + 1)]
            w.reveal(index, "column", pos, [f.symbol() for f in m.faces_at(pos)])
            passed = count == plan.expected

        m.hide()
        rr = rearrange(m, self.randomness)
        w.shuffle(index, "rearrange", {"p": list(rr.hidden.p), "q": list(rr.hidden.q)})
        w.reveal(index, "column0_marks", [(r, 0) for r in range(2, m.a + 1)], list(rr.revealed_p))
        w.reveal(index, "row0_marks", [(0, c) for c in range(1, m.b + 1)], list(rr.revealed_q))

        back = m.release()
        for s, uids in zip(sources, back):
            self.board[s] = uids
        ok = self.supply.give_back(back[len(sources):])
        ok = ok and all(np.array_equal(self.board[s], snapshot[s]) for s in sources)
        ok = ok and not self.table.up[: self.table.size].any()
        if not ok:
            self.restoration_violations += 1
        self.phases += 1
        return passed

    def run(self) -> RunResult:
        failing = None
        for index, plan in enumerate(self.layout.checks):
            try:
                passed = self.verify(index, plan)
            except MalformedSequenceError:
                passed = False
            if not passed:
                failing = plan.subject
                break
        accepted = failing is None
        self.writer.decision(accepted, failing)
        return RunResult(accepted, self.transcript, failing, self.table.count(),
                         self.phases, self.restoration_violations)


def _numberlink_session(puzzle: Puzzle, filling: Filling, variant: Variant,
                        randomness: PermutationSource, keep_sealed: bool = True) -> Session:
    variant = Variant(variant)
    layout = numberlink_layout(puzzle, variant)
    check_filling(puzzle, filling, layout.width)
    values = {cell: filling[cell] for cell in layout.slots}
    return Session(layout, values, randomness, keep_sealed)


def _graph_session(inst: DppInstance, labeling: Labeling, coloring: Coloring | None,
                   variant: Variant, randomness: PermutationSource, keep_sealed: bool = True) -> Session:
    coloring = coloring if coloring is not None else greedy_coloring(inst)
    if inst.directed != (variant is Variant.DKDPP):
        raise InstanceError(f"{variant.value} needs a {'directed' if variant is Variant.DKDPP else 'undirected'} graph")
    layout = graph_layout(inst, variant, coloring)
    check_labeling(inst, labeling, layout.width)
    return Session(layout, dict(labeling), randomness, keep_sealed)


def run_numberlink(puzzle: Puzzle, filling: Filling, variant: Variant | str,
                   randomness: PermutationSource, *, keep_sealed: bool = True) -> RunResult:
    """Verify every cell in row-major order; reject at the first failing cell."""
    return _numberlink_session(puzzle, filling, Variant(variant), randomness, keep_sealed).run()


def run_ukdpp(inst: DppInstance, labeling: Labeling, coloring: Coloring | None,
              randomness: PermutationSource, *, keep_sealed: bool = True) -> RunResult:
    return _graph_session(inst, labeling, coloring, Variant.UKDPP, randomness, keep_sealed).run()


def run_dkdpp(inst: DppInstance, labeling: Labeling, coloring: Coloring | None,
              randomness: PermutationSource, *, keep_sealed: bool = True) -> RunResult:
    """Two rounds per vertex (incoming, then outgoing neighbors), ascending ids."""
    return _graph_session(inst, labeling, coloring, Variant.DKDPP, randomness, keep_sealed).run()


def _single_cell(cell, filling, puzzle, variant, randomness, transcript_out, want_terminal):
    session = _numberlink_session(puzzle, filling, variant, randomness)
    if puzzle.is_terminal(cell) != want_terminal:
        raise InstanceError(f"{cell} is {'not ' if want_terminal else ''}a terminal cell")
    index = list(session.layout.slots).index(cell)
    try:
        passed = session.verify(index, session.layout.checks[index])
    except MalformedSequenceError:
        passed = False
    if transcript_out is not None:
        transcript_out.events.extend(session.transcript.events)
        if transcript_out.sealed is not None:
            transcript_out.sealed.extend(session.transcript.sealed or [])
    return passed


def verify_cell_terminal(cell, filling: Filling, puzzle: Puzzle, width: int,
                         randomness: PermutationSource, transcript: Transcript | None = None) -> bool:
    """Exactly one neighbor shares the terminal's number."""
    variant = Variant.WELL_DESIGNED if width == puzzle.k else Variant.GENERAL
    if width not in (puzzle.k, puzzle.k + 2):
        raise InstanceError(f"width {width} fits neither variant")
    return _single_cell(cell, filling, puzzle, variant, randomness, transcript, True)


def verify_cell_nonterminal_general(cell, filling: Filling, puzzle: Puzzle,
                                    randomness: PermutationSource,
                                    transcript: Transcript | None = None) -> bool:
    """Two neighbors match, or the cell holds its parity filler."""
    return _single_cell(cell, filling, puzzle, Variant.GENERAL, randomness, transcript, False)


def verify_cell_nonterminal_well_designed(cell, filling: Filling, puzzle: Puzzle,
                                          randomness: PermutationSource,
                                          transcript: Transcript | None = None) -> bool:
    return _single_cell(cell, filling, puzzle, Variant.WELL_DESIGNED, randomness, transcript, False)
