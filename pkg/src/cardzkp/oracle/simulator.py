"""Witness-free transcript simulator.

Given only the public instance, emits transcripts with the schema and
distribution of an honest accepting run: a uniform heart column, a uniform
set of heart rows of the size the check demands, and uniform mark orders
during each rearrangement.
"""

from __future__ import annotations

from ..dpp_graph import Coloring, DppInstance, greedy_coloring
from ..numberlink import Puzzle
from ..protocol import Layout, Variant, graph_layout, numberlink_layout
from ..rng import PermutationSource
from ..transcript import Transcript, TranscriptWriter


def _row(value: int, width: int) -> list[str]:
    return ["H" if c == value else "C" for c in range(1, width + 1)]


def public_layout(instance, variant: Variant, coloring: Coloring | None) -> Layout:
    if variant.is_graph:
        return graph_layout(instance, variant, coloring if coloring is not None else greedy_coloring(instance))
    return numberlink_layout(instance, variant)


def simulate_phase(layout: Layout, index: int, randomness: PermutationSource,
                   writer: TranscriptWriter) -> None:
    """Emit the events of one accepting verification phase without any witness."""
    plan = layout.checks[index]
    width = layout.width
    sources = (plan.row1, *plan.others)
    for r, s in enumerate(sources, start=1):
        writer.matrix_row(index, r, layout.locate(s), None)
    for r, value in enumerate(plan.fillers, start=len(sources) + 1):
        writer.matrix_row(index, r, "supply", _row(value, width))
    a, b = plan.a, width
    writer.marks(index, "row0", list(range(1, b + 1)))
    writer.marks(index, "column0", list(range(2, a + 1)))
    writer.shuffle(index, "verify")
    j = 1 + randomness.randbelow(b)
    writer.reveal(index, "row1", [(1, c) for c in range(1, b + 1)], _row(j, b))
    hearts = set(randomness.sample(list(range(2, a + 1)), plan.expected))
    writer.reveal(index, "column", [(r, j) for r in range(2, a + 1)],
                  ["H" if r in hearts else "C" for r in range(2, a + 1)])
    writer.shuffle(index, "rearrange")
    p = [t + 2 for t in randomness.permutation(a - 1)]
    q = [t + 1 for t in randomness.permutation(b)]
    writer.reveal(index, "column0_marks", [(r, 0) for r in range(2, a + 1)], p)
    writer.reveal(index, "row0_marks", [(0, c) for c in range(1, b + 1)], q)


def simulate_transcript(instance: Puzzle | DppInstance, variant: Variant | str,
                        randomness: PermutationSource, coloring: Coloring | None = None) -> Transcript:
    variant = Variant(variant)
    layout = public_layout(instance, variant, coloring)
    w = TranscriptWriter(keep_sealed=False)
    for slot in layout.slots:
        faces = _row(layout.public[slot], layout.width) if slot in layout.public else None
        w.setup(layout.locate(slot), faces)
    for index in range(len(layout.checks)):
        simulate_phase(layout, index, randomness, w)
    w.decision(True, None)
    return w.transcript
