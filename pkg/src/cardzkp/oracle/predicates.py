"""Card-free acceptance predicates.

These count same-number neighbors directly on the witness. They share no code
with the card engine, so agreement between the two is a real check.
"""

from __future__ import annotations

from ..dpp_graph import Coloring, DppInstance, Labeling
from ..errors import RangeError
from ..numberlink import Filling, Puzzle


def _same_cell_neighbors(puzzle: Puzzle, f: Filling, i: int, j: int) -> int:
    v = f.values[i - 1, j - 1]
    count = 0
    for di, dj in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        a, b = i + di, j + dj
        if 1 <= a <= puzzle.m and 1 <= b <= puzzle.n and f.values[a - 1, b - 1] == v:
            count += 1
    return count


def local_accept_numberlink(puzzle: Puzzle, f: Filling, variant) -> bool:
    variant = getattr(variant, "value", variant)
    general = variant == "general"
    k = puzzle.k
    width = k + 2 if general else k
    if f.values.shape != (puzzle.m, puzzle.n):
        raise RangeError("filling shape does not match the puzzle")
    if f.values.min() < 1 or f.values.max() > width:
        raise RangeError(f"filling values must lie in 1..{width}")
    for i in range(1, puzzle.m + 1):
        for j in range(1, puzzle.n + 1):
            same = _same_cell_neighbors(puzzle, f, i, j)
            if (i, j) in puzzle.terminals:
                if f.values[i - 1, j - 1] != puzzle.terminals[(i, j)] or same != 1:
                    return False
                continue
            bonus = 0
            if general:
                v = f.values[i - 1, j - 1]
                parity_filler = k + 1 if (i + j) % 2 == 0 else k + 2
                bonus = 2 if v == parity_filler else 0
            if same + bonus != 2:
                return False
    return True


def _check_labels(inst: DppInstance, labeling: Labeling, coloring: Coloring) -> int:
    width = inst.k + inst.d + 1
    for v in range(1, inst.n_vertices + 1):
        x = labeling[v]
        if not 1 <= x <= width:
            raise RangeError(f"label {x} on vertex {v} outside 1..{width}")
    return width


def local_accept_ukdpp(inst: DppInstance, labeling: Labeling, coloring: Coloring) -> bool:
    _check_labels(inst, labeling, coloring)
    terminals = {}
    for x, (s, t) in enumerate(inst.pairs, start=1):
        terminals[s] = terminals[t] = x
    nbrs = {v: set() for v in range(1, inst.n_vertices + 1)}
    for u, v in inst.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    for v in range(1, inst.n_vertices + 1):
        same = sum(1 for u in nbrs[v] if labeling[u] == labeling[v])
        if v in terminals:
            if labeling[v] != terminals[v] or same != 1:
                return False
        else:
            bonus = 2 if labeling[v] == inst.k + coloring[v] else 0
            if same + bonus != 2:
                return False
    return True


def local_accept_dkdpp(inst: DppInstance, labeling: Labeling, coloring: Coloring) -> bool:
    _check_labels(inst, labeling, coloring)
    sources = {s: x for x, (s, _) in enumerate(inst.pairs, start=1)}
    sinks = {t: x for x, (_, t) in enumerate(inst.pairs, start=1)}
    ins = {v: [] for v in range(1, inst.n_vertices + 1)}
    outs = {v: [] for v in range(1, inst.n_vertices + 1)}
    for u, v in inst.edges:
        outs[u].append(v)
        ins[v].append(u)
    for v in range(1, inst.n_vertices + 1):
        lab = labeling[v]
        in_same = sum(1 for u in ins[v] if labeling[u] == lab)
        out_same = sum(1 for u in outs[v] if labeling[u] == lab)
        if v in sources:
            if lab != sources[v] or (in_same, out_same) != (0, 1):
                return False
        elif v in sinks:
            if lab != sinks[v] or (in_same, out_same) != (1, 0):
                return False
        else:
            bonus = 1 if lab == inst.k + coloring[v] else 0
            if in_same + bonus != 1 or out_same + bonus != 1:
                return False
    return True
