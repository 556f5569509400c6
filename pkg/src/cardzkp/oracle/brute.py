"""Exhaustive solvers for desk-scale instances."""

from __future__ import annotations

from .. import kernels
from ..dpp_graph import DppInstance, GraphPaths
from ..errors import SizeGuardError
from ..numberlink import PathSet, Puzzle

MAX_CELLS = 20
MAX_VERTICES = 10


def _csr(n: int, adjacency: list[list[int]]):
    ptr = [0]
    idx = []
    for v in range(n):
        idx.extend(adjacency[v])
        ptr.append(len(idx))
    return ptr, idx


def brute_force_numberlink(puzzle: Puzzle, require_cover: bool = False, *,
                           simple: bool = True, override: bool = False,
                           limit: int = 0) -> list[PathSet]:
    """All systems of disjoint paths joining every pair (simple paths only by default)."""
    m, n = puzzle.m, puzzle.n
    if m * n > MAX_CELLS and not override:
        raise SizeGuardError(f"{m}x{n} grid exceeds {MAX_CELLS} cells; pass override=True")

    def vid(cell):
        return (cell[0] - 1) * n + (cell[1] - 1)

    cells = list(puzzle.cells())
    adjacency = [[vid(c) for c in puzzle.neighbors(cell)] for cell in cells]
    ptr, idx = _csr(m * n, adjacency)
    pairs = puzzle.pairs()
    sources = [vid(pairs[x][0]) for x in sorted(pairs)]
    targets = [vid(pairs[x][1]) for x in sorted(pairs)]
    is_terminal = [1 if c in puzzle.terminals else 0 for c in cells]
    raw = kernels.enumerate_path_systems(m * n, ptr, idx, ptr, idx, sources, targets,
                                         is_terminal, require_cover, simple, limit)
    numbers = sorted(pairs)
    return [{x: tuple(cells[v] for v in path) for x, path in zip(numbers, system)} for system in raw]


def brute_force_dpp(inst: DppInstance, require_cover: bool = False, *,
                    simple: bool = True, override: bool = False, limit: int = 0) -> list[GraphPaths]:
    """All vertex-disjoint path systems (directed paths follow arcs)."""
    nv = inst.n_vertices
    if nv > MAX_VERTICES and not override:
        raise SizeGuardError(f"{nv} vertices exceed {MAX_VERTICES}; pass override=True")
    step = [[u - 1 for u in inst.out_neighbors[v]] for v in range(1, nv + 1)]
    und = [[u - 1 for u in inst.neighbors[v]] for v in range(1, nv + 1)]
    sptr, sidx = _csr(nv, step)
    aptr, aidx = _csr(nv, und)
    sources = [s - 1 for s, _ in inst.pairs]
    targets = [t - 1 for _, t in inst.pairs]
    is_terminal = [1 if v in inst.terminal_index else 0 for v in range(1, nv + 1)]
    raw = kernels.enumerate_path_systems(nv, sptr, sidx, aptr, aidx, sources, targets,
                                         is_terminal, require_cover, simple, limit)
    return [{x: tuple(v + 1 for v in path) for x, path in enumerate(system, start=1)} for system in raw]
