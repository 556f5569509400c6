"""Numberlink instances, fillings, path simplification and witness extraction.

Cells are ``(row, column)`` pairs, 1-indexed from the top-left corner. A cell
is *even* when ``row + column`` is even.
"""

from __future__ import annotations

import enum
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .errors import FormatError, InstanceError, VariantMismatchError

Cell = tuple[int, int]
#: number x -> cells (c_1, ..., c_t) of its path
PathSet = dict[int, tuple[Cell, ...]]


class FillMode(enum.Enum):
    WELL_DESIGNED = "well-designed"
    GENERAL = "general"


@dataclass(frozen=True)
class Puzzle:
    m: int
    n: int
    terminals: Mapping[Cell, int]
    k: int = field(default=0)

    def __post_init__(self):
        terms = dict(self.terminals)
        object.__setattr__(self, "terminals", MappingProxyType(terms))
        if self.m < 1 or self.n < 1:
            raise InstanceError("grid dimensions must be positive")
        numbers = sorted(set(terms.values()))
        k = self.k or (max(numbers) if numbers else 0)
        object.__setattr__(self, "k", k)
        if k < 1:
            raise InstanceError("a puzzle needs at least one pair")
        for cell, x in terms.items():
            if not self.contains(cell):
                raise InstanceError(f"terminal {cell} lies outside the {self.m}x{self.n} grid")
            if not 1 <= x <= k:
                raise InstanceError(f"terminal number {x} outside 1..{k}")
        counts = {x: 0 for x in range(1, k + 1)}
        for x in terms.values():
            counts[x] += 1
        bad = {x: c for x, c in counts.items() if c != 2}
        if bad:
            x, c = next(iter(bad.items()))
            raise InstanceError(f"number {x} appears {c} times; every number must appear exactly twice")
        if self.m * self.n < 2 * k:
            raise InstanceError("grid too small for its pairs")

    def contains(self, cell: Cell) -> bool:
        i, j = cell
        return 1 <= i <= self.m and 1 <= j <= self.n

    def cells(self) -> Iterator[Cell]:
        for i in range(1, self.m + 1):
            for j in range(1, self.n + 1):
                yield (i, j)

    def neighbors(self, cell: Cell) -> list[Cell]:
        """Adjacent cells in the fixed order up, down, left, right."""
        i, j = cell
        out = []
        for c in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
            if self.contains(c):
                out.append(c)
        return out

    def pairs(self) -> dict[int, tuple[Cell, Cell]]:
        """Number -> its two terminals in row-major order."""
        found: dict[int, list[Cell]] = {}
        for cell in sorted(self.terminals):
            found.setdefault(self.terminals[cell], []).append(cell)
        return {x: (cs[0], cs[1]) for x, cs in sorted(found.items())}

    def is_terminal(self, cell: Cell) -> bool:
        return cell in self.terminals


def adjacent(c1: Cell, c2: Cell) -> bool:
    return abs(c1[0] - c2[0]) + abs(c1[1] - c2[1]) == 1


class Filling:
    """Per-cell numbers, addressed with 1-indexed cells."""

    def __init__(self, values):
        self.values = np.array(values, dtype=np.int64)
        if self.values.ndim != 2:
            raise InstanceError("a filling is a 2-D grid of numbers")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def __getitem__(self, cell: Cell) -> int:
        return int(self.values[cell[0] - 1, cell[1] - 1])

    def __eq__(self, other):
        return isinstance(other, Filling) and np.array_equal(self.values, other.values)

    def rows(self) -> list[list[int]]:
        return self.values.tolist()

    def __repr__(self):
        return f"Filling({self.rows()})"


def check_filling(puzzle: Puzzle, f: Filling, width: int) -> None:
    """Raise unless ``f`` matches the grid, stays in ``1..width`` and agrees on terminals."""
    if f.shape != (puzzle.m, puzzle.n):
        raise InstanceError(f"filling is {f.shape[0]}x{f.shape[1]}, puzzle is {puzzle.m}x{puzzle.n}")
    lo, hi = int(f.values.min()), int(f.values.max())
    if lo < 1 or hi > width:
        raise InstanceError(f"filling values must lie in 1..{width}")
    for cell, x in puzzle.terminals.items():
        if f[cell] != x:
            raise InstanceError(f"terminal {cell} holds {x} but the filling says {f[cell]}")


# -- text formats -------------------------------------------------------------

def _int_token(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer {what}, got {tok!r}", lineno) from None


def parse_puzzle(text: str) -> Puzzle:
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise FormatError("empty puzzle file", 1)
    no, head = lines[0]
    if len(head) != 3:
        raise FormatError("header must be 'm n k'", no)
    m, n, k = (_int_token(t, no, "in the header") for t in head)
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"expected {m} grid rows, found {len(body)}", body[-1][0] if body else no)
    terminals = {}
    for i, (no, toks) in enumerate(body, start=1):
        if len(toks) != n:
            raise FormatError(f"row {i} has {len(toks)} tokens, expected {n}", no)
        for j, tok in enumerate(toks, start=1):
            if tok == ".":
                continue
            x = _int_token(tok, no, "or '.'")
            if not 1 <= x <= k:
                raise InstanceError(f"line {no}: terminal number {x} outside 1..{k}")
            terminals[(i, j)] = x
    return Puzzle(m, n, terminals, k)


def serialize_puzzle(puzzle: Puzzle) -> str:
    out = [f"{puzzle.m} {puzzle.n} {puzzle.k}"]
    for i in range(1, puzzle.m + 1):
        out.append(" ".join(str(puzzle.terminals.get((i, j), ".")) for j in range(1, puzzle.n + 1)))
    return "\n".join(out) + "\n"


def parse_filling(text: str) -> Filling:
    rows = []
    for no, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        rows.append([_int_token(t, no, "cell value") for t in ln.split()])
    if not rows:
        raise FormatError("empty filling file", 1)
    if len({len(r) for r in rows}) != 1:
        raise FormatError("ragged filling rows", len(rows))
    return Filling(rows)


def serialize_filling(f: Filling) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in f.rows()) + "\n"


def parse_solution(text: str) -> PathSet:
    """Lines ``x: i,j i,j ...``, one path per number."""
    paths: PathSet = {}
    for no, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        if ":" not in ln:
            raise FormatError("expected 'x: i,j i,j ...'", no)
        head, rest = ln.split(":", 1)
        x = _int_token(head.strip(), no, "path number")
        cells = []
        for tok in rest.split():
            parts = tok.split(",")
            if len(parts) != 2:
                raise FormatError(f"bad cell {tok!r}", no)
            cells.append((_int_token(parts[0], no, "row"), _int_token(parts[1], no, "column")))
        if x in paths:
            raise FormatError(f"number {x} listed twice", no)
        paths[x] = tuple(cells)
    return paths


def serialize_solution(ps: PathSet) -> str:
    return "".join(
        f"{x}: " + " ".join(f"{i},{j}" for i, j in ps[x]) + "\n" for x in sorted(ps)
    )


# -- paths --------------------------------------------------------------------

def validate_paths(puzzle: Puzzle, ps: PathSet) -> None:
    """Raise unless ``ps`` joins every pair by disjoint paths through non-terminals."""
    pairs = puzzle.pairs()
    if set(ps) != set(pairs):
        raise InstanceError(f"paths given for {sorted(ps)}, puzzle numbers are {sorted(pairs)}")
    seen: set[Cell] = set()
    for x, path in ps.items():
        if len(path) < 2:
            raise InstanceError(f"path {x} is shorter than two cells")
        if {path[0], path[-1]} != set(pairs[x]):
            raise InstanceError(f"path {x} does not join its terminals")
        for a, b in zip(path, path[1:]):
            if not adjacent(a, b):
                raise InstanceError(f"path {x} jumps from {a} to {b}")
        for c in path:
            if not puzzle.contains(c):
                raise InstanceError(f"path {x} leaves the grid at {c}")
            if c in seen:
                raise InstanceError(f"cell {c} is used twice")
            seen.add(c)
        for c in path[1:-1]:
            if puzzle.is_terminal(c):
                raise InstanceError(f"path {x} runs through terminal {c}")


def is_simple(path, adj=adjacent) -> bool:
    for i in range(len(path)):
        for j in range(i + 2, len(path)):
            if adj(path[i], path[j]):
                return False
    return True


def shortcut(path: tuple, adj=adjacent) -> tuple:
    """Repeatedly replace (.., c_i, .., c_j, ..) by (.., c_i, c_j, ..) when c_i ~ c_j.

    Scans ``i`` ascending and jumps to the largest adjacent ``j``.
    """
    path = tuple(path)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(path):
            far = None
            for j in range(len(path) - 1, i + 1, -1):
                if adj(path[i], path[j]):
                    far = j
                    break
            if far is not None:
                path = path[: i + 1] + path[far:]
                changed = True
            i += 1
    return path


def simplify_paths(ps: PathSet, puzzle: Puzzle) -> PathSet:
    validate_paths(puzzle, ps)
    return {x: shortcut(p) for x, p in ps.items()}


def fill_from_solution(puzzle: Puzzle, ps: PathSet, variant: FillMode) -> Filling:
    """Number each path cell with its pair; fill the rest by parity with k+1 / k+2."""
    validate_paths(puzzle, ps)
    for x, path in ps.items():
        if not is_simple(path):
            raise InstanceError(f"path {x} is not simple; simplify the solution first")
    k = puzzle.k
    values = np.zeros((puzzle.m, puzzle.n), dtype=np.int64)
    for x, path in ps.items():
        for i, j in path:
            values[i - 1, j - 1] = x
    uncovered = [(i + 1, j + 1) for i, j in zip(*np.nonzero(values == 0))]
    if uncovered and variant is FillMode.WELL_DESIGNED:
        raise VariantMismatchError(f"{len(uncovered)} cells are not covered by any path")
    for i, j in uncovered:
        values[i - 1, j - 1] = k + 1 if (i + j) % 2 == 0 else k + 2
    return Filling(values)


def extract_solution(puzzle: Puzzle, f: Filling) -> PathSet | None:
    """Follow same-number chains from each first terminal; None if any chain breaks."""
    out: PathSet = {}
    for x, (start, goal) in puzzle.pairs().items():
        path = [start]
        seen = {start}
        prev = None
        cur = start
        while True:
            nxt = [c for c in puzzle.neighbors(cur) if f[c] == x and c != prev]
            if len(nxt) != 1:
                return None
            step = nxt[0]
            if step in seen:
                return None
            path.append(step)
            seen.add(step)
            if step == goal:
                break
            if puzzle.is_terminal(step):
                return None
            prev, cur = cur, step
        out[x] = tuple(path)
    return out


def canonical_paths(ps: PathSet) -> dict[int, tuple[Cell, ...]]:
    """Orient every path from its smaller endpoint, so path sets compare up to direction."""
    return {x: (p if p[0] <= p[-1] else tuple(reversed(p))) for x, p in ps.items()}


# -- generation -------------------------------------------------------------

def _random_simple_walk(start: Cell, puzzle_shape: tuple[int, int], free: set[Cell],
                        max_len: int, rng) -> list[Cell]:
    m, n = puzzle_shape
    path = [start]
    members = {start}
    while len(path) < max_len:
        cur = path[-1]
        i, j = cur
        options = []
        for c in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
            if not (1 <= c[0] <= m and 1 <= c[1] <= n) or c not in free or c in members:
                continue
            ci, cj = c
            touching = [d for d in ((ci - 1, cj), (ci + 1, cj), (ci, cj - 1), (ci, cj + 1))
                        if d in members and d != cur]
            if not touching:
                options.append(c)
        if not options:
            break
        nxt = options[rng.randbelow(len(options))]
        path.append(nxt)
        members.add(nxt)
    return path


def generate_puzzle(m: int, n: int, k: int, rng, *, attempts: int = 2000) -> tuple[Puzzle, PathSet]:
    """Random solvable puzzle: lay ``k`` disjoint simple paths, then mark their endpoints."""
    if m * n < 2 * k:
        raise InstanceError("grid too small for the requested pairs")
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    for _ in range(attempts):
        free = set(cells)
        paths: PathSet = {}
        for x in range(1, k + 1):
            pool = sorted(free)
            if not pool:
                break
            start = pool[rng.randbelow(len(pool))]
            max_len = 2 + rng.randbelow(max(1, (m * n) // k))
            path = _random_simple_walk(start, (m, n), free, max_len, rng)
            if len(path) < 2:
                break
            paths[x] = tuple(path)
            free -= set(path)
        if len(paths) == k:
            terminals = {}
            for x, p in paths.items():
                terminals[p[0]] = x
                terminals[p[-1]] = x
            return Puzzle(m, n, terminals, k), paths
    raise InstanceError(f"could not generate a {m}x{n} puzzle with {k} pairs")


def generate_covered_puzzle(m: int, n: int, rng, *, attempts: int = 5000) -> tuple[Puzzle, PathSet]:
    """Random puzzle whose solution paths are simple and cover every cell."""
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    for _ in range(attempts):
        free = set(cells)
        paths: list[list[Cell]] = []
        ok = True
        while free:
            pool = sorted(free, key=lambda c: (_free_degree(c, free, m, n), c))
            low = [c for c in pool if _free_degree(c, free, m, n) == _free_degree(pool[0], free, m, n)]
            start = low[rng.randbelow(len(low))]
            path = _random_simple_walk(start, (m, n), free, 2 + rng.randbelow(m * n - 1), rng)
            if len(path) < 2:
                ok = False
                break
            paths.append(path)
            free -= set(path)
        if not ok:
            continue
        ps = {x: tuple(p) for x, p in enumerate(paths, start=1)}
        terminals = {}
        for x, p in ps.items():
            terminals[p[0]] = x
            terminals[p[-1]] = x
        return Puzzle(m, n, terminals, len(ps)), ps
    raise InstanceError(f"could not generate a covered {m}x{n} puzzle")


def _free_degree(c: Cell, free: set[Cell], m: int, n: int) -> int:
    i, j = c
    return sum(1 for d in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)) if d in free)
