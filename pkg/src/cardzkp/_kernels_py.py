"""Pure-Python implementations of the hot kernels.

Same signatures and semantics as the compiled ``_kernels`` extension. Grids are
``int32`` arrays of card uids with ``-1`` marking empty positions.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def permute_lines(grid, p, q):
    """Move row ``2+r`` to ``2+p[r]`` and column ``1+c`` to ``1+q[c]``, in place."""
    if len(p):
        src = grid[2:].copy()
        grid[[2 + t for t in p]] = src
    if len(q):
        src = grid[:, 1:].copy()
        grid[:, [1 + t for t in q]] = src


def count_face_up(grid, up):
    cells = grid[grid >= 0]
    return int(up[cells].sum())


def set_orientation(grid, up, r0, r1, c0, c1, value):
    cells = grid[r0:r1, c0:c1]
    up[cells[cells >= 0]] = value


def heart_positions(grid, kind, r0, r1, c0, c1):
    out = []
    for r in range(r0, r1):
        for c in range(c0, c1):
            uid = grid[r, c]
            if uid >= 0 and kind[uid] == 1:
                out.append((r, c))
    return out


def mark_values(grid, mark, r0, r1, c0, c1):
    cells = grid[r0:r1, c0:c1].ravel()
    return [int(mark[u]) for u in cells if u >= 0]


def enumerate_path_systems(n, step_ptr, step_idx, adj_ptr, adj_idx, sources, targets,
                           is_terminal, require_cover, simple, limit):
    """All systems of vertex-disjoint paths joining ``sources[i]`` to ``targets[i]``.

    Paths follow ``step`` adjacency (arcs); interior vertices avoid terminals.
    With ``simple`` set, no path vertex may be ``adj``-adjacent to a path
    vertex other than its predecessor and successor. ``limit`` of 0 means no
    cap on the number of systems returned.
    """
    k = len(sources)
    used = [False] * n
    owner = [0] * n
    for s in sources:
        used[s] = True
    for t in targets:
        used[t] = True
    results = []
    paths = []
    n_used = [2 * k]

    def chordless(w, prev, tag):
        for e in range(adj_ptr[w], adj_ptr[w + 1]):
            u = adj_idx[e]
            if owner[u] == tag and u != prev:
                return False
        return True

    def solve(i):
        if limit and len(results) >= limit:
            return
        if i == k:
            if not require_cover or n_used[0] == n:
                results.append([list(p) for p in paths])
            return
        s = sources[i]
        path = [s]
        owner[s] = i + 1
        paths.append(path)
        extend(i, s, path)
        paths.pop()
        owner[s] = 0

    def extend(i, v, path):
        t = targets[i]
        for e in range(step_ptr[v], step_ptr[v + 1]):
            if limit and len(results) >= limit:
                return
            w = step_idx[e]
            if w == t:
                if simple and not chordless(w, v, i + 1):
                    continue
                path.append(w)
                owner[w] = i + 1
                solve(i + 1)
                owner[w] = 0
                path.pop()
            elif not used[w] and not is_terminal[w]:
                if simple and not chordless(w, v, i + 1):
                    continue
                used[w] = True
                owner[w] = i + 1
                n_used[0] += 1
                path.append(w)
                extend(i, w, path)
                path.pop()
                n_used[0] -= 1
                owner[w] = 0
                used[w] = False

    if k == 0:
        return [[]] if (not require_cover or n == 0) else []
    solve(0)
    return results


