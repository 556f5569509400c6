# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; mirrors ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

BACKEND = "cython"


def permute_lines(int[:, ::1] grid, p, q):
    cdef Py_ssize_t rows = grid.shape[0], cols = grid.shape[1]
    cdef Py_ssize_t np_ = len(p), nq = len(q)
    cdef Py_ssize_t r, c, t
    cdef int[:, ::1] tmp
    if np_:
        tmp = np.empty((np_, cols), dtype=np.int32)
        for r in range(np_):
            for c in range(cols):
                tmp[r, c] = grid[2 + r, c]
        for r in range(np_):
            t = <Py_ssize_t>p[r]
            for c in range(cols):
                grid[2 + t, c] = tmp[r, c]
    if nq:
        tmp = np.empty((rows, nq), dtype=np.int32)
        for r in range(rows):
            for c in range(nq):
                tmp[r, c] = grid[r, 1 + c]
        for c in range(nq):
            t = <Py_ssize_t>q[c]
            for r in range(rows):
                grid[r, 1 + t] = tmp[r, c]


def count_face_up(int[:, ::1] grid, unsigned char[::1] up):
    cdef Py_ssize_t r, c
    cdef int uid, total = 0
    for r in range(grid.shape[0]):
        for c in range(grid.shape[1]):
            uid = grid[r, c]
            if uid >= 0 and up[uid]:
                total += 1
    return total


def set_orientation(int[:, ::1] grid, unsigned char[::1] up,
                    Py_ssize_t r0, Py_ssize_t r1, Py_ssize_t c0, Py_ssize_t c1,
                    unsigned char value):
    cdef Py_ssize_t r, c
    cdef int uid
    for r in range(r0, r1):
        for c in range(c0, c1):
            uid = grid[r, c]
            if uid >= 0:
                up[uid] = value


def heart_positions(int[:, ::1] grid, signed char[::1] kind,
                    Py_ssize_t r0, Py_ssize_t r1, Py_ssize_t c0, Py_ssize_t c1):
    cdef Py_ssize_t r, c
    cdef int uid
    out = []
    for r in range(r0, r1):
        for c in range(c0, c1):
            uid = grid[r, c]
            if uid >= 0 and kind[uid] == 1:
                out.append((r, c))
    return out


def mark_values(int[:, ::1] grid, int[::1] mark,
                Py_ssize_t r0, Py_ssize_t r1, Py_ssize_t c0, Py_ssize_t c1):
    cdef Py_ssize_t r, c
    cdef int uid
    out = []
    for r in range(r0, r1):
        for c in range(c0, c1):
            uid = grid[r, c]
            if uid >= 0:
                out.append(mark[uid])
    return out


cdef struct Search:
    int n
    int k
    int *step_ptr
    int *step_idx
    int *adj_ptr
    int *adj_idx
    int *sources
    int *targets
    int *is_terminal
    int *used
    int *owner
    int *stack
    int *path_start
    int depth
    int n_used
    bint require_cover
    bint simple
    long limit


cdef bint _chordless(Search *s, int w, int prev, int tag):
    cdef int e, u
    for e in range(s.adj_ptr[w], s.adj_ptr[w + 1]):
        u = s.adj_idx[e]
        if s.owner[u] == tag and u != prev:
            return False
    return True


cdef int _record(Search *s, list results) except -1:
    cdef int i, j, lo, hi
    system = []
    for i in range(s.k):
        lo = s.path_start[i]
        hi = s.path_start[i + 1] if i + 1 < s.k else s.depth
        system.append([s.stack[j] for j in range(lo, hi)])
    results.append(system)
    return 0


cdef int _solve(Search *s, int i, list results) except -1:
    cdef int src
    if s.limit and len(results) >= s.limit:
        return 0
    if i == s.k:
        if not s.require_cover or s.n_used == s.n:
            _record(s, results)
        return 0
    src = s.sources[i]
    s.path_start[i] = s.depth
    s.stack[s.depth] = src
    s.depth += 1
    s.owner[src] = i + 1
    _extend(s, i, src, results)
    s.owner[src] = 0
    s.depth -= 1
    return 0


cdef int _extend(Search *s, int i, int v, list results) except -1:
    cdef int e, w
    cdef int t = s.targets[i]
    for e in range(s.step_ptr[v], s.step_ptr[v + 1]):
        if s.limit and len(results) >= s.limit:
            return 0
        w = s.step_idx[e]
        if w == t:
            if s.simple and not _chordless(s, w, v, i + 1):
                continue
            s.stack[s.depth] = w
            s.depth += 1
            s.owner[w] = i + 1
            _solve(s, i + 1, results)
            s.owner[w] = 0
            s.depth -= 1
        elif not s.used[w] and not s.is_terminal[w]:
            if s.simple and not _chordless(s, w, v, i + 1):
                continue
            s.used[w] = 1
            s.owner[w] = i + 1
            s.n_used += 1
            s.stack[s.depth] = w
            s.depth += 1
            _extend(s, i, w, results)
            s.depth -= 1
            s.n_used -= 1
            s.owner[w] = 0
            s.used[w] = 0
    return 0


cdef int *_copy(values, Py_ssize_t extra=0) except NULL:
    cdef Py_ssize_t i, size = len(values)
    cdef int *buf = <int *>malloc((size + extra + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    for i in range(size):
        buf[i] = <int>values[i]
    for i in range(size, size + extra + 1):
        buf[i] = 0
    return buf


def enumerate_path_systems(int n, step_ptr, step_idx, adj_ptr, adj_idx, sources, targets,
                           is_terminal, bint require_cover, bint simple, long limit):
    cdef Search s
    cdef int i
    if len(sources) == 0:
        return [[]] if (not require_cover or n == 0) else []
    s.n = n
    s.k = len(sources)
    s.require_cover = require_cover
    s.simple = simple
    s.limit = limit
    s.depth = 0
    s.n_used = 2 * s.k
    s.step_ptr = s.step_idx = s.adj_ptr = s.adj_idx = NULL
    s.sources = s.targets = s.is_terminal = NULL
    s.used = s.owner = s.stack = s.path_start = NULL
    results = []
    try:
        s.step_ptr = _copy(step_ptr)
        s.step_idx = _copy(step_idx)
        s.adj_ptr = _copy(adj_ptr)
        s.adj_idx = _copy(adj_idx)
        s.sources = _copy(sources)
        s.targets = _copy(targets)
        s.is_terminal = _copy(is_terminal)
        s.used = _copy([0] * n)
        s.owner = _copy([0] * n)
        s.stack = _copy([0] * (n + 1))
        s.path_start = _copy([0] * (s.k + 1))
        for i in range(s.k):
            s.used[s.sources[i]] = 1
            s.used[s.targets[i]] = 1
        _solve(&s, 0, results)
    finally:
        free(s.step_ptr); free(s.step_idx); free(s.adj_ptr); free(s.adj_idx)
        free(s.sources); free(s.targets); free(s.is_terminal)
        free(s.used); free(s.owner); free(s.stack); free(s.path_start)
    return results
