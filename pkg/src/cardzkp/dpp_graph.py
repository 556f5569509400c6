"""Instances of the undirected and directed k vertex-disjoint paths problems.

Vertices are the integers ``1..n_vertices``. Pair ``x`` (1-indexed) joins
``pairs[x - 1] = (s_x, t_x)``. For directed instances the degree of a vertex
is indegree plus outdegree, and colorings ignore arc direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import FormatError, InstanceError
from .numberlink import _int_token

GraphPaths = dict[int, tuple[int, ...]]


@dataclass(frozen=True)
class DppInstance:
    directed: bool
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        n = self.n_vertices
        if n < 1:
            raise InstanceError("a graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceError(f"edge ({u}, {v}) uses a vertex outside 1..{n}")
            if u == v:
                raise InstanceError(f"self-loop at {u}")
            key = (u, v) if self.directed else (min(u, v), max(u, v))
            if key in seen:
                raise InstanceError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        terms = set()
        for s, t in self.pairs:
            if not (1 <= s <= n and 1 <= t <= n):
                raise InstanceError(f"terminal pair ({s}, {t}) outside 1..{n}")
            if s == t:
                raise InstanceError(f"pair ({s}, {t}) has identical endpoints")
            if s in terms or t in terms:
                raise InstanceError("terminal vertices must be distinct across pairs")
            terms.update((s, t))

    @property
    def k(self) -> int:
        return len(self.pairs)

    @cached_property
    def out_neighbors(self) -> dict[int, tuple[int, ...]]:
        out = {v: [] for v in range(1, self.n_vertices + 1)}
        for u, v in self.edges:
            out[u].append(v)
            if not self.directed:
                out[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in out.items()}

    @cached_property
    def in_neighbors(self) -> dict[int, tuple[int, ...]]:
        if not self.directed:
            return self.out_neighbors
        inn = {v: [] for v in range(1, self.n_vertices + 1)}
        for u, v in self.edges:
            inn[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in inn.items()}

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        """Direction-blind neighbors in ascending id order."""
        und = {v: set() for v in range(1, self.n_vertices + 1)}
        for u, v in self.edges:
            und[u].add(v)
            und[v].add(u)
        return {v: tuple(sorted(ns)) for v, ns in und.items()}

    @cached_property
    def degree(self) -> dict[int, int]:
        deg = {v: 0 for v in range(1, self.n_vertices + 1)}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def d(self) -> int:
        return max(self.degree.values(), default=0)

    @cached_property
    def terminal_index(self) -> dict[int, int]:
        """Terminal vertex -> its pair number."""
        out = {}
        for x, (s, t) in enumerate(self.pairs, start=1):
            out[s] = x
            out[t] = x
        return out

    @cached_property
    def sources(self) -> frozenset[int]:
        return frozenset(s for s, _ in self.pairs)

    @cached_property
    def sinks(self) -> frozenset[int]:
        return frozenset(t for _, t in self.pairs)

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out_neighbors[u]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]


Coloring = dict[int, int]
Labeling = dict[int, int]


# -- text format --------------------------------------------------------------

def parse_graph(text: str) -> DppInstance:
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise FormatError("empty graph file", 1)
    no, head = lines[0]
    if len(head) != 4 or head[0] not in ("directed", "undirected"):
        raise FormatError("header must be 'directed|undirected |V| |E| k'", no)
    directed = head[0] == "directed"
    nv, ne, k = (_int_token(t, no, "in the header") for t in head[1:])
    body = lines[1:]
    if len(body) != ne + k:
        raise FormatError(f"expected {ne} edge lines and {k} pair lines, found {len(body)} lines",
                          body[-1][0] if body else no)
    edges, pairs = [], []
    for idx, (no, toks) in enumerate(body):
        if len(toks) != 2:
            raise FormatError("expected two vertex ids", no)
        u, v = (_int_token(t, no, "vertex id") for t in toks)
        (edges if idx < ne else pairs).append((u, v))
    return DppInstance(directed, nv, tuple(edges), tuple(pairs))


def serialize_graph(inst: DppInstance) -> str:
    kind = "directed" if inst.directed else "undirected"
    out = [f"{kind} {inst.n_vertices} {len(inst.edges)} {inst.k}"]
    out += [f"{u} {v}" for u, v in inst.edges]
    out += [f"{s} {t}" for s, t in inst.pairs]
    return "\n".join(out) + "\n"


def parse_graph_solution(text: str) -> GraphPaths:
    paths: GraphPaths = {}
    for no, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        if ":" not in ln:
            raise FormatError("expected 'x: v1 v2 ...'", no)
        head, rest = ln.split(":", 1)
        x = _int_token(head.strip(), no, "path number")
        if x in paths:
            raise FormatError(f"number {x} listed twice", no)
        paths[x] = tuple(_int_token(t, no, "vertex id") for t in rest.split())
    return paths


def serialize_graph_solution(paths: GraphPaths) -> str:
    return "".join(f"{x}: " + " ".join(map(str, paths[x])) + "\n" for x in sorted(paths))


def parse_labeling(text: str) -> Labeling:
    """Whitespace-separated labels of vertices 1..|V| in order."""
    toks = text.split()
    return {v: _int_token(t, 1, "label") for v, t in enumerate(toks, start=1)}


def serialize_labeling(labeling: Labeling) -> str:
    return " ".join(str(labeling[v]) for v in sorted(labeling)) + "\n"


# -- coloring and paths -------------------------------------------------------

def greedy_coloring(inst: DppInstance) -> Coloring:
    """Ascending-id greedy coloring with the lowest free color; at most d+1 colors."""
    color: Coloring = {}
    for v in range(1, inst.n_vertices + 1):
        taken = {color[u] for u in inst.neighbors[v] if u in color}
        c = 1
        while c in taken:
            c += 1
        color[v] = c
    return color


def validate_graph_paths(inst: DppInstance, paths: GraphPaths) -> None:
    if set(paths) != set(range(1, inst.k + 1)):
        raise InstanceError(f"paths given for {sorted(paths)}, instance has pairs 1..{inst.k}")
    seen: set[int] = set()
    for x, path in paths.items():
        s, t = inst.pairs[x - 1]
        if len(path) < 2:
            raise InstanceError(f"path {x} is shorter than two vertices")
        ends_ok = (path[0], path[-1]) == (s, t) if inst.directed else {path[0], path[-1]} == {s, t}
        if not ends_ok:
            raise InstanceError(f"path {x} does not join {s} and {t}")
        for u, v in zip(path, path[1:]):
            if not inst.has_arc(u, v):
                raise InstanceError(f"path {x} uses missing edge ({u}, {v})")
        for v in path:
            if v in seen:
                raise InstanceError(f"vertex {v} is used twice")
            seen.add(v)
        for v in path[1:-1]:
            if v in inst.terminal_index:
                raise InstanceError(f"path {x} runs through terminal {v}")


def is_simple_graph_path(inst: DppInstance, path) -> bool:
    """No arc in either direction between non-consecutive path vertices."""
    for i in range(len(path)):
        for j in range(i + 2, len(path)):
            if inst.adjacent(path[i], path[j]):
                return False
    return True


def has_back_arc(inst: DppInstance, path) -> bool:
    """Any arc from a later path vertex to an earlier one (consecutive pairs included)."""
    for i in range(len(path)):
        for j in range(i + 1, len(path)):
            if inst.has_arc(path[j], path[i]):
                return True
    return False


def simplify_graph_paths(paths: GraphPaths, inst: DppInstance) -> GraphPaths:
    """Shortcut chords v_i -> v_j (j > i+1) until none remain.

    Directed paths can only be shortcut along forward arcs; a backward chord
    survives and leaves the path non-simple (see :func:`is_simple_graph_path`).
    """
    validate_graph_paths(inst, paths)
    out = {}
    for x, path in paths.items():
        path = tuple(path)
        changed = True
        while changed:
            changed = False
            i = 0
            while i < len(path):
                far = None
                for j in range(len(path) - 1, i + 1, -1):
                    if inst.has_arc(path[i], path[j]):
                        far = j
                        break
                if far is not None:
                    path = path[: i + 1] + path[far:]
                    changed = True
                i += 1
        out[x] = path
    return out


def fill_from_paths_graph(inst: DppInstance, paths: GraphPaths, coloring: Coloring) -> Labeling:
    """Path vertices get their pair number; an uncovered vertex v gets k + color(v)."""
    validate_graph_paths(inst, paths)
    for x, path in paths.items():
        if not is_simple_graph_path(inst, path):
            raise InstanceError(f"path {x} is not simple")
    label: Labeling = {}
    for x, path in paths.items():
        for v in path:
            label[v] = x
    for v in range(1, inst.n_vertices + 1):
        if v not in label:
            label[v] = inst.k + coloring[v]
    return label


def check_labeling(inst: DppInstance, labeling: Labeling, width: int) -> None:
    if set(labeling) != set(range(1, inst.n_vertices + 1)):
        raise InstanceError("a labeling must cover exactly the vertices 1..|V|")
    for v, x in labeling.items():
        if not 1 <= x <= width:
            raise InstanceError(f"label {x} on vertex {v} outside 1..{width}")
    for v, x in inst.terminal_index.items():
        if labeling[v] != x:
            raise InstanceError(f"terminal {v} of pair {x} carries label {labeling[v]}")


def extract_graph_paths(inst: DppInstance, labeling: Labeling) -> GraphPaths | None:
    """Follow same-label chains from each s_x (arcs forward when directed)."""
    out: GraphPaths = {}
    for x, (s, t) in enumerate(inst.pairs, start=1):
        path = [s]
        seen = {s}
        prev = None
        cur = s
        while True:
            nxt = [u for u in inst.out_neighbors[cur] if labeling[u] == x and u != prev]
            if inst.directed:
                nxt = [u for u in inst.out_neighbors[cur] if labeling[u] == x]
            if len(nxt) != 1:
                return None
            step = nxt[0]
            if step in seen:
                return None
            path.append(step)
            seen.add(step)
            if step == t:
                break
            if step in inst.terminal_index:
                return None
            prev, cur = cur, step
        out[x] = tuple(path)
    return out


# -- generation -------------------------------------------------------------

def generate_dpp(n_vertices: int, k: int, directed: bool, rng, *, extra_edge_prob: float = 0.3,
                 attempts: int = 500) -> tuple[DppInstance, GraphPaths]:
    """Random solvable instance: disjoint planted paths plus random extra edges.

    Directed instances are redrawn until no planted path, after forward
    shortcutting, carries a backward arc.
    """
    if 2 * k > n_vertices:
        raise InstanceError("not enough vertices for the requested pairs")
    for _ in range(attempts):
        order = rng.permutation(n_vertices)
        verts = [v + 1 for v in order]
        spare = n_vertices - 2 * k
        lengths = [0] * k
        for _i in range(spare):
            if rng.randbelow(2):
                lengths[rng.randbelow(k)] += 1
        paths: GraphPaths = {}
        pos = 0
        for x in range(1, k + 1):
            size = 2 + lengths[x - 1]
            paths[x] = tuple(verts[pos : pos + size])
            pos += size
        edges = set()
        for p in paths.values():
            for u, v in zip(p, p[1:]):
                edges.add((u, v))
        for u in range(1, n_vertices + 1):
            for v in range(1, n_vertices + 1):
                if u == v or (not directed and u > v):
                    continue
                key = (u, v)
                if key in edges or (not directed and (v, u) in edges):
                    continue
                if rng.randbelow(1000) < int(extra_edge_prob * 1000):
                    edges.add(key)
        inst = DppInstance(directed, n_vertices, tuple(sorted(edges)),
                           tuple((p[0], p[-1]) for _, p in sorted(paths.items())))
        simple = simplify_graph_paths(paths, inst)
        if all(is_simple_graph_path(inst, p) for p in simple.values()):
            if not directed or not any(has_back_arc(inst, p) for p in simple.values()):
                return inst, simple
    raise InstanceError("could not generate an instance with simple planted paths")
