"""Labelled graphs and digraphs on at most 16 vertices.

Vertices are ``0..n-1``.  Adjacency is kept as one integer bitmask per
vertex: bit ``j`` of ``rows[i]`` is set when ``i -> j`` (or ``i -- j`` for
undirected graphs, where the rows are symmetric).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

MAX_N = 16


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class LabelledGraph:
    """A simple graph or digraph with vertex set ``0..n-1``."""

    n: int
    rows: tuple[int, ...]
    directed: bool = False

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...], directed: bool) -> "LabelledGraph":
        """Build without validation; callers guarantee a well-formed graph."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        object.__setattr__(g, "directed", directed)
        return g

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise ValueError(f"n={self.n} outside 0..{MAX_N}")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full or (r >> i) & 1:
                raise ValueError(f"bad adjacency row {i}: {r:#x}")
        if not self.directed:
            for i, r in enumerate(self.rows):
                for j in bits(r):
                    if not (self.rows[j] >> i) & 1:
                        raise ValueError(f"undirected adjacency not symmetric at ({i},{j})")

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """In-neighbour masks (equal to ``rows`` for undirected graphs)."""
        if not self.directed:
            return self.rows
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return tuple(cols)

    def has_arc(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in bits(r):
                a[i, j] = 1
        return a

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(i, j)`` with ``i < j``, or all arcs if directed."""
        if self.directed:
            return [(i, j) for i, r in enumerate(self.rows) for j in bits(r)]
        return [(i, j) for i, r in enumerate(self.rows) for j in bits(r) if i < j]

    def __repr__(self):
        kind = "DiGraph" if self.directed else "Graph"
        return f"{kind}(n={self.n}, edges={self.edges()})"


# constructors


def from_matrix(a: Sequence[Sequence[int]] | np.ndarray, directed: bool | None = None) -> LabelledGraph:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("adjacency matrix must be square")
    if directed is None:
        directed = not np.array_equal(a, a.T)
    rows = tuple(int(sum(1 << j for j in range(n) if a[i, j])) for i in range(n))
    return LabelledGraph(n, rows, directed)


def from_edges(n: int, edges: Iterable[tuple[int, int]], directed: bool = False) -> LabelledGraph:
    rows = [0] * n
    for i, j in edges:
        rows[i] |= 1 << j
        if not directed:
            rows[j] |= 1 << i
    return LabelledGraph(n, tuple(rows), directed)


def empty_graph(n: int, directed: bool = False) -> LabelledGraph:
    return LabelledGraph(n, (0,) * n, directed)


def complete_graph(n: int) -> LabelledGraph:
    full = (1 << n) - 1
    return LabelledGraph(n, tuple(full & ~(1 << i) for i in range(n)))


def path_graph(n: int) -> LabelledGraph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> LabelledGraph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> LabelledGraph:
    """``K_{1,leaves}`` with centre 0."""
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def directed_cycle(n: int) -> LabelledGraph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)], directed=True)


def transitive_tournament(n: int) -> LabelledGraph:
    """Tournament with ``i -> j`` whenever ``i < j``."""
    return from_edges(n, [(i, j) for i, j in combinations(range(n), 2)], directed=True)


# basic operations


def delete_vertex(g: LabelledGraph, v: int) -> LabelledGraph:
    """The labelled card ``g - v``; vertices above ``v`` shift down by one."""
    if g.n <= 1:
        raise ValueError("no card of K1")
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} not in graph of order {g.n}")
    low = (1 << v) - 1
    rows = []
    for i, r in enumerate(g.rows):
        if i != v:
            rows.append((r & low) | ((r >> (v + 1)) << v))
    return LabelledGraph(g.n - 1, tuple(rows), g.directed)


def extend(g: LabelledGraph, out_set: int, in_set: int = 0) -> LabelledGraph:
    """Append vertex ``n`` joined to ``out_set``.

    For digraphs the new vertex gets arcs ``n -> out_set`` and ``in_set -> n``;
    ``in_set`` is ignored for undirected graphs.
    """
    n = g.n
    if n + 1 > MAX_N:
        raise ValueError(f"capacity exceeded: cannot extend beyond {MAX_N} vertices")
    full = (1 << n) - 1
    if out_set & ~full or in_set & ~full:
        raise ValueError("extension sets must be subsets of the vertex set")
    back = out_set if not g.directed else in_set
    rows = tuple(r | (((back >> i) & 1) << n) for i, r in enumerate(g.rows)) + (out_set,)
    return LabelledGraph(n + 1, rows, g.directed)


def relabel(g: LabelledGraph, perm: Sequence[int]) -> LabelledGraph:
    """``g^perm``: vertex ``i`` becomes ``perm[i]``."""
    rows = [0] * g.n
    for i, r in enumerate(g.rows):
        m = 0
        for j in bits(r):
            m |= 1 << perm[j]
        rows[perm[i]] = m
    return LabelledGraph(g.n, tuple(rows), g.directed)


def converse(g: LabelledGraph) -> LabelledGraph:
    """Reverse every arc of a digraph."""
    if not g.directed:
        raise ValueError("converse is defined for digraphs only")
    return LabelledGraph(g.n, g.cols, True)


def complement(g: LabelledGraph) -> LabelledGraph:
    full = (1 << g.n) - 1
    return LabelledGraph(g.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(g.rows)), g.directed)


def induced_subgraph(g: LabelledGraph, keep: Sequence[int]) -> LabelledGraph:
    keep = list(keep)
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        m = 0
        for j in bits(g.rows[v]):
            if j in pos:
                m |= 1 << pos[j]
        rows.append(m)
    return LabelledGraph(len(keep), tuple(rows), g.directed)


# counting


def count_edges(g: LabelledGraph) -> int:
    """Number of edges, or arcs for a digraph (a 2-cycle counts twice)."""
    total = sum(r.bit_count() for r in g.rows)
    return total if g.directed else total // 2


def vertex_triangles(g: LabelledGraph) -> list[int]:
    """Per-vertex triangle counts; directed 3-cycles through each vertex for digraphs."""
    rows, cols = g.rows, g.cols
    if not g.directed:
        return [sum((rows[j] & r).bit_count() for j in bits(r)) // 2 for r in rows]
    # cycles u -> a -> b -> u
    return [sum((rows[a] & cols[u]).bit_count() for a in bits(rows[u])) for u in range(g.n)]


def count_triangles(g: LabelledGraph) -> int:
    """Triangles (undirected) or directed 3-cycles (digraph)."""
    return sum(vertex_triangles(g)) // 3


def count_two_cycles(g: LabelledGraph) -> int:
    return sum((r & c).bit_count() for r, c in zip(g.rows, g.cols)) // 2


def degrees(g: LabelledGraph) -> list[int]:
    return [r.bit_count() for r in g.rows]


def degree_sequence(g: LabelledGraph) -> tuple:
    """Non-increasing degree sequence; ``(out, in)`` pairs for digraphs."""
    if g.directed:
        return tuple(sorted(((r.bit_count(), c.bit_count()) for r, c in zip(g.rows, g.cols)), reverse=True))
    return tuple(sorted(degrees(g), reverse=True))


def is_tournament(g: LabelledGraph) -> bool:
    if not g.directed:
        return False
    full = (1 << g.n) - 1
    return all(r & c == 0 and (r | c) == full & ~(1 << i) for i, (r, c) in enumerate(zip(g.rows, g.cols)))


def is_oriented(g: LabelledGraph) -> bool:
    """No 2-cycles (tournaments included)."""
    return g.directed and all(r & c == 0 for r, c in zip(g.rows, g.cols))


def is_bipartite(g: LabelledGraph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in bits(g.rows[u] | g.cols[u]):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def girth(g: LabelledGraph) -> float:
    """Length of a shortest cycle of an undirected graph; ``inf`` for forests."""
    if g.directed:
        raise ValueError("girth is defined here for undirected graphs only")
    best = float("inf")
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in bits(g.rows[u]):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w:
                        best = min(best, dist[u] + dist[w] + 1)
            frontier = nxt
    return best


def has_cycle_of_length(g: LabelledGraph, k: int) -> bool:
    """Whether an undirected graph contains a (not necessarily induced) ``k``-cycle."""
    n, rows = g.n, g.rows

    def walk(start, u, seen, length):
        if length == k:
            return bool((rows[u] >> start) & 1)
        for w in bits(rows[u] & ~seen):
            if w > start and walk(start, w, seen | (1 << w), length + 1):
                return True
        return False

    return any(walk(s, s, 1 << s, 1) for s in range(n))


# hereditary classes

UNDIRECTED_KINDS = (
    "all",
    "triangle-free",
    "girth5",
    "no-c4",
    "bipartite",
    "bipartite-girth6",
    "maxdeg",
    "degrange",
)
DIRECTED_KINDS = ("digraphs", "oriented", "tournament", "score-range")

_ALIASES = {
    "graphs": "all",
    "tf": "triangle-free",
    "girth>=5": "girth5",
    "c4-free": "no-c4",
    "bipartite-girth>=6": "bipartite-girth6",
    "digraph-all": "digraphs",
    "tournaments": "tournament",
    "semiregular": "score-range",
}


@dataclass(frozen=True)
class ClassSpec:
    """A class of graphs or digraphs closed under isomorphism.

    ``maxdeg`` takes ``(k,)``, ``degrange`` takes ``(lo, hi)`` and
    ``score-range`` takes ``(lo, hi)``.  The last two are not hereditary:
    generation runs in their hereditary envelope (``maxdeg=hi`` and
    ``tournament``) and the lower bounds act only as a final filter.
    """

    kind: str = "all"
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in UNDIRECTED_KINDS + DIRECTED_KINDS:
            raise ValueError(f"unknown class {self.kind!r}")
        want = {"maxdeg": 1, "degrange": 2, "score-range": 2}.get(self.kind, 0)
        if len(self.params) != want:
            raise ValueError(f"class {self.kind!r} takes {want} parameter(s), got {self.params}")
        if want == 2 and self.params[0] > self.params[1]:
            raise ValueError(f"empty range {self.params}")

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        """Parse ``name`` or ``name=p1,p2`` (e.g. ``maxdeg=3``, ``score-range=6,7``)."""
        name, _, rest = text.strip().partition("=")
        name = _ALIASES.get(name, name)
        params = tuple(int(p) for p in rest.split(",")) if rest else ()
        return cls(name, params)

    def __str__(self):
        if self.params:
            return f"{self.kind}={','.join(map(str, self.params))}"
        return self.kind

    @property
    def directed(self) -> bool:
        return self.kind in DIRECTED_KINDS

    @property
    def extension_kind(self) -> str:
        """Shape of the new-vertex connection space: graph, digraph, oriented or tournament."""
        if not self.directed:
            return "graph"
        if self.kind == "digraphs":
            return "digraph"
        if self.kind == "oriented":
            return "oriented"
        return "tournament"

    @property
    def hereditary(self) -> bool:
        return self.kind not in ("degrange", "score-range") or self.params[0] == 0

    def envelope(self) -> "ClassSpec":
        """Smallest supported hereditary class containing this one."""
        if self.kind == "degrange":
            return ClassSpec("maxdeg", (self.params[1],))
        if self.kind == "score-range":
            return ClassSpec("tournament")
        return self


def _in_envelope(g: LabelledGraph, spec: ClassSpec) -> bool:
    kind = spec.kind
    if g.directed != spec.directed:
        return False
    if kind in ("all", "digraphs"):
        return True
    if kind == "oriented":
        return is_oriented(g)
    if kind in ("tournament", "score-range"):
        return is_tournament(g)
    if kind == "triangle-free":
        return count_triangles(g) == 0
    if kind == "girth5":
        return girth(g) >= 5
    if kind == "no-c4":
        return not has_cycle_of_length(g, 4)
    if kind == "bipartite":
        return is_bipartite(g)
    if kind == "bipartite-girth6":
        return is_bipartite(g) and girth(g) >= 6
    if kind == "maxdeg":
        return max(degrees(g), default=0) <= spec.params[0]
    if kind == "degrange":
        return max(degrees(g), default=0) <= spec.params[1]
    raise AssertionError(kind)


def in_class(g: LabelledGraph, spec: ClassSpec) -> bool:
    """Membership test using the textbook definitions (girth, bipartiteness, scores...)."""
    if not _in_envelope(g, spec):
        return False
    if spec.kind == "degrange":
        return min(degrees(g), default=0) >= spec.params[0]
    if spec.kind == "score-range":
        lo, hi = spec.params
        return all(lo <= d <= hi for d in degrees(g))
    return True


ALL_GRAPHS = ClassSpec("all")
DIGRAPHS = ClassSpec("digraphs")
ORIENTED = ClassSpec("oriented")
TOURNAMENTS = ClassSpec("tournament")
