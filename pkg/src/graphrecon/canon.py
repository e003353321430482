"""Canonical labelling, automorphism groups and orbit computations.

``canonical`` runs ordered partition refinement with individualisation and
keeps the leaf whose relabelled adjacency matrix is lexicographically
greatest.  Leaves with equal matrices give automorphisms, which prune sibling
subtrees and, with the usual jump back to the common ancestor, generate the
whole automorphism group.

``brute_canonical`` is the slow reference: the minimum adjacency string over
all ``n!`` relabellings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .graphs import LabelledGraph, bits, relabel

BRUTE_MAX_N = 8
_NO_JUMP = 1 << 30


@dataclass(frozen=True)
class CanonicalResult:
    """Canonical code, labelling and automorphism data of a labelled graph.

    ``relabelling[v]`` is the canonical label of vertex ``v``; generators are
    tuples ``p`` with ``p[v]`` the image of ``v``; ``orbit_ids[v]`` is the
    least vertex in the orbit of ``v``.
    """

    canon_code: bytes
    relabelling: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    orbit_ids: tuple[int, ...]

    @property
    def vertex_orbits(self) -> list[frozenset[int]]:
        groups: dict[int, set[int]] = {}
        for v, o in enumerate(self.orbit_ids):
            groups.setdefault(o, set()).add(v)
        return [frozenset(groups[o]) for o in sorted(groups)]

    def orbit(self, v: int) -> frozenset[int]:
        o = self.orbit_ids[v]
        return frozenset(u for u, x in enumerate(self.orbit_ids) if x == o)

    def last_vertex(self) -> int:
        """The vertex that receives the highest canonical label."""
        return self.relabelling.index(len(self.relabelling) - 1)


def encode_code(n: int, directed: bool, enc: int) -> bytes:
    return bytes((n, int(directed))) + enc.to_bytes((n * n + 7) // 8, "big")


def graph_from_code(code: bytes) -> LabelledGraph:
    """Rebuild the canonical form from a canonical code."""
    n, directed = code[0], bool(code[1])
    enc = int.from_bytes(code[2:], "big")
    full = (1 << n) - 1
    rows = []
    for i in range(n):
        shift = n * (n - 1 - i)
        r = (enc >> shift) & full
        # bit (n-1-j) of the row block holds column j
        rows.append(sum(1 << j for j in range(n) if (r >> (n - 1 - j)) & 1))
    return LabelledGraph(n, tuple(rows), directed)


def matrix_code(g: LabelledGraph, order: Sequence[int] | None = None) -> int:
    """Adjacency matrix of ``g`` listed in ``order`` as a row-major integer, first entry most significant."""
    n = g.n
    if order is None:
        order = range(n)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    enc = 0
    for v in order:
        crow = 0
        for u in bits(g.rows[v]):
            crow |= 1 << (n - 1 - pos[u])
        enc = (enc << n) | crow
    return enc


def vertex_keys(g: LabelledGraph) -> list[int]:
    """Isomorphism-invariant vertex colours used to seed refinement.

    Undirected: ``(degree, triangles)``; directed: ``(out, in, 3-cycles)``,
    packed into one integer each.
    """
    rows, cols = g.rows, g.cols
    if not g.directed:
        return [
            (r.bit_count() << 8) | (sum((rows[j] & r).bit_count() for j in bits(r)) >> 1)
            for r in rows
        ]
    keys = []
    for u in range(g.n):
        r, c = rows[u], cols[u]
        tri = sum((rows[a] & c).bit_count() for a in bits(r))
        keys.append((r.bit_count() << 16) | (c.bit_count() << 8) | tri)
    return keys


def _union_orbits(n: int, gens: Sequence[Sequence[int]]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in gens:
        for v in range(n):
            a, b = find(v), find(p[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, g: LabelledGraph):
        self.n = g.n
        self.directed = g.directed
        self.rows = g.rows
        self.cols = g.cols
        self.rowbits = [bits(r) for r in g.rows]
        self.gens: list[tuple[int, ...]] = []
        self.first = None
        self.best = None

    def refine(self, cells):
        n, rows, cols, directed = self.n, self.rows, self.cols, self.directed
        while len(cells) < n:
            masks = []
            for cell in cells:
                m = 0
                for v in cell:
                    m |= 1 << v
                masks.append(m)
            new = []
            for cell in cells:
                if len(cell) == 1:
                    new.append(cell)
                    continue
                groups: dict[tuple, list[int]] = {}
                for v in cell:
                    r = rows[v]
                    if directed:
                        c = cols[v]
                        sig = tuple([(r & m).bit_count() for m in masks] + [(c & m).bit_count() for m in masks])
                    else:
                        sig = tuple([(r & m).bit_count() for m in masks])
                    groups.setdefault(sig, []).append(v)
                if len(groups) == 1:
                    new.append(cell)
                else:
                    new.extend(groups[s] for s in sorted(groups))
            if len(new) == len(cells):
                break
            cells = new
        return cells

    def leaf(self, cells, path):
        n = self.n
        order = [c[0] for c in cells]
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        enc = 0
        rowbits = self.rowbits
        for v in order:
            crow = 0
            for u in rowbits[v]:
                crow |= 1 << (n - 1 - pos[u])
            enc = (enc << n) | crow
        if self.first is None:
            self.first = self.best = (enc, order, path)
            return _NO_JUMP
        for ref in (self.first, self.best):
            if enc == ref[0]:
                aut = [0] * n
                for a, b in zip(ref[1], order):
                    aut[a] = b
                self.gens.append(tuple(aut))
                c = 0
                for a, b in zip(ref[2], path):
                    if a != b:
                        break
                    c += 1
                return c
        if enc > self.best[0]:
            self.best = (enc, order, path)
        return _NO_JUMP

    def dfs(self, cells, path):
        cells = self.refine(cells)
        n = self.n
        if len(cells) == n:
            return self.leaf(cells, path)
        t, size = -1, n + 1
        for i, c in enumerate(cells):
            if 1 < len(c) < size:
                t, size = i, len(c)
        cell = cells[t]
        depth = len(path)
        tried: list[int] = []
        orb = None
        orb_gens = -1
        for v in cell:
            if tried and self.gens:
                if orb_gens != len(self.gens):
                    fixing = [p for p in self.gens if all(p[x] == x for x in path)]
                    orb = _union_orbits(n, fixing) if fixing else None
                    orb_gens = len(self.gens)
                if orb is not None and any(orb[v] == orb[u] for u in tried):
                    continue
            tried.append(v)
            child = cells[:t] + [[v], [u for u in cell if u != v]] + cells[t + 1:]
            ret = self.dfs(child, path + [v])
            if ret < depth:
                return ret
        return _NO_JUMP


def initial_cells(keys: Sequence[int]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for v, k in enumerate(keys):
        groups.setdefault(k, []).append(v)
    return [groups[k] for k in sorted(groups)]


def canonical(g: LabelledGraph) -> CanonicalResult:
    """Canonical labelling of ``g`` with automorphism generators and vertex orbits.

    Refinement is seeded with ``vertex_keys`` in increasing order, so the
    vertex given the last canonical label always has the largest key.
    """
    n = g.n
    if n <= 1:
        return CanonicalResult(encode_code(n, g.directed, 0), tuple(range(n)), (), tuple(range(n)))
    s = _Search(g)
    s.dfs(initial_cells(vertex_keys(g)), [])
    enc, order, _ = s.best
    relabelling = [0] * n
    for i, v in enumerate(order):
        relabelling[v] = i
    return CanonicalResult(
        encode_code(n, g.directed, enc),
        tuple(relabelling),
        tuple(s.gens),
        tuple(_union_orbits(n, s.gens)),
    )


def canonical_form(g: LabelledGraph, result: CanonicalResult | None = None) -> LabelledGraph:
    if result is None:
        result = canonical(g)
    return relabel(g, result.relabelling)


def canon_code(g: LabelledGraph) -> bytes:
    return canonical(g).canon_code


def is_isomorphic(g: LabelledGraph, h: LabelledGraph) -> bool:
    return g.n == h.n and g.directed == h.directed and canon_code(g) == canon_code(h)


def group_elements(gens: Sequence[Sequence[int]], n: int) -> set[tuple[int, ...]]:
    """Close a generating set into the full group (only sensible for small groups)."""
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = tuple(h[g[v]] for v in range(n))
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return seen


# brute force reference


@lru_cache(maxsize=None)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


def brute_canonical(g: LabelledGraph) -> CanonicalResult:
    """Canonical form by explicit minimisation over every relabelling (``n <= 8``).

    Generators returned are the whole automorphism group.
    """
    n = g.n
    if n > BRUTE_MAX_N:
        raise ValueError(f"brute force canonical form refused for n={n} > {BRUTE_MAX_N}")
    if n <= 1:
        return CanonicalResult(encode_code(n, g.directed, 0), tuple(range(n)), (), tuple(range(n)))
    perms = _all_perms(n)
    inv = np.argsort(perms, axis=1)
    a = g.matrix().astype(np.uint64)
    # permuted[p][i, j] = a[inv[p][i], inv[p][j]] is g relabelled by perms[p]
    permuted = a[inv[:, :, None], inv[:, None, :]].reshape(len(perms), n * n)
    weights = np.left_shift(np.uint64(1), np.arange(n * n - 1, -1, -1, dtype=np.uint64))
    codes = (permuted * weights).sum(axis=1, dtype=np.uint64)
    best = codes.min()
    hits = np.flatnonzero(codes == best)
    p0 = perms[hits[0]]
    p0_inv = np.argsort(p0)
    # g^ph == g^p0 for every minimiser ph, so v -> p0^-1(ph(v)) fixes g
    auts = [tuple(int(p0_inv[perms[h][v]]) for v in range(n)) for h in hits]
    return CanonicalResult(
        encode_code(n, g.directed, int(best)),
        tuple(int(x) for x in p0),
        tuple(auts),
        tuple(_union_orbits(n, auts)),
    )


# orbits of Aut(G) on new-vertex connections


@dataclass(frozen=True)
class ExtensionSpace:
    """All ways of joining a new vertex to a ``k``-vertex graph, as integer codes.

    ``graph`` and ``tournament`` spaces are indexed by the out-set alone
    (``2**k`` codes); ``digraph`` and ``oriented`` by ``out | in << k``.
    """

    k: int
    kind: str
    codes: np.ndarray
    out_sets: np.ndarray
    in_sets: np.ndarray
    structurally_valid: np.ndarray
    out_members: np.ndarray
    in_members: np.ndarray

    def image(self, perm: Sequence[int]) -> np.ndarray:
        """Code of the image of every code under the vertex permutation ``perm``."""
        k = self.k
        c = self.codes
        img = np.zeros_like(c)
        for j in range(k):
            img |= ((c >> j) & 1) << int(perm[j])
            if self.kind in ("digraph", "oriented"):
                img |= ((c >> (k + j)) & 1) << (k + int(perm[j]))
        return img


@lru_cache(maxsize=64)
def extension_space(k: int, kind: str) -> ExtensionSpace:
    full = (1 << k) - 1
    shift = np.arange(k, dtype=np.int64)
    if kind in ("graph", "tournament"):
        codes = np.arange(1 << k, dtype=np.int64)
        out = codes
        inn = np.zeros_like(codes) if kind == "graph" else full ^ codes
        valid = np.ones(len(codes), dtype=bool)
    elif kind in ("digraph", "oriented"):
        codes = np.arange(1 << (2 * k), dtype=np.int64)
        out = codes & full
        inn = codes >> k
        valid = np.ones(len(codes), dtype=bool) if kind == "digraph" else (out & inn) == 0
    else:
        raise ValueError(f"unknown extension kind {kind!r}")
    mo = ((out[:, None] >> shift) & 1).astype(np.int32)
    mi = ((inn[:, None] >> shift) & 1).astype(np.int32)
    for arr in (codes, out, inn, valid, mo, mi):
        arr.setflags(write=False)
    return ExtensionSpace(k, kind, codes, out, inn, valid, mo, mi)


def orbit_representatives(space: ExtensionSpace, generators, valid: np.ndarray | None = None) -> np.ndarray:
    """Indices into ``space.codes`` of the least element of each orbit meeting ``valid``.

    ``valid`` must be a union of orbits (any isomorphism-invariant constraint is).
    """
    if valid is None:
        valid = space.structurally_valid
    if not generators:
        return np.flatnonzero(valid)
    size = len(space.codes)
    src = np.tile(space.codes, len(generators))
    dst = np.concatenate([space.image(p) for p in generators])
    adj = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    _, labels = connected_components(adj, directed=True, connection="weak")
    least = np.full(labels.max() + 1, size, dtype=np.int64)
    np.minimum.at(least, labels, space.codes)
    is_rep = least[labels] == space.codes
    return np.flatnonzero(is_rep & valid)


def orbits_on_extensions(g: LabelledGraph, spec, result: CanonicalResult | None = None) -> list[tuple[int, int]]:
    """One ``(out_set, in_set)`` pair per orbit of ``Aut(g)`` on the extension space of ``spec``.

    Undirected graphs always report ``in_set = 0``.
    """
    kind = spec.extension_kind
    if (kind != "graph") != g.directed:
        raise ValueError(f"class {spec} does not match a {'directed' if g.directed else 'undirected'} graph")
    if result is None:
        result = canonical(g)
    space = extension_space(g.n, kind)
    idx = orbit_representatives(space, result.generators)
    return [(int(space.out_sets[i]), int(space.in_sets[i])) for i in idx]
