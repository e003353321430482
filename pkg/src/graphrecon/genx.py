"""Isomorph-free generation by canonical construction path.

Every object is grown from ``K1`` one vertex at a time.  Below the target
order a child is kept only when its new vertex lies in the orbit of the
canonically last vertex (``m_mid``), which yields exactly one graph per
isomorphism class.  At the target order the ``recon`` rule instead keeps a
child whenever deleting the new vertex leaves a card of maximal
``(edges, triangles)`` key (``m_top``).  Objects sharing a reduced deck
then always turn up as children of one common parent, so deck comparisons
can be done parent by parent.

The work for one parent is vectorised: all orbit representatives of the
new-vertex connections are scored at once with numpy and only ambiguous
children go through a full canonical labelling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .canon import CanonicalResult, canonical, extension_space, orbit_representatives
from .graphs import (
    ALL_GRAPHS,
    MAX_N,
    ClassSpec,
    LabelledGraph,
    count_edges,
    count_triangles,
    delete_vertex,
    empty_graph,
)

log = logging.getLogger(__name__)

EXACT = "exact"
RECON = "recon"


@dataclass(frozen=True, order=True)
class PreorderKey:
    """Card key compared lexicographically; directed triangles are 3-cycles."""

    edge_count: int
    triangle_count: int


def preorder_key(g: LabelledGraph) -> PreorderKey:
    return PreorderKey(count_edges(g), count_triangles(g))


@dataclass(frozen=True)
class GenConfig:
    """What to generate.

    ``split = (res, mod, depth)`` keeps only the subtrees below the nodes of
    order ``depth`` whose running index is ``res`` modulo ``mod``.
    """

    target_n: int
    spec: ClassSpec = ALL_GRAPHS
    top_rule: str = EXACT
    split: tuple[int, int, int] | None = None

    def __post_init__(self):
        if not 1 <= self.target_n <= MAX_N:
            raise ValueError(f"target_n must be in 1..{MAX_N}")
        if self.top_rule not in (EXACT, RECON):
            raise ValueError(f"top_rule must be {EXACT!r} or {RECON!r}")
        if self.split is not None:
            res, mod, depth = self.split
            if not (mod >= 1 and 0 <= res < mod):
                raise ValueError(f"bad split residue {res} mod {mod}")
            if not 1 <= depth < self.target_n:
                raise ValueError(f"split depth must be in 1..{self.target_n - 1}")


def m_top(h: LabelledGraph) -> frozenset[int]:
    """Vertices whose cards have the largest ``PreorderKey``."""
    keys = [preorder_key(delete_vertex(h, v)) for v in range(h.n)]
    best = max(keys)
    return frozenset(v for v, k in enumerate(keys) if k == best)


def m_mid(h: LabelledGraph, result: CanonicalResult | None = None) -> frozenset[int]:
    """Orbit of the vertex that canonical labelling places last."""
    if result is None:
        result = canonical(h)
    return result.orbit(result.last_vertex())


# vectorised scoring of all one-vertex extensions of a parent


@dataclass
class Extensions:
    """Children of one parent, one row per kept new-vertex connection.

    ``vstats`` columns are per-vertex ``(degree, triangles)`` for graphs or
    ``(out, in, 3-cycles)`` for digraphs; the new vertex is the last column.
    """

    parent: LabelledGraph
    parent_canon: CanonicalResult
    out_sets: np.ndarray
    in_sets: np.ndarray
    out_members: np.ndarray
    in_members: np.ndarray
    vstats: tuple[np.ndarray, ...]
    edges: np.ndarray
    triangles: np.ndarray
    canon: dict[int, CanonicalResult] = field(default_factory=dict)

    def __len__(self):
        return len(self.out_sets)

    @property
    def n(self) -> int:
        return self.parent.n + 1

    @property
    def directed(self) -> bool:
        return self.parent.directed

    def subset(self, keep: np.ndarray) -> "Extensions":
        keep = np.asarray(keep)
        if keep.dtype == bool:
            keep = np.flatnonzero(keep)
        where = {int(old): new for new, old in enumerate(keep)}
        return Extensions(
            self.parent,
            self.parent_canon,
            self.out_sets[keep],
            self.in_sets[keep],
            self.out_members[keep],
            self.in_members[keep],
            tuple(s[keep] for s in self.vstats),
            self.edges[keep],
            self.triangles[keep],
            {where[i]: c for i, c in self.canon.items() if i in where},
        )

    def vertex_keys(self) -> np.ndarray:
        if self.directed:
            out, inn, tri = self.vstats
            return (out << 16) | (inn << 8) | tri
        deg, tri = self.vstats
        return (deg << 8) | tri

    def card_keys(self) -> np.ndarray:
        """``(edges, triangles)`` of every card packed into one integer."""
        if self.directed:
            out, inn, tri = self.vstats
            lost = out + inn
        else:
            deg, tri = self.vstats
            lost = deg
        return ((self.edges[:, None] - lost) << 16) | (self.triangles[:, None] - tri)

    def graph(self, i: int) -> LabelledGraph:
        g = self.parent
        k = g.n
        out, inn = int(self.out_sets[i]), int(self.in_sets[i])
        back = inn if g.directed else out
        rows = tuple(r | (((back >> u) & 1) << k) for u, r in enumerate(g.rows)) + (out,)
        return LabelledGraph._trusted(k + 1, rows, g.directed)

    def graphs(self) -> list[LabelledGraph]:
        return [self.graph(i) for i in range(len(self))]

    def matrices(self) -> np.ndarray:
        """Adjacency matrices of all children, shape ``(R, n, n)``."""
        k = self.parent.n
        r = len(self)
        a = np.zeros((r, k + 1, k + 1), dtype=np.int32)
        a[:, :k, :k] = self.parent.matrix()
        if self.directed:
            a[:, :k, k] = self.in_members
            a[:, k, :k] = self.out_members
        else:
            a[:, :k, k] = self.out_members
            a[:, k, :k] = self.out_members
        return a


def _components_sides(g: LabelledGraph) -> list[tuple[int, int]]:
    """Colour classes ``(side0, side1)`` of each component of a bipartite graph."""
    seen = 0
    out = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        sides = [1 << s, 0]
        colour = {s: 0}
        stack = [s]
        while stack:
            u = stack.pop()
            nb = g.rows[u]
            while nb:
                low = nb & -nb
                w = low.bit_length() - 1
                nb ^= low
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    sides[colour[w]] |= 1 << w
                    stack.append(w)
        seen |= sides[0] | sides[1]
        out.append((sides[0], sides[1]))
    return out


def _class_mask(g: LabelledGraph, a: np.ndarray, space, spec: ClassSpec, target_n: int) -> np.ndarray:
    """Which extensions of ``g`` (already in the class envelope) stay feasible."""
    kind = spec.kind
    k = g.n
    valid = space.structurally_valid.copy()
    left = target_n - (k + 1)  # vertices still to be added after this one
    if spec.directed:
        if kind == "score-range":
            lo, hi = spec.params
            out = a.sum(1)
            out_h = out[None, :] + space.in_members
            new_out = space.out_members.sum(1)
            valid &= (out_h <= hi).all(1) & (out_h + left >= lo).all(1)
            valid &= (new_out <= hi) & (new_out + left >= lo)
        return valid
    m = space.out_members
    if kind == "all":
        return valid
    nw = m @ a  # |N(u) & W| for each old vertex u
    size = m.sum(1)
    if kind in ("triangle-free", "girth5"):
        valid &= (nw * m).sum(1) == 0
    if kind in ("no-c4", "girth5", "bipartite-girth6"):
        valid &= nw.max(1, initial=0) <= 1
    if kind in ("bipartite", "bipartite-girth6"):
        codes = space.codes
        for s0, s1 in _components_sides(g):
            valid &= ~(((codes & s0) != 0) & ((codes & s1) != 0))
    if kind in ("maxdeg", "degrange"):
        hi = spec.params[-1]
        deg = a.sum(1)
        saturated = int(sum(1 << u for u in range(k) if deg[u] >= hi))
        valid &= (size <= hi) & ((space.codes & saturated) == 0)
        if kind == "degrange":
            lo = spec.params[0]
            deg_h = deg[None, :] + m
            valid &= ((deg_h + left >= lo).all(1)) & (size + left >= lo)
    return valid


def score_extensions(g: LabelledGraph, canon_g: CanonicalResult, spec: ClassSpec, target_n: int) -> Extensions:
    """Orbit representatives of feasible extensions of ``g`` with vertex statistics."""
    k = g.n
    space = extension_space(k, spec.extension_kind)
    a = g.matrix().astype(np.int32)
    valid = _class_mask(g, a, space, spec, target_n)
    idx = orbit_representatives(space, canon_g.generators, valid)
    mo = space.out_members[idx]
    mi = space.in_members[idx]
    if g.directed:
        out, inn = a.sum(1), a.sum(0)
        tri = np.einsum("ij,jk,ki->i", a, a, a)
        x = mo @ a  # |O & in(u)|
        y = mi @ a.T  # |out(u) & I|
        new_tri = (x * mi).sum(1)
        vstats = (
            np.column_stack([out[None, :] + mi, mo.sum(1)]),
            np.column_stack([inn[None, :] + mo, mi.sum(1)]),
            np.column_stack([tri[None, :] + mi * x + mo * y, new_tri]),
        )
        edges = int(a.sum()) + mo.sum(1) + mi.sum(1)
        triangles = int(tri.sum()) // 3 + new_tri
    else:
        deg = a.sum(1)
        tri = np.einsum("ij,jk,ki->i", a, a, a) // 2
        nw = mo @ a
        size = mo.sum(1)
        inner = (nw * mo).sum(1) // 2
        vstats = (
            np.column_stack([deg[None, :] + mo, size]),
            np.column_stack([tri[None, :] + mo * nw, inner]),
        )
        edges = int(deg.sum()) // 2 + size
        triangles = int(tri.sum()) // 3 + inner
    return Extensions(
        g,
        canon_g,
        space.out_sets[idx],
        space.in_sets[idx],
        mo,
        mi,
        tuple(np.asarray(s, dtype=np.int64) for s in vstats),
        np.asarray(edges, dtype=np.int64),
        np.asarray(triangles, dtype=np.int64),
    )


def select_mid(ext: Extensions, need_canon: bool) -> Extensions:
    """Children whose new vertex passes ``m_mid``.

    The new vertex must carry the largest vertex key; when it is the only one
    it is necessarily placed last by ``canonical`` and is accepted outright.
    """
    k = ext.parent.n
    keys = ext.vertex_keys()
    best = keys.max(1)
    cand = keys[:, k] == best
    ties = (keys == best[:, None]).sum(1)
    keep = []
    canon = {}
    for i in np.flatnonzero(cand):
        if ties[i] == 1 and not need_canon:
            keep.append(i)
            continue
        res = canonical(ext.graph(int(i)))
        if res.orbit_ids[k] == res.orbit_ids[res.last_vertex()]:
            keep.append(i)
            canon[len(keep) - 1] = res
    out = ext.subset(np.asarray(keep, dtype=np.int64))
    out.canon = canon
    return out


def select_top(ext: Extensions) -> Extensions:
    """Children whose new vertex passes ``m_top``."""
    ck = ext.card_keys()
    return ext.subset(ck[:, -1] == ck.max(1))


def final_filter(ext: Extensions, spec: ClassSpec) -> Extensions:
    """Apply the non-hereditary lower bounds of ``degrange`` / ``score-range``."""
    if spec.kind in ("degrange", "score-range"):
        lo = spec.params[0]
        return ext.subset((ext.vstats[0] >= lo).all(1))
    return ext


def _k1(directed: bool) -> LabelledGraph:
    return empty_graph(1, directed)


class Generator:
    """Depth-first canonical construction path walk for one configuration."""

    def __init__(self, cfg: GenConfig):
        self.cfg = cfg
        if cfg.target_n < 4:
            log.warning("target order %d is below the range where reconstruction is conjectured", cfg.target_n)
        self.spec = cfg.spec
        self.nodes_at_depth = 0
        self.nodes_visited = 0

    def batches(self) -> Iterator[Extensions]:
        """Yield the accepted children of each parent at the target order."""
        cfg = self.cfg
        root = _k1(self.spec.directed)
        if cfg.target_n == 1:
            return
        yield from self._walk(root, canonical(root))

    def _walk(self, g: LabelledGraph, res: CanonicalResult) -> Iterator[Extensions]:
        cfg = self.cfg
        self.nodes_visited += 1
        if cfg.split is not None:
            r, mod, depth = cfg.split
            if g.n == depth:
                idx = self.nodes_at_depth
                self.nodes_at_depth += 1
                if idx % mod != r:
                    return
        top = g.n + 1 == cfg.target_n
        ext = score_extensions(g, res, self.spec, cfg.target_n)
        if top:
            ext = select_top(ext) if cfg.top_rule == RECON else select_mid(ext, need_canon=False)
            ext = final_filter(ext, self.spec)
            if len(ext):
                yield ext
            return
        ext = select_mid(ext, need_canon=True)
        for i in range(len(ext)):
            yield from self._walk(ext.graph(i), ext.canon[i])


def iter_batches(cfg: GenConfig) -> Iterator[Extensions]:
    return Generator(cfg).batches()


def generate(cfg: GenConfig, visitor: Callable[[LabelledGraph | None, LabelledGraph], object]) -> int:
    """Call ``visitor(parent, child)`` for every accepted object of order ``target_n``.

    Returns the number of visitor calls.  For ``target_n == 1`` the single
    output ``K1`` has parent ``None``.
    """
    from .graphs import in_class

    if cfg.target_n == 1:
        k1 = _k1(cfg.spec.directed)
        if not in_class(k1, cfg.spec):
            return 0
        visitor(None, k1)
        return 1
    count = 0
    for batch in iter_batches(cfg):
        for child in batch.graphs():
            visitor(batch.parent, child)
            count += 1
    return count


def generate_list(cfg: GenConfig) -> list[LabelledGraph]:
    out: list[LabelledGraph] = []
    generate(cfg, lambda parent, child: out.append(child))
    return out


def count_outputs(cfg: GenConfig) -> int:
    """Number of visitor calls without materialising the children."""
    if cfg.target_n == 1:
        return generate(cfg, lambda p, c: None)
    return sum(len(b) for b in iter_batches(cfg))


@dataclass(frozen=True)
class Overhead:
    outputs: int
    classes: int

    @property
    def ratio(self) -> float:
        return self.outputs / self.classes if self.classes else float("nan")


def count_overhead(cfg: GenConfig) -> Overhead:
    """Outputs of a ``recon`` run against the number of distinct classes among them."""
    if cfg.top_rule != RECON:
        raise ValueError("count_overhead needs top_rule='recon'")
    codes = set()
    outputs = 0
    for batch in iter_batches(cfg):
        for child in batch.graphs():
            outputs += 1
            codes.add(canonical(child).canon_code)
    return Overhead(outputs, len(codes))
