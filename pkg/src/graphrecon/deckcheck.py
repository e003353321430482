"""Decks, deck invariants and per-parent collision detection.

A batch of children (all from one parent) is screened in stages, cheapest
first: a 64-bit digest of the card degree sequences, removal of isomorphic
duplicates, the canonical codes of the maximal cards, and finally the whole
reduced deck.  Every stage only discards children that cannot share a deck
with anything else in the batch, so the groups reported are exactly the
classes of equal decks among the pairwise non-isomorphic children.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .canon import canonical, canonical_form, graph_from_code
from .genx import RECON, GenConfig, Generator, preorder_key
from .graphs import LabelledGraph, delete_vertex

REDUCED = "reduced"
FULL = "full"
DECK_MODES = (REDUCED, FULL)

FullDeck = tuple[bytes, ...]
ReducedDeck = tuple[bytes, ...]

MAX_BATCH_ENV = "GRAPHRECON_MAX_BATCH"


class BatchTooLarge(RuntimeError):
    pass


def cards(g: LabelledGraph) -> list[LabelledGraph]:
    return [delete_vertex(g, v) for v in range(g.n)]


def full_deck(g: LabelledGraph) -> FullDeck:
    """Sorted canonical codes of all ``n`` cards."""
    if g.n < 2:
        raise ValueError("no card of K1")
    return tuple(sorted(canonical(c).canon_code for c in cards(g)))


def reduced_deck(g: LabelledGraph) -> ReducedDeck:
    """Sorted distinct canonical codes of the cards."""
    return tuple(sorted(set(full_deck(g))))


# 64-bit digests

_M64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_POLY = np.uint64(0x100000001B3)


def _splitmix(x: np.ndarray) -> np.ndarray:
    z = x + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def card_hashes(adj: np.ndarray, directed: bool) -> np.ndarray:
    """Digest of every card of every graph in ``adj`` (shape ``(R, n, n)``).

    A card is summarised by its sorted degree sequence (``(out, in)`` pairs
    for digraphs), edge count and triangle count.
    """
    adj = np.asarray(adj, dtype=np.int64)
    r, n, _ = adj.shape
    eye = np.eye(n, dtype=bool)
    tri = np.einsum("rij,rjk,rki->ri", adj, adj, adj)
    if directed:
        out, inn = adj.sum(2), adj.sum(1)
        # card u: vertex x keeps out[x] - a[x,u] and in[x] - a[u,x]
        card_out = out[:, None, :] - adj.transpose(0, 2, 1)
        card_in = inn[:, None, :] - adj
        seq = card_out * 32 + card_in
        lost = out + inn
        total_tri = tri.sum(1) // 3
    else:
        deg = adj.sum(2)
        seq = deg[:, None, :] - adj.transpose(0, 2, 1)
        lost = deg
        tri = tri // 2
        total_tri = tri.sum(1) // 3
    seq = np.where(eye[None], -1, seq)
    seq.sort(axis=2)
    edges = adj.sum((1, 2))
    if not directed:
        edges = edges // 2
    card_edges = edges[:, None] - lost
    card_tri = total_tri[:, None] - tri
    h = np.zeros((r, n), dtype=np.uint64)
    for j in range(n):
        h = h * _POLY + (seq[:, :, j] + 2).astype(np.uint64)
    h = _splitmix(h ^ _splitmix(card_edges.astype(np.uint64) * np.uint64(1 << 20) + card_tri.astype(np.uint64)))
    return h


def deck_digests(adj: np.ndarray, directed: bool) -> np.ndarray:
    """One digest per graph, depending only on the set of card digests."""
    h = card_hashes(adj, directed)
    r, n = h.shape
    h.sort(axis=1)
    first = np.ones((r, n), dtype=bool)
    first[:, 1:] = h[:, 1:] != h[:, :-1]
    total = np.where(first, _splitmix(h), np.uint64(0)).sum(axis=1, dtype=np.uint64)
    return _splitmix(total ^ np.uint64(n))


def deck_invariant(g: LabelledGraph) -> int:
    """64-bit digest of the reduced deck's card degree sequences."""
    if g.n < 2:
        raise ValueError("no card of K1")
    return int(deck_digests(g.matrix()[None], g.directed)[0])


# collision groups


@dataclass
class CollisionGroup:
    """Pairwise non-isomorphic graphs sharing a deck.

    ``members`` are canonical forms in the order of ``member_codes`` (sorted);
    ``parents`` are canonical codes of the parents the group was seen under.
    """

    members: tuple[LabelledGraph, ...]
    member_codes: tuple[bytes, ...]
    deck_mode: str
    reduced_deck: ReducedDeck
    full_deck: FullDeck | None = None
    parents: list[bytes] = field(default_factory=list)

    @property
    def key(self) -> tuple[bytes, ...]:
        return self.member_codes

    @property
    def order(self) -> int:
        return self.members[0].n

    def __len__(self):
        return len(self.members)

    def parent_graphs(self) -> list[LabelledGraph]:
        return [graph_from_code(c) for c in self.parents]


@dataclass
class _Child:
    graph: LabelledGraph
    code: bytes
    form: LabelledGraph
    card_codes: list[bytes] | None = None
    card_keys: list | None = None

    def ensure_cards(self):
        if self.card_codes is None:
            cs = cards(self.graph)
            self.card_keys = [preorder_key(c) for c in cs]
            self.card_codes = [canonical(c).canon_code for c in cs]

    def top_cards(self) -> frozenset[bytes]:
        self.ensure_cards()
        best = max(self.card_keys)
        return frozenset(c for c, k in zip(self.card_codes, self.card_keys) if k == best)


def _group_by(items, key):
    out: dict = {}
    for it in items:
        out.setdefault(key(it), []).append(it)
    return list(out.values())


def _collide(graphs: Sequence[LabelledGraph], digests: np.ndarray, parent_code: bytes | None, deck_mode: str) -> list[CollisionGroup]:
    found = []
    order = np.argsort(digests, kind="stable")
    sorted_d = digests[order]
    start = 0
    while start < len(order):
        stop = start + 1
        while stop < len(order) and sorted_d[stop] == sorted_d[start]:
            stop += 1
        if stop - start >= 2:
            found.extend(_resolve_bucket([graphs[i] for i in order[start:stop]], parent_code, deck_mode))
        start = stop
    return found


def _resolve_bucket(graphs: list[LabelledGraph], parent_code, deck_mode) -> list[CollisionGroup]:
    distinct: dict[bytes, _Child] = {}
    for g in graphs:
        res = canonical(g)
        if res.canon_code not in distinct:
            distinct[res.canon_code] = _Child(g, res.canon_code, canonical_form(g, res))
    if len(distinct) < 2:
        return []
    groups = []
    for same_top in _group_by(distinct.values(), lambda c: c.top_cards()):
        if len(same_top) < 2:
            continue
        for same_deck in _group_by(same_top, lambda c: frozenset(c.card_codes)):
            if len(same_deck) < 2:
                continue
            if deck_mode == FULL:
                parts = _group_by(same_deck, lambda c: tuple(sorted(c.card_codes)))
            else:
                parts = [same_deck]
            for part in parts:
                if len(part) >= 2:
                    part.sort(key=lambda c: c.code)
                    groups.append(
                        CollisionGroup(
                            members=tuple(c.form for c in part),
                            member_codes=tuple(c.code for c in part),
                            deck_mode=deck_mode,
                            reduced_deck=tuple(sorted(set(part[0].card_codes))),
                            full_deck=tuple(sorted(part[0].card_codes)) if deck_mode == FULL else None,
                            parents=[parent_code] if parent_code is not None else [],
                        )
                    )
    return groups


def process_batch(children: Iterable[tuple[LabelledGraph, LabelledGraph | None]], deck_mode: str = REDUCED) -> list[CollisionGroup]:
    """Maximal groups of pairwise non-isomorphic children with equal decks.

    ``children`` are ``(graph, parent)`` pairs; the parent is only recorded.
    """
    if deck_mode not in DECK_MODES:
        raise ValueError(f"deck_mode must be one of {DECK_MODES}")
    children = list(children)
    if not children:
        return []
    n = children[0][0].n
    directed = children[0][0].directed
    if any(g.n != n or g.directed != directed for g, _ in children):
        raise ValueError("all children in a batch must have the same order and type")
    if n < 2:
        return []
    digests = deck_digests(np.stack([g.matrix() for g, _ in children]), directed)
    groups = _collide([g for g, _ in children], digests, None, deck_mode)
    parents_of: dict[bytes, set[bytes]] = {}
    for g, p in children:
        if p is not None:
            parents_of.setdefault(canonical(g).canon_code, set()).add(canonical(p).canon_code)
    for grp in groups:
        grp.parents = sorted(set().union(*(parents_of.get(c, set()) for c in grp.member_codes)))
    return groups


def merge_groups(groups: Iterable[CollisionGroup]) -> list[CollisionGroup]:
    """Merge groups with identical members, uniting their parent lists."""
    out: dict[tuple, CollisionGroup] = {}
    for grp in groups:
        have = out.get(grp.key)
        if have is None:
            out[grp.key] = CollisionGroup(grp.members, grp.member_codes, grp.deck_mode, grp.reduced_deck, grp.full_deck, list(grp.parents))
        else:
            for p in grp.parents:
                if p not in have.parents:
                    have.parents.append(p)
    return sorted(out.values(), key=lambda g: g.key)


@dataclass
class SearchStats:
    outputs: int = 0
    batches: int = 0
    screened: int = 0
    groups: int = 0
    nodes: int = 0


class Searcher:
    """Runs a ``recon`` generation and collects collision groups parent by parent."""

    def __init__(self, cfg: GenConfig, deck_mode: str = REDUCED):
        if cfg.top_rule != RECON:
            raise ValueError("search needs top_rule='recon'")
        if deck_mode not in DECK_MODES:
            raise ValueError(f"deck_mode must be one of {DECK_MODES}")
        self.cfg = cfg
        self.deck_mode = deck_mode
        self.stats = SearchStats()
        cap = os.environ.get(MAX_BATCH_ENV)
        self.max_batch = int(cap) if cap else None

    def run(self) -> list[CollisionGroup]:
        gen = Generator(self.cfg)
        found: dict[tuple, CollisionGroup] = {}
        directed = self.cfg.spec.directed
        for batch in gen.batches():
            self.stats.batches += 1
            self.stats.outputs += len(batch)
            if self.max_batch is not None and len(batch) > self.max_batch:
                raise BatchTooLarge(f"parent batch of {len(batch)} children exceeds {MAX_BATCH_ENV}={self.max_batch}")
            if len(batch) < 2:
                continue
            digests = deck_digests(batch.matrices(), directed)
            _, inverse, counts = np.unique(digests, return_inverse=True, return_counts=True)
            shared = np.flatnonzero(counts[inverse.ravel()] >= 2)
            if len(shared) == 0:
                continue
            self.stats.screened += len(shared)
            graphs = [batch.graph(int(i)) for i in shared]
            for grp in _collide(graphs, digests[shared], batch.parent_canon.canon_code, self.deck_mode):
                have = found.get(grp.key)
                if have is None:
                    found[grp.key] = grp
                elif grp.parents[0] not in have.parents:
                    have.parents.extend(grp.parents)
        self.stats.nodes = gen.nodes_visited
        groups = sorted(found.values(), key=lambda g: g.key)
        self.stats.groups = len(groups)
        return groups


def search(cfg: GenConfig, deck_mode: str = REDUCED) -> list[CollisionGroup]:
    """All collision groups of the class at order ``cfg.target_n``."""
    return Searcher(cfg, deck_mode).run()
