"""Brute-force ground truth for small orders.

Nothing here uses the orbit or canonical-labelling machinery of the fast
path.  Objects are integer codes of their full adjacency matrix (row-major,
entry ``(0, 0)`` most significant) and isomorphism classes are found by
minimising that code over every vertex permutation, vectorised with numpy.

Two enumeration routes are available: every labelled object (for spaces up
to ``LABELLED_LIMIT``), or every one-vertex extension of the previous
order's class representatives followed by deduplication.  The second is
complete because the classes handled are hereditary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .graphs import ClassSpec, LabelledGraph, bits, in_class

LABELLED_LIMIT = 1 << 16
EXTENSION_LIMIT = 1 << 22
MAX_ORDER = 7
POSET_MAX = 5


class OracleRefused(ValueError):
    pass


# codes <-> matrices


def _weights(n: int) -> np.ndarray:
    return np.left_shift(np.uint64(1), np.arange(n * n - 1, -1, -1, dtype=np.uint64)).reshape(n, n)


def encode_matrices(mats: np.ndarray) -> np.ndarray:
    mats = np.asarray(mats)
    n = mats.shape[-1]
    return (mats.astype(np.uint64) * _weights(n)).sum(axis=(-2, -1), dtype=np.uint64)


def decode_codes(codes: np.ndarray, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.uint64)
    return ((codes[..., None, None] & _weights(n)) != 0).astype(np.int8)


def graph_code(g: LabelledGraph) -> int:
    return int(encode_matrices(g.matrix()[None])[0])


def graph_of(code: int, n: int, directed: bool) -> LabelledGraph:
    a = decode_codes(np.array([code], dtype=np.uint64), n)[0]
    rows = tuple(int(sum(1 << j for j in range(n) if a[i, j])) for i in range(n))
    return LabelledGraph(n, rows, directed)


@lru_cache(maxsize=None)
def _perm_tables(n: int):
    """For every permutation: row-content table and destination shifts."""
    perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    r = np.arange(1 << n, dtype=np.uint64)
    tables = np.zeros((len(perms), 1 << n), dtype=np.uint64)
    for j in range(n):
        bit = (r >> np.uint64(n - 1 - j)) & np.uint64(1)
        dest = (n - 1 - perms[:, j]).astype(np.uint64)
        tables |= bit[None, :] << dest[:, None]
    shifts = (n * (n - 1 - perms)).astype(np.uint64)
    return tables, shifts


def min_codes(codes: np.ndarray, n: int) -> np.ndarray:
    """Least code over all ``n!`` relabellings of each input code."""
    codes = np.asarray(codes, dtype=np.uint64)
    if n <= 1 or len(codes) == 0:
        return codes.copy()
    if n > 8:
        raise OracleRefused(f"brute force relabelling refused for n={n} > 8")
    tables, shifts = _perm_tables(n)
    rowmask = np.uint64((1 << n) - 1)
    rows = [((codes >> np.uint64(n * (n - 1 - i))) & rowmask).astype(np.int64) for i in range(n)]
    best = codes.copy()
    for t, sh in zip(tables, shifts):
        cand = t[rows[0]] << sh[0]
        for i in range(1, n):
            cand |= t[rows[i]] << sh[i]
        np.minimum(best, cand, out=best)
    return best


# enumeration


def _pair_states(kind: str) -> int:
    return {"graph": 2, "tournament": 2, "oriented": 3, "digraph": 4}[kind]


def _state_arcs(kind: str, state: np.ndarray):
    """For a pair (i, j) with i < j: whether i->j and j->i are present."""
    if kind == "graph":
        return state == 1, state == 1
    if kind == "tournament":
        return state == 0, state == 1
    return (state == 1) | (state == 3), (state == 2) | (state == 3)


def labelled_space_size(n: int, spec: ClassSpec) -> int:
    return _pair_states(spec.extension_kind) ** (n * (n - 1) // 2)


def enumerate_labelled(n: int, spec: ClassSpec) -> np.ndarray:
    """Codes of every labelled object on ``n`` vertices with the pair structure of ``spec``."""
    kind = spec.extension_kind
    base = _pair_states(kind)
    pairs = list(combinations(range(n), 2))
    size = base ** len(pairs)
    if size > LABELLED_LIMIT:
        raise OracleRefused(f"labelled space {size} exceeds {LABELLED_LIMIT}")
    idx = np.arange(size, dtype=np.int64)
    w = _weights(n)
    codes = np.zeros(size, dtype=np.uint64)
    for p, (i, j) in enumerate(pairs):
        state = (idx // base**p) % base
        fwd, back = _state_arcs(kind, state)
        codes |= np.where(fwd, w[i, j], np.uint64(0))
        codes |= np.where(back, w[j, i], np.uint64(0))
    return codes


def extend_codes(codes: np.ndarray, m: int, spec: ClassSpec) -> np.ndarray:
    """Every way of adding vertex ``m`` to each ``m``-vertex code."""
    kind = spec.extension_kind
    base = _pair_states(kind)
    configs = base**m
    if len(codes) * configs > EXTENSION_LIMIT:
        raise OracleRefused(f"extension space {len(codes) * configs} exceeds {EXTENSION_LIMIT}")
    mats = decode_codes(codes, m)
    n = m + 1
    big = np.zeros((len(codes), configs, n, n), dtype=np.int8)
    big[:, :, :m, :m] = mats[:, None]
    idx = np.arange(configs, dtype=np.int64)
    for j in range(m):
        state = (idx // base**j) % base
        fwd, back = _state_arcs(kind, state)  # pair (j, new) with j < new
        big[:, :, j, m] = fwd
        big[:, :, m, j] = back
    return encode_matrices(big.reshape(-1, n, n))


def _filter(codes: np.ndarray, n: int, spec: ClassSpec) -> np.ndarray:
    keep = [c for c in codes.tolist() if in_class(graph_of(c, n, spec.directed), spec)]
    return np.array(sorted(keep), dtype=np.uint64)


@lru_cache(maxsize=None)
def class_representatives(n: int, spec: ClassSpec, method: str = "auto") -> tuple[int, ...]:
    """Least code of every isomorphism class of ``spec`` on ``n`` vertices."""
    if n > MAX_ORDER:
        raise OracleRefused(f"oracle refused for n={n} > {MAX_ORDER}")
    if method == "auto":
        method = "labelled" if labelled_space_size(n, spec) <= LABELLED_LIMIT else "extension"
    envelope = spec.envelope()
    if method == "labelled":
        reps = np.unique(min_codes(enumerate_labelled(n, spec), n))
        return tuple(_filter(reps, n, spec).tolist())
    if method != "extension":
        raise ValueError(f"unknown method {method!r}")
    if n == 1:
        return tuple(_filter(np.zeros(1, dtype=np.uint64), 1, spec).tolist())
    prev = np.array(class_representatives(n - 1, envelope, method), dtype=np.uint64)
    reps = np.unique(min_codes(extend_codes(prev, n - 1, envelope), n))
    return tuple(_filter(reps, n, spec).tolist())


# decks


def card_codes(codes: np.ndarray, n: int) -> np.ndarray:
    """Least codes of the ``n`` cards of each code, shape ``(len(codes), n)``."""
    mats = decode_codes(codes, n)
    out = np.zeros((len(codes), n), dtype=np.uint64)
    for v in range(n):
        keep = [u for u in range(n) if u != v]
        out[:, v] = encode_matrices(mats[:, keep][:, :, keep])
    return min_codes(out.ravel(), n - 1).reshape(len(codes), n)


def _deck_groups(codes: list[int], cards: np.ndarray):
    full: dict = {}
    reduced: dict = {}
    for c, row in zip(codes, cards.tolist()):
        full.setdefault(tuple(sorted(row)), set()).add(c)
        reduced.setdefault(frozenset(row), set()).add(c)
    pick = lambda d: sorted((frozenset(s) for s in d.values() if len(s) > 1), key=sorted)
    return pick(full), pick(reduced)


@dataclass
class OracleCensus:
    """Class count and deck collision groups (as sets of least codes)."""

    order: int
    spec: str
    class_count: int
    representatives: tuple[int, ...] = ()
    full_groups: list[frozenset[int]] = field(default_factory=list)
    reduced_groups: list[frozenset[int]] = field(default_factory=list)

    def groups(self, deck_mode: str) -> list[frozenset[int]]:
        return self.full_groups if deck_mode == "full" else self.reduced_groups


def oracle_census(n: int, spec: ClassSpec, method: str = "auto") -> OracleCensus:
    reps = class_representatives(n, spec, method)
    if n < 2:
        return OracleCensus(n, str(spec), len(reps), reps)
    cards = card_codes(np.array(reps, dtype=np.uint64), n)
    full, reduced = _deck_groups(list(reps), cards)
    return OracleCensus(n, str(spec), len(reps), reps, full, reduced)


def oracle_code(g: LabelledGraph) -> int:
    """Least code of the class of ``g``; the common currency for comparisons."""
    return oracle_codes([g])[0]


def oracle_codes(graphs) -> list[int]:
    """``oracle_code`` for many graphs of one order at once."""
    graphs = list(graphs)
    if not graphs:
        return []
    mats = np.stack([g.matrix() for g in graphs])
    return min_codes(encode_matrices(mats), graphs[0].n).tolist()


# posets


def enumerate_posets(n: int) -> np.ndarray:
    """Codes of all labelled strict partial orders on ``n`` points (``i < j`` as arc ``i -> j``)."""
    if n > POSET_MAX:
        raise OracleRefused(f"poset census refused for n={n} > {POSET_MAX}")
    pairs = list(combinations(range(n), 2))
    size = 3 ** len(pairs)
    idx = np.arange(size, dtype=np.int64)
    a = np.zeros((size, n, n), dtype=np.int64)
    for p, (i, j) in enumerate(pairs):
        state = (idx // 3**p) % 3
        a[:, i, j] = state == 1
        a[:, j, i] = state == 2
    two_step = np.einsum("rij,rjk->rik", a, a) > 0
    transitive = ~(two_step & (a == 0)).any(axis=(1, 2))
    return encode_matrices(a[transitive])


def is_poset(g: LabelledGraph) -> bool:
    """Irreflexive, antisymmetric and transitive."""
    for i, r in enumerate(g.rows):
        for j in bits(r):
            if (g.rows[j] >> i) & 1:
                return False
            if g.rows[j] & ~r & ~(1 << i):
                return False
    return True


def poset_census(n: int) -> OracleCensus:
    """Posets on ``n <= 5`` points and the groups sharing a (reduced or full) deck."""
    if n > POSET_MAX:
        raise OracleRefused(f"poset census refused for n={n} > {POSET_MAX}")
    reps = np.unique(min_codes(enumerate_posets(n), n))
    if n < 2:
        return OracleCensus(n, "poset", len(reps), tuple(reps.tolist()))
    cards = card_codes(reps, n)
    full, reduced = _deck_groups(reps.tolist(), cards)
    return OracleCensus(n, "poset", len(reps), tuple(reps.tolist()), full, reduced)


# agreement with the fast path


@dataclass
class CrossCheck:
    order: int
    spec: str
    generated: int
    oracle_count: int
    group_match: dict[str, bool]
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def lines(self) -> list[str]:
        head = f"cross_check n={self.order} class={self.spec} generated={self.generated} oracle={self.oracle_count}"
        body = [f"  {mode}: {'match' if ok else 'MISMATCH'}" for mode, ok in self.group_match.items()]
        return [head, *body, *("  " + m for m in self.mismatches)]


def cross_check(n: int, spec: ClassSpec) -> CrossCheck:
    """Compare exact-mode counts and collision groups of the fast path with the oracle."""
    from .deckcheck import search
    from .genx import EXACT, RECON, GenConfig, generate_list

    census = oracle_census(n, spec)
    outputs = generate_list(GenConfig(n, spec, EXACT))
    report = CrossCheck(n, str(spec), len(outputs), census.class_count, {})
    out_codes = sorted(oracle_codes(outputs))
    if out_codes != sorted(census.representatives):
        missing = sorted(set(census.representatives) - set(out_codes))
        extra = sorted(set(out_codes) - set(census.representatives))
        dup = len(out_codes) - len(set(out_codes))
        report.mismatches.append(f"classes differ: {len(missing)} missing, {len(extra)} extra, {dup} duplicated; first missing={missing[:1]} first extra={extra[:1]}")
    if n >= 2:
        for mode in ("full", "reduced"):
            fast = sorted((frozenset(oracle_codes(grp.members)) for grp in search(GenConfig(n, spec, RECON), mode)), key=sorted)
            slow = census.groups(mode)
            report.group_match[mode] = fast == slow
            if fast != slow:
                diff = sorted(set(fast) ^ set(slow), key=sorted)
                report.mismatches.append(f"{mode} groups differ: fast={len(fast)} oracle={len(slow)}; first divergent={sorted(diff[0])}")
    return report
