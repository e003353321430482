"""Directed classes: tournament censuses, the 7-vertex fixtures and converse scans."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

from .canon import canonical, canonical_form, graph_from_code, is_isomorphic, orbits_on_extensions
from .deckcheck import FULL, CollisionGroup, full_deck, reduced_deck, search
from .formats import encode, from_digraph6
from .genx import EXACT, RECON, GenConfig, generate_list
from .graphs import TOURNAMENTS, ClassSpec, LabelledGraph, converse, count_two_cycles, delete_vertex, is_oriented, is_tournament

EQUAL_REDUCED_NOT_FULL = "equal_reduced_not_full"
EQUAL_FULL = "equal_full"
RELATIONS = (EQUAL_REDUCED_NOT_FULL, EQUAL_FULL)


def digraph_extensions(g: LabelledGraph, spec: ClassSpec) -> list[tuple[int, int]]:
    """Orbit representatives of ``(out_set, in_set)`` pairs for adding one vertex to ``g``."""
    if not spec.directed:
        raise ValueError(f"class {spec} is undirected")
    return orbits_on_extensions(g, spec)


def tournament_census(n: int, deck_mode: str = FULL) -> list[CollisionGroup]:
    if not 3 <= n <= 10:
        raise ValueError("tournament census is meant for 3 <= n <= 10")
    return search(GenConfig(n, TOURNAMENTS, RECON), deck_mode)


def classify(g: LabelledGraph) -> str:
    """``tournament``, ``oriented`` or ``k two-cycles``."""
    if is_tournament(g):
        return "tournament"
    if is_oriented(g):
        return "oriented"
    return f"{count_two_cycles(g)} two-cycles"


def census_summary(groups: list[CollisionGroup]) -> Counter:
    """Count groups by (kind of first member, group size)."""
    return Counter((classify(grp.members[0]), len(grp)) for grp in groups)


# fixtures


@dataclass(frozen=True)
class Fixture:
    name: str
    members: tuple[LabelledGraph, ...]
    relation: str = EQUAL_REDUCED_NOT_FULL
    card_letters: tuple[str, ...] = ()

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        if len({m.n for m in self.members}) != 1:
            raise ValueError("fixture members must share an order")

    @property
    def order(self) -> int:
        return self.members[0].n


def parse_fixtures(text: str) -> list[Fixture]:
    """Lines ``<pair>-<side> <relation> <digraph6> [letters]``; ``#`` starts a comment."""
    grouped: dict[str, list] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        name, relation, code = parts[:3]
        letters = parts[3] if len(parts) > 3 else ""
        grouped.setdefault(name.rsplit("-", 1)[0], []).append((relation, from_digraph6(code), letters))
    out = []
    for name, rows in grouped.items():
        relations = {r for r, _, _ in rows}
        if len(relations) != 1:
            raise ValueError(f"fixture {name} mixes relations {sorted(relations)}")
        out.append(Fixture(name, tuple(g for _, g, _ in rows), relations.pop(), tuple(s for _, _, s in rows)))
    return out


def load_fixtures() -> list[Fixture]:
    text = resources.files("graphrecon").joinpath("data/tournament_pairs.txt").read_text()
    return parse_fixtures(text)


@dataclass
class FixtureReport:
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    diff: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def lines(self) -> list[str]:
        status = "pass" if self.ok else "FAIL"
        detail = " ".join(f"{k}={'yes' if v else 'no'}" for k, v in self.checks.items())
        return [f"fixture {self.name}: {status} {detail}", *("  " + d for d in self.diff)]


def _deck_diff(a: LabelledGraph, b: LabelledGraph) -> list[str]:
    ca, cb = Counter(full_deck(a)), Counter(full_deck(b))
    out = []
    for code in sorted(set(ca) | set(cb)):
        if ca[code] != cb[code]:
            card = graph_from_code(code)
            out.append(f"card {encode(card)}: {ca[code]} vs {cb[code]}")
    return out


def verify_fixture(f: Fixture) -> FixtureReport:
    """Check non-isomorphism and the stated deck relation, with a card diff on failure."""
    rep = FixtureReport(f.name)
    ms = f.members
    rep.checks["non_isomorphic"] = all(not is_isomorphic(a, b) for a, b in combinations(ms, 2))
    same_reduced = len({reduced_deck(m) for m in ms}) == 1
    same_full = len({full_deck(m) for m in ms}) == 1
    rep.checks["equal_reduced"] = same_reduced
    if f.relation == EQUAL_REDUCED_NOT_FULL:
        rep.checks["unequal_full"] = not same_full
    else:
        rep.checks["equal_full"] = same_full
    if not rep.ok:
        for a, b in combinations(range(len(ms)), 2):
            d = _deck_diff(ms[a], ms[b])
            if d:
                rep.diff.append(f"deck difference between members {a} and {b} (card: count vs count)")
                rep.diff.extend("  " + x for x in d)
    return rep


def card_letters_consistent(f: Fixture) -> bool:
    """Whether, within one fixture, equal row letters mean isomorphic cards.

    Letters are reused between fixtures for unrelated cards, so the check is
    local to a fixture.
    """
    by_letter: dict[str, set[bytes]] = {}
    by_code: dict[bytes, set[str]] = {}
    for g, letters in zip(f.members, f.card_letters):
        for v, ch in enumerate(letters):
            code = canonical(delete_vertex(g, v)).canon_code
            by_letter.setdefault(ch, set()).add(code)
            by_code.setdefault(code, set()).add(ch)
    return all(len(s) == 1 for s in by_letter.values()) and all(len(s) == 1 for s in by_code.values())


# converse scan


@dataclass
class ConverseScan:
    order: int
    tournaments: int
    self_converse: list[LabelledGraph]
    collisions: list[tuple[LabelledGraph, ...]]


def is_self_converse(g: LabelledGraph) -> bool:
    return is_isomorphic(g, converse(g))


def self_converse_scan(n: int) -> ConverseScan:
    """Self-converse tournaments of order ``n`` and any that share a reduced deck."""
    if not 2 <= n <= 10:
        raise ValueError("self-converse scan is meant for 2 <= n <= 10")
    tours = generate_list(GenConfig(n, TOURNAMENTS, EXACT))
    selfc = [canonical_form(t) for t in tours if is_self_converse(t)]
    by_deck: dict = {}
    for t in selfc:
        by_deck.setdefault(reduced_deck(t), []).append(t)
    collisions = [tuple(v) for v in by_deck.values() if len(v) > 1]
    return ConverseScan(n, len(tours), selfc, collisions)
