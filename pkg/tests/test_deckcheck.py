from itertools import combinations

import numpy as np
import pytest

from graphrecon.canon import canon_code, canonical
from graphrecon.deckcheck import (
    FULL,
    REDUCED,
    BatchTooLarge,
    deck_invariant,
    full_deck,
    merge_groups,
    process_batch,
    reduced_deck,
    search,
)
from graphrecon.digraphs import load_fixtures
from graphrecon.genx import EXACT, RECON, GenConfig, generate, generate_list
from graphrecon.graphs import (
    ALL_GRAPHS,
    DIGRAPHS,
    ORIENTED,
    TOURNAMENTS,
    ClassSpec,
    cycle_graph,
    delete_vertex,
    empty_graph,
    is_tournament,
    path_graph,
    relabel,
    star_graph,
)


def code(g):
    return canon_code(g)


def test_deck_examples():
    p3 = code(path_graph(3))
    assert full_deck(cycle_graph(4)) == (p3,) * 4
    assert reduced_deck(cycle_graph(4)) == (p3,)
    e3, k12 = code(empty_graph(3)), code(star_graph(2))
    assert sorted(full_deck(star_graph(3))) == sorted([e3, k12, k12, k12])
    assert set(reduced_deck(star_graph(3))) == {e3, k12}
    for n in range(4, 10):
        assert reduced_deck(cycle_graph(n)) == (code(path_graph(n - 1)),)
    with pytest.raises(ValueError):
        full_deck(empty_graph(1))


def test_deck_label_invariance():
    rng = np.random.default_rng(7)
    for g in generate_list(GenConfig(6, ALL_GRAPHS)) + generate_list(GenConfig(5, ORIENTED))[::7]:
        h = relabel(g, rng.permutation(g.n).tolist())
        assert full_deck(g) == full_deck(h)
        assert deck_invariant(g) == deck_invariant(h)


def test_invariant_examples():
    assert deck_invariant(cycle_graph(4)) != deck_invariant(star_graph(3))
    left, right = load_fixtures()[0].members
    assert deck_invariant(left) == deck_invariant(right)


@pytest.mark.parametrize("spec,n", [(ALL_GRAPHS, 3), (TOURNAMENTS, 7), (DIGRAPHS, 4), (ORIENTED, 5)])
def test_equal_reduced_decks_give_equal_digests(spec, n):
    by_deck = {}
    for g in generate_list(GenConfig(n, spec)):
        by_deck.setdefault(reduced_deck(g), []).append(deck_invariant(g))
    for digests in by_deck.values():
        assert len(set(digests)) == 1


def test_process_batch_examples():
    children = []
    generate(GenConfig(4, ALL_GRAPHS), lambda p, c: children.append((c, p)))
    by_parent = {}
    for c, p in children:
        by_parent.setdefault(code(p), []).append((c, p))
    assert all(process_batch(b) == [] for b in by_parent.values())

    left, right = load_fixtures()[0].members
    extra = generate_list(GenConfig(7, TOURNAMENTS))[:20]
    groups = process_batch([(g, None) for g in [left, right, *extra]])
    assert len(groups) == 1 and len(groups[0]) == 2 and groups[0].deck_mode == REDUCED
    assert set(groups[0].member_codes) == {code(left), code(right)}

    t = left
    assert process_batch([(t, None), (relabel(t, [6, 5, 4, 3, 2, 1, 0]), None)]) == []
    with pytest.raises(ValueError):
        process_batch([(cycle_graph(4), None), (cycle_graph(5), None)])
    with pytest.raises(ValueError):
        process_batch([(cycle_graph(4), None)], deck_mode="half")


def brute_groups(graphs, deck_mode):
    key = (lambda g: full_deck(g)) if deck_mode == FULL else (lambda g: reduced_deck(g))
    out = {}
    for g in graphs:
        out.setdefault(key(g), set()).add(code(g))
    return sorted((frozenset(s) for s in out.values() if len(s) > 1), key=sorted)


@pytest.mark.parametrize("spec,n", [(ALL_GRAPHS, 3), (ALL_GRAPHS, 6), (TOURNAMENTS, 6), (DIGRAPHS, 3), (DIGRAPHS, 4), (ORIENTED, 5)])
@pytest.mark.parametrize("mode", [REDUCED, FULL])
def test_staging_matches_brute_partition(spec, n, mode):
    graphs = generate_list(GenConfig(n, spec))
    rng = np.random.default_rng(n)
    # duplicates under relabelling must not change anything
    batch = [(g, None) for g in graphs] + [(relabel(g, rng.permutation(n).tolist()), None) for g in graphs[::3]]
    got = sorted((frozenset(g.member_codes) for g in process_batch(batch, mode)), key=sorted)
    assert got == brute_groups(graphs, mode)


def test_search_examples():
    assert search(GenConfig(7, ALL_GRAPHS, RECON)) == []
    full6 = search(GenConfig(6, TOURNAMENTS, RECON), FULL)
    assert [len(g) for g in full6] == [2, 2, 2, 2]
    red7 = search(GenConfig(7, TOURNAMENTS, RECON), REDUCED)
    assert [len(g) for g in red7] == [2, 2, 2]
    for grp in red7:
        assert full_deck(grp.members[0]) != full_deck(grp.members[1])
    with pytest.raises(ValueError):
        search(GenConfig(6, TOURNAMENTS, EXACT))


@pytest.mark.parametrize("spec,n", [(TOURNAMENTS, 5), (TOURNAMENTS, 6), (DIGRAPHS, 3), (DIGRAPHS, 4), (ORIENTED, 4)])
def test_full_groups_lie_inside_reduced_groups(spec, n):
    reduced = [set(g.member_codes) for g in search(GenConfig(n, spec, RECON), REDUCED)]
    for grp in search(GenConfig(n, spec, RECON), FULL):
        assert any(set(grp.member_codes) <= r for r in reduced)
        assert len({full_deck(m) for m in grp.members}) == 1


@pytest.mark.parametrize("n", [3, 4, 5])
def test_digraph_groups_homogeneous_in_tournamentness(n):
    for mode in (REDUCED, FULL):
        for grp in search(GenConfig(n, DIGRAPHS, RECON), mode):
            assert len({is_tournament(m) for m in grp.members}) == 1


def parent_sets(spec, n):
    parents = {}
    generate(GenConfig(n, spec, RECON), lambda p, c: parents.setdefault(code(c), set()).add(code(p)))
    return parents


@pytest.mark.parametrize("spec,n", [(TOURNAMENTS, 6), (TOURNAMENTS, 7), (DIGRAPHS, 4), (ORIENTED, 5), (ALL_GRAPHS, 3)])
def test_parent_set_agreement(spec, n):
    parents = parent_sets(spec, n)
    for mode in (REDUCED, FULL):
        for grp in search(GenConfig(n, spec, RECON), mode):
            sets = [parents[c] for c in grp.member_codes]
            assert all(s == sets[0] for s in sets) and sets[0]
            assert set(grp.parents) == sets[0]


def test_process_batch_records_parents():
    left, right = load_fixtures()[0].members
    pl, pr = delete_vertex(left, 6), delete_vertex(right, 6)
    (grp,) = process_batch([(left, pl), (right, pr)])
    assert set(grp.parents) == {code(pl), code(pr)}


def test_merge_groups_unites_parents():
    groups = search(GenConfig(6, TOURNAMENTS, RECON), FULL)
    twice = merge_groups(groups + groups)
    assert [g.key for g in twice] == [g.key for g in groups]
    assert [g.parents for g in twice] == [g.parents for g in groups]


def test_batch_cap(monkeypatch):
    monkeypatch.setenv("GRAPHRECON_MAX_BATCH", "3")
    with pytest.raises(BatchTooLarge):
        search(GenConfig(6, ALL_GRAPHS, RECON))
