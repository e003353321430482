from itertools import combinations, product

import numpy as np
import pytest

from graphrecon.canon import (
    brute_canonical,
    canonical,
    canonical_form,
    extension_space,
    group_elements,
    orbits_on_extensions,
)
from graphrecon.genx import EXACT, GenConfig, generate_list
from graphrecon.graphs import (
    ALL_GRAPHS,
    DIGRAPHS,
    ORIENTED,
    TOURNAMENTS,
    LabelledGraph,
    complete_graph,
    directed_cycle,
    empty_graph,
    from_edges,
    path_graph,
    relabel,
    star_graph,
)


def all_labelled(n, kind):
    pairs = list(combinations(range(n), 2))
    states = {"graph": 2, "tournament": 2, "digraph": 4}[kind]
    for choice in product(range(states), repeat=len(pairs)):
        arcs = []
        for (i, j), s in zip(pairs, choice):
            if kind == "graph":
                if s:
                    arcs.append((i, j))
            elif kind == "tournament":
                arcs.append((i, j) if s else (j, i))
            else:
                if s & 1:
                    arcs.append((i, j))
                if s & 2:
                    arcs.append((j, i))
        yield from_edges(n, arcs, directed=kind != "graph")


def test_examples():
    assert canonical(path_graph(3)).canon_code == canonical(from_edges(3, [(1, 0), (0, 2)])).canon_code
    k3 = canonical(complete_graph(3))
    assert len(group_elements(k3.generators, 3)) == 6
    assert k3.vertex_orbits == [frozenset({0, 1, 2})]
    assert sorted(map(sorted, canonical(star_graph(3)).vertex_orbits)) == [[0], [1, 2, 3]]


def test_brute_examples():
    assert len({brute_canonical(g).canon_code for g in all_labelled(4, "graph")}) == 11
    assert len({brute_canonical(g).canon_code for g in all_labelled(4, "tournament")}) == 4
    k1 = brute_canonical(empty_graph(1))
    assert group_elements(k1.generators, 1) == {(0,)}
    with pytest.raises(ValueError):
        brute_canonical(empty_graph(9))


@pytest.mark.parametrize("n,kind", [(3, "graph"), (4, "graph"), (5, "graph"), (3, "digraph"), (4, "tournament"), (5, "tournament")])
def test_agrees_with_brute_force(n, kind):
    fast_classes, slow_classes = {}, {}
    for g in all_labelled(n, kind):
        fast, slow = canonical(g), brute_canonical(g)
        fast_classes.setdefault(fast.canon_code, set()).add(g)
        slow_classes.setdefault(slow.canon_code, set()).add(g)
        assert fast.vertex_orbits == slow.vertex_orbits
        assert len(group_elements(fast.generators, n)) == len(slow.generators)
    assert sorted(map(frozenset, fast_classes.values()), key=hash) == sorted(map(frozenset, slow_classes.values()), key=hash)


@pytest.mark.parametrize("n,spec", [(6, ALL_GRAPHS), (4, DIGRAPHS), (5, ORIENTED), (6, TOURNAMENTS)])
def test_agrees_with_brute_force_on_class_representatives(n, spec):
    reps = generate_list(GenConfig(n, spec, EXACT))
    rng = np.random.default_rng(n)
    for g in reps:
        h = relabel(g, rng.permutation(n).tolist())
        fast, slow = canonical(h), brute_canonical(h)
        assert fast.vertex_orbits == slow.vertex_orbits
        assert len(group_elements(fast.generators, n)) == len(slow.generators)
    assert len({brute_canonical(g).canon_code for g in reps}) == len(reps)


def random_graph(rng, n, directed):
    a = rng.random((n, n)) < rng.uniform(0.1, 0.9)
    np.fill_diagonal(a, False)
    if not directed:
        a = np.triu(a, 1)
        a = a | a.T
    rows = tuple(int(sum(1 << j for j in range(n) if a[i, j])) for i in range(n))
    return LabelledGraph(n, rows, directed)


def test_label_invariance_random():
    rng = np.random.default_rng(20240601)
    for case in range(10_000):
        n = int(rng.integers(1, 11))
        g = random_graph(rng, n, bool(case % 2))
        h = relabel(g, rng.permutation(n).tolist())
        rg, rh = canonical(g), canonical(h)
        assert rg.canon_code == rh.canon_code
        assert canonical_form(g, rg) == canonical_form(h, rh)
        for p in rg.generators:
            assert relabel(g, p) == g


def test_extension_orbit_examples():
    assert len(orbits_on_extensions(complete_graph(2), ALL_GRAPHS)) == 3
    assert sorted(orbits_on_extensions(empty_graph(1, True), TOURNAMENTS)) == [(0, 1), (1, 0)]
    # Burnside over the rotations of the 3-cycle: (8 + 2 + 2) / 3
    assert len(orbits_on_extensions(directed_cycle(3), TOURNAMENTS)) == 4
    assert len(orbits_on_extensions(empty_graph(1, True), DIGRAPHS)) == 4
    with pytest.raises(ValueError):
        orbits_on_extensions(complete_graph(2), TOURNAMENTS)


@pytest.mark.parametrize("spec,max_n", [(ALL_GRAPHS, 5), (TOURNAMENTS, 5), (ORIENTED, 4), (DIGRAPHS, 3)])
def test_orbit_transversal(spec, max_n):
    kind = spec.extension_kind
    for n in range(1, max_n + 1):
        for g in generate_list(GenConfig(n, spec, EXACT)):
            space = extension_space(n, kind)
            group = group_elements(canonical(g).generators, n)
            reps = orbits_on_extensions(g, spec)
            code_of = {(int(o), int(i)): int(c) for o, i, c in zip(space.out_sets, space.in_sets, space.codes)}
            seen = {}
            for r in reps:
                for p in group:
                    img = int(space.image(p)[code_of[r]])
                    assert seen.setdefault(img, r) == r, "two representatives share an orbit"
            assert set(seen) == set(space.codes[space.structurally_valid].tolist())
