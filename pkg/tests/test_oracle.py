import numpy as np
import pytest

from graphrecon import genx
from graphrecon.canon import brute_canonical
from graphrecon.digraphs import classify
from graphrecon.graphs import ALL_GRAPHS, DIGRAPHS, ORIENTED, TOURNAMENTS, ClassSpec, LabelledGraph, delete_vertex, relabel
from graphrecon.oracle import (
    OracleRefused,
    card_codes,
    class_representatives,
    cross_check,
    enumerate_posets,
    graph_of,
    is_poset,
    oracle_census,
    oracle_code,
    oracle_codes,
    poset_census,
)


def random_graph(rng, n, directed):
    a = rng.random((n, n)) < 0.5
    np.fill_diagonal(a, False)
    if not directed:
        a = np.triu(a, 1)
        a = a | a.T
    return LabelledGraph(n, tuple(int(sum(1 << j for j in range(n) if a[i, j])) for i in range(n)), directed)


def test_least_code_matches_brute_canonical():
    rng = np.random.default_rng(5)
    for k in range(300):
        n = int(rng.integers(1, 7))
        g = random_graph(rng, n, bool(k % 2))
        expect = int.from_bytes(brute_canonical(g).canon_code[2:], "big")
        assert oracle_code(g) == expect
        assert oracle_code(relabel(g, rng.permutation(n).tolist())) == expect


def test_examples():
    c4 = oracle_census(4, ALL_GRAPHS)
    assert c4.class_count == 11 and c4.full_groups == [] and c4.reduced_groups == []
    c3 = oracle_census(3, ALL_GRAPHS)
    # the 2-vertex cards of P3 and of K2 plus K1 are {K2, E2} for both
    assert c3.full_groups == [] and [len(g) for g in c3.reduced_groups] == [2]
    assert [len(g) for g in oracle_census(2, ALL_GRAPHS).full_groups] == [2]
    t5 = oracle_census(5, TOURNAMENTS)
    assert [len(g) for g in t5.full_groups] == [2]
    assert [len(g) for g in t5.reduced_groups] == [2, 2]


@pytest.mark.parametrize("spec,n", [(ALL_GRAPHS, 5), (TOURNAMENTS, 5), (ORIENTED, 4), (DIGRAPHS, 3), (ClassSpec.parse("girth5"), 6)])
def test_enumeration_routes_agree(spec, n):
    class_representatives.cache_clear()
    assert class_representatives(n, spec, "labelled") == class_representatives(n, spec, "extension")


def test_refusals():
    with pytest.raises(OracleRefused):
        oracle_census(8, ALL_GRAPHS)
    with pytest.raises(OracleRefused):
        class_representatives(5, DIGRAPHS, "labelled")
    with pytest.raises(OracleRefused):
        poset_census(6)


def test_posets():
    two, three, four, five = (poset_census(n) for n in (2, 3, 4, 5))
    assert two.class_count == 2 and [len(g) for g in two.reduced_groups] == [2]
    assert three.class_count == 5 and [len(g) for g in three.reduced_groups] == [3]
    assert (four.class_count, five.class_count) == (16, 63)
    assert four.reduced_groups == [] and five.reduced_groups == []
    assert four.full_groups == [] and five.full_groups == []


@pytest.mark.parametrize("n", [2, 3, 4])
def test_poset_cards_are_point_deleted_posets(n):
    codes = enumerate_posets(n)
    graphs = [graph_of(c, n, True) for c in codes.tolist()]
    assert all(is_poset(g) for g in graphs)
    cards = card_codes(codes, n)
    for g, row in zip(graphs, cards.tolist()):
        subs = [delete_vertex(g, v) for v in range(n)]
        assert all(is_poset(s) for s in subs)
        assert row == oracle_codes(subs)


def test_cross_check_examples():
    t6 = cross_check(6, TOURNAMENTS)
    assert t6.ok and t6.group_match == {"full": True, "reduced": True}
    assert [len(g) for g in oracle_census(6, TOURNAMENTS).full_groups] == [2, 2, 2, 2]
    g5 = cross_check(5, ALL_GRAPHS)
    assert g5.ok and oracle_census(5, ALL_GRAPHS).reduced_groups == []
    o4 = cross_check(4, ORIENTED)
    assert o4.ok
    kinds = sorted(classify(graph_of(min(grp), 4, True)) for grp in oracle_census(4, ORIENTED).full_groups)
    assert kinds == ["oriented", "oriented", "tournament"]


def test_cross_check_reports_divergence(monkeypatch):
    real = genx.generate_list
    monkeypatch.setattr(genx, "generate_list", lambda cfg: real(cfg)[1:])
    rep = cross_check(5, ALL_GRAPHS)
    assert not rep.ok
    assert "1 missing" in rep.mismatches[0]
