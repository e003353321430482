import pytest

from graphrecon.canon import canon_code, extension_space
from graphrecon.deckcheck import FULL, REDUCED, reduced_deck, search
from graphrecon.digraphs import (
    Fixture,
    card_letters_consistent,
    census_summary,
    classify,
    digraph_extensions,
    is_self_converse,
    load_fixtures,
    parse_fixtures,
    self_converse_scan,
    tournament_census,
    verify_fixture,
)
from graphrecon.genx import RECON, GenConfig
from graphrecon.graphs import (
    ALL_GRAPHS,
    DIGRAPHS,
    ORIENTED,
    TOURNAMENTS,
    LabelledGraph,
    directed_cycle,
    empty_graph,
    from_edges,
    is_tournament,
    transitive_tournament,
)


def codes(graphs):
    return frozenset(canon_code(g) for g in graphs)


def test_extension_examples():
    k1 = empty_graph(1, True)
    assert sorted(digraph_extensions(k1, DIGRAPHS)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(digraph_extensions(k1, TOURNAMENTS)) == 2
    assert len(digraph_extensions(from_edges(2, [(0, 1)], directed=True), TOURNAMENTS)) == 4
    assert all(o & i == 0 for o, i in digraph_extensions(directed_cycle(3), ORIENTED))
    with pytest.raises(ValueError):
        digraph_extensions(k1, ALL_GRAPHS)


@pytest.mark.parametrize("k", range(1, 7))
def test_tournament_extension_space(k):
    space = extension_space(k, "tournament")
    assert len(space.codes) == 2**k
    assert ((space.out_sets | space.in_sets) == (1 << k) - 1).all()
    assert ((space.out_sets & space.in_sets) == 0).all()


def test_census_examples():
    assert [len(g) for g in tournament_census(3, FULL)] == [2]
    assert tournament_census(7, FULL) == []
    assert [len(g) for g in tournament_census(8, FULL)] == [2, 2]
    with pytest.raises(ValueError):
        tournament_census(11)


def test_fixtures_pass():
    fixtures = load_fixtures()
    assert [f.name for f in fixtures] == ["pair1", "pair2", "pair3"]
    for f in fixtures:
        assert f.order == 7 and all(is_tournament(m) for m in f.members)
        rep = verify_fixture(f)
        assert rep.ok, rep.lines()
        assert card_letters_consistent(f)


def test_fixture_with_flipped_arc_fails_with_diff():
    f = load_fixtures()[2]
    rows = list(f.members[0].rows)
    rows[0] ^= 1 << 2  # reverse the arc between 0 and 2
    rows[2] ^= 1 << 0
    broken = Fixture("flipped", (LabelledGraph(7, tuple(rows), True), f.members[1]))
    rep = verify_fixture(broken)
    assert not rep.ok and not rep.checks["equal_reduced"]
    assert any(line.strip().startswith("card &") for line in rep.diff)


def test_fixtures_equal_the_seven_vertex_reduced_groups():
    groups = tournament_census(7, REDUCED)
    assert {frozenset(g.member_codes) for g in groups} == {codes(f.members) for f in load_fixtures()}


def test_parse_fixtures():
    text = "# comment\np-a equal_full &BP_\np-b equal_full &BP_ xyz\n"
    (f,) = parse_fixtures(text)
    assert f.relation == "equal_full" and len(f.members) == 2 and f.card_letters == ("", "xyz")
    with pytest.raises(ValueError):
        parse_fixtures("p-a equal_full &BP_\np-b equal_reduced_not_full &BP_\n")
    with pytest.raises(ValueError):
        Fixture("x", (directed_cycle(3),), relation="other")


def test_self_converse_scan_small():
    scan = self_converse_scan(3)
    assert scan.tournaments == 2 and len(scan.self_converse) == 2
    # every card of either tournament is the single arc, so they collide
    assert reduced_deck(directed_cycle(3)) == reduced_deck(transitive_tournament(3))
    assert [len(c) for c in scan.collisions] == [2]


def test_self_converse_scan_subset_of_census():
    census = {frozenset(g.member_codes) for g in tournament_census(5, REDUCED)}
    for coll in self_converse_scan(5).collisions:
        assert any(codes(coll) <= grp for grp in census)


def test_self_converse_scan_seven():
    fixtures = load_fixtures()
    assert all(is_self_converse(m) for f in fixtures for m in f.members)
    scan = self_converse_scan(7)
    assert {codes(c) for c in scan.collisions} == {codes(f.members) for f in fixtures}


def test_classify_and_summary():
    assert classify(directed_cycle(3)) == "tournament"
    assert classify(from_edges(3, [(0, 1)], directed=True)) == "oriented"
    assert classify(from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 1)], directed=True)) == "2 two-cycles"
    summary = census_summary(search(GenConfig(4, DIGRAPHS, RECON), FULL))
    assert summary == {("tournament", 2): 1, ("oriented", 2): 2, ("1 two-cycles", 2): 2, ("2 two-cycles", 2): 3}
