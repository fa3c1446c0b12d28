import math

import pytest

from entaudit.errors import FormatError
from entaudit.exact_core import ScaledVector
from entaudit.feasibility import (D0, D1, Configuration, CutRankTable, LineTree, ResourceGraph,
                                  enumerate_admissible_distributions, escapes_all_line_trees,
                                  ghz_w_warmup, line_trees, read_config, tree_feasible, verify_prop2)
from entaudit.statevector import PureState, QubitLabel, init_plus
from entaudit.target_circuit import ALPHA_PI4, DEFAULT_LAYOUT, PARTIES, build_target_state

import oracles


@pytest.fixture(scope="module")
def prop2():
    return verify_prop2(DEFAULT_LAYOUT)


@pytest.fixture(scope="module")
def psi_float():
    return build_target_state(DEFAULT_LAYOUT, ALPHA_PI4).amplitudes()


def ghz8():
    labels = [QubitLabel(p) for p in PARTIES]
    return PureState(labels, exact=ScaledVector([1] + [0] * 254 + [1], 1))


def test_line_trees():
    trees = line_trees()
    assert len(trees) == 5040
    assert len({t.order for t in trees}) == 5040
    t = trees[0]
    assert t.path[-1] == "v8" and len(t.edges) == 7
    assert t.prefix(2) == frozenset(t.order[:2])
    assert t.resource_graph().is_path_with_endpoint("v8")


def test_tree_feasible_examples():
    line = LineTree(PARTIES[:7]).resource_graph()
    assert tree_feasible(line, ghz8()).feasible
    assert all(c.rank == 2 for c in tree_feasible(line, ghz8()).edges)
    plus = init_plus([QubitLabel(p) for p in PARTIES])
    assert tree_feasible(line, plus).feasible
    target = build_target_state(DEFAULT_LAYOUT, ALPHA_PI4, "exact")
    for tree in line_trees()[::97]:
        assert not tree_feasible(tree.resource_graph(), target).feasible


def test_tree_feasible_rejects_cycles():
    tri = ResourceGraph.build(("A", "B", "C"), {("A", "B"): 2, ("B", "C"): 2, ("A", "C"): 2})
    labels = [QubitLabel(p) for p in "ABC"]
    with pytest.raises(ValueError, match="trees only"):
        tree_feasible(tri, init_plus(labels))


def test_tree_feasible_monotone_in_capacity():
    target = build_target_state(DEFAULT_LAYOUT, ALPHA_PI4, "exact")
    tree = line_trees()[0].resource_graph()
    base = tree_feasible(tree, target)
    assert not base.feasible
    caps = dict(tree.capacities)
    for edge in caps:
        raised = tree_feasible(ResourceGraph.build(tree.vertices, {**caps, edge: 8}), target)
        assert all(r.ok >= b.ok for r, b in zip(raised.edges, base.edges))
    assert tree_feasible(ResourceGraph.build(tree.vertices, {e: 8 for e in caps}), target).feasible


def test_enumeration_d0(prop2):
    dists = enumerate_admissible_distributions(D0)
    assert len(dists) == 5040
    assert all(g.is_path_with_endpoint("v8") for g in dists)
    assert all(m == 2 for g in dists for _, m in g.capacities)
    for g in dists:
        for v in g.vertices:
            load = math.prod(m for (a, b), m in g.capacities if v in (a, b))
            assert load <= D0.dims[v]


@pytest.mark.parametrize("dims", [
    {"A": 4, "B": 4},
    {"A": 2, "B": 2, "C": 2},
    {"A": 4, "B": 2, "C": 2},
    {"A": 4, "B": 4, "C": 4},
    {"A": 8, "B": 4, "C": 2, "D": 2},
])
def test_enumeration_matches_bruteforce(dims):
    got = [g.capacities for g in enumerate_admissible_distributions(Configuration(dims))]
    assert got == oracles.admissible_distributions(dims)


def test_enumeration_examples():
    two = enumerate_admissible_distributions(Configuration({"A": 4, "B": 4}))
    assert sorted(g.capacities[0][1] for g in two) == [2, 3, 4]
    assert enumerate_admissible_distributions(Configuration({"A": 2, "B": 2, "C": 2})) == []
    with pytest.raises(ValueError):
        enumerate_admissible_distributions(Configuration({f"p{i}": 2 for i in range(11)}))


def test_prop2_report(prop2):
    assert prop2.passed
    assert prop2.half_power == 15 and prop2.integer_entries
    assert len(prop2.records) == 5040 and prop2.violated_count == 5040
    for r in prop2.records:
        assert r.ranks[0] <= 2 and r.ranks[-1] <= 2
        assert 2 <= r.witness_prefix <= 6


def test_prop2_ranks_match_svd(prop2, psi_float):
    assert len(prop2.cut_ranks) == 127
    for parties, rank in prop2.cut_ranks.items():
        left = sorted(PARTIES.index(p) for p in parties)
        assert rank == oracles.schmidt_rank(psi_float, 8, left)


def test_prop2_witnesses_against_oracle(prop2, psi_float):
    for r in prop2.records[::53]:
        assert list(r.ranks) == oracles.line_tree_prefix_ranks(psi_float, PARTIES, r.order)


def test_prop2_zero_angles_fail():
    rep = verify_prop2(DEFAULT_LAYOUT, "zero")
    assert not rep.passed and rep.violated_count == 0
    assert all(max(r.ranks) == 1 for r in rep.records)


def test_prop2_deterministic_across_threads(prop2, monkeypatch):
    monkeypatch.setenv("ENTAUDIT_THREADS", "2")
    par = verify_prop2(DEFAULT_LAYOUT)
    assert [r.to_dict() for r in par.records] == [r.to_dict() for r in prop2.records]
    assert par.cut_ranks == prop2.cut_ranks


def test_rank_symmetry_of_prefix_cuts(prop2):
    table = CutRankTable(build_target_state(DEFAULT_LAYOUT, ALPHA_PI4, "exact"))
    for parties, rank in list(prop2.cut_ranks.items())[::9]:
        assert table.rank(frozenset(PARTIES) - parties) == rank


def test_chain_search_agrees():
    assert escapes_all_line_trees(DEFAULT_LAYOUT)
    assert not escapes_all_line_trees(DEFAULT_LAYOUT, "zero")


def test_warmup():
    rep = ghz_w_warmup()
    assert rep.ghz.feasible and rep.w.feasible
    assert [c.rank for c in rep.w.edges] == [2, 2]
    assert rep.distributions_222 == []
    assert rep.passed


def test_read_config(tmp_path):
    assert read_config("d0") == D0 and read_config("d1") == D1
    p = tmp_path / "c.txt"
    p.write_text("v1 4\n\nv2 2  # comment\n")
    assert read_config(p).dims == {"v1": 4, "v2": 2}
    p.write_text("v1 4\nv2 x\n")
    with pytest.raises(FormatError) as info:
        read_config(p)
    assert info.value.lineno == 2
    with pytest.raises(FormatError):
        read_config(tmp_path / "missing.txt")
