"""One test per acceptance criterion; the conftest hook prints a PASS/FAIL line for each."""

import itertools
import json
import math
import time

import numpy as np
import pytest

from entaudit.bounds import (brute_force_min_max_load, local_dim_lower_bound,
                             symmetric_assignment_check)
from entaudit.cli import body_json, main
from entaudit.dynamic_sim import (certify_graph_script, check_last_round_bound, derive_phires_script,
                                  fuzz_last_round, two_party_script)
from entaudit.feasibility import (D0, D1, Configuration, CutRankTable, enumerate_admissible_distributions,
                                  ghz_w_warmup, verify_prop2)
from entaudit.graph_mbqc import (branch_patterns, build_graph_state, check_stabilizer, fig2_graph,
                                 layout_to_resource_graph, mbqc_prepare, plan_for_layout)
from entaudit.statevector import PureState, QubitLabel, measure_z, schmidt_rank
from entaudit.target_circuit import ALPHA_PI4, ALPHA_ZERO, DEFAULT_LAYOUT, PARTIES, build_target_state

import oracles


@pytest.fixture(scope="module")
def prop2():
    start = time.perf_counter()
    rep = verify_prop2(DEFAULT_LAYOUT)
    return rep, time.perf_counter() - start


@pytest.fixture(scope="module")
def resource():
    return layout_to_resource_graph(DEFAULT_LAYOUT)


@pytest.fixture(scope="module")
def certified(resource):
    return certify_graph_script(resource, derive_phires_script(DEFAULT_LAYOUT), D0)


def test_criterion_1_every_line_tree_violated(prop2):
    rep, elapsed = prop2
    assert len(rep.records) == 5040
    assert all(r.violated and max(r.ranks) >= 3 for r in rep.records)
    assert rep.passed and elapsed < 120


def test_criterion_2_integer_amplitudes_and_svd_agreement(prop2):
    rep, _ = prop2
    exact = build_target_state(DEFAULT_LAYOUT, ALPHA_PI4, "exact").exact
    assert exact.half_power == 15 and len(exact.re) == 256
    assert rep.half_power == 15 and rep.integer_entries
    psi = build_target_state(DEFAULT_LAYOUT, ALPHA_PI4).amplitudes()
    for parties, rank in rep.cut_ranks.items():
        left = sorted(PARTIES.index(p) for p in parties)
        assert rank == oracles.schmidt_rank(psi, 8, left, rtol=1e-9)


def test_criterion_3_mbqc_reproduces_targets(resource):
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    n_aux = len(resource.auxiliaries)
    exact_state = build_graph_state(resource, "exact")
    float_state = exact_state.to_floating()
    for alpha in (ALPHA_ZERO, ALPHA_PI4):
        target = build_target_state(DEFAULT_LAYOUT, alpha, "exact")
        patterns = branch_patterns(16, n_aux, rng)
        assert len(patterns) >= 16
        for bits in patterns:
            out = mbqc_prepare(resource, plan_for_layout(alpha), bits, mode="exact", state=exact_state)
            assert out.exact == target.exact
    for _ in range(20):
        alpha = tuple(rng.uniform(0, 2 * math.pi, size=n_aux))
        target = build_target_state(DEFAULT_LAYOUT, alpha)
        for bits in branch_patterns(16, n_aux, rng):
            out = mbqc_prepare(resource, plan_for_layout(alpha), bits, state=float_state)
            assert oracles.fidelity(out.amplitudes(), target.amplitudes()) >= 1 - 1e-9
    assert time.perf_counter() - start < 60


def test_criterion_4_dynamic_preparation(resource, certified):
    assert certified.passed and certified.matches_graph_state
    assert certified.cz_count == len(resource.edges)
    for entry in certified.run.trace:
        for party, slots in entry.occupancy.items():
            assert 2 ** len(slots) <= D0.dims[party]
    for alpha in (ALPHA_ZERO, ALPHA_PI4):
        out = mbqc_prepare(resource, plan_for_layout(alpha), "both", mode="exact", state=certified.run.state)
        assert out.exact == build_target_state(DEFAULT_LAYOUT, alpha, "exact").exact


def test_criterion_5_last_round_rank_bound():
    fuzz = fuzz_last_round(D1, 500, seed=7, cut_party="v1")
    assert fuzz.runs == 500 and fuzz.violations == 0
    assert fuzz.max_rank <= 2 and fuzz.passed
    assert fuzz.ranks == fuzz_last_round(D1, 500, seed=7, cut_party="v1").ranks
    two = check_last_round_bound(two_party_script(), Configuration({"v1": 4, "v2": 4}), "v1")
    assert (two.rank, two.bound) == (2, 2)


def test_criterion_6_only_line_trees_fit_d0():
    dists = enumerate_admissible_distributions(D0)
    assert len(dists) == 5040
    assert all(g.is_path_with_endpoint("v8") for g in dists)
    assert all(m == 2 for g in dists for _, m in g.capacities)


def test_criterion_7_load_lower_bound():
    start = time.perf_counter()
    for m, d in ((1, 2), (1, 3), (2, 2)):
        rep = brute_force_min_max_load(m, d, 4)
        assert rep.passing > 0 and rep.violations == 0
        assert rep.minimum ** m >= d ** (2 * m - 1)
        assert rep.minimum >= local_dim_lower_bound(m, d) - 1e-12
    sym = symmetric_assignment_check(2, 4)
    assert (sym.edge_capacity, sym.load, sym.condition_holds) == (2, 8, True)
    assert sym.cut_product == sym.required == 16
    assert time.perf_counter() - start < 60


def test_criterion_8_warmup():
    rep = ghz_w_warmup()
    assert rep.ghz.feasible and rep.w.feasible
    assert rep.distributions_222 == []
    assert rep.passed


def _random_state(labels, rng):
    v = rng.normal(size=2 ** len(labels)) + 1j * rng.normal(size=2 ** len(labels))
    return PureState(labels, vector=v / np.linalg.norm(v))


def test_criterion_9_invariants(resource, certified, capsys):
    # stabilizers
    fig2 = fig2_graph()
    assert all(check_stabilizer(fig2, v) for v in fig2.labels)
    state = certified.run.state.reordered(resource.labels)
    assert all(check_stabilizer(resource, v, state=state) for v in resource.labels)

    # rank monotone per measurement branch
    rng = np.random.default_rng(9)
    labels = [QubitLabel(f"q{i}") for i in range(5)]
    for _ in range(100):
        s = _random_state(labels, rng)
        m = labels[int(rng.integers(5))]
        rest = [lab for lab in labels if lab != m]
        left = [rest[i] for i in rng.choice(4, int(rng.integers(1, 4)), replace=False)]
        before = schmidt_rank(s, left)
        for br in measure_z(s, m):
            if br.state is not None:
                assert schmidt_rank(br.state, left) <= before

    # bipartition symmetry over every party subset
    table = CutRankTable(build_target_state(DEFAULT_LAYOUT, ALPHA_PI4, "exact"))
    for k in range(1, 8):
        for side in itertools.combinations(PARTIES, k):
            assert table.rank(side) == table.rank(set(PARTIES) - set(side))

    # report bodies byte-identical under a fixed seed
    for argv in (["check-dynamic", "--fuzz", "50", "--seed", "3"], ["verify-prop1", "--alphas", "2", "--seed", "1"]):
        bodies = []
        for _ in range(2):
            assert main(argv) == 0
            bodies.append(body_json(json.loads(capsys.readouterr().out)["body"]))
        assert bodies[0].encode() == bodies[1].encode()
