import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entaudit.exact_core import (ExactMatrix, GaussInt, ScaledVector, proportional, rank_exact,
                                 reshape_to_matrix, schmidt_rank_exact)
from entaudit.target_circuit import ALPHA_PI4, DEFAULT_LAYOUT, build_target_state

import oracles

gauss = st.builds(GaussInt, st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
small = st.integers(-3, 3)


def test_gauss_arithmetic():
    a, b = GaussInt(1, 2), GaussInt(3, -1)
    assert a + b == GaussInt(4, 1)
    assert a * b == GaussInt(5, 5)
    assert a.conj() == GaussInt(1, -2)
    assert a.norm() == 5
    assert (a * b).exact_div(b) == a
    with pytest.raises(ArithmeticError):
        GaussInt(1, 0).exact_div(GaussInt(2, 0))
    with pytest.raises(ZeroDivisionError):
        a.exact_div(0)


@given(gauss, gauss)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


def test_big_integers_do_not_overflow():
    x = GaussInt(2**200, 3**100)
    assert (x * x.conj()).re == x.norm()
    assert (x * x.conj()).im == 0


def test_rank_examples():
    assert rank_exact(ExactMatrix.from_rows([[1, 0], [0, 1]])) == 2
    assert rank_exact(ExactMatrix.from_rows([[0] * 3] * 3)) == 0
    assert rank_exact(ExactMatrix.from_rows([[1, 1j], [1j, -1]])) == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 16), st.integers(1, 16), st.integers(0, 16), st.data())
def test_rank_matches_exact_oracle(r, c, k, data):
    # low-rank products make rank deficiency common
    k = min(k, r, c)
    a = data.draw(st.lists(st.lists(st.tuples(small, small), min_size=k, max_size=k), min_size=r, max_size=r))
    b = data.draw(st.lists(st.lists(st.tuples(small, small), min_size=c, max_size=c), min_size=k, max_size=k))
    A = np.array([[complex(*x) for x in row] for row in a], dtype=complex).reshape(r, k)
    B = np.array([[complex(*x) for x in row] for row in b], dtype=complex).reshape(k, c)
    M = A @ B
    rows = [[(int(z.real), int(z.imag)) for z in row] for row in M]
    m = ExactMatrix.from_rows([[complex(*x) for x in row] for row in rows])
    got = rank_exact(m)
    assert got == oracles.rational_rank(rows)
    # the float rank is only trusted when stable under threshold changes
    ranks = {oracles.svd_rank(M, t) for t in (1e-8, 1e-9, 1e-10)}
    if len(ranks) == 1:
        assert got == ranks.pop()


def test_reshape_examples():
    bell = ScaledVector([1, 0, 0, 1])
    assert reshape_to_matrix(bell, [0]).to_lists() == [[GaussInt(1), GaussInt(0)], [GaussInt(0), GaussInt(1)]]
    plus = ScaledVector([1, 1, 1, 1])
    assert reshape_to_matrix(plus, [1]).to_lists() == [[GaussInt(1)] * 2] * 2
    with pytest.raises(ValueError, match="degenerate bipartition"):
        reshape_to_matrix(plus, [])
    with pytest.raises(ValueError, match="degenerate bipartition"):
        reshape_to_matrix(plus, [0, 1])


def test_reshape_target_against_tensor_oracle():
    state = build_target_state(DEFAULT_LAYOUT, ALPHA_PI4, "exact")
    m = reshape_to_matrix(state.exact, [0, 1, 2, 3])
    assert (m.rows, m.cols) == (16, 16)
    idx = {f"v{k}": k - 1 for k in range(1, 9)}
    pairs = [(idx[a], idx[b]) for a, b in DEFAULT_LAYOUT.pairs]
    psi = oracles.zz_circuit(8, pairs, ALPHA_PI4) * 2 ** (state.exact.half_power / 2)
    ref = oracles.coefficient_matrix(psi, 8, [0, 1, 2, 3])
    assert np.allclose(m.to_complex(), ref, atol=1e-9)
    assert all(isinstance(x.re, int) and isinstance(x.im, int) for row in m.to_lists() for x in row)


def test_schmidt_rank_examples():
    ghz = ScaledVector([1] + [0] * 254 + [1])
    plus = ScaledVector([1] * 256)
    for left in ([0], [2, 5], [0, 1, 2, 3], [1, 3, 5, 7, 6]):
        assert schmidt_rank_exact(ghz, left) == 2
        assert schmidt_rank_exact(plus, left) == 1
    with pytest.raises(ValueError):
        schmidt_rank_exact(ScaledVector([0] * 4), [0])


random_vectors = st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(small, small), min_size=2**n, max_size=2**n)
                        .filter(lambda xs: any(x != (0, 0) for x in xs))))


@settings(max_examples=100, deadline=None)
@given(random_vectors, st.data())
def test_schmidt_rank_properties(nv, data):
    n, entries = nv
    v = ScaledVector([complex(*x) for x in entries], data.draw(st.integers(0, 6)))
    left = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=max(1, n - 1)))
    if len(left) == n:
        return
    right = [q for q in range(n) if q not in left]
    r = schmidt_rank_exact(v, sorted(left))
    assert r == schmidt_rank_exact(v, right)
    assert r <= min(2 ** len(left), 2 ** len(right))
    factor = data.draw(gauss.filter(bool))
    assert schmidt_rank_exact(v.scaled_by(factor), sorted(left)) == r
    assert schmidt_rank_exact(ScaledVector.from_parts(v.re, v.im, v.half_power + 3), sorted(left)) == r
    psi = v.to_complex()
    assert r == oracles.schmidt_rank(psi, n, sorted(left))


def test_scaled_vector_equality_aligns_scale():
    a = ScaledVector([1, 1], 1)
    assert a == ScaledVector([2, 2], 3)
    assert a != ScaledVector([1, 1], 2)
    assert a != ScaledVector([1, -1], 1)
    assert proportional(a, ScaledVector([1j, 1j], 0))
    assert not proportional(a, ScaledVector([1, 0], 0))


def test_scaled_vector_length_must_be_power_of_two():
    with pytest.raises(ValueError):
        ScaledVector([1, 2, 3])


@pytest.mark.parametrize("rows,cols", [(2, 64), (64, 2), (4, 256)])
def test_rectangular_rank_paths(rows, cols):
    rng = np.random.default_rng(rows * cols)
    m = rng.integers(-2, 3, size=(rows, cols)) + 1j * rng.integers(-2, 3, size=(rows, cols))
    m[-1] = m[0] * (1 + 1j)
    got = rank_exact(ExactMatrix.from_rows(m.tolist()))
    assert got == oracles.rational_rank([[(int(z.real), int(z.imag)) for z in row] for row in m])


def test_all_bipartitions_of_small_state_match_svd():
    rng = np.random.default_rng(3)
    ent = rng.integers(-2, 3, 16) + 1j * rng.integers(-2, 3, 16)
    v = ScaledVector(ent.tolist())
    for k in range(1, 4):
        for left in itertools.combinations(range(4), k):
            assert schmidt_rank_exact(v, left) == oracles.schmidt_rank(ent, 4, left)
