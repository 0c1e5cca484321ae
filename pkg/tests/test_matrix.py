import random

import pytest
from hypothesis import given, settings, strategies as st

from lrc_regen.matrix import Matrix, rank, solve_in_span


def test_rank_examples(fixture_code):
    assert rank(Matrix.identity(5, 3)) == 5
    assert rank(fixture_code.generator) == 5
    assert rank(Matrix.zeros(3, 4, 3)) == 0


def test_select_columns(fixture_code):
    G = fixture_code.generator
    sub = G.select_columns([0, 1])
    assert sub.shape == (5, 2)
    assert sub.column(0) == (1, 0, 0, 0, 0)
    assert sub.column(1) == (0, 1, 0, 0, 0)
    with pytest.raises(ValueError):
        G.select_columns([])
    with pytest.raises(IndexError):
        G.select_columns([8])
    with pytest.raises(ValueError):
        G.select_columns([1, 1])


def test_solve_in_span_fixture(fixture_code):
    G = fixture_code.generator
    assert solve_in_span(G.select_columns([6]), G.column(7)) == [2]
    assert solve_in_span(G.select_columns([0, 1]), G.column(2)) == [1, 1]
    assert solve_in_span(G.select_columns([0, 1]), G.column(3)) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_in_span(Matrix.identity(3, 5), [1, 2])


def test_solve_canonical_free_variables_zero():
    # columns 1 and 2 equal: free variable set to zero
    basis = Matrix([[1, 1], [2, 2]], 5)
    assert solve_in_span(basis, [3, 1]) == [3, 0]


def _random_matrix(rng, p, r, c):
    return Matrix([[rng.randrange(p) for _ in range(c)] for _ in range(r)], p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 3, 7]), st.integers(1, 5), st.integers(1, 6))
def test_rank_invariances(seed, p, r, c):
    rng = random.Random(seed)
    m = _random_matrix(rng, p, r, c)
    base = rank(m)
    assert base <= min(r, c)
    rows = list(m.rows)
    rng.shuffle(rows)
    assert rank(Matrix(rows, p)) == base
    perm = list(range(c))
    rng.shuffle(perm)
    assert rank(m.select_columns(perm)) == base
    scaled = [list(row) for row in m.rows]
    factor = rng.randrange(1, p)
    scaled[0] = [x * factor for x in scaled[0]]
    assert rank(Matrix(scaled, p)) == base
    assert rank(m.transpose()) == base
    X = perm[: rng.randint(1, c)]
    assert rank(m.select_columns(X)) <= len(X)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 3, 11]), st.integers(1, 5), st.integers(1, 4))
def test_solution_reproduces_target(seed, p, r, c):
    rng = random.Random(seed)
    basis = _random_matrix(rng, p, r, c)
    if rng.random() < 0.5:
        hidden = [rng.randrange(p) for _ in range(c)]
        target = [sum(a * b for a, b in zip(row, hidden)) % p for row in basis.rows]
    else:
        target = [rng.randrange(p) for _ in range(r)]
    coeffs = solve_in_span(basis, target)
    in_span = rank(Matrix.from_columns(basis.columns() + [tuple(target)], p)) == rank(basis)
    assert (coeffs is not None) == in_span
    if coeffs is not None:
        assert [sum(a * b for a, b in zip(row, coeffs)) % p for row in basis.rows] == target
