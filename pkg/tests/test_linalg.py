from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclekit.linalg import dense_to_sparse, nullspace, rank, solve

entries = st.integers(-3, 3)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[Fraction(draw(entries), draw(st.integers(1, 3))) for _ in range(c)] for _ in range(r)]


@given(matrices())
@settings(max_examples=200)
def test_rank_matches_sympy(rows):
    sparse, shape = dense_to_sparse(rows)
    assert rank(sparse, shape) == sympy.Matrix(rows).rank()


def test_rank_edge_cases():
    assert rank({}, (0, 3)) == 0
    assert rank({}, (3, 3)) == 0
    assert rank(*dense_to_sparse([[1, 2], [2, 4]])) == 1


@given(matrices(), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_solve_returns_a_solution_or_none(rows, x0):
    sparse, (r, c) = dense_to_sparse(rows)
    # a consistent right-hand side built from a known vector
    x0 = [Fraction(v) for v in x0[:c]]
    b = [sum(rows[i][j] * x0[j] for j in range(c)) for i in range(r)]
    x = solve(sparse, (r, c), b)
    assert x is not None
    assert [sum(rows[i][j] * x[j] for j in range(c)) for i in range(r)] == b


def test_solve_inconsistent():
    sparse, shape = dense_to_sparse([[1, 1], [2, 2]])
    assert solve(sparse, shape, [1, 3]) is None


def test_solve_sets_free_unknowns_to_zero():
    sparse, shape = dense_to_sparse([[1, 1, 0]])
    assert solve(sparse, shape, [5]) == [5, 0, 0]


@given(matrices())
def test_nullspace(rows):
    sparse, (r, c) = dense_to_sparse(rows)
    basis = nullspace(sparse, (r, c))
    assert len(basis) == c - sympy.Matrix(rows).rank()
    for v in basis:
        assert all(sum(rows[i][j] * v[j] for j in range(c)) == 0 for i in range(r))
