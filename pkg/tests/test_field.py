import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from icelab import field

P = st.sampled_from([2, 3, 5])


@st.composite
def matrices(draw, max_side=5):
    p = draw(P)
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c), p


def test_rref_small():
    r, piv = field.rref(np.array([[1, 1], [1, 1]]), 2)
    assert piv == [0]
    assert r.tolist() == [[1, 1], [0, 0]]


def test_inverse_mod3():
    a = np.array([[1, 2], [0, 1]])
    inv = field.inverse(a, 3)
    assert ((a @ inv) % 3).tolist() == [[1, 0], [0, 1]]


def test_solve_inconsistent():
    assert field.solve(np.array([[1], [1]]), np.array([0, 1]), 2) is None


def test_solve_empty_system():
    assert field.solve(field.zeros(2, 0), np.zeros(2, dtype=np.int64), 2).shape == (0,)
    assert field.solve(field.zeros(2, 0), np.array([1, 0]), 2) is None


def test_subspace_count_f2():
    # Gaussian binomials: F_2^3 has 1 + 7 + 7 + 1 subspaces
    assert sum(1 for _ in field.iter_subspaces(3, 3, 2)) == 16


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_nullity(mp):
    a, p = mp
    ns = field.nullspace(a, p)
    assert field.rank(a, p) + ns.shape[0] == a.shape[1]
    assert not ((a @ ns.T) % p).any()


@given(matrices(), st.data())
@settings(max_examples=80, deadline=None)
def test_solve_recovers_consistent_rhs(mp, data):
    a, p = mp
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])), dtype=np.int64)
    b = (a @ x) % p if a.size else np.zeros(a.shape[0], dtype=np.int64)
    y = field.solve(a, b, p)
    assert y is not None
    assert np.array_equal((a @ y) % p if a.size else np.zeros(a.shape[0], dtype=np.int64), b)
