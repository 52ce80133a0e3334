import numpy as np
import pytest
from hypothesis import given, strategies as st

from artin import exactlin as el
from oracles import gf_rank

PRIMES = [2, 3, 5, 7]


@st.composite
def matrices(draw, max_side=5):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(1, max_side))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(vals, dtype=np.int64).reshape(r, c)


@given(matrices())
def test_rank_matches_sympy(pm):
    p, a = pm
    assert el.rank(a, p) == gf_rank(a, p)


@given(matrices())
def test_nullspace_is_kernel_of_right_size(pm):
    p, a = pm
    k = el.nullspace(a, p)
    assert k.shape[0] == a.shape[1] - gf_rank(a, p)
    if k.size and a.size:
        assert not (a @ k.T % p).any()


@given(matrices())
def test_rref_idempotent_and_pivots(pm):
    p, a = pm
    r, piv = el.rref_arr(a, p)
    r2, piv2 = el.rref_arr(r, p)
    assert np.array_equal(r % p, r2 % p) and piv == piv2
    assert len(piv) == el.rank(a, p)


@given(matrices(), st.data())
def test_solve_consistent_systems(pm, data):
    p, a = pm
    if a.shape[0] == 0:
        return
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])))
    b = a @ x % p
    sol = el.solve_arr(a, b, p)
    assert sol is not None
    assert np.array_equal(a @ sol[:, 0] % p, b)


def test_inconsistent_system_returns_none():
    a = np.array([[1, 0], [1, 0]])
    assert el.solve_arr(a, np.array([0, 1]), 3) is None


@pytest.mark.parametrize("p", PRIMES)
def test_inverse_roundtrip(p):
    a = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1 if p != 2 else 0]]) % p
    if gf_rank(a, p) < 3:
        assert el.inverse(a, p) is None
        return
    inv = el.inverse(a, p)
    assert np.array_equal(a @ inv % p, np.eye(3, dtype=np.int64))


def test_charpoly_and_minpoly_of_jordan_block():
    j = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    # coefficients low degree first or high first: compare both to x^3
    cp = el.charpoly(j, 5)
    assert sorted(cp) == [0, 0, 0, 1]
    assert el.minpoly(j, 5) == cp


def test_non_prime_rejected():
    assert not el.is_prime(9) and el.is_prime(7)
