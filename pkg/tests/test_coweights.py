from itertools import accumulate, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from schubert_lab import coweights as cw
from tests.strategies import coweights, dominant_coweights


def brute_leq(mu, lam):
    """Dominance via nonnegative combinations of simple coroots e_i - e_{i+1}."""
    if sum(mu) != sum(lam):
        return False
    diff = cw.sub(lam, mu)
    return all(s >= 0 for s in accumulate(diff))


def test_size_examples():
    assert cw.size(cw.fundamental(2, 3)) == 2
    assert cw.size((0, 0, 0)) == 0
    assert cw.size((3, -1, 2)) == 4


def test_dom_examples():
    assert cw.dom((0, 1, 0)) == (1, 0, 0)
    assert cw.dom((2, -1, 3)) == (3, 2, -1)


def test_leq_dominance_examples():
    assert cw.leq_dominance((1, 1, 0), (2, 0, 0))
    assert not cw.leq_dominance((1, 1, 1), (2, 0, 0))
    assert cw.leq_dominance((2, 0, 0), (2, 0, 0))


def test_leq_coordinatewise_examples():
    assert cw.leq_coordinatewise((0, 0), (1, 0))
    assert not cw.leq_coordinatewise((1, 0), (0, 1))
    for n in range(1, 5):
        for i in range(n):
            assert cw.leq_coordinatewise(cw.fundamental(i, n), cw.fundamental(i + 1, n))


def test_fundamental_examples():
    assert cw.fundamental(0, 3) == (0, 0, 0)
    assert cw.fundamental(2, 4) == (1, 1, 0, 0)
    assert cw.fundamental(3, 3) == (1, 1, 1)
    with pytest.raises(ValueError):
        cw.fundamental(4, 3)


def test_permute_swap():
    assert cw.permute((2, 1), (0, 1)) == (1, 0)
    assert cw.permute((2, 3, 1), (5, 6, 7)) == (7, 5, 6)


def test_dominated_set_examples():
    assert cw.dominated_set((1, 0)) == {(1, 0)}
    assert cw.dominated_set((2, 0)) == {(2, 0), (1, 1)}
    for n in range(1, 5):
        for a in range(-1, 3):
            lam = (a,) * n
            assert cw.dominated_set(lam) == {lam}


def test_dominated_set_rejects_non_dominant():
    with pytest.raises(cw.NotDominant):
        cw.dominated_set((0, 1))


def test_rank_mismatch():
    with pytest.raises(cw.RankMismatch):
        cw.add((1, 0), (1, 0, 0))


@given(st.data())
def test_leq_dominance_matches_coroot_oracle(data):
    n = data.draw(st.integers(1, 4))
    mu = data.draw(coweights(n))
    lam = data.draw(coweights(n))
    assert cw.leq_dominance(mu, lam) == brute_leq(mu, lam)


@given(coweights())
def test_dom_is_dominant_and_idempotent(lam):
    d = cw.dom(lam)
    assert cw.is_dominant(d)
    assert cw.dom(d) == d
    assert sorted(d) == sorted(lam)


@given(st.data())
def test_permutation_action_is_a_left_action(data):
    n = data.draw(st.integers(1, 5))
    sigma = tuple(data.draw(st.permutations(range(1, n + 1))))
    tau = tuple(data.draw(st.permutations(range(1, n + 1))))
    lam = data.draw(coweights(n))
    assert cw.permute(cw.compose(sigma, tau), lam) == cw.permute(sigma, cw.permute(tau, lam))
    assert cw.permute(cw.inverse(sigma), cw.permute(sigma, lam)) == lam
    assert cw.dom(cw.permute(sigma, lam)) == cw.dom(lam)


def test_long_cycle():
    c = cw.long_cycle(4)
    assert c == (2, 3, 4, 1)
    assert cw.perm_power(c, 4) == cw.identity(4)
    assert cw.perm_power(c, -1) == cw.inverse(c)


@given(st.data())
def test_extended_weyl_product_is_associative(data):
    n = data.draw(st.integers(1, 4))

    def element():
        return cw.ExtendedWeylElement(
            tuple(data.draw(st.permutations(range(1, n + 1)))), data.draw(coweights(n))
        )

    a, b, c = element(), element(), element()
    assert (a * b) * c == a * (b * c)
    e = cw.ExtendedWeylElement.identity(n)
    assert a * e == a == e * a


@given(dominant_coweights())
def test_dominated_set_is_lower_set(lam):
    below = cw.dominated_set(lam)
    assert lam in below
    for mu in below:
        assert cw.is_dominant(mu) and cw.leq_dominance(mu, lam)
        assert cw.dominated_set(mu) <= below


def test_dominant_in_box():
    box = cw.dominant_in_box(3, 0, 2)
    assert box == sorted(box)
    assert set(box) == {lam for lam in product(range(3), repeat=3) if lam[0] >= lam[1] >= lam[2]}
