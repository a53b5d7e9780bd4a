import random

import pytest
from hypothesis import given

from schubert_lab import coweights as cw
from schubert_lab.alcoves import (
    Alcove,
    base_alcove,
    enumerate_permissible,
    is_permissible,
    relative_position,
    rotate,
    rotate_power,
)
from schubert_lab.orders import (
    IndexOrder,
    b_step,
    compatible,
    compatible_successor,
    default_refinement,
    delta_sequence,
    descend,
    fix_set,
    order_sequence,
    refines,
    table1_leq,
)
from schubert_lab.suites import descent_failures, partial_order_failures, random_alcove
from tests.strategies import alcoves


def test_table1_examples():
    x = Alcove(((0, 1), (1, 1)))
    assert x.spine == (1, 2)
    assert table1_leq(x, 2, 1)
    assert not table1_leq(x, 1, 2)
    for i in (1, 2):
        assert table1_leq(x, i, i)
    with pytest.raises(IndexError):
        table1_leq(x, 0, 1)


def test_fix_set_examples():
    omega = base_alcove(3)
    assert fix_set(omega, 0) == {1, 2, 3}
    assert fix_set(omega, 1) == frozenset()


@given(alcoves())
def test_table1_is_a_partial_order(x):
    assert partial_order_failures(x) == []


@given(alcoves())
def test_fix_sets_rotate(x):
    c_inv = cw.inverse(cw.long_cycle(x.n))
    for m in set(x.term(1)):
        assert fix_set(rotate(x), m) == {c_inv[i - 1] for i in fix_set(x, m)}


def test_default_refinement_examples():
    assert default_refinement(base_alcove(3)).ranking == (1, 2, 3)
    assert default_refinement(Alcove(((0, 1), (1, 1)))).ranking == (2, 1)


@given(alcoves())
def test_default_refinement_linearizes(x):
    order = default_refinement(x)
    assert refines(x, order)
    for i in range(1, x.n + 1):
        for j in range(1, x.n + 1):
            if i != j and table1_leq(x, i, j):
                assert order.less(i, j)


def test_successor_of_base_alcove():
    # 1 < 2 on Fix(omega, 0) transports to c^-1(1) = 2 < c^-1(2) = 1
    omega = base_alcove(2)
    assert compatible_successor(omega, IndexOrder((1, 2))).ranking == (2, 1)


def test_successor_rejects_non_refinement():
    x = Alcove(((0, 1), (1, 1)))
    with pytest.raises(ValueError):
        compatible_successor(x, IndexOrder((1, 2)))


@given(alcoves())
def test_successor_is_compatible(x):
    order = default_refinement(x)
    succ = compatible_successor(x, order)
    assert refines(rotate(x), succ)
    assert compatible(x, order, succ)
    c_inv = cw.inverse(cw.long_cycle(x.n))
    p1 = x.spine[0]
    for i in range(1, x.n + 1):
        for j in range(1, x.n + 1):
            if p1 not in (i, j):
                assert order.less(i, j) == succ.less(c_inv[i - 1], c_inv[j - 1]) or i == j


@given(alcoves())
def test_order_sequence_length(x):
    assert len(order_sequence(x)) == x.n


def test_order_sequence_wraps_around_on_permissible():
    for x in enumerate_permissible((2, 1, 0)):
        orders = order_sequence(x)
        assert compatible(rotate_power(x, x.n - 1), orders[-1], orders[0])


def test_order_sequence_of_base_alcove():
    for n in range(2, 5):
        c = cw.long_cycle(n)
        for k, order in enumerate(order_sequence(base_alcove(n))):
            shift = cw.perm_power(c, -k)
            assert order.ranking == tuple(shift[i - 1] for i in range(1, n + 1))


def test_delta_examples():
    x = Alcove(((0, 1), (1, 1)))
    d1 = delta_sequence(x)[0]
    assert d1 == (2, 1)
    assert cw.permute(d1, x.term(1)) == (1, 0)
    for d in delta_sequence(base_alcove(3)):
        assert cw.permute(d, (0, 0, 0)) == (0, 0, 0)


def test_delta_dominates_on_permissible():
    for x in enumerate_permissible((1, 1, 0)):
        for k, d in enumerate(delta_sequence(x), start=1):
            assert cw.is_dominant(cw.permute(d, x.shifted_term(k)))


@given(alcoves())
def test_delta_dominates_everywhere(x):
    for k, d in enumerate(delta_sequence(x), start=1):
        assert cw.is_dominant(cw.permute(d, x.shifted_term(k)))


def test_descend_examples():
    omega = base_alcove(2)
    assert descend(Alcove(((1, 0), (2, 0))), (1, 0), 1) == omega
    assert descend(Alcove(((0, 1), (1, 1))), (1, 0), 1) == omega


def test_descend_preconditions():
    x = Alcove(((1, 0), (2, 0)))
    with pytest.raises(cw.NotDominant):
        descend(x, (0, 1), 1)
    with pytest.raises(ValueError):
        descend(x, (1, 0), 2)
    with pytest.raises(ValueError):
        descend(Alcove(((0, 1), (0, 2))), (1, 0), 1)
    with pytest.raises(cw.NotDominant):
        descend(base_alcove(3), (1, 1, 1), 1)


def test_b_step_identity_exhaustive_n2():
    for x in enumerate_permissible((1, 0)):
        deltas = delta_sequence(x)
        for k in (1, 2):
            b = b_step(x, 1, k)
            now = cw.permute(cw.inverse(deltas[k - 1]), cw.fundamental(1, 2))
            nxt = cw.permute(cw.inverse(deltas[k % 2]), cw.fundamental(1, 2))
            assert nxt == cw.add(cw.sub(now, cw.unit(b, 2)), cw.unit(x.spine[k - 1], 2))
            if nxt == now:
                assert b == x.spine[k - 1]


@pytest.mark.parametrize("n", [2, 3])
def test_descent_contract(n):
    for lam in cw.dominant_in_box(n, 0, 2):
        for t in range(1, n):
            if lam[t - 1] <= lam[t]:
                continue
            mu = cw.sub(lam, cw.fundamental(t, n))
            for x in enumerate_permissible(lam):
                assert descent_failures(x, lam, t) == [], (x, lam, t)
                y = descend(x, lam, t)
                assert is_permissible(y, mu)
                assert relative_position(x, y) == cw.fundamental(t, n)


def test_descent_random_n4():
    rng = random.Random(1)
    lam = (2, 1, 1, 0)
    xs = enumerate_permissible(lam)
    for x in rng.sample(xs, 40):
        for t in (1, 3):
            assert descent_failures(x, lam, t) == []


def test_random_alcove_is_seeded():
    a = [random_alcove(random.Random(5), 3) for _ in range(2)]
    assert a[0] == a[1]
