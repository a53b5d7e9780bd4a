"""Index orders attached to an alcove and the descent construction.

Given an alcove ``x``, the partial order ``i <|_x j`` on ``{1..n}`` is read off
from the first term ``x^(1)`` and the spine ``P(x)``.  Refining it to a total
order for ``x`` and transporting the refinement along rotation produces the
permutations ``delta^(k)`` that sort each ``x^(k) - varpi_{k-1}`` into dominant
position.  Subtracting ``(delta^(k))^{-1}(varpi_t)`` from every term then
yields a ``(lam - varpi_t)``-permissible alcove in relative position
``varpi_t``.

Rotation indexing: ``orders[k]`` belongs to ``rot^k(x)`` for ``k = 0..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key, lru_cache

from . import coweights as cw
from .alcoves import Alcove, is_permissible, relative_position, rotate
from .coweights import Coweight, Permutation


class InconsistentOrder(RuntimeError):
    """A guaranteed property failed; this signals a bug, not bad input."""


def _check_index(x: Alcove, *idx: int) -> None:
    for i in idx:
        if not 1 <= i <= x.n:
            raise IndexError(f"index {i} outside [1, {x.n}]")


def table1_leq(x: Alcove, i: int, j: int) -> bool:
    """``i <|_x j``, row by row."""
    _check_index(x, i, j)
    first = x.term(1)
    xi, xj = first[i - 1], first[j - 1]
    if xi > xj:
        return True  # (1)
    if xi != xj:
        return False
    p_inv = cw.inverse(x.spine)
    si = (p_inv[i - 1] > i) - (p_inv[i - 1] < i)  # -1: P^-1(i) < i, 0: fixed, 1: >
    sj = (p_inv[j - 1] > j) - (p_inv[j - 1] < j)
    if si == -1 and sj == -1:
        return i >= j  # (2)
    if si == -1 and sj >= 0:
        return True  # (3)
    if si == 0 and sj == 0:
        return i == j  # (4)
    if si == 0 and sj == 1:
        return True  # (5)
    if si == 1 and sj == 1:
        return i >= j  # (6)
    return False


def fix_set(x: Alcove, m: int) -> frozenset[int]:
    first, p = x.term(1), x.spine
    return frozenset(i for i in range(1, x.n + 1) if first[i - 1] == m and p[i - 1] == i)


def _fix_level(x: Alcove, i: int):
    """The level m with ``i in Fix(x, m)``, or None."""
    return x.term(1)[i - 1] if x.spine[i - 1] == i else None


@dataclass(frozen=True)
class IndexOrder:
    """A total order on ``{1..n}``: ``ranking`` lists indices from smallest up."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        cw.permutation(self.ranking)

    @property
    def position(self) -> dict[int, int]:
        return {a: k for k, a in enumerate(self.ranking)}

    def less(self, i: int, j: int) -> bool:
        pos = self.position
        return pos[i] < pos[j]


def refines(x: Alcove, order: IndexOrder) -> bool:
    pos = order.position
    n = x.n
    return all(
        pos[i] <= pos[j]
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if table1_leq(x, i, j)
    )


def _linearize(x: Alcove, tie) -> IndexOrder:
    """Sort ``1..n`` by ``<|_x``, breaking ties inside each Fix set with ``tie``."""

    def cmp(i: int, j: int) -> int:
        if i == j:
            return 0
        lij, lji = table1_leq(x, i, j), table1_leq(x, j, i)
        if lij and not lji:
            return -1
        if lji and not lij:
            return 1
        if lij and lji:
            raise InconsistentOrder(f"{i} and {j} are mutually below each other for {x}")
        return tie(i, j)

    order = IndexOrder(tuple(sorted(range(1, x.n + 1), key=cmp_to_key(cmp))))
    if not refines(x, order):
        raise InconsistentOrder(f"linearization {order.ranking} does not refine the order of {x}")
    return order


def default_refinement(x: Alcove) -> IndexOrder:
    """The refinement ordering each Fix(x, m) by increasing index."""

    def tie(i: int, j: int) -> int:
        if _fix_level(x, i) is None or _fix_level(x, i) != _fix_level(x, j):
            raise InconsistentOrder(f"{i}, {j} incomparable but not in a common Fix set of {x}")
        return -1 if i < j else 1

    return _linearize(x, tie)


def compatible_successor(x: Alcove, order: IndexOrder) -> IndexOrder:
    """The unique refinement for ``rot(x)`` compatible with ``order``.

    On ``Fix(rot(x), m) = c^{-1}(Fix(x, m))`` the order is transported from
    ``order`` along ``c^{-1}``.
    """
    if not refines(x, order):
        raise ValueError(f"{order.ranking} does not refine the order of {x}")
    c = cw.long_cycle(x.n)
    pos = order.position
    rx = rotate(x)

    def tie(i: int, j: int) -> int:
        li, lj = _fix_level(rx, i), _fix_level(rx, j)
        if li is None or li != lj:
            raise InconsistentOrder(f"{i}, {j} incomparable but not in a common Fix set of {rx}")
        return -1 if pos[c[i - 1]] < pos[c[j - 1]] else 1

    return _linearize(rx, tie)


def compatible(x: Alcove, order: IndexOrder, successor: IndexOrder) -> bool:
    """Whether the pair (order for x, successor for rot(x)) is compatible."""
    c_inv = cw.inverse(cw.long_cycle(x.n))
    rx = rotate(x)
    pos, spos = order.position, successor.position
    for m in set(x.term(1)):
        fx, frx = fix_set(x, m), fix_set(rx, m)
        if {c_inv[i - 1] for i in fx} != frx:
            return False
        for i in fx:
            for j in fx:
                if (pos[i] < pos[j]) != (spos[c_inv[i - 1]] < spos[c_inv[j - 1]]):
                    return False
    return True


@lru_cache(maxsize=None)
def order_sequence(x: Alcove) -> tuple[IndexOrder, ...]:
    """Orders for ``x, rot(x), ..., rot^{n-1}(x)`` starting from the default refinement."""
    orders = [default_refinement(x)]
    current = x
    for _ in range(x.n - 1):
        orders.append(compatible_successor(current, orders[-1]))
        current = rotate(current)
    if compatible_successor(current, orders[-1]) != orders[0]:
        raise InconsistentOrder(f"wrap-around pair is not compatible for {x}")
    return tuple(orders)


@lru_cache(maxsize=None)
def delta_sequence(x: Alcove) -> tuple[Permutation, ...]:
    """``delta^(1), ..., delta^(n)``.

    ``delta^(k)(i)`` is the 1-based rank of ``c^{1-k}(i)`` in the order
    attached to ``rot^{k-1}(x)``.
    """
    n = x.n
    c = cw.long_cycle(n)
    deltas = []
    for k, order in enumerate(order_sequence(x), start=1):
        shift = cw.perm_power(c, 1 - k)
        pos = order.position
        deltas.append(tuple(pos[shift[i - 1]] + 1 for i in range(1, n + 1)))
    for k, d in enumerate(deltas, start=1):
        if not cw.is_dominant(cw.permute(d, x.shifted_term(k))):
            raise InconsistentOrder(f"delta^({k}) does not dominate x^({k}) - varpi for {x}")
    return tuple(deltas)


def _descent_vector(delta: Permutation, t: int) -> Coweight:
    """``delta^{-1}(varpi_t)``: ones at positions ``delta^{-1}(1..t)``."""
    return cw.permute(cw.inverse(delta), cw.fundamental(t, len(delta)))


def b_step(x: Alcove, t: int, k: int) -> int:
    """The index ``b(t, k)`` with
    ``(delta^(k+1))^{-1}(varpi_t) = (delta^(k))^{-1}(varpi_t) - e_b + e_{P(x)(k)}``
    (``delta^(n+1) = delta^(1)``), found by solving the vector identity.
    """
    n = x.n
    if not 1 <= t <= n - 1:
        raise ValueError(f"t={t} outside [1, {n - 1}]")
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside [1, {n}]")
    deltas = delta_sequence(x)
    now = _descent_vector(deltas[k - 1], t)
    nxt = _descent_vector(deltas[k % n], t)
    residual = cw.sub(cw.sub(nxt, now), cw.unit(x.spine[k - 1], n))
    nonzero = [(j, a) for j, a in enumerate(residual, start=1) if a]
    if len(nonzero) != 1 or nonzero[0][1] != -1:
        raise InconsistentOrder(f"no single index b({t},{k}) for {x}: residual {residual}")
    return nonzero[0][0]


def descend(x: Alcove, lam: Coweight, t: int) -> Alcove:
    """A ``(lam - varpi_t)``-permissible alcove ``y`` with x in relative position ``varpi_t``.

    ``y^(k) = x^(k) - (delta^(k))^{-1}(varpi_t)``.  The alcove conditions and
    the permissibility of y are re-checked; a failure raises InconsistentOrder.
    """
    cw.require_dominant(lam)
    n = x.n
    if len(lam) != n:
        raise cw.RankMismatch(f"rank {len(lam)} != {n}")
    if not 1 <= t <= n - 1:
        raise ValueError(f"t={t} outside [1, {n - 1}]")
    mu = cw.sub(lam, cw.fundamental(t, n))
    if not cw.is_dominant(mu):
        raise cw.NotDominant(f"lam - varpi_{t} = {mu} is not dominant")
    if not is_permissible(x, lam):
        raise ValueError(f"{x} is not {lam}-permissible")
    deltas = delta_sequence(x)
    terms = tuple(cw.sub(x.term(k), _descent_vector(deltas[k - 1], t)) for k in range(1, n + 1))
    try:
        y = Alcove(terms)
    except ValueError as exc:
        raise InconsistentOrder(f"descent of {x} is not an alcove: {exc}") from exc
    if not is_permissible(y, mu):
        raise InconsistentOrder(f"descent {y} of {x} is not {mu}-permissible")
    if relative_position(x, y) != cw.fundamental(t, n):
        raise InconsistentOrder(f"{x} is not in relative position varpi_{t} to {y}")
    return y
