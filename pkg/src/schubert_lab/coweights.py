"""Coweights of GL_n, permutations, and the two partial orders on coweights.

Coweights are plain tuples of ints; permutations are tuples of 1-indexed
images, so ``sigma[i - 1] == sigma(i)``.  The Weyl group acts by
``(sigma . lam)[sigma(i)] = lam[i]``, which is the action of the permutation
matrix ``e_i -> e_{sigma(i)}``.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, NamedTuple, Sequence, Tuple

Coweight = Tuple[int, ...]
Permutation = Tuple[int, ...]


class RankMismatch(ValueError):
    pass


class NotDominant(ValueError):
    pass


def coweight(entries: Iterable[int]) -> Coweight:
    cw = tuple(int(a) for a in entries)
    if not cw:
        raise ValueError("a coweight needs rank n >= 1")
    return cw


def _same_rank(*items: Sequence) -> int:
    n = len(items[0])
    for it in items[1:]:
        if len(it) != n:
            raise RankMismatch(f"rank {len(it)} != {n}")
    return n


def size(lam: Coweight) -> int:
    return sum(lam)


def is_dominant(lam: Coweight) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def require_dominant(lam: Coweight) -> None:
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")


def dom(lam: Coweight) -> Coweight:
    return tuple(sorted(lam, reverse=True))


def add(lam: Coweight, mu: Coweight) -> Coweight:
    _same_rank(lam, mu)
    return tuple(a + b for a, b in zip(lam, mu))


def sub(lam: Coweight, mu: Coweight) -> Coweight:
    _same_rank(lam, mu)
    return tuple(a - b for a, b in zip(lam, mu))


def leq_dominance(mu: Coweight, lam: Coweight) -> bool:
    """``mu <= lam`` in the dominance order: equal size, partial sums bounded."""
    _same_rank(mu, lam)
    if sum(mu) != sum(lam):
        return False
    s_mu = s_lam = 0
    for a, b in zip(mu, lam):
        s_mu += a
        s_lam += b
        if s_mu > s_lam:
            return False
    return True


def leq_coordinatewise(lam: Coweight, mu: Coweight) -> bool:
    _same_rank(lam, mu)
    return all(a <= b for a, b in zip(lam, mu))


def fundamental(i: int, n: int) -> Coweight:
    """The fundamental coweight: ``i`` ones followed by ``n - i`` zeros."""
    if not 0 <= i <= n:
        raise ValueError(f"fundamental index {i} outside [0, {n}]")
    return (1,) * i + (0,) * (n - i)


def unit(j: int, n: int) -> Coweight:
    """Standard basis vector e_j (1-indexed)."""
    if not 1 <= j <= n:
        raise ValueError(f"basis index {j} outside [1, {n}]")
    return tuple(1 if k == j else 0 for k in range(1, n + 1))


def constant(a: int, n: int) -> Coweight:
    return (a,) * n


# -- permutations ----------------------------------------------------------

def permutation(images: Iterable[int]) -> Permutation:
    p = tuple(int(a) for a in images)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"{p} is not a permutation of 1..{len(p)}")
    return p


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """``sigma o tau``, i.e. ``i -> sigma(tau(i))``."""
    _same_rank(sigma, tau)
    return tuple(sigma[tau[i] - 1] for i in range(len(tau)))


def inverse(sigma: Permutation) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, start=1):
        inv[s - 1] = i
    return tuple(inv)


def perm_power(sigma: Permutation, k: int) -> Permutation:
    n = len(sigma)
    base = sigma if k >= 0 else inverse(sigma)
    out = identity(n)
    for _ in range(abs(k)):
        out = compose(base, out)
    return out


def long_cycle(n: int) -> Permutation:
    """The n-cycle ``c = (1 2 ... n)``: ``i -> i + 1``, ``n -> 1``."""
    return tuple(list(range(2, n + 1)) + [1])


def apply_perm(sigma: Permutation, i: int) -> int:
    return sigma[i - 1]


def permute(sigma: Permutation, lam: Coweight) -> Coweight:
    """``sigma . lam``: the entry of ``lam`` at ``i`` moves to ``sigma(i)``."""
    n = _same_rank(sigma, lam)
    out = [0] * n
    for i in range(n):
        out[sigma[i] - 1] = lam[i]
    return tuple(out)


class ExtendedWeylElement(NamedTuple):
    """``w = (sigma, lam)`` acting as the matrix ``sigma_dot * t^lam``."""

    perm: Permutation
    translation: Coweight

    @property
    def n(self) -> int:
        return _same_rank(self.perm, self.translation)

    def __mul__(self, other: "ExtendedWeylElement") -> "ExtendedWeylElement":
        # sigma t^lam tau t^mu = (sigma tau) t^{tau^{-1}(lam) + mu}
        sigma, lam = self
        tau, mu = other
        _same_rank(sigma, tau, lam, mu)
        return ExtendedWeylElement(
            compose(sigma, tau), add(permute(inverse(tau), lam), mu)
        )

    @classmethod
    def identity(cls, n: int) -> "ExtendedWeylElement":
        return cls(identity(n), (0,) * n)


# -- enumeration oracles ---------------------------------------------------

def dominant_in_box(n: int, lo: int, hi: int) -> list[Coweight]:
    """All dominant coweights of rank n with entries in [lo, hi], lexicographic."""
    return [lam for lam in product(range(lo, hi + 1), repeat=n) if is_dominant(lam)]


def dominated_set(lam: Coweight) -> set[Coweight]:
    """All dominant ``mu <= lam``, by brute force over the box ``[lam_n, lam_1]^n``."""
    require_dominant(lam)
    n = len(lam)
    return {
        mu
        for mu in product(range(lam[-1], lam[0] + 1), repeat=n)
        if is_dominant(mu) and leq_dominance(mu, lam)
    }
