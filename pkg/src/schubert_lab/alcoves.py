"""Kottwitz--Rapoport alcoves for GL_n.

An alcove is an n-tuple of coweights ``x = (x1, ..., xn)`` with
``x1 <=co x2 <=co ... <=co xn <=co x1 + (1,...,1)`` and unit size steps.
The term ``x^(n+1) = x1 + (1,...,1)`` is never stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterator, Optional, Sequence

from . import coweights as cw
from .coweights import Coweight, ExtendedWeylElement, Permutation


class InvalidAlcove(ValueError):
    pass


@dataclass(frozen=True)
class Alcove:
    terms: tuple[Coweight, ...]

    def __post_init__(self):
        terms = tuple(cw.coweight(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        n = len(terms)
        if n == 0:
            raise InvalidAlcove("an alcove needs n >= 1 terms")
        for t in terms:
            if len(t) != n:
                raise InvalidAlcove(f"term {t} does not have rank {n}")
        for i in range(n):
            lo, hi = terms[i], self.term(i + 2)
            if not cw.leq_coordinatewise(lo, hi):
                raise InvalidAlcove(f"coordinatewise chain fails at step {i + 1}: {lo} !<= {hi}")
        for i in range(n - 1):
            if sum(terms[i + 1]) != sum(terms[i]) + 1:
                raise InvalidAlcove(f"size step {i + 1} is {sum(terms[i + 1]) - sum(terms[i])}, not 1")

    @property
    def n(self) -> int:
        return len(self.terms)

    def term(self, i: int) -> Coweight:
        """``x^(i)`` for ``1 <= i <= n + 1`` (1-indexed)."""
        n = self.n
        if i == n + 1:
            return tuple(a + 1 for a in self.terms[0])
        if not 1 <= i <= n:
            raise IndexError(i)
        return self.terms[i - 1]

    @cached_property
    def spine(self) -> Permutation:
        """The permutation P(x) with ``x^(i+1) = x^(i) + e_{P(x)(i)}``."""
        images = []
        for i in range(1, self.n + 1):
            diff = cw.sub(self.term(i + 1), self.term(i))
            images.append(diff.index(1) + 1)
        return cw.permutation(images)

    def shifted_term(self, i: int) -> Coweight:
        """``x^(i) - varpi_{i-1}``, the coweight of the i-th special-fiber member."""
        return cw.sub(self.term(i), cw.fundamental(i - 1, self.n))

    def to_json(self) -> list[list[int]]:
        return [list(t) for t in self.terms]

    def __str__(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def validate_alcove(terms: Sequence[Sequence[int]]) -> Alcove:
    return Alcove(tuple(tuple(t) for t in terms))


def base_alcove(n: int) -> Alcove:
    return Alcove(tuple(cw.fundamental(i, n) for i in range(n)))


def alcove_from_spine(first: Coweight, spine: Permutation) -> Alcove:
    """The unique alcove with first term ``first`` and ``P(x) = spine``."""
    n = cw._same_rank(first, spine)
    terms = [tuple(first)]
    for i in range(1, n):
        terms.append(cw.add(terms[-1], cw.unit(spine[i - 1], n)))
    return Alcove(tuple(terms))


def spine_permutation(x: Alcove) -> Permutation:
    return x.spine


def wext_act(w: ExtendedWeylElement, x: Alcove) -> Alcove:
    sigma, lam = w
    cw._same_rank(sigma, lam, x.terms[0])
    return Alcove(tuple(cw.permute(sigma, cw.add(lam, t)) for t in x.terms))


def alcove_to_wext(x: Alcove) -> ExtendedWeylElement:
    p = x.spine
    return ExtendedWeylElement(p, cw.permute(cw.inverse(p), x.terms[0]))


def is_permissible(x: Alcove, lam: Coweight) -> bool:
    cw.require_dominant(lam)
    cw._same_rank(lam, x.terms[0])
    return all(cw.leq_dominance(cw.dom(x.shifted_term(i)), lam) for i in range(1, x.n + 1))


def relative_position(x: Alcove, y: Alcove) -> Optional[Coweight]:
    """The common value of ``dom(x^(i) - y^(i))``, or None if it varies with i."""
    cw._same_rank(x.terms, y.terms)
    values = {cw.dom(cw.sub(a, b)) for a, b in zip(x.terms, y.terms)}
    return values.pop() if len(values) == 1 else None


def rotate(x: Alcove) -> Alcove:
    n = x.n
    c_inv = cw.inverse(cw.long_cycle(n))
    w1 = cw.fundamental(1, n)
    terms = [cw.permute(c_inv, cw.sub(x.term(i + 1), w1)) for i in range(1, n)]
    terms.append(cw.add(cw.permute(c_inv, x.term(1)), cw.fundamental(n - 1, n)))
    return Alcove(tuple(terms))


def rotate_power(x: Alcove, k: int) -> Alcove:
    for _ in range(k % x.n):
        x = rotate(x)
    return x


def _flat(x: Alcove) -> tuple[int, ...]:
    return tuple(a for t in x.terms for a in t)


def enumerate_permissible(lam: Coweight, shard: tuple[int, int] = (0, 1)) -> list[Alcove]:
    """All ``lam``-permissible alcoves, sorted lexicographically by flattened terms.

    Every coordinate of ``x^(i) - varpi_{i-1}`` lies in ``[lam_n, lam_1]``, so
    the first term ranges over a finite box and the spine is built one step
    at a time, pruning as soon as a partial term leaves the permissible set.
    ``shard = (i, m)`` keeps only first terms whose index among the
    admissible first terms (in lexicographic order) is ``i mod m``.
    """
    cw.require_dominant(lam)
    n = len(lam)
    lo, hi = lam[-1], lam[0]
    k, m = shard
    out = []

    def ok(v: Coweight) -> bool:
        return all(lo <= a <= hi for a in v) and cw.leq_dominance(cw.dom(v), lam)

    firsts = [v for v in product(range(lo, hi + 1), repeat=n) if ok(v)]
    for idx, first in enumerate(firsts):
        if idx % m != k:
            continue

        def extend(prefix: list[int], current: Coweight) -> Iterator[list[int]]:
            i = len(prefix) + 1  # current == x^(i)
            if i == n:
                yield prefix + [j for j in range(1, n + 1) if j not in prefix]
                return
            for j in range(1, n + 1):
                if j in prefix:
                    continue
                nxt = cw.add(current, cw.unit(j, n))
                if ok(cw.sub(nxt, cw.fundamental(i, n))):
                    yield from extend(prefix + [j], nxt)

        for spine in extend([], first):
            out.append(alcove_from_spine(first, tuple(spine)))
    out.sort(key=_flat)
    return out


def alcoves_in_box(n: int, lo: int, hi: int) -> Iterator[Alcove]:
    """Every alcove whose first term has all entries in ``[lo, hi]``."""
    for first in product(range(lo, hi + 1), repeat=n):
        for spine in permutations(range(1, n + 1)):
            yield alcove_from_spine(first, spine)
