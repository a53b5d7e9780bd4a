"""Explicit one-parameter degenerations for fundamental coweights.

For a ``varpi_t``-permissible alcove x (``r = n - t``) the index data below
describe how the zero positions of ``x^(i) - varpi_{i-1}`` move as i runs
from 1 to n + 1.  From them we build polynomial vectors ``v_q(u)``, their
alternating combinations ``v'_q(u)`` and ``v''_q(u)``, and for every i an
``n x r`` matrix ``A^(i)(u)``.  After the twist

    theta_bar_{i-1}(-u^{-N}) = diag(u^{-N}, ..., u^{-N}, 1, ..., 1)   (i - 1 entries u^{-N})

the matrix ``A^(i)`` evaluates at ``u = 0`` to the coordinate matrix with
columns ``e_j``, ``j in J^(i)``.  Specializing u to a nonzero rational z gives
a lattice family over the base ``-z^N``; at ``z = 0`` it gives the special
family of x.  All of this is checked symbolically per alcove.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import coweights as cw
from .alcoves import Alcove, is_permissible
from .global_gr import (
    LatticeFamily,
    family_violations,
    in_X,
    special_family_from_alcove,
)
from .laurent import (
    ONE,
    ZERO,
    Laurent,
    Matrix,
    evaluate,
    from_columns,
    matmul,
    matrix_latex,
    matrix_to_json,
    rank,
    same_row_space,
)
from .lattices import lattice_from_subspace

Vector = tuple[Laurent, ...]


class DegenerationError(RuntimeError):
    """A step that the construction guarantees has failed."""


# -- index data ------------------------------------------------------------

@dataclass(frozen=True)
class AlcoveIndexData:
    """Index bookkeeping for one ``varpi_t``-permissible alcove.

    Every per-q field is a tuple indexed by ``q - 1``; inner tuples are
    indexed from 1 in the notation, so ``c[q - 1][f - 1] = c(q, f)``.
    """

    n: int
    r: int
    J: tuple[tuple[int, ...], ...]  # J[i - 1] = J^(i), i = 1..n+1
    sigma: tuple[int, ...]
    f: tuple[int, ...]
    c: tuple[tuple[int, ...], ...]  # c(q, 1..f_q + 1)
    a: tuple[tuple[int, ...], ...]  # a(q, 1..f_q)
    phi: tuple[tuple[int, ...], ...]  # phi(q, 1..n+1)
    cyc: tuple[frozenset[int], ...]
    M: tuple[int, ...]
    m: tuple[int, ...]
    delta: tuple[int, ...]
    C: tuple[int, ...]

    def j(self, i: int, q: int) -> int:
        return self.J[i - 1][q - 1]

    def a_(self, q: int, f: int) -> int:
        return self.a[q - 1][f - 1]

    def phi_(self, q: int, i: int) -> int:
        return self.phi[q - 1][i - 1]

    def sigma_power(self, q: int, h: int) -> int:
        s = q
        for _ in range(h % self.r):
            s = self.sigma[s - 1]
        return s

    def sigma_inv(self, q: int) -> int:
        return self.sigma.index(q) + 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "J": [list(j) for j in self.J],
            "sigma": list(self.sigma),
            "f": list(self.f),
            "c": [list(v) for v in self.c],
            "a": [list(v) for v in self.a],
            "phi": [list(v) for v in self.phi],
            "M": list(self.M),
            "m": list(self.m),
            "delta": list(self.delta),
            "C": list(self.C),
        }


def _require_fundamental(x: Alcove, t: int) -> None:
    if not 1 <= t <= x.n - 1:
        raise ValueError(f"t={t} outside [1, {x.n - 1}]")
    if not is_permissible(x, cw.fundamental(t, x.n)):
        raise ValueError(f"{x} is not varpi_{t}-permissible")


def index_data(x: Alcove, t: int, descending: bool = False) -> AlcoveIndexData:
    """The index record of x; ``J^(1)`` is ascending unless ``descending``."""
    _require_fundamental(x, t)
    n, r = x.n, x.n - t
    p = x.spine
    first = sorted((j for j in range(1, n + 1) if x.term(1)[j - 1] == 0), reverse=descending)
    J = [tuple(first)]
    for i in range(1, n + 1):
        J.append(tuple(i if j == p[i - 1] else j for j in J[-1]))
    sigma = tuple(J[n].index(j) + 1 for j in J[0])  # j^(1)_q = j^(n+1)_{sigma(q)}

    f, c, a, phi = [], [], [], []
    for q in range(1, r + 1):
        seq = [J[i - 1][q - 1] for i in range(1, n + 2)]
        changes = [i for i in range(2, n + 2) if seq[i - 1] != seq[i - 2]]
        cq = (1, *changes, n + 2)
        f.append(len(changes) + 1)
        c.append(cq)
        a.append(tuple(seq[cq[k] - 1] for k in range(len(cq) - 1)))
        phi.append(tuple(max(k for k in range(1, f[-1] + 1) if cq[k - 1] <= i) for i in range(1, n + 2)))

    cyc, M, m, delta, C = [], [], [], [], []
    for q in range(1, r + 1):
        orbit = [q]
        while sigma[orbit[-1] - 1] != q:
            orbit.append(sigma[orbit[-1] - 1])
        big = max(orbit, key=lambda s: J[0][s - 1])
        cyc.append(frozenset(orbit))
        M.append(big)
        m.append(sigma[big - 1])
        delta.append(orbit.index(big))
        C.append(len(orbit))

    return AlcoveIndexData(
        n=n, r=r, J=tuple(J), sigma=sigma, f=tuple(f), c=tuple(c), a=tuple(a),
        phi=tuple(phi), cyc=tuple(cyc), M=tuple(M), m=tuple(m), delta=tuple(delta), C=tuple(C),
    )


def index_violations(x: Alcove, d: AlcoveIndexData) -> list[str]:
    """Structural facts about the index record that fail; empty when all hold."""
    n, r = d.n, d.r
    out = []
    for i in range(1, n + 2):
        target = x.shifted_term(i) if i <= n else x.term(1)
        expect = tuple(0 if j in d.J[i - 1] else 1 for j in range(1, n + 1))
        if target != expect:
            out.append(f"J^({i}) does not match the zeros of x^({i}) - varpi_{i - 1}")
    if set(d.J[0]) != set(d.J[n]):
        out.append("J^(1) and J^(n+1) differ as sets")
    for q in range(1, r + 1):
        fq, M, mq, dq, C = d.f[q - 1], d.M[q - 1], d.m[q - 1], d.delta[q - 1], d.C[q - 1]
        if d.j(1, q) != d.j(n + 1, d.sigma[q - 1]):
            out.append(f"sigma does not transport J^(1) to J^(n+1) at q={q}")
        if d.a_(q, 1) != d.a_(d.sigma[q - 1], d.f[d.sigma[q - 1] - 1]):
            out.append(f"a(q,1) != a(sigma(q), f_sigma(q)) at q={q}")
        if not (0 == d.delta[M - 1] <= dq <= d.delta[mq - 1] == C - 1 < r):
            out.append(f"cycle bounds on delta fail at q={q}")
        if q != M and d.delta[d.sigma[q - 1] - 1] != dq - 1:
            out.append(f"delta(sigma(q)) != delta(q) - 1 at q={q}")
        if fq > 1 and any(d.f[s - 1] == 1 for s in d.cyc[q - 1]):
            out.append(f"f_q > 1 but some f_s = 1 on the cycle of q={q}")
        for i in range(1, n + 2):
            if d.a_(q, d.phi_(q, i)) != d.j(i, q):
                out.append(f"a(q, phi(q,i)) != j^(i)_q at q={q}, i={i}")
            if fq == 1 and d.phi_(q, i) != 1:
                out.append(f"f_q = 1 but phi(q,{i}) != 1 at q={q}")
        # shape of a(q, .) and phi(q, .)
        for fi in range(2, fq + 1):
            if d.a_(q, fi) != d.c[q - 1][fi - 1] - 1:
                out.append(f"a(q,f) != c(q,f) - 1 at q={q}, f={fi}")
            for i in range(1, n + 2):
                if (d.a_(q, fi) < i) != (fi <= d.phi_(q, i)):
                    out.append(f"a(q,f) < i does not match f <= phi(q,i) at q={q}, f={fi}, i={i}")
        if fq > 1:
            seq = d.a[q - 1]
            if not (seq[0] > seq[1] and all(seq[k] < seq[k + 1] for k in range(1, fq - 1))):
                out.append(f"order of a(q, .) fails at q={q}")
        if any(d.a_(q, fi) > d.a_(M, 1) for fi in range(1, fq + 1)):
            out.append(f"a(q,f) > a(M,1) at q={q}")
        for i in range(d.a_(M, 1) + 1, n + 2):
            if d.phi_(q, i) != fq:
                out.append(f"phi(q,{i}) != f_q at q={q}")
        if fq == n + 1 and d.sigma[q - 1] != q:
            out.append(f"f_q = n + 1 but sigma(q) != q at q={q}")
    return out


# -- vector families -------------------------------------------------------

def beta(h: int, d: AlcoveIndexData) -> int:
    return d.n ** (d.r - h)


def big_b(h: int, d: AlcoveIndexData) -> int:
    return sum(beta(k, d) for k in range(h))


def _u(e: int, coeff: int = 1) -> Laurent:
    return Laurent.monomial(e, coeff)


def _zero_vec(n: int) -> list[Laurent]:
    return [ZERO] * n


def _add_at(vec: list[Laurent], j: int, term: Laurent) -> None:
    vec[j - 1] = vec[j - 1] + term


def _vadd(*vs: Vector) -> Vector:
    return tuple(sum(col, ZERO) for col in zip(*vs))


def _vscale(c: Laurent, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def unit_vector(j: int, n: int) -> Vector:
    return tuple(ONE if k == j else ZERO for k in range(1, n + 1))


def v_vector(q: int, d: AlcoveIndexData) -> Vector:
    """``v_q(u) = e_{a(q,1)} + sum_{f=2}^{f_q} u^{beta(delta)(f_q + 1 - f)} e_{a(q,f)}``."""
    fq, dq = d.f[q - 1], d.delta[q - 1]
    vec = _zero_vec(d.n)
    _add_at(vec, d.a_(q, 1), ONE)
    for fi in range(2, fq + 1):
        _add_at(vec, d.a_(q, fi), _u(beta(dq, d) * (fq + 1 - fi)))
    return tuple(vec)


def _need_long(q: int, d: AlcoveIndexData) -> None:
    if d.f[q - 1] == 1:
        raise ValueError(f"f_{q} = 1: v'_q is only defined when f_q > 1")


def v_prime_vector(q: int, d: AlcoveIndexData) -> Vector:
    """``v'_q = sum_{h=0}^{delta} (-1)^h u^{B(delta - h)} v_{sigma^h(q)}``."""
    _need_long(q, d)
    return _vadd(*(_vscale(c, v_vector(s, d)) for s, c in v_prime_coefficients(q, d).items()))


def v_prime_coefficients(q: int, d: AlcoveIndexData) -> dict[int, Laurent]:
    """``v'_q`` as a combination of ``v_1, ..., v_r``."""
    _need_long(q, d)
    dq = d.delta[q - 1]
    out: dict[int, Laurent] = {}
    for h in range(dq + 1):
        s = d.sigma_power(q, h)
        out[s] = out.get(s, ZERO) + _u(big_b(dq - h, d), (-1) ** h)
    return out


def _inner_tail(q: int, d: AlcoveIndexData, h_from: int) -> list[Laurent]:
    """``sum_{h >= h_from} sum_{f=2}^{f_s - 1} (-1)^h u^{B(delta-h) + beta(delta-h)(f_s + 1 - f)} e_{a(s,f)}``, ``s = sigma^h(q)``."""
    dq = d.delta[q - 1]
    vec = _zero_vec(d.n)
    for h in range(h_from, dq + 1):
        s = d.sigma_power(q, h)
        fs = d.f[s - 1]
        for fi in range(2, fs):
            e = big_b(dq - h, d) + beta(dq - h, d) * (fs + 1 - fi)
            _add_at(vec, d.a_(s, fi), _u(e, (-1) ** h))
    return vec


def v_prime_cancelled(q: int, d: AlcoveIndexData) -> Vector:
    """``v'_q`` after the telescoping cancellation."""
    _need_long(q, d)
    dq, M = d.delta[q - 1], d.M[q - 1]
    vec = _inner_tail(q, d, 0)
    _add_at(vec, d.a_(M, 1), Laurent.const((-1) ** dq))
    _add_at(vec, d.a_(d.sigma_inv(q), 1), _u(big_b(dq + 1, d)))
    return tuple(vec)


def v_prime_split(q: int, d: AlcoveIndexData) -> Vector:
    """``v'_q`` with the ``h = 0`` terms regrouped as ``u^{B(delta)}(v_q - e_{a(q,1)})``."""
    _need_long(q, d)
    dq, M = d.delta[q - 1], d.M[q - 1]
    vec = _inner_tail(q, d, 1)
    _add_at(vec, d.a_(M, 1), Laurent.const((-1) ** dq))
    rest = _vadd(v_vector(q, d), _vscale(Laurent.const(-1), unit_vector(d.a_(q, 1), d.n)))
    return _vadd(tuple(vec), _vscale(_u(big_b(dq, d)), rest))


def v_prime_m_cancelled(q: int, d: AlcoveIndexData, signed: bool = True) -> Vector:
    """The cancelled form of ``v'_m`` for ``m = m(q)``.

    The inner terms carry the sign ``(-1)^h`` inherited from the general
    cancelled form.  ``signed=False`` drops it; that variant disagrees with
    the definition as soon as some ``f_s > 2`` occurs at odd h.
    """
    mq, M, C = d.m[q - 1], d.M[q - 1], d.C[q - 1]
    _need_long(mq, d)
    vec = _zero_vec(d.n)
    _add_at(vec, d.a_(M, 1), Laurent.const((-1) ** (C - 1)) + _u(big_b(C, d)))
    for h in range(C):
        s = d.sigma_power(mq, h)
        fs = d.f[s - 1]
        for fi in range(2, fs):
            e = big_b(C - 1 - h, d) + beta(C - 1 - h, d) * (fs + 1 - fi)
            _add_at(vec, d.a_(s, fi), _u(e, (-1) ** h if signed else 1))
    return tuple(vec)


def _need_double(q: int, d: AlcoveIndexData) -> None:
    _need_long(q, d)
    if q == d.m[q - 1]:
        raise ValueError(f"q={q} equals m(q): v''_q is only defined for q != m(q)")


def v_double_prime_coefficients(q: int, d: AlcoveIndexData) -> dict[int, Laurent]:
    """``v''_q = (1 + (-1)^{C-1} u^{B(C)}) v'_q + (-1)^{C+delta} v'_m`` over ``v_1..v_r``."""
    _need_double(q, d)
    C, dq, mq = d.C[q - 1], d.delta[q - 1], d.m[q - 1]
    lead = ONE + _u(big_b(C, d), (-1) ** (C - 1))
    out: dict[int, Laurent] = {}
    for s, c in v_prime_coefficients(q, d).items():
        out[s] = out.get(s, ZERO) + lead * c
    for s, c in v_prime_coefficients(mq, d).items():
        out[s] = out.get(s, ZERO) + c * (-1) ** (C + dq)
    return out


def v_double_prime_vector(q: int, d: AlcoveIndexData) -> Vector:
    _need_double(q, d)
    C, dq, mq = d.C[q - 1], d.delta[q - 1], d.m[q - 1]
    lead = ONE + _u(big_b(C, d), (-1) ** (C - 1))
    return _vadd(_vscale(lead, v_prime_vector(q, d)), _vscale(Laurent.const((-1) ** (C + dq)), v_prime_vector(mq, d)))


def v_double_prime_rewritten(q: int, d: AlcoveIndexData) -> Vector:
    """``v''_q`` with both ``e_{a(M,1)}`` groups extracted."""
    _need_double(q, d)
    C, dq, mq, M = d.C[q - 1], d.delta[q - 1], d.m[q - 1], d.M[q - 1]
    n = d.n
    eM = unit_vector(d.a_(M, 1), n)
    lead = ONE + _u(big_b(C, d), (-1) ** (C - 1))
    first = _vadd(v_prime_vector(q, d), _vscale(Laurent.const(-((-1) ** dq)), eM))
    second = _vadd(
        v_prime_vector(mq, d),
        _vscale(-(Laurent.const((-1) ** (C - 1)) + _u(big_b(C, d))), eM),
    )
    return _vadd(_vscale(lead, first), _vscale(Laurent.const((-1) ** (C + dq)), second))


def vector_violations(d: AlcoveIndexData) -> list[str]:
    """Failures of the identities relating the vector families."""
    out = []
    n = d.n
    for q in range(1, d.r + 1):
        v = v_vector(q, d)
        if _evaluate_vec(v) != unit_vector(d.a_(q, 1), n):
            out.append(f"v_{q}(0) != e_a(q,1)")
        if any(c.denominator != 1 for a in v for c in a.coeffs.values()):
            out.append(f"v_{q} has non-integer coefficients")
        if d.f[q - 1] == 1:
            continue
        M = d.M[q - 1]
        top = d.a_(M, 1)
        if any(a and not d.a_(q, 2) <= j <= top for j, a in enumerate(v, start=1)):
            out.append(f"v_{q} has a coordinate outside [a(q,2), a(M,1)]")
        vp = v_prime_vector(q, d)
        if vp != v_prime_cancelled(q, d):
            out.append(f"v'_{q} differs from its cancelled form")
        if vp != v_prime_split(q, d):
            out.append(f"v'_{q} differs from its split form")
        if v_prime_vector(d.m[q - 1], d) != v_prime_m_cancelled(q, d):
            out.append(f"v'_m differs from its cancelled form at q={q}")
        if d.delta[q - 1] == 0 and vp != v:
            out.append(f"delta({q}) = 0 but v'_{q} != v_{q}")
        if any(a and j > top for j, a in enumerate(vp, start=1)):
            out.append(f"v'_{q} has a coordinate beyond a(M,1)")
        if q != d.m[q - 1]:
            vpp = v_double_prime_vector(q, d)
            if vpp != v_double_prime_rewritten(q, d):
                out.append(f"v''_{q} differs from its rewritten form")
            if any(a and j > top for j, a in enumerate(vpp, start=1)):
                out.append(f"v''_{q} has a coordinate beyond a(M,1)")
            if any(c.denominator != 1 for a in vpp for c in a.coeffs.values()):
                out.append(f"v''_{q} has non-integer coefficients")
    return out


# -- the five-case table ---------------------------------------------------

def hat_case(q: int, i: int, d: AlcoveIndexData) -> int:
    """Which row (1-5) of the five-case table applies to ``(q, i)``."""
    fq, M, mq = d.f[q - 1], d.M[q - 1], d.m[q - 1]
    phi, a1, aM = d.phi_(q, i), d.a_(q, 1), d.a_(M, 1)
    hits = [
        fq == 1 and i > a1,
        phi == 1 and (fq > 1 or i <= a1),
        2 <= phi <= fq and i <= aM,
        fq > 1 and i > aM and q == mq,
        fq > 1 and i > aM and q != mq,
    ]
    if sum(hits) != 1:
        raise DegenerationError(f"(q={q}, i={i}) matches {sum(hits)} rows of the five-case table")
    return hits.index(True) + 1


def hat_coefficients(q: int, i: int, d: AlcoveIndexData, N: int) -> dict[int, Laurent]:
    """``hat v^(i)_q`` as a combination of ``v_1..v_r`` (the column q of ``B^(i)``)."""
    case = hat_case(q, i, d)
    fq, dq, C = d.f[q - 1], d.delta[q - 1], d.C[q - 1]
    if case == 1:
        return {q: _u(N)}
    if case == 2:
        return {q: ONE}
    if case == 3:
        e = N - big_b(dq, d) - beta(dq, d) * (fq + 1 - d.phi_(q, i))
        return {s: _u(e) * c for s, c in v_prime_coefficients(q, d).items()}
    if case == 4:
        return {s: _u(N, (-1) ** (C - 1)) * c for s, c in v_prime_coefficients(q, d).items()}
    e = N - big_b(dq + 1, d)
    return {s: _u(e) * c for s, c in v_double_prime_coefficients(q, d).items()}


def hat_scalar_exponent(q: int, i: int, d: AlcoveIndexData, N: int) -> int:
    """The power of u multiplying the base vector in the table."""
    case = hat_case(q, i, d)
    dq, fq = d.delta[q - 1], d.f[q - 1]
    return {
        1: N,
        2: 0,
        3: N - big_b(dq, d) - beta(dq, d) * (fq + 1 - d.phi_(q, i)),
        4: N,
        5: N - big_b(dq + 1, d),
    }[case]


def hat_v(q: int, i: int, d: AlcoveIndexData, N: int) -> Vector:
    if not 1 <= q <= d.r or not 1 <= i <= d.n + 1:
        raise IndexError(f"(q={q}, i={i}) outside the index ranges")
    if hat_scalar_exponent(q, i, d, N) < 0:
        raise DegenerationError(f"N={N} gives a negative power of u at (q={q}, i={i})")
    return _vadd(*(_vscale(c, v_vector(s, d)) for s, c in hat_coefficients(q, i, d, N).items()))


def theta_bar_twist(i: int, vec: Vector, N: int) -> Vector:
    """``theta_bar_{i-1}(-u^{-N}) vec``: coordinates ``j <= i - 1`` times ``u^{-N}``."""
    return tuple(a.shift(-N) if j < i else a for j, a in enumerate(vec, start=1))


def _evaluate_vec(vec: Vector) -> tuple[Fraction, ...]:
    return tuple(a(0) for a in vec)


def _has_negative(vec: Vector) -> bool:
    return any(a and a.valuation() < 0 for a in vec)


def evaluation_ok(q: int, i: int, d: AlcoveIndexData, N: int) -> bool:
    """The twisted ``hat v^(i)_q`` is regular at 0 with value ``e_{j^(i)_q}``."""
    if hat_scalar_exponent(q, i, d, N) < 0:
        return False
    twisted = theta_bar_twist(i, hat_v(q, i, d, N), N)
    if _has_negative(twisted):
        return False
    return _evaluate_vec(twisted) == unit_vector(d.j(i, q), d.n)


def n_is_admissible(d: AlcoveIndexData, N: int) -> bool:
    return all(
        evaluation_ok(q, i, d, N) for q in range(1, d.r + 1) for i in range(1, d.n + 2)
    )


def choose_N(d: AlcoveIndexData, limit: Optional[int] = None) -> int:
    """The least ``N >= 1`` meeting every evaluation contract."""
    limit = limit if limit is not None else (d.n + 2) * d.n ** (d.r + 1) + 1
    for N in range(1, limit + 1):
        if n_is_admissible(d, N):
            return N
    raise DegenerationError(f"no admissible N up to {limit}")


# -- matrices --------------------------------------------------------------

@dataclass(frozen=True)
class DegenerationFamily:
    N: int
    A: tuple[Matrix, ...]  # A^(1)..A^(n)
    B: tuple[Matrix, ...]  # B^(2)..B^(n)
    data: AlcoveIndexData

    @property
    def n(self) -> int:
        return self.data.n

    def a_matrix(self, i: int) -> Matrix:
        if i == self.n + 1:
            return hat_matrix(self.data, i, self.N)
        return self.A[i - 1]

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "A": [matrix_to_json(m) for m in self.A],
            "B": [matrix_to_json(m) for m in self.B],
        }

    def latex(self) -> str:
        lines = [f"N = {self.N}"]
        for i, m in enumerate(self.A, start=1):
            lines.append(f"A^{{({i})}}(u) = " + matrix_latex(m))
        for i, m in enumerate(self.B, start=2):
            lines.append(f"B^{{({i})}}(u) = " + matrix_latex(m))
        return "\n".join(lines)


def hat_matrix(d: AlcoveIndexData, i: int, N: int) -> Matrix:
    return from_columns([hat_v(q, i, d, N) for q in range(1, d.r + 1)])


def change_of_basis(d: AlcoveIndexData, i: int, N: int) -> Matrix:
    """``B^(i)(u)`` read off from the defining combinations."""
    r = d.r
    cols = []
    for q in range(1, r + 1):
        coeffs = hat_coefficients(q, i, d, N)
        cols.append(tuple(coeffs.get(s, ZERO) for s in range(1, r + 1)))
    return from_columns(cols)


def family_matrices(x: Alcove, t: int, data: Optional[AlcoveIndexData] = None) -> DegenerationFamily:
    d = data if data is not None else index_data(x, t)
    N = choose_N(d)
    A = tuple(hat_matrix(d, i, N) for i in range(1, d.n + 1))
    B = tuple(change_of_basis(d, i, N) for i in range(2, d.n + 1))
    for i in range(2, d.n + 2):
        lhs = A[i - 1] if i <= d.n else hat_matrix(d, i, N)
        if matmul(A[0], change_of_basis(d, i, N)) != lhs:
            raise DegenerationError(f"A^({i}) != A^(1) B^({i}) for {x}")
    return DegenerationFamily(N, A, B, d)


def twisted_matrix(fam: DegenerationFamily, i: int) -> Matrix:
    """``theta_bar_{i-1}(-u^{-N}) A^(i)(u)``."""
    m = fam.a_matrix(i)
    return tuple(
        tuple(a.shift(-fam.N) if row < i else a for a in m[row - 1]) for row in range(1, fam.n + 1)
    )


def evaluation_at_zero(fam: DegenerationFamily, i: int) -> list[list[Fraction]]:
    return evaluate(twisted_matrix(fam, i), 0)


def coordinate_matrix(cols: tuple[int, ...], n: int) -> list[list[Fraction]]:
    """The n x r matrix with columns ``e_j``, j in ``cols``."""
    return [[Fraction(int(j == row)) for j in cols] for row in range(1, n + 1)]


def _span_rows(m: list[list[Fraction]]) -> list[list[Fraction]]:
    return [list(col) for col in zip(*m)]


def specialize(z, fam: DegenerationFamily, x: Alcove, t: int) -> LatticeFamily:
    """``A(z)``: base ``-z^N`` and members spanned by the twisted ``A^(i)(z)``.

    Each r-dimensional span H in ``Q^n = O^n / t O^n`` becomes the lattice
    ``H + t O^n``.  At ``z = 0`` the spans are the limits at ``u = 0``.
    """
    z = Fraction(z)
    n, r = fam.n, fam.data.r
    members = []
    for i in range(1, n + 1):
        m = evaluate(twisted_matrix(fam, i), z)
        rows = _span_rows(m)
        if rank(rows) != r:
            raise DegenerationError(f"rank drops at z={z} for i={i}")
        members.append(lattice_from_subspace(rows, n))
    return LatticeFamily(-(z ** fam.N), tuple(members))


def generic_consistency(z, fam: DegenerationFamily) -> bool:
    """``span A^(1)(z) = theta_bar_{i-1}(-z^N) span theta_bar_{i-1}(-z^{-N}) A^(i)(z)`` for all i."""
    z = Fraction(z)
    n = fam.n
    base = _span_rows(evaluate(fam.A[0], z))
    for i in range(1, n + 2):
        inner = evaluate(twisted_matrix(fam, i), z)
        back = [[a * z ** fam.N if row < i else a for a in vals] for row, vals in enumerate(inner, start=1)]
        if not same_row_space(base, _span_rows(back)):
            return False
    return True


# -- end-to-end report -----------------------------------------------------

@dataclass
class DegenerationReport:
    x: Alcove
    t: int
    N: Optional[int] = None
    seed: int = 0
    checks: dict[str, bool] = field(default_factory=dict)
    samples: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    family: Optional[DegenerationFamily] = None

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values()) and all(s["passed"] for s in self.samples)

    def to_json(self, include_family: bool = False) -> dict:
        out = {
            "x": self.x.to_json(),
            "t": self.t,
            "N": self.N,
            "seed": self.seed,
            "checks": dict(self.checks),
            "samples": list(self.samples),
            "notes": list(self.notes),
            "passed": self.passed,
        }
        if include_family and self.family is not None:
            out["family"] = self.family.to_json()
            out["evaluation_at_zero"] = [
                [[str(a) for a in row] for row in evaluation_at_zero(self.family, i)]
                for i in range(1, self.family.n + 2)
            ]
        return out


def sample_points(rng: random.Random, count: int, bound: int = 12) -> list[Fraction]:
    """Distinct rationals ``p/q`` with ``0 < p < q <= bound``, drawn with ``rng``."""
    pool = sorted({Fraction(p, q) for q in range(2, bound + 1) for p in range(1, q)})
    return rng.sample(pool, min(count, len(pool)))


def verify_degeneration(x: Alcove, t: int, seed: int = 0, samples: int = 3) -> DegenerationReport:
    """Run the degeneration pipeline for x and record every verdict."""
    report = DegenerationReport(x, t, seed=seed)
    checks = report.checks
    try:
        d = index_data(x, t)
    except ValueError as exc:
        checks["index_data"] = False
        report.notes.append(str(exc))
        return report
    index_problems, vector_problems = index_violations(x, d), vector_violations(d)
    report.notes.extend(index_problems + vector_problems)
    checks["index_invariants"] = not index_problems
    checks["vector_identities"] = not vector_problems
    try:
        fam = family_matrices(x, t, d)
    except DegenerationError as exc:
        checks["family_matrices"] = False
        report.notes.append(str(exc))
        return report
    report.N = fam.N
    report.family = fam
    checks["family_matrices"] = True
    checks["B_polynomial"] = all(
        a.is_zero() or (a.valuation() >= 0 and all(c.denominator == 1 for c in a.coeffs.values()))
        for b in fam.B for row in b for a in row
    )
    checks["evaluation_at_zero"] = all(
        evaluation_at_zero(fam, i) == coordinate_matrix(d.J[i - 1], d.n) for i in range(1, d.n + 2)
    )
    special = special_family_from_alcove(x)
    limit = specialize(0, fam, x, t)
    checks["limit_is_special_family"] = all(a == b for a, b in zip(limit.members, special.members))
    checks["limit_is_family"] = not family_violations(0, limit.members)
    lam = cw.fundamental(t, x.n)
    checks["limit_in_X"] = in_X(limit, lam)
    # the initial order of J^(1) must not matter for the verdict
    try:
        alt = index_data(x, t, descending=True)
        checks["descending_order"] = not index_violations(x, alt) and n_is_admissible(alt, choose_N(alt))
    except DegenerationError as exc:
        checks["descending_order"] = False
        report.notes.append(str(exc))

    rng = random.Random(seed)
    tried = set()
    while len(report.samples) < samples:
        candidates = [z for z in sample_points(rng, samples) if z not in tried]
        if not candidates:
            report.notes.append("ran out of sample points")
            checks["samples_found"] = False
            break
        for z in candidates:
            if len(report.samples) >= samples:
                break
            tried.add(z)
            try:
                gen = specialize(z, fam, x, t)
            except DegenerationError:
                report.notes.append(f"rank drop at z={z}, resampled")
                continue
            entry = {
                "z": str(z),
                "base": str(gen.base),
                "is_family": not family_violations(gen.base, gen.members),
                "in_X": in_X(gen, lam),
                "generic_consistency": generic_consistency(z, fam),
            }
            entry["passed"] = entry["is_family"] and entry["in_X"] and entry["generic_consistency"]
            report.samples.append(entry)
    return report


@lru_cache(maxsize=None)
def cached_verify_degeneration(x: Alcove, t: int, seed: int = 0) -> DegenerationReport:
    return verify_degeneration(x, t, seed)
