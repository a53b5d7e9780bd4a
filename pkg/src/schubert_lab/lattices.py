"""Lattices in K^n as column spans of invertible Laurent matrices.

K is the Laurent series field and O the power series ring in ``t``.  Every
lattice here is the O-span of the columns of an invertible matrix with
Laurent polynomial entries, so containment and quotient dimensions reduce to
valuations of polynomials and to rational linear algebra in finite windows
``t^b O^n / t^a O^n``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import coweights as cw
from .coweights import Coweight
from .laurent import (
    Laurent,
    Matrix,
    T,
    adjugate,
    determinant,
    matmul,
    matrix,
    matrix_to_json,
    monomial_diagonal,
    rank,
    rref,
    shape,
)


class SingularBasis(ValueError):
    pass


class WindowViolation(ValueError):
    pass


class Lattice:
    """The O-span of the columns of ``basis``.

    Equality is symmetric containment; the hash only uses the rank and the
    valuation, which are invariants of the lattice.
    """

    __slots__ = ("basis", "_det")

    def __init__(self, basis: Matrix):
        basis = matrix(basis)
        rows, cols = shape(basis)
        if rows != cols or rows == 0:
            raise ValueError(f"a lattice basis must be square, got {rows}x{cols}")
        det = determinant(basis)
        if not det:
            raise SingularBasis("basis matrix has zero determinant")
        self.basis = basis
        self._det = det

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def det(self) -> Laurent:
        return self._det

    def valuation(self) -> int:
        return self._det.valuation()

    def transform(self, g: Matrix) -> "Lattice":
        """``g(L)`` for an invertible matrix ``g``."""
        return Lattice(matmul(g, self.basis))

    def scale(self, k: int) -> "Lattice":
        """``t^k L``."""
        return Lattice(tuple(tuple(a.shift(k) for a in row) for row in self.basis))

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return (
            self.n == other.n
            and self.valuation() == other.valuation()
            and contains(self, other)
            and contains(other, self)
        )

    def __hash__(self):
        return hash((self.n, self.valuation()))

    def __repr__(self):
        return f"Lattice({matrix_to_json(self.basis)})"

    def to_json(self):
        return matrix_to_json(self.basis)


def valuation(lat: Lattice) -> int:
    return lat.valuation()


def standard_lattice(n: int) -> Lattice:
    return coweight_lattice((0,) * n)


def scalar_lattice(k: int, n: int) -> Lattice:
    """``t^k O^n``."""
    return coweight_lattice((k,) * n)


def coweight_lattice(lam: Coweight) -> Lattice:
    """``L^lam = t^lam O^n``."""
    return Lattice(monomial_diagonal(cw.coweight(lam)))


@lru_cache(maxsize=200_000)
def _contains(big: Matrix, small: Matrix) -> bool:
    # small = big * X with X = adj(big) small / det(big); X must lie in O.
    det = determinant(big)
    v = det.valuation()
    prod = matmul(adjugate(big), small)
    return all(a.is_zero() or a.valuation() >= v for row in prod for a in row)


def contains(lat: Lattice, other: Lattice) -> bool:
    """Whether ``other`` is a sublattice of ``lat``."""
    if lat.n != other.n:
        raise cw.RankMismatch(f"rank {other.n} != {lat.n}")
    if other.valuation() < lat.valuation():
        return False
    return _contains(lat.basis, other.basis)


def lattices_equal(lat: Lattice, other: Lattice) -> bool:
    return lat == other


def quotient_dim(lat: Lattice, other: Lattice) -> int:
    """``dim lat / other`` for ``other`` inside ``lat``."""
    if not contains(lat, other):
        raise ValueError("quotient_dim needs the second lattice inside the first")
    return other.valuation() - lat.valuation()


def is_lattice_chain(links: Sequence[Lattice]) -> bool:
    """``L_1 > L_2 > ... > L_n > t L_1`` with one-dimensional steps."""
    n = len(links)
    if n == 0 or any(lat.n != n for lat in links):
        return False
    seq = list(links) + [links[0].scale(1)]
    return all(
        contains(a, b) and b.valuation() - a.valuation() == 1 for a, b in zip(seq, seq[1:])
    )


# -- finite windows --------------------------------------------------------

def _window_coords(n: int, a: int, b: int) -> list[tuple[int, int]]:
    """Coordinates of ``t^b O^n / t^a O^n``: (row k, exponent e) with e ascending."""
    return [(k, e) for e in range(b, a) for k in range(n)]


def truncated_subspace(lat: Lattice, a: int, b: int) -> list[list[Fraction]]:
    """The image of ``lat`` in ``t^b O^n / t^a O^n`` as a reduced row basis.

    Coordinates are ordered by exponent first, then by row, so the subspace
    ``t^i O^n / t^a O^n`` is spanned by a tail of the coordinate vector.
    """
    n = lat.n
    if a < b:
        raise WindowViolation(f"window needs a >= b, got a={a}, b={b}")
    if not contains(scalar_lattice(b, n), lat) or not contains(lat, scalar_lattice(a, n)):
        raise WindowViolation(f"lattice is not between t^{a} O^n and t^{b} O^n")
    rows = _window_rows([[lat.basis[k][j] for k in range(n)] for j in range(n)], n, a, b)
    return rref(rows)[0]


def _window_rows(gens: Sequence[Sequence[Laurent]], n: int, a: int, b: int) -> list[list[Fraction]]:
    """Window images of ``t^s g`` for every generator ``g`` and ``0 <= s < a - b``."""
    coords = _window_coords(n, a, b)
    index = {c: p for p, c in enumerate(coords)}
    rows = []
    for g in gens:
        for k, entry in enumerate(g):
            low = entry.valuation()
            if low is not None and low < b:
                raise WindowViolation(f"generator has a t^{low} term below t^{b}")
        for s in range(a - b):
            vec = [Fraction(0)] * len(coords)
            for k, entry in enumerate(g):
                for e, c in entry.coeffs.items():
                    if e + s < a:
                        vec[index[(k, e + s)]] = c
            if any(vec):
                rows.append(vec)
    return rows


def lattice_from_generators(gens: Sequence[Sequence[Laurent]], n: int, a: int, b: int) -> Lattice:
    """The lattice spanned by ``gens`` together with ``t^a O^n``.

    Every generator must lie in ``t^b O^n``; terms of degree ``>= a`` are
    irrelevant and dropped.  The returned basis is in Hermite form: column k
    has zeros in rows ``< k`` and its row-k entry has the least valuation
    possible among such lattice vectors.
    """
    if a < b:
        raise WindowViolation(f"window needs a >= b, got a={a}, b={b}")
    rows = _window_rows(gens, n, a, b)
    coords = _window_coords(n, a, b)
    cols = []
    for k in range(n):
        # order coordinates: rows < k first, then row k by exponent, then the rest
        first = [p for p, (row, _) in enumerate(coords) if row < k]
        mid = [p for p, (row, _) in enumerate(coords) if row == k]
        rest = [p for p, (row, _) in enumerate(coords) if row > k]
        order = first + mid + rest
        reduced, pivots = rref([[r[p] for p in order] for r in rows])
        col = None
        for r, piv in zip(reduced, pivots):
            if len(first) <= piv < len(first) + len(mid):
                vec = [Fraction(0)] * len(coords)
                for pos, p in enumerate(order):
                    vec[p] = r[pos]
                col = [Laurent() for _ in range(n)]
                for p, c in enumerate(vec):
                    if c:
                        row, e = coords[p]
                        col[row] = col[row] + Laurent.monomial(e, c)
                break
        if col is None:
            col = [Laurent.monomial(a) if row == k else Laurent() for row in range(n)]
        cols.append(col)
    return Lattice(tuple(tuple(col[row] for col in cols) for row in range(n)))


def window_bounds(lat: Lattice) -> tuple[int, int]:
    """``(a, b)`` with ``t^a O^n < lat < t^b O^n``.

    ``b`` is the least exponent in the basis; the quotient ``t^b O^n / lat``
    has length ``nu - n b`` and is therefore killed by ``t^(nu - n b)``.
    """
    n = lat.n
    b = min(e.valuation() for row in lat.basis for e in row if e)
    return lat.valuation() - (n - 1) * b, b


def _intersection_dims(lat: Lattice, lo: int, hi: int) -> dict[int, int]:
    """``dim (lat cap t^i O^n) / t^(hi+1) O^n`` for ``lo <= i <= hi``."""
    n = lat.n
    a = hi + 1
    space = truncated_subspace(lat, a, lo)
    total = len(space)
    dims = {}
    for i in range(lo, hi + 1):
        # kernel of the projection onto exponents below i
        cut = n * (i - lo)
        dims[i] = total - rank([row[:cut] for row in space]) if cut else total
    return dims


def schubert_bounds(lam: Coweight) -> dict[int, int]:
    """``sum_{j=i}^{lam_1} |{k : lam_k <= j}|`` for ``lam_n <= i <= lam_1``.

    This is the dimension profile of ``L^lam`` itself.  The summand reads
    ``lam_k <= j``; the variant with ``lam_k <= i`` disagrees with ``L^lam``
    (for ``lam = (1, 0)``, ``i = 0`` it gives 2 instead of 3).
    """
    cw.require_dominant(lam)
    top, bottom = lam[0], lam[-1]
    return {
        i: sum(sum(1 for x in lam if x <= j) for j in range(i, top + 1))
        for i in range(bottom, top + 1)
    }


def _schubert_window_ok(lat: Lattice, lam: Coweight) -> bool:
    n = len(lam)
    if lat.n != n:
        raise cw.RankMismatch(f"rank {lat.n} != {n}")
    if lat.valuation() != cw.size(lam):
        return False
    return contains(scalar_lattice(lam[-1], n), lat) and contains(lat, scalar_lattice(lam[0], n))


def in_schubert_closure(lat: Lattice, lam: Coweight) -> bool:
    """Membership of ``lat`` in the closure of the spherical orbit of ``lam``."""
    cw.require_dominant(lam)
    if not _schubert_window_ok(lat, lam):
        return False
    dims = _intersection_dims(lat, lam[-1], lam[0])
    return all(dims[i] >= b for i, b in schubert_bounds(lam).items())


def in_schubert_orbit(lat: Lattice, lam: Coweight) -> bool:
    """Membership of ``lat`` in the spherical orbit of ``lam``."""
    cw.require_dominant(lam)
    if not _schubert_window_ok(lat, lam):
        return False
    dims = _intersection_dims(lat, lam[-1], lam[0])
    return all(dims[i] == b for i, b in schubert_bounds(lam).items())


# -- subspaces of O^n / t O^n ----------------------------------------------

def lattice_from_subspace(rows: Sequence[Sequence[Fraction]], n: int) -> Lattice:
    """The preimage in ``O^n`` of a subspace of ``O^n / t O^n = Q^n``.

    ``rows`` span the subspace; the result contains ``t O^n`` and its
    quotient by ``t O^n`` has dimension ``rank(rows)``.
    """
    if any(len(r) != n for r in rows):
        raise cw.RankMismatch(f"subspace vectors must have length {n}")
    reduced, pivots = rref(rows)
    cols = [[Laurent.const(x) for x in r] for r in reduced]
    for j in range(n):
        if j not in pivots:
            cols.append([T if k == j else Laurent() for k in range(n)])
    return Lattice(tuple(tuple(col[k] for col in cols) for k in range(n)))


def reduction_mod_t(lat: Lattice) -> list[list[Fraction]]:
    """The image of ``lat`` in ``O^n / t O^n`` for ``t O^n < lat < O^n``."""
    return truncated_subspace(lat, 1, 0)
