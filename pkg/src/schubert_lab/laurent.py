"""Exact Laurent polynomials over Q, small dense matrices of them, and rational row reduction.

The indeterminate is called ``t`` when the polynomials describe lattices and
``u`` in the degeneration families; the arithmetic does not care.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Number = Union[int, Fraction]


class Laurent:
    """A Laurent polynomial ``sum c_e * t^e`` with rational coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Optional[Mapping[int, Number]] = None):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                if a:
                    c[int(e)] = Fraction(a)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "Laurent":
        out = cls.__new__(cls)
        out._c = c
        out._hash = None
        return out

    @classmethod
    def const(cls, a: Number) -> "Laurent":
        return cls({0: a})

    @classmethod
    def monomial(cls, e: int, a: Number = 1) -> "Laurent":
        return cls({e: a})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def valuation(self) -> Optional[int]:
        """Lowest exponent with nonzero coefficient; None for zero."""
        return min(self._c) if self._c else None

    def degree(self) -> Optional[int]:
        return max(self._c) if self._c else None

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def _coerce(self, other) -> "Laurent":
        if isinstance(other, Laurent):
            return other
        if isinstance(other, (int, Fraction)):
            return Laurent.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return Laurent._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Laurent()
            return Laurent._raw({e: a * other for e, a in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, Fraction] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return Laurent._raw({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, a), = self._c.items()
            return Laurent._raw({e * k: Fraction(a) ** k})
        out = Laurent.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "Laurent":
        """Multiply by ``t^k``."""
        return Laurent._raw({e + k: a for e, a in self._c.items()})

    def __call__(self, z: Number) -> Fraction:
        z = Fraction(z)
        if z == 0:
            if any(e < 0 for e in self._c):
                raise ZeroDivisionError("negative powers at 0")
            return self.coeff(0)
        return sum((a * z**e for e, a in self._c.items()), Fraction(0))

    def substitute_shift(self, y: Number) -> "Laurent":
        """``p(t - y)`` for a polynomial ``p`` (no negative exponents)."""
        if any(e < 0 for e in self._c):
            raise ValueError("substitution needs a polynomial")
        base = Laurent({1: 1, 0: -Fraction(y)})
        out = Laurent()
        for e, a in self._c.items():
            out = out + (base ** e) * a
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"Laurent({self.to_json()})"

    def __str__(self):
        return self.pretty("t")

    def pretty(self, var: str = "t") -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            a = self._c[e]
            if e == 0:
                parts.append(str(a))
                continue
            mono = var if e == 1 else f"{var}^{e}"
            if a == 1:
                parts.append(mono)
            elif a == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{a}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def latex(self, var: str = "u") -> str:
        if not self._c:
            return "0"
        out = ""
        for e in sorted(self._c):
            a = self._c[e]
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if e == 0:
                body = _latex_frac(mag)
            else:
                mono = var if e == 1 else f"{var}^{{{e}}}"
                body = mono if mag == 1 else _latex_frac(mag) + mono
            out += (("-" if sign == "-" else "") if not out else f" {sign} ") + body
        return out

    def to_json(self) -> dict[str, str]:
        return {str(e): str(a) for e, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "Laurent":
        return cls({int(e): Fraction(a) for e, a in data.items()})


def _latex_frac(a: Fraction) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    return rf"\tfrac{{{a.numerator}}}{{{a.denominator}}}"


ZERO = Laurent()
ONE = Laurent.const(1)
T = Laurent.monomial(1)

# -- matrices: tuples of rows ----------------------------------------------

Matrix = tuple[tuple[Laurent, ...], ...]


def as_laurent(a) -> Laurent:
    if isinstance(a, Laurent):
        return a
    if isinstance(a, Mapping):
        return Laurent(a)
    return Laurent.const(a)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(tuple(as_laurent(a) for a in row) for row in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("ragged matrix")
    return m


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def diagonal(entries: Sequence[Laurent]) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else ZERO for j in range(n)) for i in range(n))


def monomial_diagonal(exponents: Sequence[int]) -> Matrix:
    """``t^lam``: diagonal matrix with entries ``t^{lam_i}``."""
    return diagonal([Laurent.monomial(e) for e in exponents])


def permutation_matrix(sigma: Sequence[int]) -> Matrix:
    """``sigma_dot`` with ``sigma_dot e_i = e_{sigma(i)}``."""
    n = len(sigma)
    return tuple(
        tuple(ONE if sigma[j] == i + 1 else ZERO for j in range(n)) for i in range(n)
    )


def matmul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch {ra}x{ca} * {rb}x{cb}")
    cols = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in cols:
            acc = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def columns(m: Matrix) -> list[tuple[Laurent, ...]]:
    return [tuple(col) for col in zip(*m)]


def from_columns(cols: Sequence[Sequence[Laurent]]) -> Matrix:
    return tuple(zip(*cols)) if cols else ()


def scale(m: Matrix, c) -> Matrix:
    return tuple(tuple(a * c for a in row) for row in m)


def map_entries(m: Matrix, f) -> Matrix:
    return tuple(tuple(f(a) for a in row) for row in m)


def determinant(m: Matrix) -> Laurent:
    """Laplace expansion along the first row with memoized minors."""
    n, k = shape(m)
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    memo: dict[tuple[int, tuple[int, ...]], Laurent] = {}

    def minor(row: int, cols: tuple[int, ...]) -> Laurent:
        if row == n:
            return ONE
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = ZERO
        for pos, c in enumerate(cols):
            a = m[row][c]
            if a:
                sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
                if sub:
                    term = a * sub
                    acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def adjugate(m: Matrix) -> Matrix:
    n, _ = shape(m)
    if n == 1:
        return ((ONE,),)
    adj = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = tuple(
                tuple(m[r][c] for c in range(n) if c != j) for r in range(n) if r != i
            )
            d = determinant(sub)
            adj[j][i] = -d if (i + j) % 2 else d
    return tuple(tuple(r) for r in adj)


def evaluate(m: Matrix, z: Number) -> list[list[Fraction]]:
    return [[a(z) for a in row] for row in m]


def matrix_to_json(m: Matrix) -> list[list[dict[str, str]]]:
    return [[a.to_json() for a in row] for row in m]


def matrix_from_json(data) -> Matrix:
    return matrix([[Laurent.from_json(a) if isinstance(a, Mapping) else a for a in row] for row in data])


def matrix_latex(m: Matrix, var: str = "u") -> str:
    body = r" \\ ".join(" & ".join(a.latex(var) for a in row) for row in m)
    return r"\begin{bmatrix} " + body + r" \end{bmatrix}"


# -- rational linear algebra ------------------------------------------------

def rref(rows: Sequence[Sequence[Number]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence[Number]]) -> int:
    return len(rref(rows)[1])


def same_row_space(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> bool:
    return rref(a)[0] == rref(b)[0]
