"""Points of the global affine Grassmannian as lattice families.

A lattice family is a base value ``y`` and lattices ``L_1, ..., L_n`` of equal
valuation with

    L_1 > theta_1(y) L_2 > ... > theta_{n-1}(y) L_n > (t - y) L_1,

where ``theta_i(y) = diag(t - y, ..., t - y, 1, ..., 1)`` with i factors
``t - y``.  At ``y = 0`` the twisted members form a lattice chain; for
``y != 0`` every ``theta_i(y)`` is invertible over O and the containments
are equalities.

The second half of the module builds point-level convolution witnesses: for
a ``lam``-permissible alcove x and its descent y, the alcove z and matrices
``g_i`` that place the pair of special-fiber families in a twisted product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import coweights as cw
from .alcoves import Alcove, is_permissible, relative_position
from .coweights import Coweight
from .laurent import (
    ONE,
    Laurent,
    Matrix,
    diagonal,
    matmul,
    matrix_to_json,
    monomial_diagonal,
    permutation_matrix,
)
from .lattices import (
    Lattice,
    coweight_lattice,
    contains,
    in_schubert_closure,
    lattice_from_generators,
    quotient_dim,
    window_bounds,
)
from .orders import descend


class InvalidFamily(ValueError):
    pass


class WitnessFailure(RuntimeError):
    """A convolution witness failed a check the theory guarantees."""


def _linear(y) -> Laurent:
    return Laurent({1: 1, 0: -Fraction(y)})


def theta(i: int, y, n: int) -> Matrix:
    """``theta_i(y)``: i leading diagonal entries ``t - y``, the rest 1."""
    if not 0 <= i <= n:
        raise ValueError(f"theta index {i} outside [0, {n}]")
    return diagonal([_linear(y)] * i + [ONE] * (n - i))


def _inverse_linear_series(y: Fraction, terms: int) -> Laurent:
    """``1 / (t - y)`` in O for ``y != 0``, truncated to ``terms`` terms."""
    return Laurent({m: -(1 / y) ** (m + 1) for m in range(terms)})


def theta_inverse_apply(i: int, y, lat: Lattice) -> Lattice:
    """``theta_i(y)^{-1} L`` for ``y != 0``.

    ``theta_i(y)`` lies in ``GL_n(O)``, so the result sits in the same window
    ``t^a O^n < . < t^b O^n`` as L and the power series of ``1/(t - y)`` can
    be truncated at ``t^(a - b)``.
    """
    y = Fraction(y)
    if y == 0:
        raise ValueError("theta_i(0) is not invertible over O")
    n = lat.n
    a, b = window_bounds(lat)
    inv = _inverse_linear_series(y, a - b)
    gens = []
    for j in range(n):
        col = [lat.basis[k][j] for k in range(n)]
        gens.append([col[k] * inv if k < i else col[k] for k in range(n)])
    return lattice_from_generators(gens, n, a, b)


@dataclass(frozen=True)
class LatticeFamily:
    base: Fraction
    members: tuple[Lattice, ...]

    @property
    def n(self) -> int:
        return len(self.members)

    def twisted(self) -> list[Lattice]:
        """``theta_{i-1}(y) L_i`` for ``i = 1..n``."""
        return [m.transform(theta(i, self.base, self.n)) for i, m in enumerate(self.members)]

    def to_json(self) -> dict:
        return {
            "base": str(self.base),
            "members": [matrix_to_json(m.basis) for m in self.members],
        }


def family_violations(y, members: Sequence[Lattice]) -> list[str]:
    """The family conditions that fail, in order; empty for a valid family."""
    y = Fraction(y)
    n = len(members)
    if n == 0 or any(m.n != n for m in members):
        return [f"need {n} lattices of rank {n}"]
    out = []
    vals = [m.valuation() for m in members]
    if len(set(vals)) != 1:
        out.append(f"valuations differ: {vals}")
    twisted = [m.transform(theta(i, y, n)) for i, m in enumerate(members)]
    twisted.append(members[0].transform(theta(n, y, n)))  # (t - y) L_1
    for i in range(n):
        if not contains(twisted[i], twisted[i + 1]):
            lhs = "L_1" if i == 0 else f"theta_{i}(y) L_{i + 1}"
            rhs = "(t - y) L_1" if i == n - 1 else f"theta_{i + 1}(y) L_{i + 2}"
            out.append(f"{lhs} does not contain {rhs}")
    return out


def validate_family(y, members: Sequence[Lattice]) -> LatticeFamily:
    problems = family_violations(y, members)
    if problems:
        raise InvalidFamily(problems[0])
    return LatticeFamily(Fraction(y), tuple(members))


def generic_family(y, lat: Lattice) -> LatticeFamily:
    """``(y, L, theta_1(y)^{-1} L, ..., theta_{n-1}(y)^{-1} L)`` for ``y != 0``."""
    y = Fraction(y)
    if y == 0:
        raise ValueError("generic families need y != 0")
    members = [lat] + [theta_inverse_apply(i, y, lat) for i in range(1, lat.n)]
    return validate_family(y, members)


def special_family_from_alcove(x: Alcove) -> LatticeFamily:
    """``(0, L^{x^(1)}, L^{x^(2) - varpi_1}, ..., L^{x^(n) - varpi_{n-1}})``."""
    members = tuple(coweight_lattice(x.shifted_term(i)) for i in range(1, x.n + 1))
    return LatticeFamily(Fraction(0), members)


def alcove_chain(x: Alcove) -> list[Lattice]:
    """The lattice chain ``L^{x^(1)} > ... > L^{x^(n)}``."""
    return [coweight_lattice(t) for t in x.terms]


def in_X(fam: LatticeFamily, lam: Coweight) -> bool:
    """Whether every member lies in the closure of the spherical orbit of ``lam``."""
    cw.require_dominant(lam)
    return all(in_schubert_closure(m, lam) for m in fam.members)


def twisted_pair_check(lat: Lattice, sub: Lattice, k: int) -> bool:
    """``t L < L' < L`` and ``dim L' / t L = n - k``."""
    n = lat.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} outside [1, {n - 1}]")
    tl = lat.scale(1)
    return contains(lat, sub) and contains(sub, tl) and quotient_dim(sub, tl) == n - k


# -- convolution witnesses -------------------------------------------------

def convolution_z_alcove(x: Alcove, y: Alcove) -> Alcove:
    """``z^(i) = P(y)^{-1}(x^(i) - y^(i)) + varpi_{i-1}``."""
    n = x.n
    pos = relative_position(x, y)
    if pos is None or pos not in {cw.fundamental(k, n) for k in range(n + 1)}:
        raise ValueError(f"{x} is not in a fundamental relative position to {y}")
    p_inv = cw.inverse(y.spine)
    terms = tuple(
        cw.add(cw.permute(p_inv, cw.sub(x.term(i), y.term(i))), cw.fundamental(i - 1, n))
        for i in range(1, n + 1)
    )
    return Alcove(terms)


def g_matrices(y: Alcove) -> list[Matrix]:
    """``g_i = P(y)_dot t^{P(y)^{-1}(y^(i) - varpi_{i-1})}``, mapping O^n onto ``L^{y^(i) - varpi_{i-1}}``."""
    p = y.spine
    p_dot = permutation_matrix(p)
    p_inv = cw.inverse(p)
    return [
        matmul(p_dot, monomial_diagonal(cw.permute(p_inv, y.shifted_term(i))))
        for i in range(1, y.n + 1)
    ]


@dataclass
class ConvolutionWitness:
    x: Alcove
    y: Alcove
    z: Alcove
    g: list[Matrix]
    lam: Coweight
    k: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "lambda": list(self.lam),
            "k": self.k,
            "y": self.y.to_json(),
            "z": self.z.to_json(),
            "g": [matrix_to_json(m) for m in self.g],
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def witness_checks(x: Alcove, y: Alcove, z: Alcove, g: Sequence[Matrix], lam: Coweight, k: int) -> dict[str, bool]:
    n = x.n
    mu = cw.sub(lam, cw.fundamental(k, n))
    checks = {
        "z_permissible": is_permissible(z, cw.fundamental(k, n)),
        "y_permissible": is_permissible(y, mu),
        "relative_position": relative_position(x, y) == cw.fundamental(k, n),
    }
    for i in range(1, n + 1):
        gi = g[i - 1]
        lx = coweight_lattice(x.shifted_term(i))
        ly = coweight_lattice(y.shifted_term(i))
        checks[f"g{i}_transport"] = coweight_lattice(z.shifted_term(i)).transform(gi) == lx
        checks[f"g{i}_onto_y"] = coweight_lattice((0,) * n).transform(gi) == ly
        checks[f"pair{i}_sandwich"] = twisted_pair_check(ly, lx, k)
        checks[f"pair{i}_chain_sandwich"] = twisted_pair_check(
            coweight_lattice(y.term(i)), coweight_lattice(x.term(i)), k
        )
    return checks


def build_convolution_witness(x: Alcove, lam: Coweight, k: int, strict: bool = True) -> ConvolutionWitness:
    """Descend x along ``varpi_k`` and certify the result.

    With ``strict`` a failed check raises WitnessFailure; otherwise the
    verdicts are left in ``checks``.
    """
    lam = cw.coweight(lam)
    y = descend(x, lam, k)
    z = convolution_z_alcove(x, y)
    g = g_matrices(y)
    wit = ConvolutionWitness(x, y, z, g, lam, k, witness_checks(x, y, z, g, lam, k))
    if strict and not wit.passed:
        failed = [name for name, ok in wit.checks.items() if not ok]
        raise WitnessFailure(f"witness for {x}, lambda={lam}, k={k} failed {failed}")
    return wit
