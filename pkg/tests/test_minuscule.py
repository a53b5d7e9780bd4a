import random
from fractions import Fraction

import pytest

from schubert_lab import coweights as cw
from schubert_lab.alcoves import Alcove, enumerate_permissible
from schubert_lab.global_gr import family_violations, in_X, special_family_from_alcove
from schubert_lab.laurent import ONE, ZERO, Laurent, evaluate, rref
from schubert_lab.lattices import scalar_lattice
from schubert_lab.minuscule import (
    DegenerationError,
    beta,
    big_b,
    change_of_basis,
    choose_N,
    coordinate_matrix,
    evaluation_at_zero,
    family_matrices,
    generic_consistency,
    hat_case,
    hat_scalar_exponent,
    hat_v,
    index_data,
    index_violations,
    n_is_admissible,
    sample_points,
    specialize,
    v_double_prime_vector,
    v_prime_cancelled,
    v_prime_m_cancelled,
    v_prime_vector,
    v_vector,
    vector_violations,
    verify_degeneration,
)

N2 = Alcove(((0, 1), (1, 1)))
N3 = Alcove(((0, 1, 0), (1, 1, 0), (1, 1, 1)))


def u(e, c=1):
    return Laurent.monomial(e, c)


def minuscule_corpus(max_n):
    for n in range(2, max_n + 1):
        for t in range(1, n):
            for x in enumerate_permissible(cw.fundamental(t, n)):
                yield x, t


def solve_columns(a, b):
    """X with a X = b over Q, for a of full column rank (a and b rational)."""
    rows, r = len(a), len(a[0])
    out = []
    for col in zip(*b):
        aug = [list(a[i]) + [col[i]] for i in range(rows)]
        red, pivots = rref(aug)
        assert r not in pivots
        sol = [Fraction(0)] * r
        for row, p in zip(red, pivots):
            sol[p] = row[-1]
        out.append(sol)
    return [list(x) for x in zip(*out)]


def test_n2_fixture():
    d = index_data(N2, 1)
    assert d.J == ((1,), (1,), (1,))
    assert d.f == (1,) and d.a == ((1,),) and d.sigma == (1,)
    assert d.M == (1,) and d.m == (1,) and d.delta == (0,) and d.C == (1,)
    assert hat_case(1, 1, d) == 2
    assert hat_case(1, 2, d) == 1
    assert choose_N(d) == 1
    fam = family_matrices(N2, 1)
    assert fam.A[0] == ((ONE,), (ZERO,))
    assert fam.A[1] == ((u(1),), (ZERO,))
    assert fam.B == (((u(1),),),)


def test_n3_fixture():
    # P(x) = (1, 3, 2).  J^(1) = zeros of x^(1) = {1, 3}; step 1 swaps in 1
    # (no change), step 2 replaces 3 by 2, step 3 replaces 2 by 3.
    d = index_data(N3, 1)
    assert N3.spine == (1, 3, 2)
    assert d.J == ((1, 3), (1, 3), (1, 2), (1, 3))
    assert d.sigma == (1, 2)
    assert d.f == (1, 3)
    assert d.c[1][:3] == (1, 3, 4)
    assert d.a[1] == (3, 2, 3)
    assert d.phi[1] == (1, 1, 2, 3)
    assert index_violations(N3, d) == []
    # beta(0) = 3^2; v_2 = e_3 + u^18 e_2 + u^9 e_3
    assert beta(0, d) == 9 and big_b(0, d) == 0
    assert v_vector(2, d) == (ZERO, u(18), ONE + u(9))
    assert v_vector(1, d) == (ONE, ZERO, ZERO)
    assert v_prime_vector(2, d) == v_vector(2, d)
    assert hat_case(2, 3, d) == 3
    N = choose_N(d)
    assert N == 19
    assert hat_scalar_exponent(2, 3, d, N) == N - 18
    assert not n_is_admissible(d, 18)
    fam = family_matrices(N3, 1)
    a3 = fam.a_matrix(3)
    assert [r[0] for r in a3] == [u(19), ZERO, ZERO]
    assert [r[1] for r in a3] == [ZERO, u(19), u(1) + u(10)]
    assert fam.B[1] == ((u(19), ZERO), (ZERO, u(1)))
    assert evaluation_at_zero(fam, 3) == coordinate_matrix((1, 2), 3)


@pytest.mark.parametrize("x,t", [(N2, 1), (N3, 1)])
def test_choose_N_is_monotone(x, t):
    d = index_data(x, t)
    N = choose_N(d)
    for extra in (1, 5):
        assert n_is_admissible(d, N + extra)


def test_choose_N_limit():
    with pytest.raises(DegenerationError):
        choose_N(index_data(N3, 1), limit=5)


def test_index_data_rejects_non_minuscule():
    with pytest.raises(ValueError):
        index_data(Alcove(((2, 0), (2, 1))), 1)
    with pytest.raises(ValueError):
        index_data(N2, 2)


def test_index_invariants_corpus():
    for x, t in minuscule_corpus(4):
        for descending in (False, True):
            d = index_data(x, t, descending)
            assert index_violations(x, d) == [], (x, t)
            for q in range(1, d.r + 1):
                if d.f[q - 1] == d.n + 1:
                    assert d.sigma[q - 1] == q


def test_vector_identities_corpus():
    for x, t in minuscule_corpus(4):
        d = index_data(x, t)
        assert vector_violations(d) == [], (x, t)
        for q in range(1, d.r + 1):
            v = v_vector(q, d)
            assert tuple(a(0) for a in v) == tuple(int(j == d.a_(q, 1)) for j in range(1, d.n + 1))
            if d.f[q - 1] == 1:
                assert v == tuple(ONE if j == d.a_(q, 1) else ZERO for j in range(1, d.n + 1))
                continue
            assert v_prime_vector(q, d) == v_prime_cancelled(q, d)
            if d.delta[q - 1] == 0:
                assert v_prime_vector(q, d) == v
            if q != d.m[q - 1]:
                top = d.a_(d.M[q - 1], 1)
                vpp = v_double_prime_vector(q, d)
                assert all(j <= top for j, a in enumerate(vpp, start=1) if a)


def test_unsigned_v_prime_m_form_fails():
    x = Alcove(((1, 1, 0, 0), (1, 1, 0, 1), (1, 1, 1, 1), (2, 1, 1, 1)))
    d = index_data(x, 2)
    long_q = [q for q in range(1, d.r + 1) if d.f[q - 1] > 1]
    assert long_q
    for q in long_q:
        assert v_prime_m_cancelled(q, d) == v_prime_vector(d.m[q - 1], d)
    assert any(v_prime_m_cancelled(q, d, signed=False) != v_prime_vector(d.m[q - 1], d) for q in long_q)


def test_hat_v_range():
    d = index_data(N3, 1)
    with pytest.raises(IndexError):
        hat_v(1, 5, d, 19)
    with pytest.raises(DegenerationError):
        hat_v(2, 3, d, 10)


def test_family_identities_corpus():
    for x, t in minuscule_corpus(3):
        fam = family_matrices(x, t)
        d = fam.data
        for i in range(1, d.n + 2):
            assert evaluation_at_zero(fam, i) == coordinate_matrix(d.J[i - 1], d.n)


def test_change_of_basis_matches_solver():
    """B^(i) from the construction agrees with solving A^(1) X = A^(i) at rational points."""
    for x, t in minuscule_corpus(3):
        fam = family_matrices(x, t)
        for z in (Fraction(1, 2), Fraction(2, 3)):
            a1 = evaluate(fam.A[0], z)
            for i in range(2, fam.n + 2):
                b = change_of_basis(fam.data, i, fam.N)
                assert solve_columns(a1, evaluate(fam.a_matrix(i), z)) == evaluate(b, z)


def test_specialize_at_zero_is_the_special_family():
    for x, t in minuscule_corpus(3):
        fam = family_matrices(x, t)
        limit = specialize(0, fam, x, t)
        assert limit.base == 0
        assert list(limit.members) == list(special_family_from_alcove(x).members)
        assert limit.twisted() == special_family_from_alcove(x).twisted()


def test_specialize_n2_at_one_half():
    fam = family_matrices(N2, 1)
    gen = specialize(Fraction(1, 2), fam, N2, 1)
    assert gen.base == Fraction(-1, 2)
    assert family_violations(gen.base, gen.members) == []
    assert in_X(gen, (1, 0))
    assert generic_consistency(Fraction(1, 2), fam)
    for m in gen.members:
        assert m.valuation() == 1
        assert m != scalar_lattice(1, 2)


@pytest.mark.parametrize("n", [2, 3])
def test_verify_degeneration_passes(n):
    for x, t in minuscule_corpus(n):
        if x.n != n:
            continue
        report = verify_degeneration(x, t)
        assert report.passed, (x, t, report.checks, report.notes)
        assert len(report.samples) == 3
        assert report.to_json()["N"] == report.N


def test_verify_degeneration_is_deterministic():
    a = verify_degeneration(N3, 1, seed=4).to_json(include_family=True)
    b = verify_degeneration(N3, 1, seed=4).to_json(include_family=True)
    assert a == b
    assert a["seed"] == 4


def test_sample_points():
    pts = sample_points(random.Random(0), 3)
    assert len(set(pts)) == 3
    assert all(0 < p < 1 and p.denominator <= 12 for p in pts)
