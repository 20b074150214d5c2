from __future__ import annotations

import cmath
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbilines.exactalg import (
    Cyclotomic,
    FGAbelianGroup,
    cyclotomic_polynomial,
    determinant,
    euler_phi,
    smith_form,
    smith_normal_form,
    to_complex,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cyclo = st.dictionaries(st.integers(0, 23), small, max_size=5).map(Cyclotomic.from_powers)


def close(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) < tol


# -- oracles -----------------------------------------------------------------


def test_cyclotomic_polynomials_known():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_polynomial(24)) - 1 == euler_phi(24) == 8


def test_roots_of_unity_match_floating_point():
    for k in range(24):
        z = Cyclotomic.root_of_unity(Fraction(k, 24))
        assert close(z, cmath.exp(2j * cmath.pi * k / 24))


def test_root_of_unity_outside_field():
    with pytest.raises(ValueError):
        Cyclotomic.root_of_unity(Fraction(1, 5))


def test_simple_identities():
    z3 = Cyclotomic.zeta(3)
    assert z3**3 == 1
    assert 1 + z3 + z3 * z3 == 0
    i = Cyclotomic.zeta(4)
    assert i * i == -1
    sqrt3 = Cyclotomic.zeta(12) + Cyclotomic.zeta(12).conjugate()
    assert sqrt3 * sqrt3 == 3
    assert Cyclotomic([Fraction(1, 2)]).rational() == Fraction(1, 2)
    assert not Cyclotomic.zeta(6).is_rational()


def test_u_squared():
    u = (2 * Cyclotomic.zeta(6) - 1) / 72
    assert u * u == Fraction(-1, 1728)


def test_to_complex_and_mpc_agree():
    x = Cyclotomic.from_powers({1: 3, 5: Fraction(-2, 7)})
    assert close(to_complex(x), complex(x.to_mpc()))


def test_hash_consistent_with_equality():
    a = Cyclotomic.zeta(8) ** 2
    b = Cyclotomic.zeta(4)
    assert a == b and hash(a) == hash(b)
    assert hash(Cyclotomic([3])) == hash(Cyclotomic([3]))


def test_smith_known_cases():
    assert smith_normal_form([[2, 0], [0, 2]]) == FGAbelianGroup(0, (2, 2))
    assert smith_normal_form([[2, 4], [6, 8]]) == FGAbelianGroup(0, (2, 4))
    assert smith_normal_form([[2, -3]], ncols=2) == FGAbelianGroup(1)
    assert smith_normal_form([[6, 0], [0, 4]]) == FGAbelianGroup(0, (2, 12))
    assert str(FGAbelianGroup(1, (2, 2))) == "Z + Z/2 + Z/2"


def test_fg_group_validation():
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (1,))


def test_determinant_known():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]) == 4


# -- properties --------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(cyclo, cyclo, cyclo)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert close(a * b, complex(a) * complex(b), 1e-6)


@settings(max_examples=60, deadline=None)
@given(cyclo)
def test_inverse(a):
    if a:
        assert a * a.inverse() == 1
        assert close(1 / a, 1 / complex(a), 1e-6)


@settings(max_examples=60, deadline=None)
@given(cyclo, cyclo)
def test_conjugation_is_a_field_automorphism(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert close(a.conjugate(), complex(a).conjugate(), 1e-6)


def _mat(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_form_factorization(rows):
    sf = smith_form(rows)
    D = [list(r) for r in sf.D]
    assert _mat(_mat([list(r) for r in sf.U], rows), [list(r) for r in sf.V]) == D
    assert abs(determinant(sf.U)) == 1 and abs(determinant(sf.V)) == 1
    diag = [d for d in sf.diagonal if d]
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    for i, j in itertools.product(range(len(D)), range(3)):
        if i != j:
            assert D[i][j] == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_determinant_matches_leibniz(m):
    leibniz = 0
    for perm in itertools.permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        leibniz += sign * m[0][perm[0]] * m[1][perm[1]] * m[2][perm[2]]
    assert determinant(m) == leibniz
