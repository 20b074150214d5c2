from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbilines import fuchsian as fg
from orbilines.exactalg import Cyclotomic

words = st.text(alphabet="STt", max_size=14)
groups = st.sampled_from(fg.GROUP_NAMES)


@st.composite
def characters(draw, group=None):
    group = draw(groups) if group is None else group
    return draw(st.sampled_from(fg.all_characters(group)))


@st.composite
def character_pairs(draw):
    group = draw(st.sampled_from(["gamma2", "gamma3", "index4G"]))
    return draw(characters(group)), draw(characters(group))


def hp(num):
    return fg.HPSeries.from_dict(num)


# -- matrices and groups -------------------------------------------------------


def test_matrix_basics():
    assert fg.mat_pow(fg.S, 2) == fg.IDENTITY
    assert fg.mat_pow(fg.R, 3) == fg.IDENTITY
    assert fg.mul(fg.T, fg.T_INV) == fg.IDENTITY
    assert fg.normalize((-1, 0, 0, -1)) == fg.IDENTITY
    assert abs(fg.fixed_point(fg.S) - 1j) < 1e-12
    with pytest.raises(ValueError):
        fg.fixed_point(fg.T)


def test_builtin_groups():
    for name in fg.GROUP_NAMES:
        spec = fg.builtin_group(name)
        rel = fg.prod(spec.generators[i].matrix for i in spec.relation)
        assert rel == fg.mat_pow(fg.T, spec.cusp_power)
    assert fg.builtin_group("index4G").signature == (2, 2, 3)
    assert fg.builtin_group("gamma3").signature == (2, 2, 2)
    assert fg.builtin_group("gamma2").signature == (3, 3)
    G = fg.builtin_group("index4G")
    assert G.generators[1].matrix == fg.normalize((3, -10, 1, -3))
    assert G.generators[2].matrix == fg.normalize((2, -3, 1, -1))
    assert G.member((1, 1, 1, 2))  # A
    assert not G.member(fg.T)
    with pytest.raises(KeyError):
        fg.builtin_group("gamma7")


def test_index4_group_is_not_normal():
    G = fg.builtin_group("index4G")
    conj = fg.prod([fg.T, G.generators[0].matrix, fg.T_INV])
    assert not G.member(conj)


@settings(max_examples=150, deadline=None)
@given(words)
def test_decompose_round_trip(word):
    g = fg.word_matrix(word)
    assert fg.word_matrix(fg.decompose_ST(g)) == g


@settings(max_examples=100, deadline=None)
@given(words, words)
def test_abelianization_is_a_homomorphism(u, v):
    g, h = fg.word_matrix(u), fg.word_matrix(v)
    assert fg.abelianization(fg.mul(g, h)) == (fg.abelianization(g) + fg.abelianization(h)) % 6


@settings(max_examples=100, deadline=None)
@given(groups, words)
def test_coset_and_abel_vector(name, word):
    spec = fg.builtin_group(name)
    g = fg.word_matrix(word)
    k = spec.coset(g)
    h = fg.mul(g, fg.mat_pow(fg.T, -k))
    assert spec.member(h)
    # the rewritten word evaluates to h in the abelianization: check via characters
    for phi in fg.all_characters(name):
        assert phi.turn_at(fg.mul(h, h)) == (2 * phi.turn_at(h)) % 1


# -- characters ----------------------------------------------------------------


def test_chi_restrictions():
    assert fg.chi("psl2z").turn_at(fg.T) == Fraction(1, 6)
    assert fg.chi("gamma2").turn_at(fg.mat_pow(fg.T, 2)) == Fraction(1, 3)
    assert str(fg.chi("index4G")) == "a0*a1*a2^2"
    assert fg.chi("index4G") == fg.parse_character("index4G", "a0*a1*a2^2")
    assert fg.parse_character("gamma2", "chi^-1") == fg.chi("gamma2") ** 5


def test_cuspidal_characters():
    labels = lambda g: sorted(str(c) for c in fg.cuspidal_characters(g))
    assert labels("gamma2") == ["1", "a0*a1^2", "a0^2*a1"]
    assert labels("gamma3") == ["1", "a0*a1", "a0*a2", "a1*a2"]
    assert labels("index4G") == ["1", "a0*a1"]
    assert fg.chi("index4G") ** 3 == fg.parse_character("index4G", "a0*a1")


def test_conjugation_by_t():
    a0 = fg.generator_character("gamma2", 0)
    assert fg.conjugate_character(a0) == fg.generator_character("gamma2", 1)
    g3 = [fg.generator_character("gamma3", i) for i in range(3)]
    assert [fg.conjugate_character(x) for x in g3] == [g3[1], g3[2], g3[0]]


def test_parse_errors():
    with pytest.raises(ValueError):
        fg.parse_character("gamma2", "a2")
    with pytest.raises(ValueError):
        fg.Character("gamma2", (Fraction(1, 2), Fraction(0)))


# -- induction -----------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(characters())
def test_induced_relations(phi):
    rep = fg.induce(phi)
    S, T = rep.S, rep.T
    assert fg.is_scalar(fg.matmul(S, S))
    ST = fg.matmul(S, T)
    assert fg.is_scalar(fg.matmul(ST, fg.matmul(ST, ST)))
    exps = fg.exponents(rep)
    assert all(0 <= e < 1 for e in exps) and len(exps) == rep.dim
    assert sum(exps, Fraction(0)) % 1 == fg.determinant_turn(rep)


@settings(max_examples=60, deadline=None)
@given(characters())
def test_frobenius_reciprocity(phi):
    try:
        blocks = fg.decompose_induction(phi)
    except ValueError:
        return
    ones = {b.chi_power for b in blocks if b.dim == 1}
    for r in range(6):
        assert (r in ones) == (fg.chi(phi.group) ** r == phi)
    assert sum(b.dim for b in blocks) == phi.spec.index


def test_gamma2_inductions():
    beta = fg.parse_character("gamma2", "a0*a1^2")
    assert fg.induce(beta).T == [[0, 1], [1, 0]]
    assert fg.exponents(fg.induce(beta)) == [0, Fraction(1, 2)]
    assert fg.mackey_irreducible(beta)
    assert not fg.mackey_irreducible(fg.chi("gamma2"))


# -- Hilbert-Poincare series ---------------------------------------------------


def test_index4_table():
    c = fg.chi("index4G")
    table = [
        {0: 1, 4: 1, 6: 1, 8: 1},
        {2: 1, 6: 1, 8: 1, 10: 1},
        {4: 2, 6: 1, 8: 1},
        {2: 1, 4: 1, 6: 2},
        {4: 1, 6: 1, 8: 2},
        {2: 1, 4: 1, 6: 1, 10: 1},
    ]
    for n, num in enumerate(table):
        assert fg.hp_series(c**n) == hp(num)
    assert str(fg.hp_series(c**5)) == "(T^2+T^4+T^6+T^10)/((1-T^4)(1-T^6))"


def test_level_one():
    assert fg.hp_series(fg.trivial("psl2z")) == hp({0: 1})
    for r in range(6):
        assert fg.hp_series(fg.chi("psl2z") ** r) == hp({2 * r: 1})


def test_beta_not_free():
    beta = fg.parse_character("gamma2", "a0*a1^2")
    m = fg.hp_series(beta)
    assert m == hp({2: 1, 4: 1})
    check = fg.free_hp_check(m, {0: 1, 6: 1})
    assert not check.free_compatible and check.blocking_degree == 8
    assert fg.free_hp_check(hp({2: 1, 8: 1}), {0: 1, 6: 1}).witness == (2,)
    assert fg.free_hp_check(hp({}), {0: 1, 6: 1}).free_compatible
    with pytest.raises(ValueError):
        fg.free_hp_check(m, {2: 1})


def test_gamma2_chi_powers_lowest_term():
    # chi^3 restricts trivially to the index-two subgroup, so the pattern repeats with period 3
    for r in range(6):
        s = fg.hp_series(fg.chi("gamma2") ** r)
        assert min(s.num_dict()) == 2 * (r % 3)


def test_hp_series_equality_is_exact():
    a = hp({0: 1})
    # 1/((1-T^4)(1-T^6)) = (1 + T^4)/((1-T^8)(1-T^6))
    assert a == fg.HPSeries.from_dict({0: 1, 4: 1}, (6, 8))
    assert a != fg.HPSeries.from_dict({0: 1, 4: -1}, (6,))
    assert a.to_json() == {"num": [[0, 1]], "den": [4, 6]}


@settings(max_examples=60, deadline=None)
@given(characters())
def test_hp_nonnegative(phi):
    try:
        s = fg.hp_series(phi)
    except ValueError:
        return
    coeffs = s.expand(24)
    assert all(c >= 0 for c in coeffs.values())
    assert all(k >= 0 for k, c in coeffs.items() if c)
    if phi.is_trivial():
        assert coeffs.get(0) == 1


# -- extensions ----------------------------------------------------------------


def test_ext_examples():
    g = "index4G"
    one, c = fg.trivial(g), fg.chi(g)
    assert fg.ext_h1_dim(one, c**3) == 1
    assert fg.ext_h1_dim(one, c**-1) == 2
    assert fg.ext_h1_dim(one, one) == 0


@settings(max_examples=100, deadline=None)
@given(character_pairs())
def test_ext_twist_invariance(pair):
    psi, phi = pair
    assert fg.ext_h1_dim(psi, phi) == fg.ext_h1_dim(fg.trivial(psi.group), phi / psi)


def test_families():
    fam = fg.rank2_family("gamma3")
    assert fam.at(0)["S1"] == [[-1, 0], [0, 1]]
    assert fam.at_infinity["S1"] == [[-1, 1], [0, 1]]
    assert fam.verify_orders()
    G = fg.rank2_family("index4G")
    assert G.sub == fg.chi("index4G") ** 5 and G.quotient.is_trivial()
    assert G.at(Fraction(2))["S1"] == [[-1, 2], [0, 1]]
    with pytest.raises(ValueError):
        fg.rank2_family("gamma2")


# -- geometric route -----------------------------------------------------------


def test_weight_two_degrees():
    assert fg.weight_two_degree("psl2z") == Fraction(1, 6)
    assert fg.weight_two_degree("gamma2") == Fraction(1, 3)
    assert fg.weight_two_degree("index4G") == Fraction(2, 3)


def test_calibration_and_cross_check():
    good = fg.calibrate_conventions()
    assert fg.Convention(1, 1, 1) in good
    assert len(good) == 4
    survivors = [c for c in good if fg.cross_check_geometric(c).ok]
    # the anchors leave four sign choices; the cross-check keeps one up to a simultaneous flip
    assert survivors == [fg.Convention(1, 1, 1), fg.Convention(-1, -1, 1)]


def test_gm_series():
    total, notes = fg.gm_series(fg.trivial("gamma2"))
    assert total == hp({0: 1, 2: 2, 4: 2, 6: 1}) and not notes
    with pytest.warns(UserWarning):
        fg.gm_series(fg.trivial("index4G"))


def test_cyclotomic_values():
    phi = fg.generator_character("index4G", 2)
    assert fg.char_eval(phi, fg.builtin_group("index4G").generators[2].matrix) == Cyclotomic.zeta(3)
