"""The reproduction suite: one check per acceptance criterion.

Each check returns a :class:`CriterionResult`; ``run_all`` is shared by the
``verify-all`` command and the acceptance tests.
"""

from __future__ import annotations

import cmath
import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import fuchsian as fg
from . import orbiline as ob
from . import periods, qseries, roots


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2}. {self.title}"

    def to_json(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed, "details": self.details}


class _Checks:
    """Collects named boolean checks and their failure messages."""

    def __init__(self):
        self.ok = True
        self.details: list[str] = []

    def __call__(self, cond: bool, what: str) -> None:
        if not cond:
            self.ok = False
            self.details.append(f"failed: {what}")


def _sweep_signatures(max_points=4, max_order=7):
    for k in range(max_points + 1):
        yield from itertools.combinations_with_replacement(range(2, max_order + 1), k)


# ---------------------------------------------------------------------------


def criterion_1() -> CriterionResult:
    ck = _Checks()
    g = ob.picard_group((2, 2, 2))
    ck(g.free_rank == 1 and g.invariant_factors == (2, 2), f"Pic(2,2,2) = {g}")
    g = ob.picard_group((2, 3))
    ck(g.free_rank == 1 and g.invariant_factors == (), f"Pic(2,3) = {g}")
    ck(ob.pic0_group((2, 2, 2)).torsion_order == 4, "torsion of (2,2,2) has order 4")
    ck(len(ob.torsion_elements((2, 2, 2))) == 4, "four degree-zero elements on (2,2,2)")
    ck(len(ob.torsion_elements((2, 3))) == 1, "no torsion on (2,3)")
    n = 0
    for sig in _sweep_signatures(4, 7):
        if not sig:
            continue
        m = ob.lcm_order(sig)
        # the degrees of the x_i generate (1/m)Z exactly when gcd(m/p_i) = 1
        ck(math.gcd(*(m // p for p in sig)) == 1, f"degree map onto (1/{m})Z for {sig}")
        ck(ob.degree(ob.c_elem(sig)) == 1, f"deg c = 1 on {sig}")
        n += 1
    return CriterionResult(1, "Picard structure and degree map", ck.ok, ck.details + [f"{n} signatures swept"])


def criterion_2() -> CriterionResult:
    ck = _Checks()
    n = 0
    for sig in _sweep_signatures(4, 7):
        for j in range(max(sig, default=1)):
            residues = [(j * (i + 1)) % p for i, p in enumerate(sig)]
            for a in range(-5, 6):
                x = ob.PicElement(tuple(sig), tuple(residues), a)
                ck(ob.h0(x) == ob.ring_dim_oracle(x), f"h0 = ring oracle at {x} on {sig}")
                ck(ob.euler_char(x) == ob.h0(x) - ob.h1(x), f"Riemann-Roch at {x} on {sig}")
                n += 1
    for sig in [(), (2,), (2, 3), (2, 3, 7), (3, 3, 4, 5)]:
        ck(ob.h0(ob.c_elem(sig)) == 2, f"h0(c) = 2 on {sig}")
    return CriterionResult(2, "h0 against the ring oracle; Riemann-Roch", ck.ok, ck.details + [f"{n} elements checked"])


def criterion_3() -> CriterionResult:
    ck = _Checks()
    families = [(5,), (3, 4), (2, 6), (2, 2, 2), (2, 2, 3), (2, 2, 7), (2, 3, 3), (2, 3, 4), (2, 3, 5)]
    for sig in families:
        label = roots.dynkin_type(sig)
        count = len(roots.positive_roots(roots.star_graph(sig)))
        ck(count == roots.classical_root_count(label), f"{label} from {sig}: {count} roots")
    expect = [((5,), 1), ((3, 4), 1)] + [((2, 2, n), 2) for n in range(2, 8)]
    expect += [((2, 3, 3), 3), ((2, 3, 4), 4), ((2, 3, 5), 6)]
    for sig, r in expect:
        got = roots.max_indecomposable_rank(sig)
        ck(got == r, f"max rank {got} for {sig}, expected {r}")
    for sig in [(2, 3, 6), (2, 3, 7), (2, 2, 2, 2), (3, 3, 3)]:
        ck(roots.max_indecomposable_rank(sig) == roots.UNBOUNDED, f"{sig} unbounded")
    return CriterionResult(3, "Root counts and maximal ranks", ck.ok, ck.details)


def _identities(names, truncation) -> _Checks:
    ck = _Checks()
    for name in names:
        rep = qseries.check_identity(name, truncation)
        ck(rep.holds, f"{name} (first difference at {rep.first_failing_exponent})")
    return ck


def criterion_4() -> CriterionResult:
    ck = _identities(["theta_quartic", "eta_quotient_f1", "eta_quotient_f2", "eta_quotient_f3", "e4_e6_delta"], 50)
    return CriterionResult(4, "Theta and eta identities", ck.ok, ck.details)


def criterion_5() -> CriterionResult:
    ck = _identities(["eta12_action_F", "eta12_action_DF"], 30)
    ck(qseries.U * qseries.U == Fraction(-1, 1728), "u^2 = -1/1728")
    return CriterionResult(5, "eta^12 action on F and DF", ck.ok, ck.details)


def criterion_6() -> CriterionResult:
    ck = _identities(["gamma3_quadratic"], 30)
    cfg = periods.PeriodConfig(truncation=60, dps=30, tolerance=1e-20)
    for cusp, (c, d) in qseries.GAMMA3_CUSPS.items():
        series = periods.eval_series(qseries.gamma3_eisenstein(cusp, cfg.truncation), 2j, cfg).value
        lattice = periods.eisenstein2_lattice(3, c, d, 2j, cfg)
        ck(abs(series - lattice) < 1e-6, f"G_{cusp} at 2i: {series} vs lattice {lattice}")
    return CriterionResult(6, "Level-three Eisenstein series", ck.ok, ck.details)


G_TABLE = {
    0: {0: 1, 4: 1, 6: 1, 8: 1},
    1: {2: 1, 6: 1, 8: 1, 10: 1},
    2: {4: 2, 6: 1, 8: 1},
    3: {2: 1, 4: 1, 6: 2},
    4: {4: 1, 6: 1, 8: 2},
    5: {2: 1, 4: 1, 6: 1, 10: 1},
}

GAMMA2_TABLE = [
    ("a0*a1^2", Fraction(0), [Fraction(0), Fraction(1, 2)], 2),
    ("a0", Fraction(1, 3), [Fraction(1, 6), Fraction(2, 3)], 4),
    ("a0^2", Fraction(2, 3), [Fraction(1, 3), Fraction(5, 6)], 6),
]


def criterion_7() -> CriterionResult:
    ck = _Checks()
    for n, num in G_TABLE.items():
        got = fg.hp_series(fg.chi("index4G") ** n)
        ck(got == fg.HPSeries.from_dict(num), f"chi^{n} on G: {got}")
    t2 = fg.mat_pow(fg.T, 2)
    for text, turn, exps, weight in GAMMA2_TABLE:
        for phi in (fg.parse_character("gamma2", text), fg.conjugate_character(fg.parse_character("gamma2", text))):
            ck(phi.turn_at(t2) == turn, f"{phi}(T^2) has turn {phi.turn_at(t2)}")
            ck(fg.exponents(fg.induce(phi)) == exps, f"exponents of Ind {phi}")
            blocks = fg.decompose_induction(phi)
            ck(len(blocks) == 1 and fg.minimal_weight(blocks[0]) == weight, f"minimal weight of {phi}")
    beta = fg.parse_character("gamma2", "a0*a1^2")
    hp = fg.hp_series(beta)
    ck(hp == fg.HPSeries.from_dict({2: 1, 4: 1}), f"M(beta) = {hp}")
    check = fg.free_hp_check(hp, {0: 1, 6: 1})
    ck(not check.free_compatible, "M(beta) reported free against 1 + T^6")
    return CriterionResult(7, "Hilbert-Poincare tables", ck.ok, ck.details)


def criterion_8() -> CriterionResult:
    ck = _Checks()
    g = "index4G"
    c, a0, one = fg.chi(g), fg.generator_character(g, 0), fg.trivial(g)
    census = [
        ("chi^3", c**3, 1),
        ("chi^-1", c**-1, 2),
        ("chi^-5", c**-5, 2),
        ("a0 chi^-2", a0 * c**-2, 1),
        ("a0 chi^-4", a0 * c**-4, 1),
        ("a0 chi^-1", a0 * c**-1, 1),
        ("a0 chi^-5", a0 * c**-5, 1),
    ]
    listed = set()
    for name, phi, dim in census:
        got = fg.ext_h1_dim(one, phi)
        ck(got == dim, f"H^1(1, {name}) = {got}, expected {dim}")
        listed.add(phi)
    for phi in fg.all_characters(g):
        if phi not in listed:
            ck(fg.ext_h1_dim(one, phi) == 0, f"unlisted {phi} has nonsplit extensions")
    return CriterionResult(8, "Extension dimensions on the index-four group", ck.ok, ck.details)


INDEX4_Z0 = complex(1.0910849089, 0.4942818186)


def criterion_9() -> CriterionResult:
    ck = _Checks()
    cfg = periods.PeriodConfig(truncation=200, dps=30, tolerance=1e-20)
    z = periods.z0("gamma3", cfg).value
    ck(abs(z - complex(3, math.sqrt(3)) / 6) < 1e-10, f"z0(gamma3) = {z}")
    ck(abs(1 / z - 1 - cmath.exp(-2j * math.pi / 6)) < 1e-10, "1/z0 - 1 = e(-1/6)")
    w = periods.z0("index4G", cfg).value
    ck(abs(w - INDEX4_Z0) < 1e-8, f"z0(index4G) = {w:.10f}, expected {INDEX4_Z0}")
    return CriterionResult(9, "Split values of the rank-two families", ck.ok, ck.details)


def criterion_10() -> CriterionResult:
    ck = _Checks()
    # C[F, G] with F, G of weight two, over C[E4, E6]: (1 + T^2)(1 + T^2 + T^4)
    ring = {0: 1, 2: 2, 4: 2, 6: 1}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for phi in fg.all_characters("gamma2"):
            total, _ = fg.gm_series(phi)
            check = fg.free_hp_check(total, ring)
            ck(check.free_compatible and len(check.witness) == 1, f"GM({phi}) = {total}: {check}")
    return CriterionResult(10, "Free module theorem on the index-two subgroup", ck.ok, ck.details)


def criterion_11() -> CriterionResult:
    ck = _Checks()
    for sig in [(2, 3), (2, 2, 5), (3, 4, 5, 7)]:
        for i in range(len(sig)):
            ck(ob.euler_char(ob.x_elem(sig, i)) == 1, f"chi(O(x{i})) on {sig}")
    for n in range(2, 9):
        sig = (2, 2, n)
        ck(ob.euler_char(-ob.omega(sig)) == 0, f"chi(T_X) = 0 on {sig}")
    ck(ob.weight_two_degree((2, 3), 1) == Fraction(1, 6), "deg L2 on (2,3)")
    ck(fg.weight_two_degree("psl2z") == Fraction(1, 6), "deg L2 on the modular group")
    return CriterionResult(11, "Riemann-Roch spot values", ck.ok, ck.details)


CRITERIA: list[Callable[[], CriterionResult]] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
]


def run_all() -> list[CriterionResult]:
    return [check() for check in CRITERIA]
