"""Truncated q-expansions with fractional exponents and cyclotomic coefficients.

Exponents are stored as integers ``k`` meaning ``q^(k/DEN)`` with ``DEN = 24``,
which accommodates the eighth, twelfth and twenty-fourth roots of ``q`` met by
theta and eta products.  ``q = exp(2 pi i tau)`` throughout.  Coefficients are
``int``/``Fraction`` when rational and :class:`Cyclotomic` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .exactalg import Cyclotomic

DEN = 24


def _clean(c):
    """Collapse rational cyclotomics to Fractions and integral Fractions to ints."""
    if isinstance(c, Cyclotomic):
        if not c.is_rational():
            return c
        c = c.rational()
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _to_units(exponent) -> int:
    k = Fraction(exponent) * DEN
    if k.denominator != 1:
        raise ValueError(f"exponent {exponent} is not a multiple of 1/{DEN}")
    return int(k)


class QSeries:
    """``sum c_k q^(k/24)``, exact for exponents strictly below ``truncation``."""

    __slots__ = ("terms", "trunc")

    def __init__(self, terms: Mapping[int, object], trunc: int):
        # ``trunc`` is in units of 1/DEN; exponents >= trunc/DEN are unknown
        self.trunc = int(trunc)
        self.terms = {}
        for k, c in terms.items():
            c = _clean(c)
            if c and k < self.trunc:
                self.terms[int(k)] = c

    # -- construction helpers ------------------------------------------------
    @classmethod
    def from_exponents(cls, terms: Mapping, truncation) -> "QSeries":
        """Build from ``{exponent: coeff}`` with rational exponents."""
        return cls({_to_units(e): c for e, c in terms.items()}, _to_units(truncation))

    @classmethod
    def constant(cls, c, truncation) -> "QSeries":
        return cls({0: c}, _to_units(truncation))

    @property
    def truncation(self) -> Fraction:
        return Fraction(self.trunc, DEN)

    @property
    def denominator(self) -> int:
        """Smallest D with every stored exponent in (1/D)Z."""
        g = DEN
        for k in self.terms:
            g = math.gcd(g, k)
        return DEN // g if self.terms else 1

    def valuation_units(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def valuation(self) -> Fraction | None:
        v = self.valuation_units()
        return None if v is None else Fraction(v, DEN)

    def __getitem__(self, exponent) -> object:
        k = _to_units(exponent)
        if k >= self.trunc:
            raise IndexError(f"coefficient of q^{exponent} lies beyond the truncation {self.truncation}")
        return self.terms.get(k, 0)

    def items(self) -> list[tuple[Fraction, object]]:
        return [(Fraction(k, DEN), self.terms[k]) for k in sorted(self.terms)]

    def truncate(self, truncation) -> "QSeries":
        t = _to_units(truncation)
        if t > self.trunc:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.terms, t)

    # -- arithmetic ------------------------------------------------------------
    def _lift(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries({0: other}, self.trunc)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return QSeries(out, min(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return QSeries({k: -c for k, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        return QSeries({k: c * v for k, v in self.terms.items()}, self.trunc)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        if not self.terms or not other.terms:
            va = self.valuation_units() if self.terms else self.trunc
            vb = other.valuation_units() if other.terms else other.trunc
            return QSeries({}, min(self.trunc + vb, other.trunc + va))
        va, vb = self.valuation_units(), other.valuation_units()
        trunc = min(self.trunc + vb, other.trunc + va)
        out: dict[int, object] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                if k < trunc:
                    out[k] = out.get(k, 0) + a * b
        return QSeries(out, trunc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        if n == 0:
            return QSeries({0: 1}, self.trunc - (self.valuation_units() or 0))
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, exponent) -> "QSeries":
        """Multiply by ``q^exponent``."""
        s = _to_units(exponent)
        return QSeries({k + s: c for k, c in self.terms.items()}, self.trunc + s)

    def invert(self) -> "QSeries":
        if not self.terms:
            raise ZeroDivisionError("cannot invert a series with no known nonzero term")
        v = self.valuation_units()
        lead = self.terms[v]
        inv_lead = Fraction(1) / lead if not isinstance(lead, Cyclotomic) else lead.inverse()
        # unit part u = f / (lead q^v), exact below trunc - v
        width = self.trunc - v
        u = {k - v: c * inv_lead for k, c in self.terms.items()}
        # w = 1/u by the recurrence w_n = -sum_{k>0} u_k w_{n-k}
        w: dict[int, object] = {0: 1}
        steps = sorted(k for k in u if k > 0)
        for n in range(1, width):
            acc = 0
            for k in steps:
                if k > n:
                    break
                wk = w.get(n - k)
                if wk:
                    acc = acc + u[k] * wk
            acc = _clean(acc)
            if acc:
                w[n] = -acc
        out = QSeries(w, width).scale(inv_lead)
        return QSeries({k - v: c for k, c in out.terms.items()}, width - v)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.invert()
        inv = Fraction(1) / other if not isinstance(other, Cyclotomic) else other.inverse()
        return self.scale(inv)

    def theta_op(self) -> "QSeries":
        """``q d/dq``."""
        return QSeries({k: Fraction(k, DEN) * c for k, c in self.terms.items()}, self.trunc)

    def map_coefficients(self, fn: Callable) -> "QSeries":
        return QSeries({k: fn(c) for k, c in self.terms.items()}, self.trunc)

    # -- comparison ------------------------------------------------------------
    def first_difference(self, other: "QSeries") -> Fraction | None:
        """Lowest exponent (below the common truncation) where the two differ."""
        trunc = min(self.trunc, other.trunc)
        for k in sorted(set(self.terms) | set(other.terms)):
            if k >= trunc:
                break
            if _clean(self.terms.get(k, 0) - other.terms.get(k, 0)):
                return Fraction(k, DEN)
        return None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            other = self._lift(other)
        return self.first_difference(other) is None

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"QSeries({format_series(self)})"

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "denominator": DEN,
            "truncation": self.trunc,
            "terms": [[k, coeff_to_json(self.terms[k])] for k in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QSeries":
        if data["denominator"] != DEN:
            scale = Fraction(DEN, data["denominator"])
            if scale.denominator != 1:
                raise ValueError("denominator must divide 24")
            scale = int(scale)
        else:
            scale = 1
        terms = {k * scale: coeff_from_json(c) for k, c in data["terms"]}
        return cls(terms, data["truncation"] * scale)


def coeff_to_json(c) -> list[str]:
    """Coefficient vector in the power basis of Q(zeta_24), as rational strings."""
    if isinstance(c, Cyclotomic):
        return [str(x) for x in c.embed(DEN).coefficients]
    return [str(Fraction(c))]


def coeff_from_json(vec: Iterable[str]):
    vec = [Fraction(x) for x in vec]
    return _clean(Cyclotomic(vec, DEN)) if len(vec) > 1 else _clean(vec[0])


def _format_coeff(c) -> str:
    if isinstance(c, Cyclotomic):
        return "(" + repr(c)[len("Cyclotomic(") : -1] + ")"
    return str(c)


def format_series(f: QSeries, limit: int = 12) -> str:
    parts = []
    for e, c in f.items()[:limit]:
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{exponent_str(e)}")
        if mono and c == 1:
            parts.append(mono)
        elif mono and c == -1:
            parts.append("-" + mono)
        else:
            parts.append(_format_coeff(c) + ("*" + mono if mono else ""))
    body = " + ".join(parts).replace("+ -", "- ") or "0"
    return f"{body} + O(q^{exponent_str(f.truncation)})"


def exponent_str(e: Fraction) -> str:
    return str(e) if e.denominator == 1 and e >= 0 else f"({e})"


# ---------------------------------------------------------------------------
# constructors


def _bound(truncation) -> int:
    t = _to_units(truncation)
    if t < 0:
        raise ValueError("truncation must be nonnegative")
    return t


def euler_product(m: int, truncation) -> QSeries:
    """``prod_{n>=1} (1 - q^(mn))`` via the pentagonal number theorem."""
    t = _bound(truncation)
    out = {}
    j = 0
    while True:
        hit = False
        for s in ((j,) if j == 0 else (j, -j)):
            e = m * s * (3 * s - 1) // 2 * DEN
            if e < t:
                out[e] = (-1) ** (s % 2)
                hit = True
        if not hit and j > 0:
            break
        j += 1
    return QSeries(out, t)


def euler_product_direct(m: int, truncation) -> QSeries:
    """Same product by multiplying out the factors; used as an oracle."""
    t = _bound(truncation)
    f = QSeries({0: 1}, t)
    n = 1
    while m * n * DEN < t:
        f = f * QSeries({0: 1, m * n * DEN: -1}, t)
        n += 1
    return f


def eta(m: int = 1, truncation=10) -> QSeries:
    """``eta(q^m) = q^(m/24) prod (1 - q^(mn))``, exact below ``truncation``."""
    if m < 1:
        raise ValueError("eta scale must be a positive integer")
    lead = Fraction(m, 24)
    return euler_product(m, max(Fraction(0), Fraction(truncation) - lead)).shift(lead)


def eta_quotient(spec: Iterable[tuple[int, int]], truncation=10) -> QSeries:
    """``prod eta(q^m)^e`` for ``(m, e)`` in ``spec``."""
    spec = [(int(m), int(e)) for m, e in spec]
    lead = sum((Fraction(m * e, 24) for m, e in spec), Fraction(0))
    width = max(Fraction(0), Fraction(truncation) - lead)
    unit = QSeries({0: 1}, _bound(width))
    for m, e in spec:
        if e:
            unit = unit * euler_product(m, width) ** e
    return unit.shift(lead)


def theta(kind: int, truncation=10) -> QSeries:
    t = _bound(truncation)
    out: dict[int, object] = {}
    if kind == 2:
        n = 0
        while (2 * n + 1) ** 2 * DEN // 8 < t:
            out[(2 * n + 1) ** 2 * DEN // 8] = 2
            n += 1
    elif kind in (3, 4):
        out[0] = 1
        n = 1
        while n * n * DEN // 2 < t:
            out[n * n * DEN // 2] = 2 * (-1) ** n if kind == 4 else 2
            n += 1
    else:
        raise ValueError("theta kind must be 2, 3 or 4")
    return QSeries(out, t)


def sigma(k: int, n: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


_EIS_FACTOR = {2: -24, 4: 240, 6: -504}


def eisenstein_level1(weight: int, truncation=10) -> QSeries:
    """Level-one Eisenstein series normalized to constant term 1."""
    if weight not in _EIS_FACTOR:
        raise ValueError(f"unsupported weight {weight}; expected 2, 4 or 6")
    t = _bound(truncation)
    f = _EIS_FACTOR[weight]
    out = {0: 1}
    n = 1
    while n * DEN < t:
        out[n * DEN] = f * sigma(weight - 1, n)
        n += 1
    return QSeries(out, t)


def serre_derivative(f: QSeries, weight: int) -> QSeries:
    """``D f = q df/dq - (k/12) E_2 f``."""
    e2 = eisenstein_level1(2, f.truncation)
    return f.theta_op() - (e2 * f).scale(Fraction(weight, 12))


def eisenstein2_levelN(N: int, c: int, d: int, truncation=10) -> QSeries:
    """Weight-two Eisenstein series of level ``N`` attached to ``(c, d) mod N``.

    Normalized as ``-(N/2 pi)^2 sum_m sum_n (m tau + n)^-2`` over
    ``(m, n) = (c, d) mod N`` (inner sum first), which gives
    constant term ``[c = 0] kappa(d)`` with ``kappa(0) = -1/12`` and
    ``kappa(d) = z^d/(z^d - 1)^2``, ``z = exp(2 pi i/N)``, and coefficient of
    ``q^(t/N)`` equal to
    ``sum_{m | t, m = c} r z^(rd) + sum_{m | t, m = -c} r z^(-rd)``, ``r = t/m``.
    """
    if N < 1 or DEN % N:
        raise ValueError(f"level {N} must divide {DEN}")
    c, d = c % N, d % N
    t = _bound(truncation)
    step = DEN // N
    z = lambda j: Cyclotomic.root_of_unity(Fraction(j % N, N))  # noqa: E731
    out: dict[int, object] = {}
    if c == 0:
        w = z(d)
        out[0] = Fraction(-1, 12) if d == 0 else w / ((w - 1) * (w - 1))
    n = 1
    while n * step < t:
        acc = 0
        for m in range(1, n + 1):
            if n % m:
                continue
            r = n // m
            if m % N == c:
                acc = acc + r * z(r * d)
            if m % N == (-c) % N:
                acc = acc + r * z(-r * d)
        out[n * step] = acc
        n += 1
    return QSeries(out, t)


# Cusps of Gamma(3) and the residue classes of their Eisenstein series.
GAMMA3_CUSPS: dict[str, tuple[int, int]] = {
    "inf": (0, 1),
    "0": (1, 0),
    "1": (1, 2),
    "2": (1, 1),
}


def gamma3_eisenstein(cusp: str, truncation=10) -> QSeries:
    c, d = GAMMA3_CUSPS[cusp]
    return eisenstein2_levelN(3, c, d, truncation)


def gamma3_abc(truncation=10) -> tuple[QSeries, QSeries, QSeries]:
    g = {name: gamma3_eisenstein(name, truncation) for name in GAMMA3_CUSPS}
    A = g["0"] + g["1"] - g["2"] - g["inf"]
    B = g["0"] - g["1"] + g["2"] - g["inf"]
    C = g["0"] - g["1"] - g["2"] + g["inf"]
    return A, B, C


# ---------------------------------------------------------------------------
# named forms and identities

ZETA3 = Cyclotomic.root_of_unity(Fraction(1, 3))
U = (2 * Cyclotomic.root_of_unity(Fraction(1, 6)) - 1) / 72


def form_F(truncation=10) -> QSeries:
    """The weight-two form built from theta quartics for the index-two subgroup."""
    t2, t3, t4 = (theta(k, truncation) ** 4 for k in (2, 3, 4))
    e6 = Cyclotomic.root_of_unity(Fraction(1, 6))
    e56 = Cyclotomic.root_of_unity(Fraction(5, 6))
    return t2.scale(1 + e6) - (t3 + t4).scale(e56)


F1_SPEC = [(2, 10), (1, -2), (4, -4)]
F2_SPEC = [(2, 4)]
F3_SPEC = [(1, 2), (4, 4), (2, -2)]

# coefficients as listed for the three eta quotients on the index-four group
F1_LISTED = (Fraction(1, 12), [1, 2, -5, -10, 9, 14, -10, 0, 14])
F2_LISTED = (Fraction(1, 3), [1, 0, -4, 0, 2, 0, 8, 0, -5])
F3_LISTED = (Fraction(7, 12), [1, -2, 1, -2, 0, 4])


def listed_series(listed, truncation=None) -> QSeries:
    lead, coeffs = listed
    trunc = lead + len(coeffs) if truncation is None else truncation
    return QSeries.from_exponents({lead + n: c for n, c in enumerate(coeffs)}, trunc)


def form_f(truncation=10) -> QSeries:
    """``f1 + 4 f3`` spanning the weight-two forms for chi^5 on the index-four group."""
    return eta_quotient(F1_SPEC, truncation) + eta_quotient(F3_SPEC, truncation).scale(4)


I4 = Cyclotomic.root_of_unity(Fraction(1, 4))


def form_f_index4(truncation=10) -> QSeries:
    """``f1 + (2+2i) f2 - 4i f3``, the line in span(f1, f2, f3) fixed by the index-four group.

    ``f1 + 4 f3`` is only fixed (up to scalars) by an index-three subgroup; this
    combination is anti-invariant under S0 and S1 and picks up ``e(1/3)`` under R2.
    """
    f1, f2, f3 = (eta_quotient(spec, truncation) for spec in (F1_SPEC, F2_SPEC, F3_SPEC))
    return f1 + f2.scale(2 + 2 * I4) + f3.scale(-4 * I4)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    holds: bool
    first_failing_exponent: Fraction | None
    truncation: Fraction

    def to_json(self) -> dict:
        bad = self.first_failing_exponent
        return {
            "name": self.name,
            "holds": self.holds,
            "first_failing_exponent": None if bad is None else str(bad),
            "truncation": str(self.truncation),
        }


def _theta_quartic(n):
    t2, t3, t4 = (theta(k, n) ** 4 for k in (2, 3, 4))
    return t3, t2 + t4


def _eta_listed(spec, listed):
    def check(n):
        ref = listed_series(listed)
        return eta_quotient(spec, ref.truncation), ref

    return check


def _ramanujan(n):
    e4, e6 = eisenstein_level1(4, n), eisenstein_level1(6, n)
    return e4**3 - e6**2, eta(1, n) ** 24 * 1728


def _eta12_F(n):
    F = form_F(n)
    DF = serre_derivative(F, 2)
    e4, e6 = eisenstein_level1(4, n), eisenstein_level1(6, n)
    return eta(1, n) ** 12 * F, (e6 * F + e4 * DF * 6).scale(U)


def _eta12_DF(n):
    F = form_F(n)
    DF = serre_derivative(F, 2)
    e4, e6 = eisenstein_level1(4, n), eisenstein_level1(6, n)
    return eta(1, n) ** 12 * DF, (e4 * e4 * F + e6 * DF * 6).scale(-U / 6)


def _delta_derivative(n):
    d = eta(1, n) ** 24
    return serre_derivative(d, 12), QSeries({}, d.trunc)


def _gamma3_quadratic(n):
    A, B, C = gamma3_abc(n)
    return A * A + (B * B).scale(ZETA3), (C * C).scale(ZETA3 + 1)


def _f_character(n):
    """Every exponent e of f satisfies 4e = 1/3 mod 1, i.e. f(tau+4) = e(1/3) f(tau)."""
    f = form_f(n)
    bad = [e for e, _ in f.items() if (4 * e - Fraction(1, 3)).denominator != 1]
    if bad:
        # encode the failure as a mismatching term at the first bad exponent
        return f, f + QSeries.from_exponents({bad[0]: 1}, f.truncation)
    return f, f


IDENTITIES: dict[str, tuple[str, Callable]] = {
    "theta_quartic": ("theta_3^4 = theta_2^4 + theta_4^4", _theta_quartic),
    "eta_quotient_f1": ("f1 eta quotient matches its listed coefficients", _eta_listed(F1_SPEC, F1_LISTED)),
    "eta_quotient_f2": ("f2 = eta(q^2)^4 matches its listed coefficients", _eta_listed(F2_SPEC, F2_LISTED)),
    "eta_quotient_f3": ("f3 eta quotient matches its listed coefficients", _eta_listed(F3_SPEC, F3_LISTED)),
    "e4_e6_delta": ("E4^3 - E6^2 = 1728 eta^24", _ramanujan),
    "delta_serre": ("D(eta^24) = 0 at weight 12", _delta_derivative),
    "eta12_action_F": ("eta^12 F = u (E6 F + 6 E4 DF)", _eta12_F),
    "eta12_action_DF": ("eta^12 DF = -(1/6) u (E4^2 F + 6 E6 DF)", _eta12_DF),
    "gamma3_quadratic": ("A^2 + zeta B^2 = (zeta + 1) C^2", _gamma3_quadratic),
    "f_chi5_exponents": ("f = f1 + 4 f3 has all exponents in 1/12 + Z/4", _f_character),
}


def check_identity(name: str, truncation=30) -> IdentityReport:
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(sorted(IDENTITIES))}")
    lhs, rhs = IDENTITIES[name][1](truncation)
    bad = lhs.first_difference(rhs)
    return IdentityReport(name, bad is None, bad, min(lhs.truncation, rhs.truncation))


@lru_cache(maxsize=None)
def named_series(name: str, truncation) -> QSeries:
    """Series addressable by name from the command line."""
    makers: dict[str, Callable[[], QSeries]] = {
        "eta": lambda: eta(1, truncation),
        "delta": lambda: eta(1, truncation) ** 24,
        "theta2": lambda: theta(2, truncation),
        "theta3": lambda: theta(3, truncation),
        "theta4": lambda: theta(4, truncation),
        "E2": lambda: eisenstein_level1(2, truncation),
        "E4": lambda: eisenstein_level1(4, truncation),
        "E6": lambda: eisenstein_level1(6, truncation),
        "F": lambda: form_F(truncation),
        "DF": lambda: serre_derivative(form_F(truncation), 2),
        "f1": lambda: eta_quotient(F1_SPEC, truncation),
        "f2": lambda: eta_quotient(F2_SPEC, truncation),
        "f3": lambda: eta_quotient(F3_SPEC, truncation),
        "f": lambda: form_f(truncation),
        "fG": lambda: form_f_index4(truncation),
        "eta4": lambda: eta(1, truncation) ** 4,
    }
    for cusp in GAMMA3_CUSPS:
        makers[f"G_{cusp}"] = lambda cusp=cusp: gamma3_eisenstein(cusp, truncation)
    for i, label in enumerate("ABC"):
        makers[label] = lambda i=i: gamma3_abc(truncation)[i]
    if name not in makers:
        raise KeyError(f"unknown series {name!r}; known: {', '.join(sorted(makers))}")
    return makers[name]()


NAMED_SERIES = (
    "eta delta theta2 theta3 theta4 E2 E4 E6 F DF f1 f2 f3 f fG eta4 "
    "G_inf G_0 G_1 G_2 A B C"
).split()
