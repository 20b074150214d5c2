"""Numerical evaluation of q-series and their termwise primitives on the upper half-plane.

A series ``sum c_k q^(k/24)`` with ``q = exp(2 pi i tau)`` is summed directly;
its primitive in ``tau`` is summed term by term, which makes integrals
path-independent by construction.  The rank-two families of the index-three
and index-four groups have a unique split member ``z0`` given by a ratio of
such integrals between elliptic points.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exactalg import Cyclotomic
from .qseries import DEN, QSeries, eta, form_f, form_f_index4


@dataclass(frozen=True)
class PeriodConfig:
    truncation: int = 40  # q-exponent bound for the series used
    dps: int = 30
    tolerance: float = 1e-20

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("truncation must be at least 1")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


DEFAULT = PeriodConfig()


@dataclass(frozen=True)
class Value:
    value: complex
    tail_bound: float

    def to_json(self) -> dict:
        return {"re": float(self.value.real), "im": float(self.value.imag), "tail_bound": float(self.tail_bound)}


def uhp(x, y=None):
    """Point of the upper half-plane as an mpmath complex."""
    z = mpmath.mpc(x) if y is None else mpmath.mpc(x, y)
    if z.imag <= 0:
        raise ValueError(f"{z} is not in the upper half-plane")
    return z


def _coeff(c):
    if isinstance(c, Cyclotomic):
        return c.to_mpc()
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator


def tail_bound(f: QSeries, tau) -> float:
    """Geometric estimate of the neglected terms beyond the truncation.

    Coefficients are modelled as growing at most like ``A (1 + n)^2`` with ``A``
    fitted to the stored terms, which holds comfortably for the low-weight
    forms used here.  This is an estimate, not a rigorous bound.
    """
    r = float(mpmath.exp(-2 * mpmath.pi * mpmath.im(tau) / DEN))  # |q^(1/24)|
    if not f.terms:
        return 0.0
    A = max(abs(complex(_coeff(c))) / (1 + k / DEN) ** 2 for k, c in f.terms.items())
    n = f.trunc
    # sum_{m >= n} A (1 + m/24)^2 r^m over the 1/24 grid, bounded geometrically
    head = A * (1 + n / DEN) ** 2 * r**n
    return head / (1 - r) ** 3 if r < 1 else float("inf")


def eval_series(f: QSeries, tau, cfg: PeriodConfig = DEFAULT) -> Value:
    with mpmath.workdps(cfg.dps):
        tau = mpmath.mpc(tau)
        bound = tail_bound(f, tau)
        if bound > cfg.tolerance:
            raise ArithmeticError(f"tail bound {bound:.3g} exceeds tolerance {cfg.tolerance:.3g}; raise the truncation")
        two_pi_i = 2j * mpmath.pi
        total = mpmath.fsum(_coeff(c) * mpmath.exp(two_pi_i * Fraction(k, DEN) * tau) for k, c in f.terms.items())
        return Value(complex(total), bound)


def _primitive_terms(f: QSeries, tau, base):
    two_pi_i = 2j * mpmath.pi
    for k, c in f.terms.items():
        if k == 0:
            raise ValueError("series has a constant term; its primitive is not a q-series")
        r = mpmath.mpf(k) / DEN
        yield _coeff(c) * (mpmath.exp(two_pi_i * r * tau) - mpmath.exp(two_pi_i * r * base)) / (two_pi_i * r)


def antiderivative_mp(f: QSeries, tau, base, cfg: PeriodConfig = DEFAULT):
    """``int_base^tau f`` at working precision, as an mpmath complex."""
    with mpmath.workdps(cfg.dps):
        tau, base = mpmath.mpc(tau), mpmath.mpc(base)
        low = min(mpmath.im(tau), mpmath.im(base))
        bound = tail_bound(f, mpmath.mpc(0, low))
        if bound > cfg.tolerance:
            raise ArithmeticError(f"tail bound {bound:.3g} exceeds tolerance {cfg.tolerance:.3g}; raise the truncation")
        return +mpmath.fsum(_primitive_terms(f, tau, base)), bound


def antiderivative(f: QSeries, tau, base, cfg: PeriodConfig = DEFAULT) -> Value:
    val, bound = antiderivative_mp(f, tau, base, cfg)
    return Value(complex(val), bound)


def eisenstein2_lattice(N: int, c: int, d: int, tau, cfg: PeriodConfig = DEFAULT) -> complex:
    """``-(N/2 pi)^2 sum (m tau + n)^-2`` over ``(m, n) = (c, d) mod N``, summed over ``n`` first.

    The inner sum is closed-form, ``N^-2 pi^2 / sin^2(pi z)`` with ``z = (m tau + d)/N``;
    the ``m = 0`` row uses Hurwitz zeta values.  Independent of the q-expansion.
    """
    c, d = c % N, d % N
    with mpmath.workdps(cfg.dps):
        tau = mpmath.mpc(tau)
        pi = mpmath.pi
        total = mpmath.mpf(0)
        if c == 0:
            if d == 0:
                total += 2 * mpmath.zeta(2) / N**2
            else:
                total += (mpmath.zeta(2, mpmath.mpf(d) / N) + mpmath.zeta(2, 1 - mpmath.mpf(d) / N)) / N**2
        # the rows m = c + jN with m > 0 and with m < 0, each walked outward
        for start, step in ((c if c else N, N), (c - N, -N)):
            m = start
            while True:
                row = pi**2 / mpmath.sin(pi * (m * tau + d) / N) ** 2 / N**2
                total += row
                if abs(row) < cfg.tolerance * 1e-3:
                    break
                m += step
        return complex(-((N / (2 * pi)) ** 2) * total)


def zeta3():
    return mpmath.expjpi(mpmath.mpf(2) / 3)


def slash_ratio(f: QSeries, matrix, tau, cfg: PeriodConfig = DEFAULT):
    """``(c tau + d)^-2 f(g tau) / f(tau)``; constant in ``tau`` iff ``f`` is an eigenform for ``g``."""
    a, b, c, d = matrix
    with mpmath.workdps(cfg.dps):
        tau = mpmath.mpc(tau)
        image = (a * tau + b) / (c * tau + d)
        return complex((c * tau + d) ** -2 * eval_series(f, image, cfg).value / eval_series(f, tau, cfg).value)


# Weight-two integrands for the index-four group: the combination fixed by the
# group, and the eta combination f1 + 4 f3 kept for comparison.
INDEX4_FORMS = {"modular": form_f_index4, "listed": form_f}


@dataclass(frozen=True)
class SplitData:
    """Integrand and evaluation points for the split value of a rank-two family.

    With ``F = (a, 1)`` of weight zero for ``rho_z`` and ``rho_z(e) = [[-1, k_e], [0, 1]]``
    on an order-two generator ``e``, the relation ``a(e tau) = -a(tau) + k_e`` gives
    ``a(tau_e) = k_e / 2``.  Hence ``z = kappa * a(num) / a(den)`` where ``num`` is the
    fixed point of the generator carrying ``z`` and ``kappa`` is the fixed entry at ``den``.
    """

    form: QSeries
    base: object
    num: object
    den: object
    kappa: int


def split_data(group: str, cfg: PeriodConfig = DEFAULT, variant: str = "modular") -> SplitData:
    i = mpmath.mpc(0, 1)
    if group == "gamma3":
        return SplitData(eta(1, cfg.truncation) ** 4, i + 2, i + 1, i, 1)
    if group == "index4G":
        return SplitData(INDEX4_FORMS[variant](cfg.truncation), zeta3() + 2, i + 3, i, -1)
    raise ValueError(f"no split value is recorded for {group!r}")


def period_ratio(group: str, cfg: PeriodConfig = DEFAULT, variant: str = "modular") -> Value:
    """``a(num)/a(den)`` with ``a(tau) = int_base^tau`` of the group's weight-two form."""
    with mpmath.workdps(cfg.dps):
        d = split_data(group, cfg, variant)
        a_num, b1 = antiderivative_mp(d.form, d.num, d.base, cfg)
        a_den, b2 = antiderivative_mp(d.form, d.den, d.base, cfg)
        ratio = a_num / a_den
        err = (b1 + b2) / float(abs(a_den)) * (1 + float(abs(ratio)))
        return Value(complex(ratio), err)


def z0(group: str, cfg: PeriodConfig = DEFAULT, variant: str = "modular") -> Value:
    """The parameter of the decomposable member of the group's ``rho_z`` family."""
    r = period_ratio(group, cfg, variant)
    return Value(split_data(group, cfg, variant).kappa * r.value, r.tail_bound)


GAMMA3_SPLIT = complex(0.5, 3**0.5 / 6)


def is_split(group: str, z, cfg: PeriodConfig = DEFAULT, tol: float = 1e-8) -> bool:
    """Whether ``rho_z`` gives the decomposable bundle; ``z`` may be ``inf``."""
    if isinstance(z, (int, float, complex)) and cmath.isinf(complex(z)):
        return False
    return abs(complex(z) - z0(group, cfg).value) < tol
