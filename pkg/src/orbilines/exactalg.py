"""Exact arithmetic: cyclotomic numbers, Smith normal form, f.g. abelian groups.

Rationals are :class:`fractions.Fraction`.  Cyclotomic numbers live in
``Q(zeta_M)`` and are stored as an integer coefficient vector over a common
positive denominator, reduced modulo the ``M``-th cyclotomic polynomial, so
equal field elements always have identical representations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

DEFAULT_ORDER = 24
MAX_ORDER = 24


def set_cyclotomic_order(order: int) -> None:
    """Raise the default (and maximal) cyclotomic order used by constructors."""
    global DEFAULT_ORDER, MAX_ORDER
    if order < 1 or order % 24:
        raise ValueError("cyclotomic order must be a positive multiple of 24")
    DEFAULT_ORDER = order
    MAX_ORDER = max(MAX_ORDER, order)


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _mobius(n: int) -> int:
    sign, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    return -sign if n > 1 else sign


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both lists low-degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(order: int) -> tuple[tuple[int, ...], ...]:
    """Reduced vectors of zeta^j for 0 <= j < max(order, 2*phi - 1)."""
    phi = euler_phi(order)
    cyc = cyclotomic_polynomial(order)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(max(order, 2 * phi - 1)):
        rows.append(tuple(cur))
        # multiply by zeta: shift, then eliminate zeta^phi
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * k for c, k in zip(cur, cyc[:phi])]
    return tuple(rows)


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num, den = [-n for n in num], -den
    g = den
    for n in num:
        g = math.gcd(g, n)
        if g == 1:
            break
    if g > 1:
        num, den = [n // g for n in num], den // g
    return tuple(num), den


class Cyclotomic:
    """An element of the cyclotomic field ``Q(zeta_M)``.

    ``coefficients`` gives the element as a polynomial in ``zeta_M`` of degree
    below ``phi(M)``.  Interoperates with ``int`` and ``Fraction``.
    """

    __slots__ = ("order", "_num", "_den", "_rational")

    def __init__(self, coefficients: Iterable = (), order: int | None = None):
        order = DEFAULT_ORDER if order is None else order
        phi = euler_phi(order)
        coeffs = [Fraction(c) for c in coefficients]
        if len(coeffs) > phi:
            raise ValueError("coefficient vector longer than phi(order); use from_powers")
        coeffs += [Fraction(0)] * (phi - len(coeffs))
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        self._set(order, [int(c * den) for c in coeffs], den)

    def _set(self, order: int, num: Sequence[int], den: int) -> None:
        self.order = order
        self._num, self._den = _normalize(num, den)
        self._rational = not any(self._num[1:])

    @classmethod
    def _raw(cls, order: int, num: Sequence[int], den: int = 1) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj._set(order, num, den)
        return obj

    @classmethod
    def from_powers(cls, powers: dict[int, object] | Sequence, order: int | None = None) -> "Cyclotomic":
        """Build ``sum c_j zeta_M^j`` from arbitrary exponents ``j``."""
        order = DEFAULT_ORDER if order is None else order
        items = powers.items() if isinstance(powers, dict) else enumerate(powers)
        table = _power_table(order)
        phi = euler_phi(order)
        acc = [Fraction(0)] * phi
        for j, c in items:
            c = Fraction(c)
            if c:
                row = table[j % order]
                for i in range(phi):
                    if row[i]:
                        acc[i] += c * row[i]
        return cls(acc, order)

    @classmethod
    def root_of_unity(cls, turn, order: int | None = None) -> "Cyclotomic":
        """``exp(2 pi i * turn)`` for a rational ``turn``."""
        order = DEFAULT_ORDER if order is None else order
        turn = Fraction(turn)
        j = turn * order
        if j.denominator != 1:
            raise ValueError(f"exp(2 pi i {turn}) is not in Q(zeta_{order})")
        row = _power_table(order)[int(j) % order]
        return cls._raw(order, row, 1)

    @classmethod
    def zeta(cls, n: int, order: int | None = None) -> "Cyclotomic":
        return cls.root_of_unity(Fraction(1, n), order)

    # -- views -------------------------------------------------------------
    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._num)

    def is_rational(self) -> bool:
        return self._rational

    def rational(self) -> Fraction:
        if not self._rational:
            raise ValueError("not a rational number")
        return Fraction(self._num[0], self._den)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(n * z**i for i, n in enumerate(self._num)) / self._den

    def to_mpc(self):
        import mpmath

        z = mpmath.expjpi(mpmath.mpf(2) / self.order)
        return mpmath.fsum(n * z**i for i, n in enumerate(self._num)) / self._den

    def embed(self, order: int) -> "Cyclotomic":
        """Image under Q(zeta_self.order) -> Q(zeta_order)."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        step = order // self.order
        return Cyclotomic.from_powers({i * step: Fraction(n, self._den) for i, n in enumerate(self._num)}, order)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.order == self.order:
                return other
            return None
        if isinstance(other, (int, Rational)):
            other = Fraction(other)
            num = [0] * len(self._num)
            num[0] = other.numerator
            return Cyclotomic._raw(self.order, num, other.denominator)
        return NotImplemented

    def _common(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented, NotImplemented
        if o is None:
            m = math.lcm(self.order, other.order)
            if m > MAX_ORDER:
                raise ValueError(f"orders {self.order}, {other.order} not embeddable in Q(zeta_{MAX_ORDER})")
            return self.embed(m), other.embed(m)
        return self, o

    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        d = a._den * b._den // math.gcd(a._den, b._den)
        fa, fb = d // a._den, d // b._den
        return Cyclotomic._raw(a.order, [x * fa + y * fb for x, y in zip(a._num, b._num)], d)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, [-x for x in self._num], self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        if b._rational:
            c = b._num[0]
            return Cyclotomic._raw(a.order, [x * c for x in a._num], a._den * b._den)
        if a._rational:
            c = a._num[0]
            return Cyclotomic._raw(a.order, [x * c for x in b._num], a._den * b._den)
        phi = len(a._num)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        prod[i + j] += x * y
        table = _power_table(a.order)
        out = prod[:phi]
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                row = table[k]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return Cyclotomic._raw(a.order, out, a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not any(self._num):
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self._rational:
            return Cyclotomic._raw(self.order, [self._den] + [0] * (len(self._num) - 1), self._num[0])
        # solve (multiplication-by-self) y = 1 over Q
        phi = len(self._num)
        basis = [Cyclotomic._raw(self.order, [int(i == j) for i in range(phi)]) for j in range(phi)]
        cols = [(self * e).coefficients for e in basis]
        mat = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        return Cyclotomic(_solve(mat), self.order)

    def __truediv__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Cyclotomic._raw(self.order, [1] + [0] * (len(self._num) - 1))
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        return Cyclotomic.from_powers({-i: Fraction(n, self._den) for i, n in enumerate(self._num)}, self.order)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        try:
            a, b = self._common(other)
        except ValueError:
            return False
        if a is NotImplemented:
            return NotImplemented
        return a._num == b._num and a._den == b._den

    def __bool__(self):
        return any(self._num)

    def normalized_trace(self) -> Fraction:
        """Tr(x)/[K:Q]; independent of the ambient cyclotomic field."""
        m = self.order
        total = Fraction(0)
        for j, n in enumerate(self._num):
            if n:
                g = math.gcd(j, m)
                ram = sum(_mobius(m // d) * d for d in range(1, g + 1) if g % d == 0)
                total += n * ram
        return total / (self._den * euler_phi(m))

    def __hash__(self):
        if self._rational:
            return hash(Fraction(self._num[0], self._den))
        return hash(("cyc", self.normalized_trace()))

    def __repr__(self):
        if self._rational:
            return f"Cyclotomic({Fraction(self._num[0], self._den)})"
        terms = []
        for i, n in enumerate(self._num):
            if n:
                c = Fraction(n, self._den)
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.order}^{i}")
        return "Cyclotomic(" + " + ".join(terms) + ")"


def _solve(mat: list[list[Fraction]]) -> list[Fraction]:
    n = len(mat)
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col])
        mat[col], mat[piv] = mat[piv], mat[col]
        p = mat[col][col]
        mat[col] = [x / p for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    return [row[-1] for row in mat]


def as_cyclotomic(x, order: int | None = None) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x if order is None else x.embed(order)
    return Cyclotomic([Fraction(x)], order)


def to_complex(x) -> complex:
    return complex(x)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and d_i >= 2."""

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class SmithForm:
    """``U * A * V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    D: tuple[tuple[int, ...], ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_form(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form by elimination with minimal-absolute-value pivots."""
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for M in (A, V):
            for row in M:
                row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    add_row(t, i, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_col(t, j, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < min(m, n) and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    form = SmithForm(tuple(map(tuple, A)), tuple(map(tuple, U)), tuple(map(tuple, V)))
    if m and n:
        check = _matmul(_matmul(U, [list(map(int, r)) for r in matrix]), V)
        if check != A:
            raise AssertionError("Smith normal form verification failed")
    return form


def smith_normal_form(relations: Sequence[Sequence[int]], ncols: int | None = None) -> FGAbelianGroup:
    """Cokernel ``Z^ncols / rowspace(relations)`` in invariant-factor form."""
    rows = [list(r) for r in relations]
    n = len(rows[0]) if rows else (ncols or 0)
    if ncols is not None and rows and ncols != n:
        raise ValueError("ncols disagrees with the matrix width")
    if not rows:
        return FGAbelianGroup(n)
    diag = smith_form(rows).diagonal
    nonzero = [abs(d) for d in diag if d]
    return FGAbelianGroup(n - len(nonzero), tuple(d for d in nonzero if d > 1))


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued elimination."""
    A = [[Fraction(x) for x in row] for row in matrix]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det
