"""Orbifold lines: Picard groups, degrees, Riemann-Roch and Serre duality.

An element of ``Pic(X)`` for signature ``(p_0, ..., p_n)`` is written uniquely
as ``sum a_i x_i + a c`` with ``0 <= a_i < p_i``; :class:`PicElement` stores
exactly that canonical form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactalg import FGAbelianGroup, smith_normal_form

Signature = tuple[int, ...]


def signature(orders: Iterable[int]) -> Signature:
    sig = tuple(int(p) for p in orders)
    if any(p < 2 for p in sig):
        raise ValueError(f"orbifold orders must be >= 2, got {sig}")
    return sig


def parse_signature(text: str) -> Signature:
    text = text.strip().strip("()")
    if not text:
        return ()
    return signature(int(tok) for tok in text.split(","))


def lcm_order(sig: Signature) -> int:
    return math.lcm(*sig) if sig else 1


@dataclass(frozen=True)
class PicElement:
    signature: Signature
    residues: tuple[int, ...]
    integer_part: int

    def __post_init__(self):
        if len(self.residues) != len(self.signature):
            raise ValueError("one residue per orbifold point is required")
        for a, p in zip(self.residues, self.signature):
            if not 0 <= a < p:
                raise ValueError(f"residue {a} outside [0, {p})")

    def _check(self, other: "PicElement") -> None:
        if self.signature != other.signature:
            raise ValueError(f"signature mismatch: {self.signature} vs {other.signature}")

    def __add__(self, other: "PicElement") -> "PicElement":
        self._check(other)
        return canonicalize(
            self.signature,
            [a + b for a, b in zip(self.residues, other.residues)],
            self.integer_part + other.integer_part,
        )

    def __neg__(self) -> "PicElement":
        return canonicalize(self.signature, [-a for a in self.residues], -self.integer_part)

    def __sub__(self, other: "PicElement") -> "PicElement":
        return self + (-other)

    def __mul__(self, n: int) -> "PicElement":
        return canonicalize(self.signature, [n * a for a in self.residues], n * self.integer_part)

    __rmul__ = __mul__

    @property
    def degree(self) -> Fraction:
        return degree(self)

    def is_torsion(self) -> bool:
        return degree(self) == 0

    def __str__(self):
        terms = [f"{a}*x{i}" if a > 1 else f"x{i}" for i, a in enumerate(self.residues) if a]
        if self.integer_part:
            terms.append({1: "c", -1: "-c"}.get(self.integer_part, f"{self.integer_part}*c"))
        return " + ".join(terms).replace("+ -", "- ") or "0"


def canonicalize(sig: Sequence[int], raw: Sequence[int], c_coeff: int = 0) -> PicElement:
    """Reduce ``sum raw_i x_i + c_coeff c`` using ``p_i x_i = c``."""
    sig = signature(sig)
    if len(raw) != len(sig):
        raise ValueError("one coefficient per generator x_i is required")
    residues, a = [], int(c_coeff)
    for r, p in zip(raw, sig):
        q, res = divmod(int(r), p)
        residues.append(res)
        a += q
    return PicElement(sig, tuple(residues), a)


def zero(sig: Sequence[int]) -> PicElement:
    return canonicalize(sig, [0] * len(sig))


def c_elem(sig: Sequence[int]) -> PicElement:
    return canonicalize(sig, [0] * len(sig), 1)


def x_elem(sig: Sequence[int], i: int) -> PicElement:
    raw = [0] * len(sig)
    raw[i] = 1
    return canonicalize(sig, raw)


def omega(sig: Sequence[int]) -> PicElement:
    """The dualizing element ``(n-1)c - sum x_i``; ``-2c`` for ``P^1``."""
    k = len(sig)
    return canonicalize(sig, [-1] * k, k - 2)


def degree(x: PicElement) -> Fraction:
    return sum((Fraction(a, p) for a, p in zip(x.residues, x.signature)), Fraction(x.integer_part))


def partial_leq(x: PicElement, y: PicElement) -> bool:
    x._check(y)
    return all(a <= b for a, b in zip(x.residues, y.residues)) and x.integer_part <= y.integer_part


def h0(x: PicElement) -> int:
    return max(0, x.integer_part + 1)


def h1(x: PicElement) -> int:
    return h0(omega(x.signature) - x)


def euler_char(x: PicElement) -> int:
    """Riemann-Roch: ``deg + 1 - sum(isotropy_i / p_i)``."""
    value = degree(x) + 1 - sum(Fraction(a, p) for a, p in zip(x.residues, x.signature))
    assert value.denominator == 1
    return int(value)


def ring_dim_oracle(x: PicElement) -> int:
    """Count normal-form monomials of ``S(X)`` in degree ``x`` by enumeration.

    Basis monomials are ``z_0^e0 z_1^e1 prod_{i>=2} z_i^ei`` with ``e_i < p_i``
    for ``i >= 2``.  Signatures with fewer than two points are padded with
    order-one points, i.e. free polynomial variables of degree ``c``.
    """
    sig = x.signature
    orders = list(sig) + [1] * max(0, 2 - len(sig))
    m = lcm_order(sig)
    weights = [m // p for p in orders]  # m * deg(z_i)
    target = degree(x) * m
    if target < 0:
        return 0
    target = int(target)
    count = 0
    for tail in itertools.product(*(range(p) for p in orders[2:])):
        rest = target - sum(e * w for e, w in zip(tail, weights[2:]))
        for e0 in range(rest // weights[0] + 1 if rest >= 0 else 0):
            e1, r = divmod(rest - e0 * weights[0], weights[1])
            if r:
                continue
            exps = [e0, e1, *tail]
            mono = canonicalize(sig, exps[: len(sig)], sum(exps[len(sig):]))
            if mono == x:
                count += 1
    return count


def gm_hilbert(bundle: Sequence[PicElement], shift: PicElement) -> int:
    """Dimension of the ``shift``-graded piece of ``GM_*`` of a split bundle."""
    return sum(h0(a + shift) for a in bundle)


def ext_dim(quot: PicElement, sub: PicElement) -> int:
    """``dim Ext^1(O(quot), O(sub)) = h1(sub - quot)``."""
    quot._check(sub)
    return h1(sub - quot)


@dataclass(frozen=True)
class Rank2Extension:
    """An extension ``0 -> O(sub) -> W -> O(quot) -> 0``."""

    sub: PicElement
    quot: PicElement
    class_is_zero: bool

    def __post_init__(self):
        self.sub._check(self.quot)
        if not self.class_is_zero and ext_dim(self.quot, self.sub) == 0:
            raise ValueError("Ext^1 vanishes, so the extension class must be zero")

    def split_h0(self) -> int:
        return h0(self.sub) + h0(self.quot)


def rank2_indecomposable_test(W: Rank2Extension, h0_of_W: int) -> bool:
    """For ``0 -> Omega^1 -> W -> O -> 0``: indecomposable iff ``H^0(W) = 0``."""
    sig = W.sub.signature
    if W.quot != zero(sig) or W.sub != omega(sig):
        raise ValueError("criterion applies only to extensions of O by the dualizing sheaf")
    if W.class_is_zero and h0_of_W != W.split_h0():
        raise ValueError("a split extension has h0 = h0(omega) + h0(O)")
    return h0_of_W == 0


def virtual_genus(sig: Sequence[int]) -> Fraction:
    return degree(omega(signature(sig))) / 2 + 1


def weight_two_degree(sig: Sequence[int], cusps: int) -> Fraction:
    """Degree of the weight-two bundle: ``deg(omega) + #cusps``."""
    return degree(omega(signature(sig))) + cusps


# ---------------------------------------------------------------------------
# group structure


def picard_relations(sig: Sequence[int]) -> list[list[int]]:
    """Rows ``p_0 e_0 - p_i e_i`` presenting Pic(X) on the generators x_i."""
    sig = signature(sig)
    return [[sig[0] if j == 0 else (-p if j == i else 0) for j in range(len(sig))] for i, p in enumerate(sig) if i]


def pic0_relations(sig: Sequence[int]) -> list[list[int]]:
    """Rows presenting ``prod Z/p_j / <(1, ..., 1)>``."""
    sig = signature(sig)
    k = len(sig)
    rows = [[p if j == i else 0 for j in range(k)] for i, p in enumerate(sig)]
    if k:
        rows.append([1] * k)
    return rows


def picard_group(sig: Sequence[int]) -> FGAbelianGroup:
    sig = signature(sig)
    if not sig:
        return FGAbelianGroup(1)
    return smith_normal_form(picard_relations(sig), ncols=len(sig))


def pic0_group(sig: Sequence[int]) -> FGAbelianGroup:
    sig = signature(sig)
    if not sig:
        return FGAbelianGroup(0)
    return smith_normal_form(pic0_relations(sig), ncols=len(sig))


def torsion_elements(sig: Sequence[int]) -> list[PicElement]:
    """Degree-zero elements, enumerated over residues."""
    sig = signature(sig)
    out = []
    for res in itertools.product(*(range(p) for p in sig)):
        frac = sum((Fraction(a, p) for a, p in zip(res, sig)), Fraction(0))
        if frac.denominator == 1:
            out.append(PicElement(sig, res, -int(frac)))
    return out


def parse_element(sig: Sequence[int], text: str) -> PicElement:
    """Parse ``"2*x0 - x1 + 3*c"``; ``omega`` (or ``w``) names the dualizing element."""
    sig = signature(sig)
    total = zero(sig)
    s = text.replace(" ", "").replace("-", "+-")
    for tok in filter(None, s.split("+")):
        coeff, _, name = tok.rpartition("*")
        if not coeff:
            coeff = "-1" if name.startswith("-") else "1"
            name = name.lstrip("-")
        if name.lstrip("-").isdigit() and coeff == "1":
            if int(name) != 0:
                raise ValueError(f"bare integer {name!r}; write n*c")
            continue
        n = int(coeff)
        if name == "c":
            gen = c_elem(sig)
        elif name in ("omega", "w"):
            gen = omega(sig)
        elif name.startswith("x") and name[1:].isdigit() and int(name[1:]) < len(sig):
            gen = x_elem(sig, int(name[1:]))
        else:
            raise ValueError(f"unknown Picard generator {name!r}")
        total = total + n * gen
    return total
