"""Genus-zero subgroups of PSL2(Z) with one cusp, their characters and inductions.

Four groups are built in: the full modular group, its normal subgroups of
index two and three, and a nonnormal congruence subgroup of index four with
signature (2, 2, 3).  Every subgroup ``H`` has the powers ``T^k`` (``0 <= k <
index``) as a transversal for both left and right cosets, and ``T^index`` lies
in ``H``, so each group has a single cusp of width equal to its index.

Characters are stored by their values on the elliptic generators, as turns
(``phi(e_j) = exp(2 pi i t_j)``).  Values on arbitrary members come from
Reidemeister-Schreier rewriting of an S/T word.
"""

from __future__ import annotations

import itertools
import math
import warnings
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import orbiline
from .exactalg import Cyclotomic, to_complex

Mat = tuple[int, int, int, int]

# ---------------------------------------------------------------------------
# PSL2(Z) elements


def normalize(m: Sequence[int]) -> Mat:
    """Projective representative: first nonzero of ``(a, c)`` positive."""
    a, b, c, d = m
    if a * d - b * c != 1:
        raise ValueError(f"{tuple(m)} does not have determinant 1")
    if a < 0 or (a == 0 and c < 0):
        a, b, c, d = -a, -b, -c, -d
    return (a, b, c, d)


def mul(x: Mat, y: Mat) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return normalize((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))


def inv(x: Mat) -> Mat:
    a, b, c, d = x
    return normalize((d, -b, -c, a))


def mat_pow(x: Mat, n: int) -> Mat:
    base = x if n >= 0 else inv(x)
    out = IDENTITY
    for _ in range(abs(n)):
        out = mul(out, base)
    return out


def prod(mats: Iterable[Mat]) -> Mat:
    out = IDENTITY
    for m in mats:
        out = mul(out, m)
    return out


IDENTITY: Mat = (1, 0, 0, 1)
T: Mat = (1, 1, 0, 1)
T_INV: Mat = (1, -1, 0, 1)
S: Mat = normalize((0, -1, 1, 0))
R: Mat = mul(S, T)

LETTERS = {"S": S, "T": T, "t": T_INV}


def word_matrix(word: str) -> Mat:
    return prod(LETTERS[x] for x in word)


def decompose_ST(g: Sequence[int]) -> str:
    """Word in ``S``, ``T`` and ``t = T^-1`` equal to ``g`` in PSL2(Z)."""
    a, b, c, d = normalize(g)
    word = []
    while c != 0:
        n = a // c
        # g = T^n S g' with g' = S^-1 T^-n g
        word.append(("T" if n > 0 else "t") * abs(n) + "S")
        a, b = a - n * c, b - n * d
        a, b, c, d = -c, -d, a, b
    # now g = +-[[1, x], [0, 1]]
    x = b * a
    word.append(("T" if x > 0 else "t") * abs(x))
    out = "".join(word)
    assert word_matrix(out) == normalize(g)
    return out


def abelianization(g: Sequence[int]) -> int:
    """Image in Z/6 under ``T -> 1``, ``S -> 3``."""
    word = decompose_ST(g)
    return (word.count("T") - word.count("t") + 3 * word.count("S")) % 6


def fixed_point(g: Mat) -> complex:
    """Fixed point in the upper half-plane of an elliptic element."""
    a, b, c, d = g
    if c == 0 or abs(a + d) >= 2:
        raise ValueError(f"{g} is not elliptic")
    disc = complex((a + d) ** 2 - 4)
    z = ((a - d) + disc**0.5) / (2 * c)
    return z if z.imag > 0 else z.conjugate()


def act(g: Mat, z: complex) -> complex:
    a, b, c, d = g
    return (a * z + b) / (c * z + d)


# ---------------------------------------------------------------------------
# group specifications


@dataclass(frozen=True)
class EllipticGenerator:
    name: str
    matrix: Mat
    order: int
    fixed: complex


@dataclass(frozen=True)
class FuchsianGroupSpec:
    name: str
    index: int
    generators: tuple[EllipticGenerator, ...]
    # T^cusp_power equals the product of generators in relation order
    cusp_power: int
    relation: tuple[int, ...]
    members_mod4: frozenset[Mat] | None = None
    char_names: tuple[str, ...] = ()
    char_generators: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def width(self) -> int:
        return self.index

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(g.order for g in self.generators)

    @property
    def transversal(self) -> list[Mat]:
        return [mat_pow(T, k) for k in range(self.index)]

    def member(self, g: Sequence[int]) -> bool:
        g = normalize(g)
        if self.name == "psl2z":
            return True
        if self.name == "gamma2":
            return abelianization(g) % 2 == 0
        if self.name == "gamma3":
            return abelianization(g) % 3 == 0
        reduced = tuple(x % 4 for x in g)
        negated = tuple(-x % 4 for x in g)
        return reduced in self.members_mod4 or negated in self.members_mod4

    def coset(self, g: Sequence[int]) -> int:
        """The ``k`` with ``g`` in ``H T^k``."""
        g = normalize(g)
        for k in range(self.index):
            if self.member(mul(g, mat_pow(T, -k))):
                return k
        raise AssertionError("transversal does not cover PSL2(Z)")

    def validate(self) -> None:
        for k in range(1, self.index):
            assert not self.member(mat_pow(T, k)), "T^k must not lie in H below the width"
        assert self.member(mat_pow(T, self.index))
        for e in self.generators:
            assert self.member(e.matrix), f"{e.name} is not a member"
            assert mat_pow(e.matrix, e.order) == IDENTITY, f"{e.name} has the wrong order"
            assert all(mat_pow(e.matrix, j) != IDENTITY for j in range(1, e.order))
            assert abs(act(e.matrix, e.fixed) - e.fixed) < 1e-12, f"{e.name} does not fix {e.fixed}"
        rel = prod(self.generators[i].matrix for i in self.relation)
        assert rel == mat_pow(T, self.cusp_power), "stored relation fails"
        # the schreier table is validated as it is built
        _schreier(self)


ZETA = complex(-0.5, math.sqrt(3) / 2)

_MOD4 = [(1, 0, 0, 1), (1, 1, 1, 2), (2, 3, 3, 1), (0, 3, 1, 0), (1, 2, 3, 3), (3, 1, 2, 1)]


def _conj(k: int, x: Mat, j: int) -> Mat:
    return prod([mat_pow(T, k), x, mat_pow(T, -j)])


def _third(n: int) -> Fraction:
    return Fraction(n, 3)


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FuchsianGroupSpec:
    if name == "psl2z":
        spec = FuchsianGroupSpec(
            "psl2z", 1,
            (EllipticGenerator("S", S, 2, 1j), EllipticGenerator("R", R, 3, ZETA)),
            1, (0, 1),
            char_names=("a0", "a1"),
            char_generators=((Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 3))),
        )
    elif name == "gamma2":
        spec = FuchsianGroupSpec(
            "gamma2", 2,
            (EllipticGenerator("R0", R, 3, ZETA), EllipticGenerator("R1", _conj(1, R, 1), 3, ZETA + 1)),
            2, (1, 0),
            char_names=("a0", "a1"),
            char_generators=((_third(1), Fraction(0)), (Fraction(0), _third(1))),
        )
    elif name == "gamma3":
        half = Fraction(1, 2)
        spec = FuchsianGroupSpec(
            "gamma3", 3,
            tuple(EllipticGenerator(f"S{k}", _conj(k, S, k), 2, 1j + k) for k in range(3)),
            -3, (0, 1, 2),
            char_names=("a0", "a1", "a2"),
            char_generators=tuple(tuple(half if i == j else Fraction(0) for j in range(3)) for i in range(3)),
        )
    elif name == "index4G":
        half, zero = Fraction(1, 2), Fraction(0)
        spec = FuchsianGroupSpec(
            "index4G", 4,
            (
                EllipticGenerator("S0", S, 2, 1j),
                EllipticGenerator("S1", _conj(3, S, 3), 2, 1j + 3),
                EllipticGenerator("R2", _conj(2, S, 1), 3, ZETA + 2),
            ),
            4, (1, 2, 0),
            members_mod4=frozenset(_MOD4),
            char_names=("a0", "a1", "a2"),
            char_generators=((half, zero, zero), (zero, half, zero), (zero, zero, _third(1))),
        )
    else:
        raise KeyError(f"unknown group {name!r}; expected psl2z, gamma2, gamma3 or index4G")
    spec.validate()
    return spec


GROUP_NAMES = ("psl2z", "gamma2", "gamma3", "index4G")


# ---------------------------------------------------------------------------
# Reidemeister-Schreier rewriting


def schreier_table(name: str) -> dict[tuple[int, str], tuple[int, ...]]:
    """Exponent vectors (over the elliptic generators) of ``T^k x T^-k'``.

    Found by breadth-first search over short generator words and checked by
    exact matrix identity.  Characters only see exponent vectors.
    """
    return _schreier(builtin_group(name))


@lru_cache(maxsize=None)
def _schreier(spec: FuchsianGroupSpec) -> dict[tuple[int, str], tuple[int, ...]]:
    name = spec.name
    n = len(spec.generators)
    letters = []
    for i, e in enumerate(spec.generators):
        letters.append((e.matrix, i, 1))
        if e.order > 2:
            letters.append((inv(e.matrix), i, -1))
    targets = {}
    for k in range(spec.index):
        for x, m in LETTERS.items():
            g = mul(mat_pow(T, k), m)
            kk = spec.coset(g)
            targets[(k, x)] = mul(g, mat_pow(T, -kk))
    found: dict[Mat, tuple[int, ...]] = {IDENTITY: (0,) * n}
    frontier = deque([IDENTITY])
    wanted = set(targets.values())
    depth = 0
    while not wanted <= found.keys():
        depth += 1
        if depth > 6:
            raise AssertionError(f"schreier generators of {name} not reached by short words")
        nxt = deque()
        for g in frontier:
            for m, i, s in letters:
                h = mul(g, m)
                if h not in found:
                    vec = list(found[g])
                    vec[i] = (vec[i] + s) % spec.generators[i].order
                    found[h] = tuple(vec)
                    nxt.append(h)
        frontier = nxt
    return {key: found[target] for key, target in targets.items()}


def abel_vector(spec: FuchsianGroupSpec, g: Sequence[int]) -> tuple[int, ...]:
    """Exponent vector of a member in the abelianization of the free product."""
    g = normalize(g)
    if not spec.member(g):
        raise ValueError(f"{g} is not a member of {spec.name}")
    table = _schreier(spec)
    vec = [0] * len(spec.generators)
    k = 0
    for x in decompose_ST(g):
        for i, v in enumerate(table[(k, x)]):
            vec[i] += v
        k = spec.coset(mul(mat_pow(T, k), LETTERS[x]))
    assert k == 0
    return tuple(v % e.order for v, e in zip(vec, spec.generators))


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class Character:
    group: str
    turns: tuple[Fraction, ...]

    def __post_init__(self):
        spec = builtin_group(self.group)
        if len(self.turns) != len(spec.generators):
            raise ValueError("one value per elliptic generator is required")
        fixed = []
        for t, e in zip(self.turns, spec.generators):
            t = Fraction(t) % 1
            if (t * e.order).denominator != 1:
                raise ValueError(f"value on {e.name} must have order dividing {e.order}")
            fixed.append(t)
        object.__setattr__(self, "turns", tuple(fixed))

    @property
    def spec(self) -> FuchsianGroupSpec:
        return builtin_group(self.group)

    def __mul__(self, other: "Character") -> "Character":
        if other.group != self.group:
            raise ValueError("characters of different groups")
        return Character(self.group, tuple(a + b for a, b in zip(self.turns, other.turns)))

    def __pow__(self, n: int) -> "Character":
        return Character(self.group, tuple(n * a for a in self.turns))

    def inverse(self) -> "Character":
        return self ** -1

    def __truediv__(self, other: "Character") -> "Character":
        return self * other.inverse()

    def is_trivial(self) -> bool:
        return not any(self.turns)

    def values(self) -> tuple[Cyclotomic, ...]:
        return tuple(Cyclotomic.root_of_unity(t) for t in self.turns)

    def turn_at(self, g: Sequence[int]) -> Fraction:
        vec = abel_vector(self.spec, g)
        return sum((v * t for v, t in zip(vec, self.turns)), Fraction(0)) % 1

    def __str__(self):
        return label_character(self)


def trivial(group: str) -> Character:
    return Character(group, (Fraction(0),) * len(builtin_group(group).generators))


def chi(group: str) -> Character:
    """Restriction of the character of PSL2(Z) with ``chi(T) = exp(2 pi i/6)``."""
    spec = builtin_group(group)
    return Character(group, tuple(Fraction(abelianization(e.matrix), 6) for e in spec.generators))


def generator_character(group: str, i: int) -> Character:
    return Character(group, builtin_group(group).char_generators[i])


def all_characters(group: str) -> list[Character]:
    spec = builtin_group(group)
    return [
        Character(group, tuple(Fraction(j, e.order) for j, e in zip(js, spec.generators)))
        for js in itertools.product(*(range(e.order) for e in spec.generators))
    ]


def parse_character(group: str, text: str) -> Character:
    """Parse a word such as ``a0*a1^2``, ``chi^-1`` or ``1``."""
    spec = builtin_group(group)
    out = trivial(group)
    for tok in text.replace(" ", "").split("*"):
        if tok in ("", "1"):
            continue
        base, _, exp = tok.partition("^")
        n = int(exp.strip("()")) if exp else 1
        if base == "chi":
            gen = chi(group)
        elif base in spec.char_names:
            gen = generator_character(group, spec.char_names.index(base))
        else:
            raise ValueError(f"unknown character symbol {base!r} for {group}")
        out = out * gen**n
    return out


def label_character(phi: Character) -> str:
    spec = phi.spec
    exps = []
    # solve for exponents on the generating characters
    for gens in itertools.product(*(range(e.order) for e in spec.generators)):
        cand = trivial(phi.group)
        for i, n in enumerate(gens):
            cand = cand * generator_character(phi.group, i) ** n
        if cand == phi:
            exps = gens
            break
    parts = [f"{nm}^{n}" if n > 1 else nm for nm, n in zip(spec.char_names, exps) if n]
    return "*".join(parts) or "1"


def char_eval(phi: Character, g: Sequence[int]) -> Cyclotomic:
    return Cyclotomic.root_of_unity(phi.turn_at(g))


def cusp_turn(phi: Character) -> Fraction:
    """``lambda`` in [0, 1) with ``phi(T^h) = exp(2 pi i lambda)``, via the relation."""
    spec = phi.spec
    total = sum((phi.turns[i] for i in spec.relation), Fraction(0))
    if spec.cusp_power < 0:
        total = -total
    return total % 1


def is_cuspidal(phi: Character) -> bool:
    return cusp_turn(phi) == 0


def cuspidal_characters(group: str) -> list[Character]:
    return [phi for phi in all_characters(group) if is_cuspidal(phi)]


def conjugate_character(phi: Character, t: Sequence[int] = T) -> Character:
    """``phi^t(g) = phi(t^-1 g t)``."""
    t = normalize(t)
    spec = phi.spec
    turns = []
    for e in spec.generators:
        h = prod([inv(t), e.matrix, t])
        if not spec.member(h):
            raise ValueError(f"conjugate of {e.name} by {t} is not a member")
        turns.append(phi.turn_at(h))
    return Character(phi.group, tuple(turns))


def restrict_chi_power(group: str, r: int) -> Character:
    return chi(group) ** r


# ---------------------------------------------------------------------------
# induction


def _zero():
    return Cyclotomic([0])


@dataclass
class InducedRep:
    phi: Character
    T: list[list[Cyclotomic]]
    S: list[list[Cyclotomic]]

    @property
    def dim(self) -> int:
        return len(self.T)

    def matrix(self, g: Sequence[int]) -> list[list[Cyclotomic]]:
        return induced_matrix(self.phi, g)


def induced_matrix(phi: Character, g: Sequence[int]) -> list[list[Cyclotomic]]:
    """``Ind phi(g)_{ij} = phi(T^-i g T^j)`` when that is a member, else 0."""
    spec = phi.spec
    n = spec.index
    g = normalize(g)
    out = [[_zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            h = prod([mat_pow(T, -i), g, mat_pow(T, j)])
            if spec.member(h):
                out[i][j] = char_eval(phi, h)
    return out


def induce(phi: Character) -> InducedRep:
    return InducedRep(phi, induced_matrix(phi, T), induced_matrix(phi, S))


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), _zero()) for j in range(p)] for i in range(n)]


def is_scalar(a) -> bool:
    n = len(a)
    return all(a[i][j] == (a[0][0] if i == j else 0) for i in range(n) for j in range(n)) and bool(a[0][0])


def turn_of_root(z: Cyclotomic) -> Fraction:
    order = z.order
    for j in range(order):
        if Cyclotomic.root_of_unity(Fraction(j, order), order) == z:
            return Fraction(j, order)
    raise ValueError(f"{z!r} is not a root of unity of order dividing {order}")


def exponents(rep: InducedRep) -> list[Fraction]:
    """Exponents in [0, 1) of the monomial matrix ``rep.T``."""
    n = rep.dim
    target = {}
    for j in range(n):
        rows = [i for i in range(n) if rep.T[i][j]]
        if len(rows) != 1:
            raise ValueError("rho(T) is not monomial")
        target[j] = rows[0]
    out, seen = [], set()
    for start in range(n):
        if start in seen:
            continue
        cycle, j = [], start
        while j not in seen:
            seen.add(j)
            cycle.append(j)
            j = target[j]
        s = sum((turn_of_root(rep.T[target[j]][j]) for j in cycle), Fraction(0)) % 1
        ell = len(cycle)
        out.extend((s + k) / ell for k in range(ell))
    return sorted(out)


def determinant_turn(rep: InducedRep) -> Fraction:
    """``det rho(T)`` as a turn, from the monomial structure."""
    n = rep.dim
    perm = [next(i for i in range(n) if rep.T[i][j]) for j in range(n)]
    sign = 0
    seen = set()
    for s in range(n):
        j, length = s, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length:
            sign += length - 1
    total = sum((turn_of_root(rep.T[perm[j]][j]) for j in range(n)), Fraction(0))
    return (total + Fraction(sign, 2)) % 1


def mackey_irreducible(phi: Character) -> bool:
    if phi.group not in ("gamma2", "gamma3"):
        raise ValueError("the conjugation criterion applies to the normal subgroups; use decompose_induction")
    psi = phi
    for _ in range(phi.spec.index - 1):
        psi = conjugate_character(psi)
        if psi == phi:
            return False
    return True


@dataclass(frozen=True)
class Block:
    dim: int
    exponents: tuple[Fraction, ...]
    chi_power: int | None = None
    certified: bool = True

    @property
    def trace(self) -> Fraction:
        return sum(self.exponents, Fraction(0))

    def label(self) -> str:
        if self.chi_power is not None:
            return f"chi^{self.chi_power}"
        return f"{self.dim}d[" + ",".join(map(str, self.exponents)) + "]"


def decompose_induction(phi: Character) -> list[Block]:
    """One-dimensional constituents by Frobenius reciprocity plus the complement.

    The image of ``Ind phi`` is finite, hence completely reducible, and every
    one-dimensional constituent is some ``chi^r``.  A complement of dimension
    at most three without one-dimensional constituents is irreducible.
    """
    rep = induce(phi)
    exps = exponents(rep)
    blocks = []
    remaining = list(exps)
    for r in range(6):
        if chi(phi.group) ** r == phi:
            blocks.append(Block(1, (Fraction(r, 6),), r))
            remaining.remove(Fraction(r, 6))
    if remaining:
        if len(remaining) > 3:
            raise ValueError(f"complement of dimension {len(remaining)} is not supported")
        blocks.append(Block(len(remaining), tuple(sorted(remaining))))
    return blocks


def minimal_weight(block: Block) -> int:
    if block.dim == 1:
        if block.chi_power is None:
            raise ValueError("one-dimensional block without a chi power")
        return 2 * block.chi_power
    if block.dim == 2:
        k = 6 * block.trace - 1
    elif block.dim == 3:
        k = 4 * block.trace - 2
    else:
        raise ValueError("blocks of dimension above three are not supported")
    if k.denominator != 1 or k % 2:
        raise ValueError(f"minimal weight {k} for exponents {block.exponents} is not an even integer")
    return int(k)


def generator_weights(block: Block) -> list[int]:
    k0 = minimal_weight(block)
    return [k0 + 2 * i for i in range(block.dim)]


# ---------------------------------------------------------------------------
# Hilbert-Poincare series


@dataclass(frozen=True)
class HPSeries:
    """``numerator(T) / prod (1 - T^a)`` with an integer Laurent numerator."""

    numerator: tuple[tuple[int, int], ...]
    denominator: tuple[int, ...] = (4, 6)

    @classmethod
    def from_dict(cls, num: dict[int, int], den: Sequence[int] = (4, 6)) -> "HPSeries":
        return cls(tuple(sorted((k, c) for k, c in num.items() if c)), tuple(sorted(den)))

    def num_dict(self) -> dict[int, int]:
        return dict(self.numerator)

    def __add__(self, other: "HPSeries") -> "HPSeries":
        if self.denominator != other.denominator:
            raise ValueError("denominators differ")
        out = self.num_dict()
        for k, c in other.numerator:
            out[k] = out.get(k, 0) + c
        return HPSeries.from_dict(out, self.denominator)

    def shift(self, k: int) -> "HPSeries":
        return HPSeries.from_dict({a + k: c for a, c in self.numerator}, self.denominator)

    def expand(self, upto: int) -> dict[int, int]:
        """Coefficients of ``T^k`` for ``k <= upto``."""
        coeffs = self.num_dict()
        for a in self.denominator:
            # multiply by 1/(1 - T^a)
            out = {}
            for k in sorted(coeffs):
                for j in range(k, upto + 1, a):
                    out[j] = out.get(j, 0) + coeffs[k]
            coeffs = out
        return {k: c for k, c in sorted(coeffs.items()) if k <= upto}

    def coefficient(self, k: int) -> int:
        return self.expand(k).get(k, 0)

    def __eq__(self, other):
        if not isinstance(other, HPSeries):
            return NotImplemented
        lhs = _poly_mul(self.num_dict(), _den_poly(other.denominator))
        rhs = _poly_mul(other.num_dict(), _den_poly(self.denominator))
        return {k: c for k, c in lhs.items() if c} == {k: c for k, c in rhs.items() if c}

    def __hash__(self):
        return hash(self.numerator) ^ hash(self.denominator)

    def __str__(self):
        num = _format_poly(self.num_dict())
        den = "".join(f"(1-T^{a})" for a in self.denominator)
        return f"({num})/({den})"

    def to_json(self) -> dict:
        return {"num": [[k, c] for k, c in self.numerator], "den": list(self.denominator)}


def _den_poly(den: Sequence[int]) -> dict[int, int]:
    out = {0: 1}
    for a in den:
        out = _poly_mul(out, {0: 1, a: -1})
    return out


def _poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return out


def _format_poly(p: dict[int, int]) -> str:
    parts = []
    for k in sorted(p):
        c = p[k]
        if not c:
            continue
        mono = "1" if k == 0 else ("T" if k == 1 else f"T^{k}")
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}" if k == 0 else f"{c}{mono}")
    return "+".join(parts).replace("+-", "-") or "0"


def hp_series(phi: Character) -> HPSeries:
    num: dict[int, int] = {}
    for block in decompose_induction(phi):
        for k in generator_weights(block):
            num[k] = num.get(k, 0) + 1
    return HPSeries.from_dict(num)


@dataclass(frozen=True)
class FreeCheck:
    free_compatible: bool
    witness: tuple[int, ...] = ()
    blocking_degree: int | None = None

    def to_json(self) -> dict:
        return {
            "free_compatible": self.free_compatible,
            "witness": list(self.witness),
            "blocking_degree": self.blocking_degree,
        }


def free_hp_check(M: HPSeries, ring_numerator: dict[int, int]) -> FreeCheck:
    """Greedy lowest-degree decomposition of M's numerator into shifts of the ring numerator."""
    if not ring_numerator or min(ring_numerator) != 0 or ring_numerator[0] != 1:
        raise ValueError("ring numerator must start with constant term 1")
    rest = M.num_dict()
    witness: list[int] = []
    while True:
        rest = {k: c for k, c in rest.items() if c}
        if not rest:
            return FreeCheck(True, tuple(witness))
        low = min(rest)
        c = rest[low]
        if c < 0:
            return FreeCheck(False, tuple(witness), low)
        witness.extend([low] * c)
        for k, r in ring_numerator.items():
            rest[low + k] = rest.get(low + k, 0) - c * r


# ---------------------------------------------------------------------------
# extensions and rank-two families


def ext_h1_dim(psi: Character, phi: Character) -> int:
    """``dim H^1`` for extensions ``0 -> psi -> rho -> phi -> 0``."""
    if psi.group != phi.group:
        raise ValueError("characters of different groups")
    # every built-in group has a single cusp, hence is a free product of its
    # elliptic subgroups
    eta = psi.inverse() * phi
    free = sum(1 for t in eta.turns if t)
    return free - (0 if eta.is_trivial() else 1)


class ZPoly:
    """Polynomial in the family parameter ``z`` with cyclotomic coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: dict[int, object] | None = None):
        self.c = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def lift(cls, x) -> "ZPoly":
        return x if isinstance(x, ZPoly) else cls({0: x})

    def __add__(self, other):
        other = ZPoly.lift(other)
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return ZPoly(out)

    __radd__ = __add__

    def __mul__(self, other):
        other = ZPoly.lift(other)
        out: dict[int, object] = {}
        for i, a in self.c.items():
            for j, b in other.c.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        diff = self + ZPoly.lift(other) * -1
        return not diff.c

    __hash__ = None

    def at(self, z):
        """Value at ``z``; cyclotomic coefficients become complex when ``z`` is inexact."""
        inexact = isinstance(z, (float, complex))
        return sum(((to_complex(v) if inexact else v) * z**k for k, v in self.c.items()), 0)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            v = self.c[k]
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            parts.append(f"{v}" if not mono else (mono if v == 1 else f"{v}*{mono}"))
        return " + ".join(parts)


Z = ZPoly({1: 1})


def _zmat_mul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


def _zmat_pow(a, n):
    out = [[ZPoly({0: 1}), ZPoly()], [ZPoly(), ZPoly({0: 1})]]
    for _ in range(n):
        out = _zmat_mul(out, a)
    return out


@dataclass
class Rank2Family:
    group: str
    matrices: dict[str, list[list[ZPoly]]]
    at_infinity: dict[str, list[list[int | Cyclotomic]]]
    sub: Character
    quotient: Character

    def at(self, z) -> dict[str, list[list]]:
        """Matrices for a finite ``z`` (complex or exact)."""
        return {k: [[e.at(z) for e in row] for row in m] for k, m in self.matrices.items()}

    def verify_orders(self) -> bool:
        spec = builtin_group(self.group)
        ident = [[ZPoly({0: 1}), ZPoly()], [ZPoly(), ZPoly({0: 1})]]
        for e in spec.generators:
            for mats in (self.matrices, {k: [[ZPoly.lift(x) for x in row] for row in m] for k, m in self.at_infinity.items()}):
                p = _zmat_pow(mats[e.name], e.order)
                if any(not (p[i][j] == ident[i][j]) for i in range(2) for j in range(2)):
                    return False
        return True


def rank2_family(group: str) -> Rank2Family:
    """The projective line of rank-two extensions with a split member."""
    if group == "gamma3":
        one, m1 = ZPoly({0: 1}), ZPoly({0: -1})
        fam = Rank2Family(
            group,
            {
                "S0": [[m1, one], [ZPoly(), one]],
                "S1": [[m1, Z], [ZPoly(), one]],
                "S2": [[m1, ZPoly()], [ZPoly(), one]],
            },
            {"S0": [[-1, 0], [0, 1]], "S1": [[-1, 1], [0, 1]], "S2": [[-1, 0], [0, 1]]},
            chi("gamma3"),
            trivial("gamma3"),
        )
    elif group == "index4G":
        # the sub-character is chi^5, which takes e(1/3) on R2
        z2 = Cyclotomic.root_of_unity(Fraction(1, 3))
        one, m1 = ZPoly({0: 1}), ZPoly({0: -1})
        fam = Rank2Family(
            group,
            {
                "S0": [[m1, m1], [ZPoly(), one]],
                "S1": [[m1, Z], [ZPoly(), one]],
                "R2": [[ZPoly({0: z2}), ZPoly()], [ZPoly(), one]],
            },
            {"S0": [[-1, 0], [0, 1]], "S1": [[-1, -1], [0, 1]], "R2": [[z2, 0], [0, 1]]},
            Character(group, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 3))),
            trivial(group),
        )
    else:
        raise ValueError(f"no rank-two family is recorded for {group!r}")
    if not fam.verify_orders():
        raise AssertionError("family violates the generator orders")
    return fam


# ---------------------------------------------------------------------------
# geometric route: line-bundle classes of V_k(phi)


def weight_two_degree(group: str) -> Fraction:
    spec = builtin_group(group)
    return orbiline.weight_two_degree(spec.signature, 1)


@dataclass(frozen=True)
class Convention:
    """Sign choices for the isotropy and degree of ``V_k(phi)``.

    ``orient``: +1 orients each elliptic generator counterclockwise (derivative
    ``exp(2 pi i/p)`` at its fixed point), -1 clockwise.  ``char_sign`` and
    ``cusp_sign`` multiply the character contribution to the isotropy and the
    cusp exponent in the degree.
    """

    orient: int
    char_sign: int
    cusp_sign: int


def _rotation_turn(e: EllipticGenerator) -> Fraction:
    """Turn of the derivative ``(c tau + d)^-2`` of ``e`` at its fixed point."""
    a, b, c, d = e.matrix
    j = c * e.fixed + d
    ang = -2 * math.atan2(j.imag, j.real) / (2 * math.pi)
    turn = Fraction(round(ang * e.order), e.order) % 1
    return turn


def bundle_class(phi: Character, k: int, conv: Convention) -> orbiline.PicElement | None:
    """Class of ``V_k(phi)``; ``None`` when the convention gives a non-integral degree."""
    if k % 2:
        raise ValueError("weights are even")
    spec = phi.spec
    deg = Fraction(k, 2) * weight_two_degree(phi.group) - conv.cusp_sign * cusp_turn(phi)
    residues = []
    for e, t in zip(spec.generators, phi.turns):
        p = e.order
        rot = _rotation_turn(e)
        flip = 1 if rot == Fraction(1, p) else -1
        if rot not in (Fraction(1, p), Fraction(p - 1, p)):
            raise AssertionError(f"{e.name} is not a generator of its stabilizer")
        flip *= conv.orient
        # theta: j(e, tau)^-2 = exp(2 pi i/p) for the oriented generator
        iso = p * (conv.char_sign * flip * t) - Fraction(k, 2)
        residues.append(int(iso % p) if (iso % p).denominator == 1 else None)
    if None in residues:
        return None
    a = deg - sum((Fraction(r, p) for r, p in zip(residues, spec.signature)), Fraction(0))
    if a.denominator != 1:
        return None
    return orbiline.PicElement(spec.signature, tuple(residues), int(a))


def geometric_dim(phi: Character, k: int, conv: Convention) -> int | None:
    cls = bundle_class(phi, k, conv)
    return None if cls is None else orbiline.h0(cls)


ALL_CONVENTIONS = tuple(Convention(o, c, s) for o in (1, -1) for c in (1, -1) for s in (1, -1))


def calibrate_conventions() -> list[Convention]:
    """Conventions that reproduce the anchors ``dim M_0(1) = 1``, ``dim M_2(chi) = 1`` on PSL2(Z)."""
    good = []
    for conv in ALL_CONVENTIONS:
        if geometric_dim(trivial("psl2z"), 0, conv) == 1 and geometric_dim(chi("psl2z"), 2, conv) == 1:
            good.append(conv)
    return good


@dataclass
class CrossCheck:
    convention: Convention
    checked: int = 0
    mismatches: list[tuple[str, str, int, int | None, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.mismatches


def cross_check_geometric(conv: Convention, max_weight: int = 12, min_weight: int = -4) -> CrossCheck:
    """Compare ``h0`` of the bundle class with the induction route for every
    built-in character whose induction decomposes."""
    report = CrossCheck(conv)
    for group in GROUP_NAMES:
        for phi in all_characters(group):
            try:
                hp = hp_series(phi)
            except ValueError:
                continue
            coeffs = hp.expand(max_weight)
            for k in range(min_weight, max_weight + 1, 2):
                geo = geometric_dim(phi, k, conv)
                ind = coeffs.get(k, 0)
                report.checked += 1
                if geo != ind:
                    report.mismatches.append((group, str(phi), k, geo, ind))
    return report


# ---------------------------------------------------------------------------
# geometrically weighted forms


def gm_series(phi: Character) -> tuple[HPSeries, list[str]]:
    """Sum of ``hp_series`` over the cuspidal twists of ``phi``."""
    group = phi.group
    spec = phi.spec
    notes = []
    m = orbiline.lcm_order(spec.signature)
    if weight_two_degree(group) != Fraction(1, m):
        notes.append(
            f"weight-two bundle has degree {weight_two_degree(group)} != 1/{m}; "
            "the cuspidal twists do not exhaust the geometrically weighted module"
        )
        warnings.warn(notes[-1], stacklevel=2)
    total = HPSeries.from_dict({})
    for c in cuspidal_characters(group):
        total = total + hp_series(phi * c)
    return total, notes
