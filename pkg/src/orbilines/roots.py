"""Star-shaped graphs attached to signatures and their finite root systems.

The graph of a signature ``(p_0, ..., p_n)`` has a central vertex and an arm
of length ``p_i - 1`` for every orbifold point.  Roots are integer vectors in
the vertex basis; the central coordinate is the rank of the corresponding
indecomposable bundle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .orbiline import Signature, signature


@dataclass(frozen=True)
class StarGraph:
    signature: Signature

    @property
    def vertices(self) -> list[tuple[int, int] | int]:
        """``0`` for the centre, then ``(i, j)`` for arm ``i``, step ``j``."""
        out: list[tuple[int, int] | int] = [0]
        for i, p in enumerate(self.signature):
            out.extend((i, j) for j in range(1, p))
        return out

    @property
    def edges(self) -> list[tuple[int, int]]:
        index = {v: k for k, v in enumerate(self.vertices)}
        out = []
        for i, p in enumerate(self.signature):
            if p > 1:
                out.append((0, index[(i, 1)]))
            for j in range(1, p - 1):
                out.append((index[(i, j)], index[(i, j + 1)]))
        return out

    def __len__(self):
        return 1 + sum(p - 1 for p in self.signature)


def star_graph(sig: Sequence[int]) -> StarGraph:
    return StarGraph(signature(sig))


@dataclass(frozen=True)
class RootVector:
    """Central coefficient ``a0`` plus arm coefficients ``arms[i][j-1]``."""

    a0: int
    arms: tuple[tuple[int, ...], ...]

    @classmethod
    def from_vector(cls, g: StarGraph, vec: Sequence[int]) -> "RootVector":
        arms, k = [], 1
        for p in g.signature:
            arms.append(tuple(vec[k : k + p - 1]))
            k += p - 1
        return cls(vec[0], tuple(arms))

    def vector(self) -> tuple[int, ...]:
        return (self.a0,) + tuple(x for arm in self.arms for x in arm)

    def __str__(self):
        return f"{self.a0}|" + "|".join(",".join(map(str, arm)) for arm in self.arms)


class Unbounded:
    """Marker for signatures whose graph is not of finite type."""

    def __repr__(self):
        return "Unbounded"

    def __str__(self):
        return "unbounded"

    def __eq__(self, other):
        return isinstance(other, Unbounded)

    def __hash__(self):
        return hash("Unbounded")


UNBOUNDED = Unbounded()


def cartan_matrix(g: StarGraph) -> list[list[int]]:
    n = len(g)
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in g.edges:
        C[a][b] = C[b][a] = -1
    return C


def leading_minors(C: Sequence[Sequence[int]]) -> list[Fraction]:
    """All leading principal minors, by exact Gaussian elimination."""
    n = len(C)
    A = [[Fraction(x) for x in row] for row in C]
    minors, det = [], Fraction(1)
    for k in range(n):
        # A positive-definite matrix never needs pivoting; a zero pivot means
        # the k-th minor vanishes and all later minors are irrelevant.
        pivot = A[k][k]
        det *= pivot
        minors.append(det)
        if pivot == 0:
            minors.extend([Fraction(0)] * (n - k - 1))
            break
        for i in range(k + 1, n):
            f = A[i][k] / pivot
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return minors


def is_finite_type(g: StarGraph) -> bool:
    return all(m > 0 for m in leading_minors(cartan_matrix(g)))


def dynkin_type(sig: Sequence[int]) -> str:
    """``A_k``, ``D_k``, ``E6``, ``E7`` or ``E8`` for a finite-type signature."""
    sig = signature(sig)
    g = StarGraph(sig)
    if not is_finite_type(g):
        raise ValueError(f"signature {sig} is not of finite type")
    n = len(g)
    arms = sorted(p for p in sig)
    if len(arms) <= 2:
        return f"A_{n}"
    if arms[:2] == [2, 2]:
        return f"D_{n}"
    return f"E{n}"


def classical_root_count(label: str) -> int:
    family, _, k = label.partition("_")
    if family == "A":
        k = int(k)
        return k * (k + 1) // 2
    if family == "D":
        k = int(k)
        return k * (k - 1)
    return {"E6": 36, "E7": 63, "E8": 120}[label]


def reflect(C: Sequence[Sequence[int]], i: int, vec: Sequence[int]) -> tuple[int, ...]:
    """Simple reflection ``s_i(v) = v - (C v)_i e_i``."""
    pairing = sum(C[i][j] * vec[j] for j in range(len(vec)))
    out = list(vec)
    out[i] -= pairing
    return tuple(out)


def positive_roots(g: StarGraph) -> list[RootVector]:
    """Closure of the simple roots under simple reflections, positive part."""
    if not is_finite_type(g):
        raise ValueError(f"graph of {g.signature} is not of finite type; the root set is infinite")
    C = cartan_matrix(g)
    n = len(g)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for i in range(n):
            w = reflect(C, i, v)
            # reflecting a positive root other than e_i keeps it positive
            if all(x >= 0 for x in w) and w not in seen:
                seen.add(w)
                queue.append(w)
    return [RootVector.from_vector(g, v) for v in sorted(seen)]


def quadratic_form(C: Sequence[Sequence[int]], vec: Sequence[int]) -> int:
    n = len(vec)
    return sum(vec[i] * C[i][j] * vec[j] for i in range(n) for j in range(n))


def max_indecomposable_rank(sig: Sequence[int]) -> int | Unbounded:
    g = star_graph(sig)
    if not is_finite_type(g):
        return UNBOUNDED
    return max(r.a0 for r in positive_roots(g))
