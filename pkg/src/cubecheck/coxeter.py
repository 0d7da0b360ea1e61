"""Rank-3 Coxeter groups as exact 3×3 reflection matrices over Q(√5)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import Graph, GraphError, build_graph

DEFAULT_ELEMENT_CAP = 10_000
GENERATOR_NAMES = "rgb"


class CoxeterError(GraphError):
    pass


@dataclass(frozen=True)
class QSqrt5:
    """The number ``a + b·√5`` with rational ``a``, ``b``."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __add__(self, other: "QSqrt5") -> "QSqrt5":
        return QSqrt5(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QSqrt5") -> "QSqrt5":
        return QSqrt5(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QSqrt5":
        return QSqrt5(-self.a, -self.b)

    def __mul__(self, other: "QSqrt5") -> "QSqrt5":
        return QSqrt5(self.a * other.a + 5 * self.b * other.b, self.a * other.b + self.b * other.a)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        if not self.b:
            return str(self.a)
        return f"{self.a}+{self.b}√5"


ZERO = QSqrt5(Fraction(0))
ONE = QSqrt5(Fraction(1))
TWO = QSqrt5(Fraction(2))

# A_ij * A_ji must equal 4cos²(π/m); only these m keep both factors in Q(√5).
_HALF = Fraction(1, 2)
_CARTAN_PAIRS = {
    2: (ZERO, ZERO),
    3: (-ONE, -ONE),
    4: (-ONE, QSqrt5(Fraction(-2))),
    5: (QSqrt5(-_HALF, -_HALF), QSqrt5(-_HALF, -_HALF)),  # both -golden ratio
    6: (-ONE, QSqrt5(Fraction(-3))),
    10: (-ONE, QSqrt5(Fraction(-5, 2), -_HALF)),
}


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric rank-3 Coxeter matrix; ``m[i][j]`` is the order of ``s_i s_j``."""

    m: tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

    def __post_init__(self):
        m = self.m
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise CoxeterError("Coxeter matrix must be 3×3")
        for i in range(3):
            if m[i][i] != 1:
                raise CoxeterError("diagonal entries must be 1")
            for j in range(3):
                if i != j and (m[i][j] != m[j][i] or m[i][j] < 2):
                    raise CoxeterError("off-diagonal entries must be symmetric and ≥ 2")

    @property
    def rank(self) -> int:
        return 3

    @classmethod
    def from_orders(cls, m12: int, m23: int, m13: int) -> "CoxeterMatrix":
        return cls(((1, m12, m13), (m12, 1, m23), (m13, m23, 1)))


A3 = CoxeterMatrix.from_orders(3, 3, 2)
B3 = CoxeterMatrix.from_orders(4, 3, 2)
H3 = CoxeterMatrix.from_orders(5, 3, 2)

Matrix = tuple  # 9 QSqrt5 entries, row-major


def _cartan(cm: CoxeterMatrix) -> list[list[QSqrt5]]:
    a = [[TWO if i == j else ZERO for j in range(3)] for i in range(3)]
    for i in range(3):
        for j in range(i + 1, 3):
            order = cm.m[i][j]
            if order not in _CARTAN_PAIRS:
                raise CoxeterError(f"order {order} needs entries outside Q(√5); supported: {sorted(_CARTAN_PAIRS)}")
            a[i][j], a[j][i] = _CARTAN_PAIRS[order]
    return a


def reflection_matrices(cm: CoxeterMatrix) -> list[Matrix]:
    """Matrices of ``s_i(α_j) = α_j - A[i][j]·α_i`` in the root basis (columns are images)."""
    a = _cartan(cm)
    mats = []
    for i in range(3):
        rows = [[ONE if r == c else ZERO for c in range(3)] for r in range(3)]
        for j in range(3):
            rows[i][j] = rows[i][j] - a[i][j]
        mats.append(tuple(x for row in rows for x in row))
    return mats


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    out = []
    for r in range(3):
        for c in range(3):
            acc = x[3 * r] * y[c]
            acc = acc + x[3 * r + 1] * y[3 + c]
            acc = acc + x[3 * r + 2] * y[6 + c]
            out.append(acc)
    return tuple(out)


IDENTITY: Matrix = tuple(ONE if r == c else ZERO for r in range(3) for c in range(3))


def element_order(x: Matrix, cap: int = 1000) -> int:
    y, k = x, 1
    while y != IDENTITY:
        y = mat_mul(y, x)
        k += 1
        if k > cap:
            raise CoxeterError("element order exceeds cap")
    return k


def coxeter_cayley(cm: CoxeterMatrix, element_cap: int = DEFAULT_ELEMENT_CAP) -> Graph:
    """Cayley graph of the Coxeter group on its three simple reflections.

    Vertices are numbered in breadth-first order from the identity (vertex 0),
    trying generators in the order r, g, b; ``labels`` hold the reduced words.
    """
    gens = reflection_matrices(cm)
    index = {IDENTITY: 0}
    words = [""]
    elems = [IDENTITY]
    edges = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for k, s in enumerate(gens):
            y = mat_mul(elems[i], s)
            j = index.get(y)
            if j is None:
                if len(elems) >= element_cap:
                    raise CoxeterError(f"more than {element_cap} elements; group presumed infinite or too large")
                j = len(elems)
                index[y] = j
                elems.append(y)
                words.append(words[i] + GENERATOR_NAMES[k])
                queue.append(j)
            if i < j:
                edges.append((i, j))
    return build_graph(len(elems), edges, words)


def relation_orders(cm: CoxeterMatrix) -> dict[tuple[int, int], int]:
    """Orders of ``s_i s_j`` computed from the matrices (checks the representation)."""
    g = reflection_matrices(cm)
    return {(i, j): element_order(mat_mul(g[i], g[j])) for i in range(3) for j in range(i + 1, 3)}


def word_to_matrix(cm: CoxeterMatrix, word: Sequence[str]) -> Matrix:
    gens = reflection_matrices(cm)
    x = IDENTITY
    for ch in word:
        x = mat_mul(x, gens[GENERATOR_NAMES.index(ch)])
    return x
