"""
The polygon P(N, m) and its m-diagonals.

P(N, m) is the (N*m + 2)-gon whose (m+2)-angulations have N cells. Its
boundary vertices are labelled 1..V clockwise.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Tuple

logger = logging.getLogger(__name__)


class GeometryError(ValueError):
    """Base class for polygon and angulation errors."""


class InvalidDiagonalError(GeometryError):
    pass


@dataclass(frozen=True)
class PolygonParams:
    N: int
    m: int

    def __post_init__(self):
        if self.N < 1 or self.m < 1:
            raise GeometryError(f"P(N, m) needs N >= 1 and m >= 1, got N={self.N}, m={self.m}")

    @property
    def V(self) -> int:
        return self.N * self.m + 2

    def __str__(self):
        return f"P({self.N},{self.m})"

    def check_label(self, v: int) -> None:
        if not 1 <= v <= self.V:
            raise GeometryError(f"vertex label {v} outside 1..{self.V} of {self}")

    def next_label(self, v: int, steps: int = 1) -> int:
        return (v - 1 + steps) % self.V + 1


@dataclass(frozen=True, order=True)
class MDiagonal:
    """Unordered pair of boundary labels, stored with ``i < j``."""
    i: int
    j: int

    @classmethod
    def of(cls, a: int, b: int) -> 'MDiagonal':
        return cls(a, b) if a < b else cls(b, a)

    @property
    def endpoints(self) -> Tuple[int, int]:
        return self.i, self.j

    def crosses(self, other: 'MDiagonal') -> bool:
        """Interior crossing; shared endpoints do not count."""
        a, b = self.i, self.j
        c, d = other.i, other.j
        return a < c < b < d or c < a < d < b

    def __str__(self):
        return f"{self.i}-{self.j}"


def is_m_diagonal(p: PolygonParams, i: int, j: int) -> bool:
    """Both sides of the chord {i, j} have a side count congruent to 2 mod m."""
    p.check_label(i)
    p.check_label(j)
    gap = abs(j - i)
    return gap % p.m == 1 % p.m and p.m + 1 <= gap <= p.V - (p.m + 1)


def make_diagonal(p: PolygonParams, i: int, j: int) -> MDiagonal:
    if not is_m_diagonal(p, i, j):
        raise InvalidDiagonalError(f"{{{i}, {j}}} is not an m-diagonal of {p}")
    return MDiagonal.of(i, j)


def enumerate_m_diagonals(p: PolygonParams) -> Iterator[MDiagonal]:
    for i in range(1, p.V + 1):
        for j in range(i + p.m + 1, p.V + 1, p.m):
            if is_m_diagonal(p, i, j):
                yield MDiagonal(i, j)


def count_m_diagonals(p: PolygonParams) -> int:
    """(N-1)(N*m+2)/2, one per indecomposable object of type A_{N-1}."""
    return (p.N - 1) * p.V // 2


def border_edges(p: PolygonParams) -> List[Tuple[int, int]]:
    """The V boundary edges, each as ``(v, next clockwise)``; the last is ``(V, 1)``."""
    return [(v, p.next_label(v)) for v in range(1, p.V + 1)]


def is_border_edge(p: PolygonParams, a: int, b: int) -> bool:
    p.check_label(a)
    p.check_label(b)
    return p.next_label(a) == b or p.next_label(b) == a
