"""
(m+2)-angulations of P(N, m).

An angulation keeps its diagonals in an ordered tuple of slots. Slot k is
vertex k of the coloured quiver, mutation replaces a diagonal in place and
rotation keeps every diagonal in its slot, so vertex identities survive
both operations. Two angulations are equal when their diagonal sets are.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import chain, product
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Set, Tuple

from quivers.canonical import CanonicalQuiverKey, canonical_key
from quivers.quiver import Arrow, ColouredQuiver

from .polygon import (
    GeometryError,
    MDiagonal,
    PolygonParams,
    is_border_edge,
    is_m_diagonal,
)

logger = logging.getLogger(__name__)


class InvalidAngulationError(GeometryError):
    pass


class DiagonalNotFoundError(GeometryError):
    pass


class NotCloseToBorderError(GeometryError):
    pass


class NotBorderEdgeError(GeometryError):
    pass


@dataclass(frozen=True)
class Cell:
    """A cell of an angulation, vertices listed clockwise."""
    vertices: Tuple[int, ...]

    @property
    def sides(self) -> Tuple[Tuple[int, int], ...]:
        vs = self.vertices
        return tuple((vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs)))

    def diagonal_sides(self, diagonals: FrozenSet[MDiagonal]) -> List[Tuple[int, MDiagonal]]:
        """``(position, diagonal)`` for every side that is one of ``diagonals``."""
        found = []
        for position, (a, b) in enumerate(self.sides):
            side = MDiagonal.of(a, b)
            if side in diagonals:
                found.append((position, side))
        return found


@dataclass(frozen=True, order=True)
class RotationClassKey:
    value: bytes

    def __str__(self):
        return self.value.decode('ascii')


@dataclass(frozen=True, eq=False)
class Angulation:
    params: PolygonParams
    diagonals: Tuple[MDiagonal, ...]

    def __post_init__(self):
        object.__setattr__(self, 'diagonals', tuple(self.diagonals))

    def __eq__(self, other):
        if not isinstance(other, Angulation):
            return NotImplemented
        return self.params == other.params and self.diagonal_set == other.diagonal_set

    def __hash__(self):
        return hash((self.params, self.diagonal_set))

    def __repr__(self):
        return f"Angulation({self.params}, [{', '.join(map(str, self.diagonals))}])"

    @cached_property
    def diagonal_set(self) -> FrozenSet[MDiagonal]:
        return frozenset(self.diagonals)

    @cached_property
    def cells(self) -> Tuple[Cell, ...]:
        polygon = tuple(range(1, self.params.V + 1))
        return tuple(Cell(vs) for vs in _split(polygon, list(self.diagonals)))

    def slot(self, d: MDiagonal) -> int:
        try:
            return self.diagonals.index(d)
        except ValueError:
            raise DiagonalNotFoundError(f"{d} is not a diagonal of {self!r}") from None

    def cells_of(self, d: MDiagonal) -> List[Cell]:
        return [
            cell for cell in self.cells
            if any(side == d for _, side in cell.diagonal_sides(self.diagonal_set))
        ]

    def with_diagonals(self, diagonals: Iterable[MDiagonal]) -> 'Angulation':
        return Angulation(self.params, tuple(diagonals))


def _split(polygon: Tuple[int, ...], diagonals: List[MDiagonal]) -> List[Tuple[int, ...]]:
    if not diagonals:
        return [polygon]
    d, rest = diagonals[0], diagonals[1:]
    a, b = sorted((polygon.index(d.i), polygon.index(d.j)))
    first = polygon[a:b + 1]
    second = polygon[b:] + polygon[:a + 1]
    inside = set(first)
    first_rest = [e for e in rest if e.i in inside and e.j in inside]
    second_rest = [e for e in rest if not (e.i in inside and e.j in inside)]
    return _split(first, first_rest) + _split(second, second_rest)


def validate_angulation(a: Angulation) -> None:
    """Raise :class:`InvalidAngulationError` unless ``a`` is an (m+2)-angulation."""
    p = a.params
    problems = []
    for d in a.diagonals:
        if not (1 <= d.i < d.j <= p.V) or not is_m_diagonal(p, d.i, d.j):
            problems.append(f"{d} is not an m-diagonal of {p}")
    if len(a.diagonal_set) != len(a.diagonals):
        problems.append("diagonals are listed more than once")
    if len(a.diagonals) != p.N - 1:
        problems.append(f"{len(a.diagonals)} diagonals, expected {p.N - 1}")
    for k, d in enumerate(a.diagonals):
        for e in a.diagonals[k + 1:]:
            if d.crosses(e):
                problems.append(f"{d} crosses {e}")
    if problems:
        raise InvalidAngulationError("; ".join(problems))
    for cell in a.cells:
        if len(cell.vertices) != p.m + 2:
            raise InvalidAngulationError(
                f"cell {cell.vertices} has {len(cell.vertices)} sides, expected {p.m + 2}"
            )


def angulation_from_pairs(p: PolygonParams, pairs: Iterable[Sequence[int]]) -> Angulation:
    diagonals = []
    for pair in pairs:
        i, j = pair
        p.check_label(i)
        p.check_label(j)
        diagonals.append(MDiagonal.of(i, j))
    angulation = Angulation(p, tuple(diagonals))
    validate_angulation(angulation)
    return angulation


def _weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _angulate(polygon: Tuple[int, ...], m: int) -> Iterator[Tuple[MDiagonal, ...]]:
    # Root side joins polygon[-1] and polygon[0]. The cell on the root side
    # picks its m remaining corners; each gap between consecutive corners is
    # a sub-polygon that is angulated on its own.
    cells = (len(polygon) - 2) // m
    if cells <= 1:
        yield ()
        return
    for sizes in _weak_compositions(cells - 1, m + 1):
        parts = []
        start = 0
        for size in sizes:
            stop = start + 1 + m * size
            if size:
                sub = polygon[start:stop + 1]
                root = MDiagonal.of(sub[0], sub[-1])
                parts.append([(root,) + inner for inner in _angulate(sub, m)])
            start = stop
        for combination in product(*parts):
            yield tuple(chain.from_iterable(combination))


def enumerate_angulations(p: PolygonParams) -> Iterator[Angulation]:
    """Every (m+2)-angulation of P(N, m), each exactly once."""
    polygon = tuple(range(2, p.V + 1)) + (1,)
    for diagonals in _angulate(polygon, p.m):
        yield Angulation(p, tuple(sorted(diagonals)))


def rotate(a: Angulation, steps: int = 1) -> Angulation:
    """Rotate one step counterclockwise per step: label v becomes v-1 (1 becomes V)."""
    p = a.params
    return a.with_diagonals(
        MDiagonal.of(p.next_label(d.i, -steps), p.next_label(d.j, -steps))
        for d in a.diagonals
    )


def _rotated_pairs(a: Angulation, steps: int) -> Tuple[Tuple[int, int], ...]:
    V = a.params.V
    pairs = []
    for d in a.diagonals:
        i = (d.i - 1 - steps) % V + 1
        j = (d.j - 1 - steps) % V + 1
        pairs.append((i, j) if i < j else (j, i))
    return tuple(sorted(pairs))


def minimal_rotation(a: Angulation) -> Angulation:
    pairs = min(_rotated_pairs(a, steps) for steps in range(a.params.V))
    return a.with_diagonals(MDiagonal(i, j) for i, j in pairs)


def rotation_class_key(a: Angulation) -> RotationClassKey:
    pairs = min(_rotated_pairs(a, steps) for steps in range(a.params.V))
    text = f"{a.params.N},{a.params.m}:" + ",".join(f"{i}-{j}" for i, j in pairs)
    return RotationClassKey(text.encode('ascii'))


def count_rotation_classes(p: PolygonParams) -> int:
    keys = {rotation_class_key(a) for a in enumerate_angulations(p)}
    logger.debug(f"{p}: {len(keys)} rotation classes")
    return len(keys)


def mutate_at(a: Angulation, d: MDiagonal) -> Angulation:
    """
    Rotate the (2m+2)-gon around ``d`` one step clockwise: ``d`` joins
    positions p and p+m+1 of its clockwise boundary, the replacement joins
    p+1 and p+m+2. The replacement takes over the slot of ``d``.
    """
    slot = a.slot(d)
    first, second = a.cells_of(d)
    boundary = sorted(set(first.vertices) | set(second.vertices))
    size = len(boundary)
    m = a.params.m
    position = boundary.index(d.i)
    replacement = MDiagonal.of(
        boundary[(position + 1) % size],
        boundary[(position + m + 2) % size],
    )
    diagonals = list(a.diagonals)
    diagonals[slot] = replacement
    return a.with_diagonals(diagonals)


def quiver_of(a: Angulation) -> ColouredQuiver:
    """
    One vertex per slot. Two diagonals on a common cell are joined by an
    arrow whose colour counts the cell sides strictly between them,
    walking counterclockwise from the source.
    """
    slots = {d: k for k, d in enumerate(a.diagonals)}
    arrows = {}
    for cell in a.cells:
        size = len(cell.vertices)
        on_cell = [(position, slots[d]) for position, d in cell.diagonal_sides(a.diagonal_set)]
        for source_position, source in on_cell:
            for target_position, target in on_cell:
                if source != target:
                    colour = (source_position - target_position) % size - 1
                    arrows[(source, target)] = Arrow(colour)
    return ColouredQuiver(a.params.m, len(a.diagonals), arrows)


def quiver_classes_of_angulations(p: PolygonParams) -> Set[CanonicalQuiverKey]:
    return {canonical_key(quiver_of(a)) for a in enumerate_angulations(p)}


def close_to_border(a: Angulation) -> List[MDiagonal]:
    """Diagonals lying on a cell whose other sides are all border edges."""
    found = []
    for d in a.diagonals:
        if any(len(cell.diagonal_sides(a.diagonal_set)) == 1 for cell in a.cells_of(d)):
            found.append(d)
    return found


def factor_out(a: Angulation, d: MDiagonal) -> Angulation:
    """
    Turn the border-close diagonal ``d`` into a border edge of P(N-1, m) by
    deleting the m vertices of its border-only cell.
    """
    slot = a.slot(d)
    border_cells = [
        cell for cell in a.cells_of(d)
        if len(cell.diagonal_sides(a.diagonal_set)) == 1
    ]
    if not border_cells:
        raise NotCloseToBorderError(f"{d} is not close to the border in {a!r}")
    removed = set(border_cells[0].vertices) - {d.i, d.j}
    remaining = [v for v in range(1, a.params.V + 1) if v not in removed]
    label = {v: k + 1 for k, v in enumerate(remaining)}
    smaller = PolygonParams(a.params.N - 1, a.params.m)
    return Angulation(smaller, tuple(
        MDiagonal.of(label[e.i], label[e.j])
        for k, e in enumerate(a.diagonals) if k != slot
    ))


def extend_at(a: Angulation, edge: Sequence[int]) -> Angulation:
    """
    Insert m new vertices along the border edge ``edge``; the edge becomes
    a diagonal close to the border of P(N+1, m), stored in the last slot.
    """
    p = a.params
    x, y = edge
    if not is_border_edge(p, x, y):
        raise NotBorderEdgeError(f"({x}, {y}) is not a border edge of {p}")
    u = x if p.next_label(x) == y else y
    m = p.m
    larger = PolygonParams(p.N + 1, m)
    if u == p.V:
        # new vertices V+1..V+m sit between V and 1
        return Angulation(larger, a.diagonals + (MDiagonal(1, p.V),))

    def shift(v):
        return v + m if v > u else v

    moved = tuple(MDiagonal.of(shift(d.i), shift(d.j)) for d in a.diagonals)
    return Angulation(larger, moved + (MDiagonal(u, u + m + 1),))


def relations_of(a: Angulation) -> FrozenSet[Tuple[int, int, int]]:
    """
    Zero paths: colour-0 paths v_i -> v_j -> v_k whose three diagonals
    lie on one cell.
    """
    q = quiver_of(a)
    slots = {d: k for k, d in enumerate(a.diagonals)}
    cell_slots = [
        frozenset(slots[d] for _, d in cell.diagonal_sides(a.diagonal_set))
        for cell in a.cells
    ]
    zero = [pair for pair, arrow in q.arrows.items() if arrow.colour == 0]
    paths = set()
    for i, j in zero:
        for j2, k in zero:
            if j2 != j or k == i:
                continue
            if any({i, j, k} <= members for members in cell_slots):
                paths.add((i, j, k))
    return frozenset(paths)
