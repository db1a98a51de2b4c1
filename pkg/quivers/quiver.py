"""
Coloured quivers and coloured quiver mutation.

A coloured quiver with parameter ``m`` has arrows coloured from
``0..m``. Arrows are stored as a full table keyed by ordered vertex pair,
so both halves of every symmetric pair are present and the validator can
point at exactly the half that is wrong.

Vertices are 0-based throughout.
"""
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import networkx as nx

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class QuiverError(ValueError):
    """Base class for coloured quiver errors."""


class InvalidQuiverError(QuiverError):
    """Raised when an operation receives a quiver that fails validation."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("Invalid coloured quiver: " + "; ".join(self.violations))


class VertexIndexError(QuiverError, IndexError):
    """Raised for a vertex index outside ``0..vertex_count-1``."""


class MutationInvariantError(RuntimeError):
    """A mutation produced something the rule can never produce in type A."""


@dataclass(frozen=True)
class Arrow:
    colour: int
    multiplicity: int = 1


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class ColouredQuiver:
    """
    Immutable coloured quiver.

    ``arrows`` maps an ordered pair ``(i, j)`` to the single coloured arrow
    record from ``i`` to ``j``. Pairs without arrows are absent.
    """
    m: int
    vertex_count: int
    arrows: Mapping[Pair, Arrow] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'arrows', MappingProxyType(dict(self.arrows)))

    def __eq__(self, other):
        if not isinstance(other, ColouredQuiver):
            return NotImplemented
        return (
            self.m == other.m
            and self.vertex_count == other.vertex_count
            and dict(self.arrows) == dict(other.arrows)
        )

    def __hash__(self):
        return hash((self.m, self.vertex_count, frozenset(self.arrows.items())))

    def __repr__(self):
        body = ", ".join(
            f"{i}->{j}:c{a.colour}" + (f"x{a.multiplicity}" if a.multiplicity != 1 else "")
            for (i, j), a in sorted(self.arrows.items())
        )
        return f"ColouredQuiver(m={self.m}, n={self.vertex_count}, [{body}])"

    @classmethod
    def from_arrows(cls, m: int, vertex_count: int,
                    arrows: Iterable[Tuple[int, int, int, int]]) -> 'ColouredQuiver':
        """Build from ``(source, target, colour, multiplicity)`` tuples."""
        table = {(i, j): Arrow(colour, mult) for i, j, colour, mult in arrows}
        return cls(m, vertex_count, table)

    @classmethod
    def from_symmetric(cls, m: int, vertex_count: int,
                       arrows: Iterable[Tuple[int, int, int]]) -> 'ColouredQuiver':
        """Build from ``(source, target, colour)`` adding the colour ``m - c`` partner."""
        table: Dict[Pair, Arrow] = {}
        for i, j, colour in arrows:
            table[(i, j)] = Arrow(colour)
            table[(j, i)] = Arrow(m - colour)
        return cls(m, vertex_count, table)

    def colour(self, i: int, j: int):
        arrow = self.arrows.get((i, j))
        return None if arrow is None else arrow.colour

    def out_arrows(self, i: int) -> List[Tuple[int, Arrow]]:
        return [(j, a) for (s, j), a in self.arrows.items() if s == i]

    def in_arrows(self, j: int) -> List[Tuple[int, Arrow]]:
        return [(i, a) for (i, t), a in self.arrows.items() if t == j]


def validate_quiver(q: ColouredQuiver) -> ValidationReport:
    """Check the loop, colour-range and colour-symmetry properties."""
    violations: List[str] = []
    if q.m < 0:
        violations.append(f"colour range: m={q.m} is negative")
    if q.vertex_count < 1:
        violations.append(f"vertex count: {q.vertex_count} is not positive")

    for (i, j), arrow in sorted(q.arrows.items()):
        if not (0 <= i < q.vertex_count and 0 <= j < q.vertex_count):
            violations.append(f"vertex range: arrow {i}->{j} outside 0..{q.vertex_count - 1}")
            continue
        if i == j:
            violations.append(f"no loops: loop at vertex {i}")
            continue
        if not 0 <= arrow.colour <= q.m:
            violations.append(f"colour range: {i}->{j} has colour {arrow.colour} outside 0..{q.m}")
        if arrow.multiplicity < 1:
            violations.append(f"multiplicity: {i}->{j} has multiplicity {arrow.multiplicity}")
        partner = q.arrows.get((j, i))
        if partner is None:
            violations.append(
                f"colour symmetry: {i}->{j} colour {arrow.colour} has no partner {j}->{i}"
            )
        elif partner.colour != q.m - arrow.colour or partner.multiplicity != arrow.multiplicity:
            violations.append(
                f"colour symmetry: {i}->{j} is colour {arrow.colour} x{arrow.multiplicity} "
                f"but {j}->{i} is colour {partner.colour} x{partner.multiplicity} "
                f"(expected colour {q.m - arrow.colour} x{arrow.multiplicity})"
            )
    return ValidationReport(tuple(violations))


def ensure_valid(q: ColouredQuiver) -> None:
    report = validate_quiver(q)
    if not report.ok:
        raise InvalidQuiverError(report.violations)


def _check_vertex(q: ColouredQuiver, j: int) -> None:
    if not 0 <= j < q.vertex_count:
        raise VertexIndexError(f"vertex {j} outside 0..{q.vertex_count - 1}")


def _cancel(pair: Pair, colours: Counter) -> Counter:
    present = [c for c, count in colours.items() if count > 0]
    if len(present) > 2:
        raise MutationInvariantError(
            f"{len(present)} distinct colours {sorted(present)} on {pair[0]}->{pair[1]}"
        )
    if len(present) == 2:
        first, second = present
        cancelled = min(colours[first], colours[second])
        colours[first] -= cancelled
        colours[second] -= cancelled
    return +colours


def mutate(q: ColouredQuiver, j: int) -> ColouredQuiver:
    """
    Return the mutation of ``q`` at vertex ``j``.

    (1) every path i --0--> j --c--> k with i != k adds arrows i->k of
        colour c and k->i of colour m-c, multiplicities multiplied;
    (2) opposite colours on the same ordered pair cancel;
    (3) arrows into j lose one colour, arrows out of j gain one (mod m+1).

    This orientation reproduces the worked m=3 example and commutes with
    clockwise mutation of diagonals when colours are counted
    counterclockwise. Applying it m+1 times at one vertex is the identity.
    """
    ensure_valid(q)
    _check_vertex(q, j)
    m = q.m

    table: Dict[Pair, Counter] = defaultdict(Counter)
    for pair, arrow in q.arrows.items():
        table[pair][arrow.colour] += arrow.multiplicity

    outgoing = q.out_arrows(j)
    for i, into in q.in_arrows(j):
        if into.colour != 0:
            continue
        for k, out in outgoing:
            if k == i:
                continue
            added = into.multiplicity * out.multiplicity
            table[(i, k)][out.colour] += added
            table[(k, i)][m - out.colour] += added

    result: Dict[Pair, Arrow] = {}
    for pair, colours in table.items():
        remaining = _cancel(pair, colours)
        if not remaining:
            continue
        (colour, multiplicity), = remaining.items()
        source, target = pair
        if target == j:
            colour = (colour - 1) % (m + 1)
        elif source == j:
            colour = (colour + 1) % (m + 1)
        result[pair] = Arrow(colour, multiplicity)

    mutated = ColouredQuiver(m, q.vertex_count, result)
    report = validate_quiver(mutated)
    if not report.ok:
        raise MutationInvariantError(
            f"mutation at {j} broke the quiver properties: {'; '.join(report.violations)}"
        )
    logger.debug(f"Mutated {q!r} at {j} -> {mutated!r}")
    return mutated


def mutate_sequence(q: ColouredQuiver, vertices: Iterable[int]) -> ColouredQuiver:
    for j in vertices:
        q = mutate(q, j)
    return q


def relabel(q: ColouredQuiver, permutation: Sequence[int]) -> ColouredQuiver:
    """Move vertex ``v`` to ``permutation[v]``."""
    if sorted(permutation) != list(range(q.vertex_count)):
        raise QuiverError(f"{list(permutation)} is not a permutation of 0..{q.vertex_count - 1}")
    table = {
        (permutation[i], permutation[j]): arrow
        for (i, j), arrow in q.arrows.items()
    }
    return ColouredQuiver(q.m, q.vertex_count, table)


def remove_vertex(q: ColouredQuiver, v: int) -> ColouredQuiver:
    """
    Factor out vertex ``v``: drop it with all incident arrows and close
    the gap in the numbering.
    """
    _check_vertex(q, v)
    if q.vertex_count == 1:
        raise QuiverError("cannot factor out the only vertex of a quiver")

    def shift(i):
        return i - 1 if i > v else i

    table = {
        (shift(i), shift(j)): arrow
        for (i, j), arrow in q.arrows.items()
        if v not in (i, j)
    }
    return ColouredQuiver(q.m, q.vertex_count - 1, table)


def gabriel_quiver(q: ColouredQuiver) -> nx.MultiDiGraph:
    """The colour-0 subquiver, as a multigraph with one edge per arrow."""
    ensure_valid(q)
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(q.vertex_count))
    for (i, j), arrow in sorted(q.arrows.items()):
        if arrow.colour == 0:
            graph.add_edges_from([(i, j)] * arrow.multiplicity)
    return graph


def is_connected(q: ColouredQuiver) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(range(q.vertex_count))
    graph.add_edges_from(q.arrows.keys())
    return nx.is_connected(graph)
