"""
Canonical forms for coloured quivers up to isomorphism.

Vertices are first split into classes by an isomorphism-invariant
signature (incident colours, refined by the signatures of neighbours),
then every relabelling that respects the class order is tried and the
lexicographically smallest arrow table wins.
"""
import json
import logging
from dataclasses import dataclass
from itertools import groupby, permutations, product
from typing import Dict, List, Sequence, Tuple

from .quiver import ColouredQuiver, ensure_valid

logger = logging.getLogger(__name__)

NO_ARROW = (-1, 0)


@dataclass(frozen=True, order=True)
class CanonicalQuiverKey:
    value: bytes

    def __str__(self):
        return self.value.decode('ascii')


def _initial_signatures(q: ColouredQuiver) -> List[Tuple]:
    incident: Dict[int, List[Tuple[str, int, int]]] = {v: [] for v in range(q.vertex_count)}
    for (i, j), arrow in q.arrows.items():
        incident[i].append(('out', arrow.colour, arrow.multiplicity))
        incident[j].append(('in', arrow.colour, arrow.multiplicity))
    return [tuple(sorted(incident[v])) for v in range(q.vertex_count)]


def _rank(values: Sequence) -> List[int]:
    order = {value: rank for rank, value in enumerate(sorted(set(values)))}
    return [order[value] for value in values]


def vertex_classes(q: ColouredQuiver) -> List[int]:
    """Refine vertex signatures until the number of classes is stable."""
    ranks = _rank(_initial_signatures(q))
    while True:
        refined = []
        for v in range(q.vertex_count):
            neighbours = sorted(
                (arrow.colour, arrow.multiplicity, ranks[j])
                for (i, j), arrow in q.arrows.items() if i == v
            )
            refined.append((ranks[v], tuple(neighbours)))
        new_ranks = _rank(refined)
        if len(set(new_ranks)) == len(set(ranks)):
            return new_ranks
        ranks = new_ranks


def _encode(q: ColouredQuiver, labelling: Sequence[int]) -> Tuple:
    table = []
    for a in labelling:
        for b in labelling:
            arrow = q.arrows.get((a, b))
            table.append(NO_ARROW if arrow is None else (arrow.colour, arrow.multiplicity))
    return tuple(table)


def canonical_key(q: ColouredQuiver) -> CanonicalQuiverKey:
    """
    Key that is equal for two quivers exactly when they are isomorphic as
    coloured quivers.
    """
    ensure_valid(q)
    classes = vertex_classes(q)
    order = sorted(range(q.vertex_count), key=classes.__getitem__)
    groups = [list(members) for _, members in groupby(order, key=classes.__getitem__)]

    best = None
    for choice in product(*(permutations(group) for group in groups)):
        labelling = [v for group in choice for v in group]
        code = _encode(q, labelling)
        if best is None or code < best:
            best = code

    document = json.dumps([q.m, q.vertex_count, best], separators=(',', ':'))
    return CanonicalQuiverKey(document.encode('ascii'))


def are_isomorphic(first: ColouredQuiver, second: ColouredQuiver) -> bool:
    return canonical_key(first) == canonical_key(second)
