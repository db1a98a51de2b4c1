"""
Cross-checks between the quiver, geometry and counting apps.

``verify_all`` walks every (n, m) in range and records one :class:`Check`
per property. A failing or crashing check is recorded, never raised.
"""
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Set, Tuple

from django.conf import settings

from counting.formulas import (
    count_coloured_quivers,
    count_m1_specialization,
    f_coeff,
    fuss_catalan_tilting,
    h_correction_coeff,
    num_indecomposables,
)
from geometry.angulation import (
    close_to_border,
    enumerate_angulations,
    extend_at,
    factor_out,
    mutate_at,
    quiver_classes_of_angulations,
    quiver_of,
    rotation_class_key,
)
from geometry.polygon import MDiagonal, PolygonParams, border_edges, enumerate_m_diagonals
from quivers.canonical import CanonicalQuiverKey, canonical_key
from quivers.quiver import (
    ColouredQuiver,
    ensure_valid,
    gabriel_quiver,
    is_connected,
    mutate,
    remove_vertex,
    validate_quiver,
)

logger = logging.getLogger(__name__)

CHECK_NAMES = (
    'triple',
    'commutation',
    'periodicity',
    'invariants',
    'factor_out',
    'indecomposables',
    'fuss_catalan',
    'formula_routes',
    'm1_specialization',
    'connectivity',
    'round_trip',
    'extension_lemma',
    'gabriel',
    'factor_connected',
)


class MutationClassLimitExceeded(RuntimeError):
    def __init__(self, limit: int, seen: int):
        self.limit = limit
        self.seen = seen
        super().__init__(
            f"mutation class grew past {limit} quivers ({seen} seen); "
            f"the expected size or the mutation rule is wrong"
        )


def _limit_factor() -> int:
    return getattr(settings, 'COLOURED_QUIVERS', {}).get('BFS_LIMIT_FACTOR', 10)


def seed_quiver(n: int, m: int) -> ColouredQuiver:
    """The linear A_n quiver: i -> i+1 of colour 0 and i+1 -> i of colour m."""
    if n < 1:
        raise ValueError(f"seed_quiver needs n >= 1, got {n}")
    return ColouredQuiver.from_symmetric(m, n, [(i, i + 1, 0) for i in range(n - 1)])


def explore_mutation_class(q0: ColouredQuiver,
                           limit: Optional[int] = None) -> Dict[CanonicalQuiverKey, ColouredQuiver]:
    """Breadth-first closure under mutation; one representative per isomorphism class."""
    ensure_valid(q0)
    found = {canonical_key(q0): q0}
    queue = deque([q0])
    while queue:
        q = queue.popleft()
        for j in range(q.vertex_count):
            mutated = mutate(q, j)
            key = canonical_key(mutated)
            if key in found:
                continue
            found[key] = mutated
            if limit is not None and len(found) > limit:
                raise MutationClassLimitExceeded(limit, len(found))
            queue.append(mutated)
    logger.info(f"Mutation class of {q0!r} has {len(found)} quivers")
    return found


def bfs_mutation_class(q0: ColouredQuiver, limit: Optional[int] = None) -> Set[CanonicalQuiverKey]:
    """
    Canonical keys of the mutation class of ``q0``. Without an explicit
    limit the search stops at BFS_LIMIT_FACTOR times the closed-form size.
    """
    if limit is None and q0.m >= 1:
        limit = _limit_factor() * count_coloured_quivers(q0.vertex_count, q0.m)
    return set(explore_mutation_class(q0, limit))


Pair = Tuple[int, int]


@dataclass(frozen=True)
class VerifyOptions:
    checks: Optional[FrozenSet[str]] = None
    limit_factor: Optional[int] = None
    # (n, m) instances run after the n_max x m_max grid
    extra: Tuple[Pair, ...] = ()

    def wants(self, name: str) -> bool:
        return self.checks is None or name in self.checks


def instance_pairs(n_max: int, m_max: int, extra: Tuple[Pair, ...] = ()) -> List[Pair]:
    """The grid in row order, then every extra pair not already on it."""
    pairs = [(n, m) for n in range(1, n_max + 1) for m in range(1, m_max + 1)]
    for n, m in extra:
        if n < 1 or m < 1:
            raise ValueError(f"extra instance needs n >= 1 and m >= 1, got ({n}, {m})")
        if (n, m) not in pairs:
            pairs.append((n, m))
    return pairs


@dataclass
class Check:
    name: str
    params: Dict[str, int]
    expected: Any
    observed: Any
    passed: bool
    elapsed: float = 0.0
    detail: str = ''

    def to_text(self) -> str:
        params = ' '.join(f"{k}={v}" for k, v in self.params.items())
        line = (
            f"{'PASS' if self.passed else 'FAIL'} {self.name} {params} "
            f"expected={self.expected} observed={self.observed} ({self.elapsed:.3f}s)"
        )
        return f"{line}\n    {self.detail}" if self.detail else line


@dataclass
class VerificationReport:
    n_max: int
    m_max: int
    checks: List[Check] = field(default_factory=list)
    extra: List[Pair] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]

    def to_text(self) -> str:
        lines = [check.to_text() for check in self.checks]
        lines.append(
            f"{len(self.checks)} checks, {len(self.failures)} failed: "
            f"{'PASS' if self.passed else 'FAIL'}"
        )
        return "\n".join(lines)


class _Instance:
    """Shared data for one (n, m): the polygon P(n+1, m) and the class of A_n."""

    def __init__(self, n: int, m: int, limit_factor: int):
        self.n = n
        self.m = m
        self.params = PolygonParams(n + 1, m)
        self.limit_factor = limit_factor

    @cached_property
    def angulations(self):
        return list(enumerate_angulations(self.params))

    @cached_property
    def quivers(self):
        return [quiver_of(a) for a in self.angulations]

    @cached_property
    def formula(self) -> int:
        return count_coloured_quivers(self.n, self.m)

    @cached_property
    def mutation_class(self) -> Dict[CanonicalQuiverKey, ColouredQuiver]:
        return explore_mutation_class(seed_quiver(self.n, self.m), self.limit_factor * self.formula)

    @cached_property
    def smaller_angulations(self):
        return list(enumerate_angulations(PolygonParams(self.n, self.m)))

    @cached_property
    def smaller_class(self) -> Dict[CanonicalQuiverKey, ColouredQuiver]:
        """Mutation class of A_{n-1}."""
        return explore_mutation_class(seed_quiver(self.n - 1, self.m))


def _gabriel_edges(a) -> List[Pair]:
    """
    Colour-0 arrows read off the cells: around a cell, the diagonal on side
    (v_k, v_k+1) points to the diagonal on the previous side (v_k-1, v_k).
    """
    slots = {d: k for k, d in enumerate(a.diagonals)}
    edges = []
    for cell in a.cells:
        vs = cell.vertices
        for k in range(len(vs)):
            before = MDiagonal.of(vs[k - 1], vs[k])
            after = MDiagonal.of(vs[k], vs[(k + 1) % len(vs)])
            if before in slots and after in slots:
                edges.append((slots[after], slots[before]))
    return sorted(edges)


def _triple(instance: _Instance):
    rotation_classes = len({rotation_class_key(a) for a in instance.angulations})
    quiver_classes = len(quiver_classes_of_angulations(instance.params))
    observed = {
        'formula': instance.formula,
        'rotation_classes': rotation_classes,
        'quiver_classes': quiver_classes,
        'bfs': len(instance.mutation_class),
    }
    passed = len(set(observed.values())) == 1
    return instance.formula, observed, passed, ''


def _commutation(instance: _Instance):
    checked = 0
    for a, q in zip(instance.angulations, instance.quivers):
        for slot, d in enumerate(a.diagonals):
            checked += 1
            if quiver_of(mutate_at(a, d)) != mutate(q, slot):
                return checked, checked - 1, False, f"first mismatch: {a!r} at {d}"
    return checked, checked, True, ''


def _periodicity(instance: _Instance):
    m = instance.m
    checked = 0
    for q in instance.mutation_class.values():
        for j in range(q.vertex_count):
            checked += 1
            turned = q
            for _ in range(m + 1):
                turned = mutate(turned, j)
            if turned != q:
                return checked, checked - 1, False, f"quiver {q!r} at vertex {j}"
    for a in instance.angulations:
        for slot in range(len(a.diagonals)):
            checked += 1
            turned = a
            for _ in range(m + 1):
                turned = mutate_at(turned, turned.diagonals[slot])
            if turned != a:
                return checked, checked - 1, False, f"angulation {a!r} at slot {slot}"
    return checked, checked, True, ''


def _invariants(instance: _Instance):
    p = instance.params
    problems = []
    for a, q in zip(instance.angulations, instance.quivers):
        if len(a.diagonals) != p.N - 1 or len(a.cells) != p.N:
            problems.append(f"{a!r} has the wrong number of diagonals or cells")
        if any(len(cell.vertices) != p.m + 2 for cell in a.cells):
            problems.append(f"{a!r} has a cell with the wrong number of sides")
        problems.extend(validate_quiver(q).violations)
    for q in instance.mutation_class.values():
        problems.extend(validate_quiver(q).violations)
    return 0, len(problems), not problems, '; '.join(problems[:3])


def _factor_out(instance: _Instance):
    checked = 0
    for a, q in zip(instance.angulations, instance.quivers):
        if len(a.diagonals) < 2:
            continue
        for d in close_to_border(a):
            checked += 1
            if quiver_of(factor_out(a, d)) != remove_vertex(q, a.slot(d)):
                return checked, checked - 1, False, f"{a!r} at {d}"
    return checked, checked, True, ''


def _indecomposables(instance: _Instance):
    expected = num_indecomposables(instance.n, instance.m)
    observed = sum(1 for _ in enumerate_m_diagonals(instance.params))
    return expected, observed, expected == observed, ''


def _fuss_catalan(instance: _Instance):
    expected = fuss_catalan_tilting(instance.n, instance.m)
    observed = len(instance.angulations)
    return expected, observed, expected == observed, ''


def _formula_routes(instance: _Instance):
    s, k = instance.m + 2, instance.n + 1
    observed = f_coeff(s, k) - h_correction_coeff(s, k)
    shown = int(observed) if observed.denominator == 1 else str(observed)
    return instance.formula, shown, observed == instance.formula, ''


def _m1_specialization(instance: _Instance):
    if instance.m != 1 or instance.n < 2:
        return None
    observed = count_m1_specialization(instance.n)
    return instance.formula, observed, observed == instance.formula, ''


def _connectivity(instance: _Instance):
    if instance.n < 2:
        return None
    checked = 0
    for a, q in zip(instance.angulations, instance.quivers):
        close = set(close_to_border(a))
        for slot, d in enumerate(a.diagonals):
            checked += 1
            if is_connected(remove_vertex(q, slot)) != (d in close):
                return checked, checked - 1, False, f"{a!r} at {d}"
    return checked, checked, True, ''


def _round_trip(instance: _Instance):
    checked = 0
    for a in instance.smaller_angulations:
        for edge in border_edges(a.params):
            checked += 1
            extended = extend_at(a, edge)
            if factor_out(extended, extended.diagonals[-1]) != a:
                return checked, checked - 1, False, f"{a!r} at {edge}"
    return checked, checked, True, ''


def _extension_lemma(instance: _Instance):
    checked = 0
    for a in instance.smaller_angulations:
        extensions = [extend_at(a, edge) for edge in border_edges(a.params)]
        keys = [canonical_key(quiver_of(b)) for b in extensions]
        rotations = [rotation_class_key(b) for b in extensions]
        for x in range(len(extensions)):
            for y in range(x + 1, len(extensions)):
                checked += 1
                if (keys[x] == keys[y]) != (rotations[x] == rotations[y]):
                    return checked, checked - 1, False, f"{extensions[x]!r} and {extensions[y]!r}"
    return checked, checked, True, ''


def _gabriel(instance: _Instance):
    checked = 0
    for a, q in zip(instance.angulations, instance.quivers):
        for slot, d in enumerate(a.diagonals):
            checked += 1
            mutated = gabriel_quiver(mutate(q, slot))
            if sorted(mutated.edges()) != _gabriel_edges(mutate_at(a, d)):
                return checked, checked - 1, False, f"{a!r} at {d}"
    return checked, checked, True, ''


def _factor_connected(instance: _Instance):
    if instance.n < 2:
        return None
    smaller = instance.smaller_class
    checked = 0
    for q in instance.mutation_class.values():
        for v in range(q.vertex_count):
            factored = remove_vertex(q, v)
            if not is_connected(factored):
                continue
            checked += 1
            if canonical_key(factored) not in smaller:
                return checked, checked - 1, False, f"{q!r} without vertex {v}"
    return checked, checked, True, ''


CHECKS: Dict[str, Callable[[_Instance], Any]] = {
    'triple': _triple,
    'commutation': _commutation,
    'periodicity': _periodicity,
    'invariants': _invariants,
    'factor_out': _factor_out,
    'indecomposables': _indecomposables,
    'fuss_catalan': _fuss_catalan,
    'formula_routes': _formula_routes,
    'm1_specialization': _m1_specialization,
    'connectivity': _connectivity,
    'round_trip': _round_trip,
    'extension_lemma': _extension_lemma,
    'gabriel': _gabriel,
    'factor_connected': _factor_connected,
}


def _run(name: str, instance: _Instance) -> Optional[Check]:
    params = {'n': instance.n, 'm': instance.m}
    started = time.perf_counter()
    try:
        outcome = CHECKS[name](instance)
    except Exception as exc:
        logger.error(f"Check {name} {params} raised", exc_info=True)
        return Check(name, params, None, None, False, time.perf_counter() - started,
                     f"{type(exc).__name__}: {exc}")
    if outcome is None:
        return None
    expected, observed, passed, detail = outcome
    check = Check(name, params, expected, observed, passed, time.perf_counter() - started, detail)
    if passed:
        logger.info(f"Check {name} {params} passed in {check.elapsed:.3f}s")
    else:
        logger.warning(f"Check {name} {params} failed: expected {expected}, observed {observed} {detail}")
    return check


def verify_all(n_max: int, m_max: int, options: Optional[VerifyOptions] = None) -> VerificationReport:
    options = options or VerifyOptions()
    if n_max < 1 or m_max < 1:
        raise ValueError(f"verify_all needs n_max >= 1 and m_max >= 1, got {n_max}, {m_max}")
    limit_factor = options.limit_factor or _limit_factor()
    pairs = instance_pairs(n_max, m_max, options.extra)
    report = VerificationReport(n_max, m_max, extra=pairs[n_max * m_max:])
    for n, m in pairs:
        instance = _Instance(n, m, limit_factor)
        for name in CHECK_NAMES:
            if not options.wants(name):
                continue
            check = _run(name, instance)
            if check is not None:
                report.checks.append(check)
    logger.info(
        f"Verification up to n={n_max}, m={m_max} plus {report.extra}: "
        f"{'PASS' if report.passed else 'FAIL'}"
    )
    return report
