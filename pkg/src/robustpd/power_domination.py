"""The power domination observation process and the exact minimum solver.

Observation proceeds in two stages: a domination step that observes the
closed neighborhood of the chosen vertices, then repeated zero-forcing
steps in which an observed vertex with exactly one unobserved neighbor
observes that neighbor. The fixed point does not depend on the forcing
order, which the tests exercise directly.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple
from weakref import WeakKeyDictionary

from .errors import DisconnectedGraphError, ParameterError
from .graphs import Graph, iter_bits, mask_of

DOMINATION = "domination"
FORCING = "forcing"

# Subset -> is-PDS verdicts are memoized per graph; entries are cheap but the
# exhaustive searches can touch millions of subsets, hence the cap.
_PDS_CACHE_MAX = 2_000_000


class _GraphCache:
    __slots__ = ("pds", "bads")

    def __init__(self) -> None:
        self.pds: dict[int, bool] = {}
        self.bads: dict[int, tuple[int, tuple[int, ...]]] = {}


_CACHES: "WeakKeyDictionary[Graph, _GraphCache]" = WeakKeyDictionary()


def graph_cache(g: Graph) -> _GraphCache:
    cache = _CACHES.get(g)
    if cache is None:
        cache = _GraphCache()
        _CACHES[g] = cache
    return cache


def closure_mask(g: Graph, start_mask: int) -> int:
    """Fixed point of the observation process, as a bitmask."""
    adj = g.adj
    observed = start_mask
    for v in iter_bits(start_mask):
        observed |= adj[v]
    full = g.full_mask
    while observed != full:
        progress = False
        for v in iter_bits(observed):
            unobs = adj[v] & ~observed
            if unobs and unobs & (unobs - 1) == 0:
                observed |= unobs
                progress = True
        if not progress:
            break
    return observed


def pds_of_mask(g: Graph, mask: int) -> bool:
    """Memoized "does this vertex mask power dominate g" check."""
    cache = graph_cache(g).pds
    hit = cache.get(mask)
    if hit is not None:
        return hit
    verdict = closure_mask(g, mask) == g.full_mask
    if len(cache) < _PDS_CACHE_MAX:
        cache[mask] = verdict
    return verdict


@dataclass(frozen=True)
class TraceStep:
    vertex: int
    rule: str  # DOMINATION or FORCING
    source: int | None  # dominating vertex of S, or the forcing vertex


@dataclass(frozen=True)
class ObservationResult:
    observed: frozenset[int]
    is_full: bool
    trace: tuple[TraceStep, ...]

    def replay(self) -> frozenset[int]:
        return frozenset(step.vertex for step in self.trace)


def observe(g: Graph, s: Iterable[int], *, rng: random.Random | None = None) -> ObservationResult:
    """Run the observation process from PMU locations ``s`` with a trace.

    Forcing uses a work queue over vertices with exactly one unobserved
    neighbor; unobserved-neighbor counts are maintained incrementally.
    ``rng`` randomizes the pop order (a diagnostic hook: the fixed point is
    order-independent and the tests assert it).
    """
    start = sorted(set(s))
    for v in start:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} out of range for n={g.n}")
    adj = g.adj
    observed = 0
    trace: list[TraceStep] = []

    def mark(v: int, rule: str, source: int | None) -> None:
        nonlocal observed
        observed |= 1 << v
        trace.append(TraceStep(v, rule, source))

    for v in start:
        if not observed >> v & 1:
            mark(v, DOMINATION, v)
        for w in iter_bits(adj[v] & ~observed):
            mark(w, DOMINATION, v)

    unobs_count = [(adj[v] & ~observed).bit_count() for v in range(g.n)]
    agenda: deque[int] = deque(v for v in iter_bits(observed) if unobs_count[v] == 1)
    while agenda:
        if rng is None:
            v = agenda.popleft()
        else:
            idx = rng.randrange(len(agenda))
            agenda.rotate(-idx)
            v = agenda.popleft()
        if unobs_count[v] != 1:
            continue
        w_mask = adj[v] & ~observed
        w = w_mask.bit_length() - 1
        mark(w, FORCING, v)
        for u in iter_bits(adj[w]):
            unobs_count[u] -= 1
            if observed >> u & 1 and unobs_count[u] == 1:
                agenda.append(u)
        if unobs_count[w] == 1:
            agenda.append(w)
    return ObservationResult(
        observed=frozenset(iter_bits(observed)),
        is_full=observed == g.full_mask,
        trace=tuple(trace),
    )


def is_pds(g: Graph, s: Iterable[int]) -> bool:
    mask = mask_of(s)
    if mask >> g.n:
        raise ParameterError(f"vertex set out of range for n={g.n}")
    return pds_of_mask(g, mask)


def is_minimal_pds(g: Graph, s: Iterable[int]) -> bool:
    """True iff ``s`` power dominates but no proper subset missing one vertex does."""
    vs = sorted(set(s))
    mask = mask_of(vs)
    if not pds_of_mask(g, mask):
        return False
    return all(not pds_of_mask(g, mask ^ (1 << v)) for v in vs)


def candidate_vertices(g: Graph) -> tuple[int, ...]:
    """Search support for minimum solvers.

    In a connected graph with maximum degree at least 3 there is always an
    optimal solution supported on degree->=3 vertices, so lower-degree
    vertices are dropped from the candidate pool.
    """
    if max(g.degree(v) for v in range(g.n)) >= 3:
        return tuple(v for v in range(g.n) if g.degree(v) >= 3)
    return tuple(range(g.n))


class GammaResult(NamedTuple):
    value: int
    witness: frozenset[int]


def gamma_p(g: Graph) -> GammaResult:
    """Minimum size of a power dominating set, with the lex-smallest witness.

    The witness is lexicographically smallest within the candidate pool of
    ``candidate_vertices``; subsets are enumerated by size then lex order,
    so the first hit is the answer.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("gamma_p requires a connected graph")
    cands = candidate_vertices(g)
    for size in range(1, len(cands) + 1):
        for combo in combinations(cands, size):
            if pds_of_mask(g, mask_of(combo)):
                return GammaResult(size, frozenset(combo))
    raise RuntimeError("no power dominating set found; candidate restriction broken")


def enumerate_minimal_pds(g: Graph, max_size: int) -> list[frozenset[int]]:
    """All minimal power dominating sets of size <= max_size, lex sorted."""
    found = []
    for size in range(1, max_size + 1):
        for combo in combinations(range(g.n), size):
            if is_minimal_pds(g, combo):
                found.append(frozenset(combo))
    found.sort(key=lambda s: tuple(sorted(s)))
    return found
