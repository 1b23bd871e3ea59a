"""Brute-force reference implementation for small instances.

Enumerates every valid (O, D, T) combination outright, counts atomic
patterns by dense array arithmetic, and labels patterns by definition.
Deliberately pays the exponential cost the miners avoid, on instances
small enough that this stays cheap, so it shares no code path with the
level-wise engine beyond atomic-set extraction.

Pattern labeling follows the bottom-up reading: a non-atomic triple is a
pattern when its ratio passes and at least one of its minimal
specializations is a pattern, grounding out at the atomic pattern set.  A
``strict`` mode evaluates the recursive definition top-down instead;
``closure=False`` skips the sanity constraint entirely and returns all
ratio-passing triples, which is the ground truth for the fixed-size
approximate miners.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InstanceTooLarge
from .ingest import AtomicPatternSet, TripsTable, extract_atomic_patterns
from .model import MiningParams, ODTTriple, RegionGraph, TimeDomain

# ratio comparisons below mirror model.ratio_passes elementwise:
# cnt >= s_r * card with one float64 multiply


@dataclass(frozen=True)
class OracleConfig:
    """Guard rails keeping exhaustive enumeration to fractions of a second."""

    max_regions: int = 12
    max_slots: int = 12
    max_region_size: Optional[int] = None


def enumerate_all_connected_subsets(
    graph: RegionGraph, max_size: int
) -> list[tuple[int, ...]]:
    """Every connected vertex subset of size 1..max_size, each exactly once.

    Anchored enumeration: for each vertex v, grows subsets whose minimum
    vertex is v by branching on each eligible neighbor in turn while
    forbidding the neighbors already branched on, which makes the output
    duplicate-free without a seen-set.
    """
    if max_size < 1:
        return []
    adj = graph.adj
    out: list[tuple[int, ...]] = []

    def grow(anchor: int, current: frozenset, forbidden: frozenset) -> None:
        out.append(tuple(sorted(current)))
        if len(current) >= max_size:
            return
        reachable: set[int] = set()
        for v in current:
            reachable.update(adj[v])
        ext = sorted(
            u for u in reachable if u > anchor and u not in current and u not in forbidden
        )
        banned = set(forbidden)
        for w in ext:
            grow(anchor, current | {w}, frozenset(banned))
            banned.add(w)

    for anchor in range(graph.n):
        grow(anchor, frozenset((anchor,)), frozenset())
    out.sort(key=lambda s: (len(s), s))
    return out


def _guard(graph: RegionGraph, td: TimeDomain, config: OracleConfig) -> None:
    if graph.n > config.max_regions:
        raise InstanceTooLarge(
            f"{graph.n} regions exceed the reference cap of {config.max_regions}"
        )
    if td.slot_count > config.max_slots:
        raise InstanceTooLarge(
            f"{td.slot_count} slots exceed the reference cap of {config.max_slots}"
        )


def minimal_specializations(triple: ODTTriple, graph: RegionGraph) -> list[ODTTriple]:
    """All valid triples obtained by removing one atomic element."""
    out: list[ODTTriple] = []
    o, d = triple.origin, triple.dest
    a, b = triple.t_start, triple.t_end
    if len(o) > 1:
        for r in o:
            rest = tuple(x for x in o if x != r)
            if graph.is_connected_subset(rest):
                out.append(ODTTriple(rest, d, a, b))
    if len(d) > 1:
        for r in d:
            rest = tuple(x for x in d if x != r)
            if graph.is_connected_subset(rest):
                out.append(ODTTriple(o, rest, a, b))
    if b > a:
        out.append(ODTTriple(o, d, a + 1, b))
        out.append(ODTTriple(o, d, a, b - 1))
    return out


def ratio_passing_triples(
    aps: AtomicPatternSet,
    graph: RegionGraph,
    td: TimeDomain,
    s_r: float,
    config: OracleConfig = OracleConfig(),
) -> dict[ODTTriple, int]:
    """All valid triples whose atomic-pattern ratio reaches ``s_r``.

    Counting is done for every disjoint pair of connected subsets at once:
    per slot, an indicator-matrix product gives the pair counts, and
    running sums over the slot axis extend them to every contiguous range.
    """
    _guard(graph, td, config)
    max_size = config.max_region_size or graph.n
    subsets = enumerate_all_connected_subsets(graph, max_size)
    n, m = graph.n, td.slot_count
    k = len(subsets)

    cube = np.zeros((n, n, m), dtype=np.int32)
    for o, d, t in aps.members:
        cube[o, d, t] = 1
    ind = np.zeros((k, n), dtype=np.int32)
    for i, sub in enumerate(subsets):
        ind[i, list(sub)] = 1
    per_slot = [ind @ cube[:, :, t] @ ind.T for t in range(m)]

    masks = np.array([sum(1 << v for v in sub) for sub in subsets], dtype=np.int64)
    disjoint = (masks[:, None] & masks[None, :]) == 0
    sizes = np.array([len(s) for s in subsets], dtype=np.int64)
    size_prod = sizes[:, None] * sizes[None, :]

    passing: dict[ODTTriple, int] = {}
    for a in range(m):
        acc = np.zeros((k, k), dtype=np.int64)
        for b in range(a, m):
            acc += per_slot[b]
            ok = disjoint & (acc >= s_r * (size_prod * (b - a + 1)))
            for i, j in np.argwhere(ok):
                passing[ODTTriple(subsets[i], subsets[j], a, b)] = int(acc[i, j])
    return passing


def oracle_patterns(
    table: TripsTable,
    graph: RegionGraph,
    params: MiningParams,
    *,
    config: OracleConfig = OracleConfig(),
    closure: bool = True,
    strict: bool = False,
    atomic_set: Optional[AtomicPatternSet] = None,
) -> dict[ODTTriple, int]:
    """Reference pattern set as a mapping from canonical triple to cnt.

    ``closure=True`` applies the sanity constraint bottom-up (a pattern
    needs a pattern among its minimal specializations, grounded at the
    atomic set).  ``strict=True`` evaluates the same recursive condition
    top-down with memoization; the two labelings coincide and the pair
    exists to make that checkable.  ``closure=False`` returns every
    ratio-passing triple.
    """
    aps = atomic_set if atomic_set is not None else extract_atomic_patterns(table, params.s_a)
    td = table.time_domain
    passing = ratio_passing_triples(aps, graph, td, params.s_r, config)
    if not closure:
        return passing
    members = aps.members
    if strict:
        memo: dict[ODTTriple, bool] = {}

        def is_pattern(t: ODTTriple) -> bool:
            cached = memo.get(t)
            if cached is not None:
                return cached
            if t not in passing:
                memo[t] = False
                return False
            if t.level == 3:
                ok = (t.origin[0], t.dest[0], t.t_start) in members
            else:
                ok = any(is_pattern(s) for s in minimal_specializations(t, graph))
            memo[t] = ok
            return ok

        return {t: c for t, c in passing.items() if is_pattern(t)}

    by_level: dict[int, list[ODTTriple]] = {}
    for t in passing:
        by_level.setdefault(t.level, []).append(t)
    patterns: dict[ODTTriple, int] = {}
    for t in by_level.get(3, []):
        if (t.origin[0], t.dest[0], t.t_start) in members:
            patterns[t] = passing[t]
    for level in sorted(by_level):
        if level == 3:
            continue
        for t in by_level[level]:
            if any(s in patterns for s in minimal_specializations(t, graph)):
                patterns[t] = passing[t]
    return patterns


def filter_by_sizes(
    patterns: dict[ODTTriple, int], b_o: int, b_d: int, b_t: int
) -> dict[ODTTriple, int]:
    return {
        t: c
        for t, c in patterns.items()
        if len(t.origin) <= b_o and len(t.dest) <= b_d and t.slot_count <= b_t
    }


def filter_by_domain(
    patterns: dict[ODTTriple, int],
    v_o: frozenset[int],
    v_d: frozenset[int],
    t_r: tuple[int, int],
) -> dict[ODTTriple, int]:
    lo, hi = t_r
    return {
        t: c
        for t, c in patterns.items()
        if v_o.issuperset(t.origin)
        and v_d.issuperset(t.dest)
        and lo <= t.t_start
        and t.t_end <= hi
    }
