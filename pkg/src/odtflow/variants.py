"""Practical mining variants: size bounds, domain constraints, per-level top-k.

Bounded and constrained mining reuse the level-wise engine with the
restrictions applied at candidate generation time, so their outputs equal
the unrestricted output filtered to the allowed sizes or domain.

Rank-based mining replaces the ratio threshold with a per-level budget:
level 3 is the full atomic pattern set, and each later level keeps the k
highest-cnt triples among the minimal generalizations of the previous
level's kept set, ties broken by canonical triple order.  Two engines are
provided: ``baserank`` generates and counts every candidate then selects,
``optrank`` processes parents in decreasing cnt order and prunes with the
maximum-gain bound of a single extension.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConstraintError, MiningTimeout
from .exact import (
    LevelCache,
    MiningResult,
    OptimizationFlags,
    _count,
    _diff,
    _mine_levelwise,
)
from .ingest import AtomicPatternSet, TripsTable, extract_atomic_patterns, table_from_rows
from .model import (
    DIM_DEST,
    DIM_ORIGIN,
    DIM_TIME,
    GenerationLimits,
    MiningParams,
    ODTPattern,
    ODTTriple,
    RegionGraph,
    iter_extensions,
)
from .psindex import PrefixSumIndex


def mine_bounded(
    table: TripsTable,
    graph: RegionGraph,
    params: MiningParams,
    flags: OptimizationFlags = OptimizationFlags(),
    *,
    threads: int = 1,
    deadline: Optional[float] = None,
    atomic_set: Optional[AtomicPatternSet] = None,
) -> MiningResult:
    """Mine with component sizes capped at ``params.bounds`` = (B_O, B_D, B_T).

    Extensions that would exceed a bound are suppressed at generation
    time; the result equals the unrestricted output filtered by sizes.
    """
    if params.bounds is None:
        raise ValueError("params.bounds must be set for bounded mining")
    b_o, b_d, b_t = params.bounds
    aps = atomic_set if atomic_set is not None else extract_atomic_patterns(table, params.s_a)
    limits = GenerationLimits(max_origin=b_o, max_dest=b_d, max_slots=b_t)
    return _mine_levelwise(
        aps,
        graph,
        table.time_domain,
        s_r=params.s_r,
        flags=flags,
        limits=limits,
        threads=threads,
        deadline=deadline,
    )


def mine_constrained(
    table: TripsTable,
    graph: RegionGraph,
    params: MiningParams,
    flags: OptimizationFlags = OptimizationFlags(),
    *,
    rescope_sa: bool = False,
    threads: int = 1,
    deadline: Optional[float] = None,
    atomic_set: Optional[AtomicPatternSet] = None,
) -> MiningResult:
    """Mine inside the domain ``params.constraints`` = (V_O, V_D, T_R).

    Origins may only grow within V_O, destinations within V_D, and slot
    ranges within the contiguous window T_R; level-3 seeds are the atomic
    patterns that fall inside the domain.  Atomic significance is the
    globally computed set by default; ``rescope_sa`` recomputes the
    threshold over the constrained domain only, which can surface
    under-represented regions.
    """
    if params.constraints is None:
        raise ValueError("params.constraints must be set for constrained mining")
    v_o, v_d, t_r = params.constraints
    _validate_domain(graph, table, v_o, v_d, t_r)
    lo, hi = t_r
    if rescope_sa:
        scoped = [
            r
            for r in table.rows
            if r.o in v_o and r.d in v_d and lo <= r.t <= hi
        ]
        if not scoped:
            raise ConstraintError("no trips fall inside the constrained domain")
        aps = extract_atomic_patterns(
            table_from_rows(scoped, table.time_domain), params.s_a
        )
    else:
        aps = atomic_set if atomic_set is not None else extract_atomic_patterns(table, params.s_a)
    level3 = [
        (o, d, t)
        for (o, d, t) in aps.members
        if o in v_o and d in v_d and lo <= t <= hi
    ]
    limits = GenerationLimits(
        origin_domain=frozenset(v_o),
        dest_domain=frozenset(v_d),
        slot_window=(lo, hi),
    )
    return _mine_levelwise(
        aps,
        graph,
        table.time_domain,
        s_r=params.s_r,
        flags=flags,
        limits=limits,
        level3=level3,
        threads=threads,
        deadline=deadline,
    )


def _validate_domain(graph, table, v_o, v_d, t_r) -> None:
    if not v_o or not v_d:
        raise ConstraintError("origin/dest domains must be non-empty")
    for name, dom in (("origin", v_o), ("dest", v_d)):
        if any(not 0 <= v < graph.n for v in dom):
            raise ConstraintError(f"{name} domain contains unknown region ids")
        if not graph.is_connected_subset(dom):
            raise ConstraintError(f"{name} domain does not induce a connected subgraph")
    lo, hi = t_r
    if not 0 <= lo <= hi < table.time_domain.slot_count:
        raise ConstraintError(f"slot window [{lo}, {hi}] is not a valid contiguous range")


# ---------------------------------------------------------------------------
# Rank-based mining
# ---------------------------------------------------------------------------

def lemma1_max_gain(p: ODTPattern, dim: int) -> int:
    """Largest possible cnt a single extension in ``dim`` can add to ``p``.

    The difference triple of an extension covers one new element crossed
    with the two unchanged components, so its cnt is at most the product
    of their sizes.
    """
    t = p.triple
    if dim == DIM_ORIGIN:
        return len(t.dest) * t.slot_count
    if dim == DIM_DEST:
        return len(t.origin) * t.slot_count
    if dim == DIM_TIME:
        return len(t.origin) * len(t.dest)
    raise ValueError(f"unknown dimension {dim}")


def lemma2_prunable(p: ODTPattern, theta: Optional[int]) -> bool:
    """Whether no extension of ``p`` can strictly beat the k-th count ``theta``.

    ``theta`` is None while the frontier heap is not full, in which case
    nothing is prunable.  True means every minimal generalization of ``p``
    has cnt at most ``theta``.
    """
    if theta is None:
        return False
    best = max(lemma1_max_gain(p, dim) for dim in (DIM_ORIGIN, DIM_DEST, DIM_TIME))
    return p.cnt + best <= theta


class _HeapEntry:
    """Heap ordering: weakest entry first (lower cnt, then larger triple)."""

    __slots__ = ("cnt", "triple")

    def __init__(self, cnt: int, triple: ODTTriple):
        self.cnt = cnt
        self.triple = triple

    def __lt__(self, other: "_HeapEntry") -> bool:
        if self.cnt != other.cnt:
            return self.cnt < other.cnt
        return self.triple > other.triple


class RankedFrontier:
    """Min-heap of the k best (cnt, canonical triple) seen so far.

    The retained set is the top-k under descending cnt with ties resolved
    in favor of the canonically smaller triple, independent of offer
    order.  ``theta`` is the k-th largest cnt once the heap is full.
    """

    __slots__ = ("k", "_heap")

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self._heap: list[_HeapEntry] = []

    def __len__(self) -> int:
        return len(self._heap)

    @property
    def full(self) -> bool:
        return len(self._heap) >= self.k

    @property
    def theta(self) -> Optional[int]:
        return self._heap[0].cnt if self.full else None

    def can_ever_enter(self, cnt_upper: int) -> bool:
        """Whether a candidate with cnt at most ``cnt_upper`` could be kept.

        Equality with theta stays admissible: a tied candidate can still
        displace the current weakest entry on canonical order.
        """
        return not self.full or cnt_upper >= self._heap[0].cnt

    def offer(self, triple: ODTTriple, cnt: int) -> None:
        if not self.full:
            heapq.heappush(self._heap, _HeapEntry(cnt, triple))
            return
        worst = self._heap[0]
        if cnt > worst.cnt or (cnt == worst.cnt and triple < worst.triple):
            heapq.heapreplace(self._heap, _HeapEntry(cnt, triple))

    def items(self) -> list[tuple[ODTTriple, int]]:
        return sorted(((e.triple, e.cnt) for e in self._heap))


@dataclass
class RankStats:
    """Instrumentation for a rank-based run."""

    algo: str = "optrank"
    wall_seconds: float = 0.0
    candidates_generated: int = 0
    candidates_counted: int = 0
    parents_pruned: int = 0
    dims_skipped: int = 0
    ps_skips: int = 0
    av_hits: int = 0
    fc_skips: int = 0
    patterns_per_level: dict[int, int] = field(default_factory=dict)

    @property
    def total_patterns(self) -> int:
        return sum(self.patterns_per_level.values())


@dataclass
class RankResult:
    patterns_by_level: dict[int, list[ODTPattern]]
    stats: RankStats

    @property
    def patterns(self) -> list[ODTPattern]:
        out: list[ODTPattern] = []
        for level in sorted(self.patterns_by_level):
            out.extend(self.patterns_by_level[level])
        return out

    def level_sets(self) -> dict[int, set[tuple[ODTTriple, int]]]:
        return {
            lvl: {(p.triple, p.cnt) for p in ps}
            for lvl, ps in self.patterns_by_level.items()
        }


def mine_ranked(
    table: TripsTable,
    graph: RegionGraph,
    params: MiningParams,
    flags: OptimizationFlags = OptimizationFlags(),
    *,
    algo: str = "optrank",
    deadline: Optional[float] = None,
    atomic_set: Optional[AtomicPatternSet] = None,
) -> RankResult:
    """Per-level top-k mining up to level ``params.maxl``.

    No ratio threshold applies: every generated candidate competes on cnt
    alone.  ``algo="baserank"`` counts all candidates then selects;
    ``algo="optrank"`` orders parents by descending cnt and skips parents
    and dimensions whose maximum possible gain cannot beat the current
    k-th count.  Both produce identical per-level sets; optrank counts
    strictly fewer candidates when the bounds bite.  The ``av``/``fc``
    flags shortcut difference counting exactly as in full mining; ``ps``
    contributes a sound skip against the running k-th count (only
    meaningful for optrank, where a running frontier exists).
    """
    if params.k is None:
        raise ValueError("params.k must be set for rank-based mining")
    if algo not in ("baserank", "optrank"):
        raise ValueError(f"unknown rank algorithm {algo!r}")
    maxl = params.maxl if params.maxl is not None else 3
    aps = atomic_set if atomic_set is not None else extract_atomic_patterns(table, params.s_a)
    td = table.time_domain
    members = aps.members
    stats = RankStats(algo=algo)
    wall0 = time.perf_counter()
    cache = LevelCache() if flags.av else None
    psidx = (
        PrefixSumIndex.build(aps, graph.n, td.slot_count)
        if (flags.ps and algo == "optrank")
        else None
    )

    frontier: list[tuple[ODTTriple, int]] = sorted(
        (ODTTriple((o,), (d,), t, t), 1) for (o, d, t) in members
    )
    by_level: dict[int, list[ODTPattern]] = {}
    if frontier:
        by_level[3] = [ODTPattern(t, c) for t, c in frontier]
        stats.patterns_per_level[3] = len(frontier)

    level = 3
    while frontier and level < maxl:
        if deadline is not None and time.monotonic() > deadline:
            raise MiningTimeout(f"rank level {level + 1} exceeded the deadline")
        if algo == "baserank":
            kept = _rank_level_base(frontier, graph, td, aps, params.k, flags, cache, stats)
        else:
            kept = _rank_level_opt(frontier, graph, td, aps, params.k, flags, cache, psidx, stats)
        frontier = kept
        level += 1
        if frontier:
            by_level[level] = [ODTPattern(t, c) for t, c in frontier]
            stats.patterns_per_level[level] = len(frontier)

    stats.wall_seconds = time.perf_counter() - wall0
    return RankResult(patterns_by_level=by_level, stats=stats)


def _resolve_diff_cnt(
    parent: ODTTriple,
    dim: int,
    elem: int,
    aps: AtomicPatternSet,
    flags: OptimizationFlags,
    cache: Optional[LevelCache],
    stats: RankStats,
) -> int:
    diff = _diff(parent, dim, elem)
    if cache is not None:
        hit = cache.get(diff)
        if hit is not None:
            stats.av_hits += 1
            return hit
    if flags.fc and dim != DIM_TIME:
        if dim == DIM_ORIGIN:
            reachable = aps.dests_of.get(elem)
            if reachable is None or reachable.isdisjoint(parent.dest):
                stats.fc_skips += 1
                return 0
        else:
            reachable = aps.srcs_of.get(elem)
            if reachable is None or reachable.isdisjoint(parent.origin):
                stats.fc_skips += 1
                return 0
    cnt = _count(diff, aps.members)
    stats.candidates_counted += 1
    if cache is not None:
        cache.put(diff, cnt)
    return cnt


def _rank_level_base(
    frontier: list[tuple[ODTTriple, int]],
    graph: RegionGraph,
    td,
    aps: AtomicPatternSet,
    k: int,
    flags: OptimizationFlags,
    cache: Optional[LevelCache],
    stats: RankStats,
) -> list[tuple[ODTTriple, int]]:
    """Generate and count every candidate, then keep the top k."""
    counted: dict[ODTTriple, int] = {}
    for ptriple, pcnt in frontier:
        for dim, elem, cand in iter_extensions(ptriple, graph, td, unique=flags.in_):
            stats.candidates_generated += 1
            if cand in counted:
                continue
            dcnt = _resolve_diff_cnt(ptriple, dim, elem, aps, flags, cache, stats)
            counted[cand] = pcnt + dcnt
            if cache is not None:
                cache.put(cand, pcnt + dcnt)
    ranked = sorted(counted.items(), key=lambda kv: (-kv[1], kv[0]))
    return sorted(ranked[:k])


def _rank_level_opt(
    frontier: list[tuple[ODTTriple, int]],
    graph: RegionGraph,
    td,
    aps: AtomicPatternSet,
    k: int,
    flags: OptimizationFlags,
    cache: Optional[LevelCache],
    psidx: Optional[PrefixSumIndex],
    stats: RankStats,
) -> list[tuple[ODTTriple, int]]:
    """Descending-cnt parent order with maximum-gain pruning.

    A parent (or one of its dimensions) is skipped only when its best
    possible candidate cnt is strictly below the current k-th count;
    candidates tied with the k-th count must still be examined because the
    canonical tie-break can admit them.
    """
    heap = RankedFrontier(k)
    considered: set[ODTTriple] = set()
    order = sorted(frontier, key=lambda kv: (-kv[1], kv[0]))
    for ptriple, pcnt in order:
        pattern = ODTPattern(ptriple, pcnt)
        gains = {dim: lemma1_max_gain(pattern, dim) for dim in (DIM_ORIGIN, DIM_DEST, DIM_TIME)}
        if not heap.can_ever_enter(pcnt + max(gains.values())):
            stats.parents_pruned += 1
            continue
        skip_dims = {
            dim for dim, gain in gains.items() if not heap.can_ever_enter(pcnt + gain)
        }
        stats.dims_skipped += len(skip_dims)
        for dim, elem, cand in iter_extensions(ptriple, graph, td, unique=flags.in_):
            if dim in skip_dims:
                continue
            stats.candidates_generated += 1
            if cand in considered:
                continue
            considered.add(cand)
            if cache is not None:
                known = cache.get(cand)
                if known is not None:
                    stats.av_hits += 1
                    heap.offer(cand, known)
                    continue
            if psidx is not None:
                ub = psidx.upper_bound(_diff(ptriple, dim, elem))
                if not heap.can_ever_enter(pcnt + ub):
                    stats.ps_skips += 1
                    continue
            dcnt = _resolve_diff_cnt(ptriple, dim, elem, aps, flags, cache, stats)
            ccnt = pcnt + dcnt
            if cache is not None:
                cache.put(cand, ccnt)
            heap.offer(cand, ccnt)
    return heap.items()
