"""Randomized approximate mining of fixed-size patterns.

Instead of level-wise growth, both miners draw candidate components from
pools: per graph node one random connected region set of the requested
origin size and one of the destination size (grown by a FIFO BFS whose
neighbor insertion order is shuffled), plus every contiguous slot window
of the requested length.  The uniform miner samples pool combinations and
keeps those whose atomic-pattern ratio reaches ``s_r``; the weighted
variant scores every disjoint combination by the product of component
participation weights, verifies only the highest-scoring ``M``, and so
spends its counting budget where patterns are likely.

Approximation affects recall only: every emitted pattern is verified by
direct counting, so there are no false positives.  All randomness flows
through one caller-supplied generator, making results reproducible
bit-for-bit for a fixed seed regardless of thread count.
"""

from __future__ import annotations

import random
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import PoolExhausted
from .exact import _count
from .ingest import AtomicPatternSet, TripsTable, extract_atomic_patterns
from .model import (
    MiningParams,
    ODTPattern,
    ODTTriple,
    RegionGraph,
    RegionId,
    TimeDomain,
    ratio_passes,
)
from .variants import RankedFrontier


@dataclass
class CandidatePools:
    """Component pools: one O/D set attempt per seed node, all slot windows.

    Region sets are connected by construction (BFS growth); nodes whose
    component is smaller than the requested size contribute nothing.
    """

    o_sets: list[tuple[RegionId, ...]]
    d_sets: list[tuple[RegionId, ...]]
    t_windows: list[tuple[int, int]]


@dataclass
class NodeWeights:
    """Atomic-pattern participation counts per node and per slot.

    ``w_o[v]`` counts atomic patterns with origin v, ``w_d[v]`` with
    destination v, ``w_t[t]`` in slot t; each family sums to the number of
    atomic patterns.
    """

    w_o: list[int]
    w_d: list[int]
    w_t: list[int]

    @classmethod
    def from_atomic(cls, aps: AtomicPatternSet, n_regions: int, n_slots: int) -> "NodeWeights":
        w_o = [0] * n_regions
        w_d = [0] * n_regions
        w_t = [0] * n_slots
        for o, d, t in aps.members:
            w_o[o] += 1
            w_d[d] += 1
            w_t[t] += 1
        return cls(w_o, w_d, w_t)


def random_bfs_candidate(
    graph: RegionGraph, seed: RegionId, size: int, rng: random.Random
) -> Optional[tuple[RegionId, ...]]:
    """Grow a random connected set of exactly ``size`` nodes around ``seed``.

    FIFO BFS with neighbors enqueued in shuffled order, so the result is a
    uniform-ish random BFS subtree rooted at the seed.  Returns None when
    the seed's component has fewer than ``size`` nodes.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    chosen = {seed}
    if size > 1:
        first = list(graph.adj[seed])
        rng.shuffle(first)
        queue = deque(first)
        while queue and len(chosen) < size:
            u = queue.popleft()
            if u in chosen:
                continue
            chosen.add(u)
            nbrs = list(graph.adj[u])
            rng.shuffle(nbrs)
            queue.extend(nbrs)
        if len(chosen) < size:
            return None
    return tuple(sorted(chosen))


def build_pools(
    graph: RegionGraph,
    td: TimeDomain,
    s_o: int,
    s_d: int,
    s_t: int,
    rng: random.Random,
) -> CandidatePools:
    """One O- and one D-candidate attempt per node, plus all slot windows."""
    if min(s_o, s_d, s_t) < 1:
        raise ValueError("component sizes must be >= 1")
    if s_t > td.slot_count:
        raise ValueError(f"s_t={s_t} exceeds the {td.slot_count}-slot timeline")
    o_sets: list[tuple[RegionId, ...]] = []
    d_sets: list[tuple[RegionId, ...]] = []
    for v in range(graph.n):
        cand = random_bfs_candidate(graph, v, s_o, rng)
        if cand is not None:
            o_sets.append(cand)
        cand = random_bfs_candidate(graph, v, s_d, rng)
        if cand is not None:
            d_sets.append(cand)
    windows = [(i, i + s_t - 1) for i in range(td.slot_count - s_t + 1)]
    return CandidatePools(o_sets=o_sets, d_sets=d_sets, t_windows=windows)


@dataclass
class ApproxStats:
    pool_seconds: float = 0.0
    draw_seconds: float = 0.0
    verify_seconds: float = 0.0
    wall_seconds: float = 0.0
    samples: int = 0
    rejections: int = 0
    emitted_draws: int = 0


@dataclass
class ApproxResult:
    """Distinct verified patterns plus per-pattern sample hit counts."""

    patterns: list[ODTPattern]
    hits: dict[ODTTriple, int] = field(default_factory=dict)
    stats: ApproxStats = field(default_factory=ApproxStats)


def mine_approx(
    table: TripsTable,
    graph: RegionGraph,
    params: MiningParams,
    s_o: int,
    s_d: int,
    s_t: int,
    samples: int,
    rng: random.Random,
    *,
    threads: int = 1,
    atomic_set: Optional[AtomicPatternSet] = None,
    pools: Optional[CandidatePools] = None,
) -> ApproxResult:
    """Uniform generate-and-test over the candidate pools.

    Draws ``samples`` disjoint (O, D, T) combinations, redrawing on
    origin/dest overlap; more than ``100 * samples`` consecutive
    rejections aborts with :class:`~odtflow.errors.PoolExhausted` (a pool
    pair with no disjoint combination would otherwise loop forever).
    Sampled duplicates are emitted once, with hit counts reported.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    stats = ApproxStats()
    wall0 = time.perf_counter()
    aps = atomic_set if atomic_set is not None else extract_atomic_patterns(table, params.s_a)

    t0 = time.perf_counter()
    if pools is None:
        pools = build_pools(graph, table.time_domain, s_o, s_d, s_t, rng)
    stats.pool_seconds = time.perf_counter() - t0
    if not pools.o_sets or not pools.d_sets or not pools.t_windows:
        raise PoolExhausted("a candidate pool is empty at the requested sizes")

    o_frozen = [frozenset(s) for s in pools.o_sets]
    d_frozen = [frozenset(s) for s in pools.d_sets]
    n_o, n_d, n_t = len(pools.o_sets), len(pools.d_sets), len(pools.t_windows)
    cap = 100 * samples

    t0 = time.perf_counter()
    draws: list[tuple[int, int, int]] = []
    consecutive = 0
    while len(draws) < samples:
        i = rng.randrange(n_o)
        j = rng.randrange(n_d)
        w = rng.randrange(n_t)
        if o_frozen[i] & d_frozen[j]:
            consecutive += 1
            stats.rejections += 1
            if consecutive >= cap:
                raise PoolExhausted(
                    f"{cap} consecutive overlapping draws; pools admit no disjoint pair"
                )
            continue
        consecutive = 0
        draws.append((i, j, w))
    stats.draw_seconds = time.perf_counter() - t0
    stats.samples = samples

    t0 = time.perf_counter()
    members = aps.members
    s_r = params.s_r

    def verify(draw: tuple[int, int, int]) -> Optional[tuple[ODTTriple, int]]:
        i, j, w = draw
        a, b = pools.t_windows[w]
        triple = ODTTriple(pools.o_sets[i], pools.d_sets[j], a, b)
        cnt = _count(triple, members)
        return (triple, cnt) if ratio_passes(cnt, triple.card, s_r) else None

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(verify, draws, chunksize=512))
    else:
        outcomes = [verify(d) for d in draws]
    stats.verify_seconds = time.perf_counter() - t0

    hits: dict[ODTTriple, int] = {}
    cnt_of: dict[ODTTriple, int] = {}
    for outcome in outcomes:
        if outcome is None:
            continue
        stats.emitted_draws += 1
        triple, cnt = outcome
        hits[triple] = hits.get(triple, 0) + 1
        cnt_of[triple] = cnt
    patterns = [ODTPattern(t, cnt_of[t]) for t in sorted(cnt_of)]
    stats.wall_seconds = time.perf_counter() - wall0
    return ApproxResult(patterns=patterns, hits=hits, stats=stats)


@dataclass
class WeightedStats:
    pool_seconds: float = 0.0
    enumerate_seconds: float = 0.0
    verify_seconds: float = 0.0
    wall_seconds: float = 0.0
    combos_total: int = 0
    combos_disjoint: int = 0
    verified: int = 0


@dataclass
class WeightedResult:
    """Patterns among the top-M combinations by product weight."""

    patterns: list[ODTPattern]
    verified: list[tuple[ODTTriple, int]]
    stats: WeightedStats = field(default_factory=WeightedStats)


def mine_weighted(
    table: TripsTable,
    graph: RegionGraph,
    params: MiningParams,
    s_o: int,
    s_d: int,
    s_t: int,
    budget: int,
    rng: random.Random,
    *,
    threads: int = 1,
    atomic_set: Optional[AtomicPatternSet] = None,
    pools: Optional[CandidatePools] = None,
) -> WeightedResult:
    """Verify only the ``budget`` most promising pool combinations.

    Component weights are atomic-pattern participation sums; a
    combination's weight is the product w_O(O) * w_D(D) * w_T(T).  All
    disjoint combinations of distinct pool sets are enumerated into a
    bounded min-heap (ties on weight resolved by canonical triple order),
    then exactly the surviving top ``budget`` are counted and filtered by
    ``s_r``.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    stats = WeightedStats()
    wall0 = time.perf_counter()
    aps = atomic_set if atomic_set is not None else extract_atomic_patterns(table, params.s_a)
    td = table.time_domain
    weights = NodeWeights.from_atomic(aps, graph.n, td.slot_count)

    t0 = time.perf_counter()
    if pools is None:
        pools = build_pools(graph, td, s_o, s_d, s_t, rng)
    stats.pool_seconds = time.perf_counter() - t0

    # distinct sets only: several seeds can grow the same set, and a
    # duplicate combination must not occupy two heap slots
    o_sets = sorted(set(pools.o_sets))
    d_sets = sorted(set(pools.d_sets))
    windows = pools.t_windows

    t0 = time.perf_counter()
    slot_pref = [0]
    for w in weights.w_t:
        slot_pref.append(slot_pref[-1] + w)
    window_weights = [(a, b, slot_pref[b + 1] - slot_pref[a]) for a, b in windows]
    o_weighted = [(s, frozenset(s), sum(weights.w_o[v] for v in s)) for s in o_sets]
    d_weighted = [(s, frozenset(s), sum(weights.w_d[v] for v in s)) for s in d_sets]

    frontier = RankedFrontier(budget)
    for o_set, o_fs, w_o in o_weighted:
        for d_set, d_fs, w_d in d_weighted:
            stats.combos_total += len(window_weights)
            if o_fs & d_fs:
                continue
            w_od = w_o * w_d
            for a, b, w_t in window_weights:
                stats.combos_disjoint += 1
                frontier.offer(ODTTriple(o_set, d_set, a, b), w_od * w_t)
    stats.enumerate_seconds = time.perf_counter() - t0

    verified_triples = [t for t, _w in frontier.items()]
    stats.verified = len(verified_triples)

    t0 = time.perf_counter()
    members = aps.members
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(lambda t: _count(t, members), verified_triples, chunksize=256))
    else:
        counts = [_count(t, members) for t in verified_triples]
    stats.verify_seconds = time.perf_counter() - t0

    verified = list(zip(verified_triples, counts))
    patterns = [
        ODTPattern(t, c) for t, c in verified if ratio_passes(c, t.card, params.s_r)
    ]
    stats.wall_seconds = time.perf_counter() - wall0
    return WeightedResult(patterns=patterns, verified=verified, stats=stats)
