"""Exact level-wise enumeration of all ODT patterns.

Mining starts from the atomic pattern set (level 3) and repeatedly forms
level-(l+1) candidates as minimal generalizations of level-l patterns.  A
candidate's count of included atomic patterns is derived incrementally:
``cand.cnt = parent.cnt + diff.cnt`` where ``diff`` is the triple holding
only the newly added element in the changed dimension.  A candidate is a
pattern when at least an ``s_r`` fraction of its atomic cells are atomic
patterns.  Because the same candidate can be generated from several
parents, each level keeps a considered-set and evaluates every canonical
triple at most once.

Four independently switchable optimizations:

* ``av``  - cache every counted triple's cnt for the whole run and consult
  the cache before recounting a difference triple.
* ``fc``  - skip counting a region-extension difference whose new region
  has no atomic pattern toward (from) the unchanged side, using the
  per-region dests/srcs maps.
* ``in_`` - compute the region extension set in one step (union of member
  neighborhoods minus both components) instead of walking per-member
  neighbor lists that regenerate duplicates.
* ``ps``  - reject a candidate outright when the prefix-sum upper bound on
  the difference, added to the parent count, cannot reach ``s_r``.

Every flag subset emits exactly the same patterns; the flags trade memory
and bookkeeping for counting work.  The engine loop works on plain
``(origin, dest, t_start, t_end)`` tuples and converts to the public
types at emission; the tuples hash and compare identically to
:class:`~odtflow.model.ODTTriple`.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import MiningTimeout
from .ingest import AtomicPatternSet, TripsTable, extract_atomic_patterns
from .model import (
    GenerationLimits,
    MiningParams,
    ODTPattern,
    ODTTriple,
    RegionGraph,
    TimeDomain,
)
from .psindex import PrefixSumIndex

# nominal per-entry allocation costs for the deterministic memory estimate
_BYTES_SET_ENTRY = 96
_BYTES_CACHE_ENTRY = 200
_BYTES_PATTERN = 184


@dataclass(frozen=True)
class OptimizationFlags:
    """Switches for the four counting/generation optimizations."""

    av: bool = False
    fc: bool = False
    in_: bool = False
    ps: bool = False

    _NAMED = {
        "baseline": (False, False, False, False),
        "av": (True, False, False, False),
        "avfc": (True, True, False, False),
        "avfcin": (True, True, True, False),
        "opt": (True, True, True, True),
    }

    @classmethod
    def from_name(cls, name: str) -> "OptimizationFlags":
        try:
            return cls(*cls._NAMED[name.lower()])
        except KeyError:
            raise ValueError(
                f"unknown configuration {name!r}; expected one of {sorted(cls._NAMED)}"
            ) from None

    @classmethod
    def named_configs(cls) -> dict[str, "OptimizationFlags"]:
        return {name: cls(*bits) for name, bits in cls._NAMED.items()}

    @classmethod
    def all_subsets(cls) -> list["OptimizationFlags"]:
        return [
            cls(av=bool(m & 1), fc=bool(m & 2), in_=bool(m & 4), ps=bool(m & 8))
            for m in range(16)
        ]

    @property
    def label(self) -> str:
        for name, bits in self._NAMED.items():
            if bits == (self.av, self.fc, self.in_, self.ps):
                return name
        parts = [
            n
            for n, on in zip(("av", "fc", "in", "ps"), (self.av, self.fc, self.in_, self.ps))
            if on
        ]
        return "+".join(parts) if parts else "baseline"


class LevelCache:
    """Map from canonical triple to its known cnt, retained for a whole run.

    Conceptually one hash map per level; since a triple's level is implied
    by its shape, storage is a single flat dict (cheaper to probe) and the
    per-level views are materialized on demand.
    """

    __slots__ = ("_known",)

    def __init__(self) -> None:
        self._known: dict[tuple, int] = {}

    def get(self, triple) -> Optional[int]:
        return self._known.get(triple)

    def put(self, triple, cnt: int) -> None:
        self._known[triple] = cnt

    @property
    def entries(self) -> int:
        return len(self._known)

    def levels(self) -> dict[int, dict[ODTTriple, int]]:
        out: dict[int, dict[ODTTriple, int]] = {}
        for raw, cnt in self._known.items():
            t = ODTTriple(*raw)
            out.setdefault(t.level, {})[t] = cnt
        return out


@dataclass
class MiningStats:
    """Counters and wall-time attribution for one mining run."""

    flags_label: str = "baseline"
    wall_seconds: float = 0.0
    generation_seconds: float = 0.0
    counting_seconds: float = 0.0
    candidates_generated: int = 0
    candidates_unique: int = 0
    av_hits: int = 0
    fc_skips: int = 0
    ps_prunes: int = 0
    count_calls: int = 0
    patterns_per_level: dict[int, int] = field(default_factory=dict)
    peak_memory_estimate: int = 0

    @property
    def total_patterns(self) -> int:
        return sum(self.patterns_per_level.values())


@dataclass
class MiningResult:
    """Patterns grouped by level plus the run's instrumentation."""

    patterns_by_level: dict[int, list[ODTPattern]]
    stats: MiningStats

    @property
    def patterns(self) -> list[ODTPattern]:
        out: list[ODTPattern] = []
        for level in sorted(self.patterns_by_level):
            out.extend(self.patterns_by_level[level])
        return out

    def as_dict(self) -> dict[ODTTriple, int]:
        return {
            p.triple: p.cnt for level in self.patterns_by_level.values() for p in level
        }

    @property
    def max_level(self) -> int:
        return max(self.patterns_by_level, default=0)


def count_exact(triple: ODTTriple, aps: AtomicPatternSet) -> int:
    """Number of atomic cells of ``triple`` that are atomic patterns.

    Full enumeration of origin x dest x slots with membership probes; no
    early exit because exact counts feed the incremental propagation.
    """
    return _count(triple, aps.members)


def _count(triple, members) -> int:
    origin, dest, t0, t1 = triple
    c = 0
    for o in origin:
        for d in dest:
            for t in range(t0, t1 + 1):
                if (o, d, t) in members:
                    c += 1
    return c


def _diff(parent, dim: int, elem: int):
    origin, dest, a, b = parent
    if dim == 0:
        return ((elem,), dest, a, b)
    if dim == 1:
        return (origin, (elem,), a, b)
    return (origin, dest, elem, elem)


def _insert(sorted_tuple: tuple, elem: int) -> tuple:
    for i, v in enumerate(sorted_tuple):
        if elem < v:
            return sorted_tuple[:i] + (elem,) + sorted_tuple[i:]
    return sorted_tuple + (elem,)


def mine_all(
    table: TripsTable,
    graph: RegionGraph,
    params: MiningParams,
    flags: OptimizationFlags = OptimizationFlags(),
    *,
    threads: int = 1,
    deadline: Optional[float] = None,
    atomic_set: Optional[AtomicPatternSet] = None,
) -> MiningResult:
    """Enumerate every ODT pattern of the instance, grouped by level.

    Output is identical for all flag configurations and is sorted by
    (level, canonical triple).  ``deadline`` is an absolute
    ``time.monotonic()`` value; exceeding it raises
    :class:`~odtflow.errors.MiningTimeout`.
    """
    if params.bounds is not None or params.constraints is not None:
        raise ValueError("bounds/constraints are handled by the variants module")
    aps = (
        atomic_set
        if atomic_set is not None
        else extract_atomic_patterns(table, params.s_a)
    )
    return _mine_levelwise(
        aps,
        graph,
        table.time_domain,
        s_r=params.s_r,
        flags=flags,
        threads=threads,
        deadline=deadline,
    )


def _mine_levelwise(
    aps: AtomicPatternSet,
    graph: RegionGraph,
    td: TimeDomain,
    *,
    s_r: float,
    flags: OptimizationFlags,
    limits: Optional[GenerationLimits] = None,
    level3: Optional[Iterable[tuple[int, int, int]]] = None,
    threads: int = 1,
    deadline: Optional[float] = None,
) -> MiningResult:
    """Shared engine behind mine_all / mine_bounded / mine_constrained.

    The candidate loop inlines the minimal-generalization computation of
    :func:`~odtflow.model.iter_extensions` (both the one-step set form and
    the naive per-member walk) for speed; the equivalence of the two
    generators and of this inlining is pinned by tests.
    """
    stats = MiningStats(flags_label=flags.label)
    wall0 = time.perf_counter()
    members = aps.members
    dests_of = aps.dests_of
    srcs_of = aps.srcs_of
    psidx = PrefixSumIndex.build(aps, graph.n, td.slot_count) if flags.ps else None
    ps_bound = psidx.upper_bound if psidx is not None else None
    cache = LevelCache() if flags.av else None
    known = cache._known if cache is not None else None
    adj = graph.adj
    use_in = flags.in_
    use_fc = flags.fc
    perf = time.perf_counter

    lim = limits
    max_o = lim.max_origin if lim is not None else None
    max_d = lim.max_dest if lim is not None else None
    max_t = lim.max_slots if lim is not None else None
    o_dom = lim.origin_domain if lim is not None else None
    d_dom = lim.dest_domain if lim is not None else None
    slot_lo = 0
    slot_hi = td.slot_count - 1
    if lim is not None and lim.slot_window is not None:
        slot_lo, slot_hi = lim.slot_window

    seeds = sorted(members) if level3 is None else sorted(level3)
    frontier: list[tuple[tuple, int]] = [(((o,), (d,), t, t), 1) for (o, d, t) in seeds]
    by_level: dict[int, list[ODTPattern]] = {}
    if frontier:
        by_level[3] = [ODTPattern(ODTTriple(*t), c) for t, c in frontier]
        stats.patterns_per_level[3] = len(frontier)

    fixed_bytes = _BYTES_SET_ENTRY * (
        len(members)
        + sum(len(v) for v in dests_of.values())
        + sum(len(v) for v in srcs_of.values())
    ) + (psidx.nbytes if psidx is not None else 0)
    emitted = len(frontier)
    level = 3
    parents_seen = 0

    while frontier:
        level_t0 = perf()
        counting = 0.0
        considered: set = set()
        mark = considered.add
        next_items: dict[tuple, int] = {}
        deferred: list[tuple[tuple, tuple, int, int]] = []
        generated = unique = av_hits = fc_skips = ps_prunes = count_calls = 0

        for ptriple, pcnt in frontier:
            parents_seen += 1
            if deadline is not None and parents_seen % 64 == 0 and time.monotonic() > deadline:
                raise MiningTimeout(f"level {level + 1} exceeded the deadline")
            origin, dest, a, b = ptriple
            len_o = len(origin)
            len_d = len(dest)
            nslots = b - a + 1
            pending: list[tuple[tuple, tuple, int, int]] = []

            # origin extensions
            if max_o is None or len_o < max_o:
                if use_in:
                    grown: set = set()
                    for r in origin:
                        grown.update(adj[r])
                    grown.difference_update(origin)
                    grown.difference_update(dest)
                    elems: Iterable[int] = grown
                else:
                    elems = [
                        nb
                        for r in origin
                        for nb in adj[r]
                        if nb not in origin and nb not in dest
                    ]
                ccard = (len_o + 1) * len_d * nslots
                for e in elems:
                    if o_dom is not None and e not in o_dom:
                        continue
                    generated += 1
                    cand = (_insert(origin, e), dest, a, b)
                    before = len(considered)
                    mark(cand)
                    if len(considered) == before:
                        continue
                    pending.append((cand, ((e,), dest, a, b), ccard, 0))

            # dest extensions
            if max_d is None or len_d < max_d:
                if use_in:
                    grown = set()
                    for r in dest:
                        grown.update(adj[r])
                    grown.difference_update(origin)
                    grown.difference_update(dest)
                    elems = grown
                else:
                    elems = [
                        nb
                        for r in dest
                        for nb in adj[r]
                        if nb not in origin and nb not in dest
                    ]
                ccard = len_o * (len_d + 1) * nslots
                for e in elems:
                    if d_dom is not None and e not in d_dom:
                        continue
                    generated += 1
                    cand = (origin, _insert(dest, e), a, b)
                    before = len(considered)
                    mark(cand)
                    if len(considered) == before:
                        continue
                    pending.append((cand, (origin, (e,), a, b), ccard, 1))

            # time extensions
            if max_t is None or nslots < max_t:
                ccard = len_o * len_d * (nslots + 1)
                if a - 1 >= slot_lo:
                    generated += 1
                    cand = (origin, dest, a - 1, b)
                    before = len(considered)
                    mark(cand)
                    if len(considered) != before:
                        pending.append((cand, (origin, dest, a - 1, a - 1), ccard, 2))
                if b + 1 <= slot_hi:
                    generated += 1
                    cand = (origin, dest, a, b + 1)
                    before = len(considered)
                    mark(cand)
                    if len(considered) != before:
                        pending.append((cand, (origin, dest, b + 1, b + 1), ccard, 2))

            unique += len(pending)
            for cand, diff, ccard, dim in pending:
                dcnt = None
                if known is not None:
                    dcnt = known.get(diff)
                    if dcnt is not None:
                        av_hits += 1
                if dcnt is None and use_fc and dim != 2:
                    if dim == 0:
                        reachable = dests_of.get(diff[0][0])
                        if reachable is None or reachable.isdisjoint(dest):
                            dcnt = 0
                            fc_skips += 1
                    else:
                        reachable = srcs_of.get(diff[1][0])
                        if reachable is None or reachable.isdisjoint(origin):
                            dcnt = 0
                            fc_skips += 1
                if dcnt is None and ps_bound is not None:
                    # same comparison as model.ratio_passes, negated
                    if pcnt + ps_bound(diff) < s_r * ccard:
                        ps_prunes += 1
                        continue
                if dcnt is None:
                    if threads > 1:
                        deferred.append((cand, diff, pcnt, ccard))
                        continue
                    c0 = perf()
                    dcnt = _count(diff, members)
                    counting += perf() - c0
                    count_calls += 1
                    if known is not None:
                        known[diff] = dcnt
                ccnt = pcnt + dcnt
                if known is not None:
                    known[cand] = ccnt
                if ccnt >= s_r * ccard:
                    next_items[cand] = ccnt

        stats.candidates_generated += generated
        stats.candidates_unique += unique
        stats.av_hits += av_hits
        stats.fc_skips += fc_skips
        stats.ps_prunes += ps_prunes
        stats.count_calls += count_calls

        if deferred:
            counting += _count_deferred(
                deferred, members, cache, next_items, s_r, stats, threads
            )

        frontier = sorted(next_items.items())
        level += 1
        if frontier:
            by_level[level] = [ODTPattern(ODTTriple(*t), c) for t, c in frontier]
            stats.patterns_per_level[level] = len(frontier)
            emitted += len(frontier)

        level_elapsed = perf() - level_t0
        stats.counting_seconds += counting
        stats.generation_seconds += level_elapsed - counting
        dynamic = _BYTES_CACHE_ENTRY * (
            cache.entries if cache is not None else 0
        ) + _BYTES_PATTERN * (len(considered) + len(next_items) + emitted)
        stats.peak_memory_estimate = max(
            stats.peak_memory_estimate, fixed_bytes + dynamic
        )

    stats.wall_seconds = time.perf_counter() - wall0
    if stats.peak_memory_estimate == 0:
        stats.peak_memory_estimate = fixed_bytes
    return MiningResult(patterns_by_level=by_level, stats=stats)


def _count_deferred(
    deferred: list[tuple[tuple, tuple, int, int]],
    members: frozenset,
    cache: Optional[LevelCache],
    next_items: dict[tuple, int],
    s_r: float,
    stats: MiningStats,
    threads: int,
) -> float:
    """Count deferred differences on a thread pool and merge in order.

    Unique differences are counted once when the cache is active, matching
    the single-threaded cache semantics; emitted patterns are identical to
    the serial path because counts are intrinsic to the triple.
    """
    t0 = time.perf_counter()
    if cache is not None:
        unique = list(dict.fromkeys(d for _, d, _, _ in deferred))
    else:
        unique = [d for _, d, _, _ in deferred]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        counts = list(pool.map(lambda t: _count(t, members), unique, chunksize=256))
    stats.count_calls += len(unique)
    got = dict(zip(unique, counts))
    for i, (cand, diff, pcnt, ccard) in enumerate(deferred):
        dcnt = got[diff] if cache is not None else counts[i]
        if cache is not None:
            cache.put(diff, dcnt)
        ccnt = pcnt + dcnt
        if cache is not None:
            cache.put(cand, ccnt)
        if ccnt >= s_r * ccard:
            next_items[cand] = ccnt
    return time.perf_counter() - t0


def cost_breakdown(result: MiningResult) -> dict:
    """Wall-time and counter report for an instrumented run.

    Generation and counting buckets partition the mining loop's wall time;
    the memory figure is a deterministic allocation-count estimate, not OS
    RSS.
    """
    s = result.stats
    return {
        "flags": s.flags_label,
        "candidate_generation_time": s.generation_seconds,
        "support_counting_time": s.counting_seconds,
        "candidates_generated": s.candidates_generated,
        "candidates_unique": s.candidates_unique,
        "candidates_pruned_by": {"AV": s.av_hits, "FC": s.fc_skips, "PS": s.ps_prunes},
        "count_calls": s.count_calls,
        "patterns_per_level": dict(s.patterns_per_level),
        "total_patterns": s.total_patterns,
        "peak_memory_estimate": s.peak_memory_estimate,
        "wall_seconds": s.wall_seconds,
    }
