"""Domain model for origin-destination-time (ODT) flow mining.

Regions are nodes of an undirected neighborhood graph and carry dense
integer ids assigned by a depth-first traversal (see ``RegionGraph``).
The timeline is a fixed number of atomic slots.  A generalized triple
pairs a connected origin region set with a disjoint connected destination
region set and a contiguous slot range; all miners in this package reduce
to the algebra defined here (minimal generalization, difference, card).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

RegionId = int

# Dimension tags for extensions of a triple.
DIM_ORIGIN = 0
DIM_DEST = 1
DIM_TIME = 2


class TimeDomain(NamedTuple):
    """Discretized repeating timeline: ``slot_count`` atomic slots.

    ``slot_width_minutes`` is only consulted when raw HH:MM timestamps are
    ingested; pre-slotted data ignores it.
    """

    slot_count: int
    slot_width_minutes: int = 30

    def slot_of_minutes(self, minutes: int) -> int:
        return minutes // self.slot_width_minutes


class ODTTriple(NamedTuple):
    """Canonical generalized triple: sorted region id tuples plus a slot range.

    Equality and hashing use only the canonical form, so triples built from
    the same element sets in any insertion order compare equal.  Instances
    are expected to be constructed through :meth:`make` unless the caller
    guarantees sorted, disjoint components.
    """

    origin: tuple[RegionId, ...]
    dest: tuple[RegionId, ...]
    t_start: int
    t_end: int

    @classmethod
    def make(
        cls,
        origin: Iterable[RegionId],
        dest: Iterable[RegionId],
        t_start: int,
        t_end: int,
    ) -> "ODTTriple":
        o = tuple(sorted(origin))
        d = tuple(sorted(dest))
        if not o or not d:
            raise ValueError("origin and dest must be non-empty")
        if not 0 <= t_start <= t_end:
            raise ValueError(f"invalid slot range [{t_start}, {t_end}]")
        if set(o) & set(d):
            raise ValueError("origin and dest must be disjoint")
        return cls(o, d, t_start, t_end)

    @property
    def slot_count(self) -> int:
        return self.t_end - self.t_start + 1

    @property
    def card(self) -> int:
        return len(self.origin) * len(self.dest) * self.slot_count

    @property
    def level(self) -> int:
        return len(self.origin) + len(self.dest) + self.slot_count

    @property
    def is_atomic(self) -> bool:
        return self.level == 3

    def slots(self) -> range:
        return range(self.t_start, self.t_end + 1)


class ODTPattern(NamedTuple):
    """A triple together with its count of included atomic patterns."""

    triple: ODTTriple
    cnt: int

    @property
    def card(self) -> int:
        return self.triple.card

    @property
    def level(self) -> int:
        return self.triple.level

    @property
    def ratio(self) -> float:
        return self.cnt / self.triple.card


class RegionGraph:
    """Undirected region neighborhood graph with dense, DFS-assigned ids.

    Ids form a contiguous range ``[0, n)``.  Assignment order follows a
    depth-first traversal started at the vertex of smallest degree (ties by
    input order), visiting neighbors in input-appearance order; on a
    disconnected graph the traversal restarts at the smallest-degree
    unvisited vertex.  Tight id ranges along graph paths keep prefix-sum
    bounding boxes small.
    """

    __slots__ = ("labels", "adj", "_label_to_id")

    def __init__(self, labels: Sequence[str], adj: Sequence[Sequence[RegionId]]):
        if len(labels) != len(adj):
            raise ValueError("labels and adjacency lists must align")
        self.labels: tuple[str, ...] = tuple(labels)
        self.adj: tuple[tuple[RegionId, ...], ...] = tuple(
            tuple(sorted(set(nbrs))) for nbrs in adj
        )
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at node {labels[v]!r}")
                if v not in self.adj[u]:
                    raise ValueError("adjacency is not symmetric")
        self._label_to_id = {name: i for i, name in enumerate(self.labels)}
        if len(self._label_to_id) != len(self.labels):
            raise ValueError("duplicate region labels")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]]) -> "RegionGraph":
        """Build a graph from labeled edges and assign dense ids.

        Duplicate edges are merged silently; self-loops are rejected.
        """
        names: list[str] = []
        index: dict[str, int] = {}
        raw_adj: list[list[int]] = []
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop edge {a!r}")
            for name in (a, b):
                if name not in index:
                    index[name] = len(names)
                    names.append(name)
                    raw_adj.append([])
            ia, ib = index[a], index[b]
            if ib not in raw_adj[ia]:
                raw_adj[ia].append(ib)
                raw_adj[ib].append(ia)
        order = _dfs_order(raw_adj)
        new_id = [0] * len(names)
        for rank, old in enumerate(order):
            new_id[old] = rank
        labels = [names[old] for old in order]
        adj = [[] for _ in range(len(names))]
        for old, nbrs in enumerate(raw_adj):
            adj[new_id[old]] = [new_id[u] for u in nbrs]
        return cls(labels, adj)

    @property
    def n(self) -> int:
        return len(self.labels)

    def neighbors(self, v: RegionId) -> tuple[RegionId, ...]:
        return self.adj[v]

    def degree(self, v: RegionId) -> int:
        return len(self.adj[v])

    def id_of(self, label: str) -> RegionId:
        try:
            return self._label_to_id[label]
        except KeyError:
            raise KeyError(f"unknown region name {label!r}") from None

    def label_of(self, v: RegionId) -> str:
        return self.labels[v]

    def is_connected_subset(self, nodes: Iterable[RegionId]) -> bool:
        """Whether the induced subgraph on ``nodes`` is connected (BFS)."""
        pool = set(nodes)
        if not pool:
            return False
        start = next(iter(pool))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.adj[v]:
                if u in pool and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen == pool

    def component_count(self) -> int:
        seen = [False] * self.n
        count = 0
        for start in range(self.n):
            if seen[start]:
                continue
            count += 1
            stack = [start]
            seen[start] = True
            while stack:
                v = stack.pop()
                for u in self.adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
        return count

    def __repr__(self) -> str:  # pragma: no cover
        return f"RegionGraph(n={self.n})"


def _dfs_order(adj: Sequence[Sequence[int]]) -> list[int]:
    """DFS visit order: start at the smallest-degree vertex, ties by index."""
    n = len(adj)
    starts = sorted(range(n), key=lambda v: (len(adj[v]), v))
    seen = [False] * n
    order: list[int] = []
    for start in starts:
        if seen[start]:
            continue
        stack = [start]
        while stack:
            v = stack.pop()
            if seen[v]:
                continue
            seen[v] = True
            order.append(v)
            # reversed push keeps first-listed neighbor on top of the stack
            for u in reversed(adj[v]):
                if not seen[u]:
                    stack.append(u)
    return order


@dataclass(frozen=True)
class MiningParams:
    """Thresholds and optional restrictions shared by the miners.

    ``s_a`` selects the top fraction of non-zero-support atomic triples as
    atomic patterns; ``s_r`` is the minimum ratio of atomic patterns a
    generalized triple must contain.  ``bounds`` caps component sizes,
    ``constraints`` restricts the search domain, and ``k``/``maxl``
    configure rank-based mining.
    """

    s_a: float
    s_r: float = 0.5
    bounds: Optional[tuple[int, int, int]] = None
    constraints: Optional[tuple[frozenset[int], frozenset[int], tuple[int, int]]] = None
    k: Optional[int] = None
    maxl: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0.0 < self.s_a <= 1.0:
            raise ValueError("s_a must be in (0, 1]")
        if not 0.0 < self.s_r <= 1.0:
            raise ValueError("s_r must be in (0, 1]")
        if self.bounds is not None and any(b < 1 for b in self.bounds):
            raise ValueError("bounds must be positive")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")
        if self.maxl is not None and self.maxl < 3:
            raise ValueError("maxl must be >= 3")


@dataclass(frozen=True)
class GenerationLimits:
    """Restrictions applied while generating minimal generalizations.

    Size caps implement bounded mining; domain sets and the slot window
    implement constrained mining.  ``None`` means unrestricted.
    """

    max_origin: Optional[int] = None
    max_dest: Optional[int] = None
    max_slots: Optional[int] = None
    origin_domain: Optional[frozenset[int]] = None
    dest_domain: Optional[frozenset[int]] = None
    slot_window: Optional[tuple[int, int]] = None

    def admits_triple(self, t: ODTTriple) -> bool:
        if self.max_origin is not None and len(t.origin) > self.max_origin:
            return False
        if self.max_dest is not None and len(t.dest) > self.max_dest:
            return False
        if self.max_slots is not None and t.slot_count > self.max_slots:
            return False
        if self.origin_domain is not None and not self.origin_domain.issuperset(t.origin):
            return False
        if self.dest_domain is not None and not self.dest_domain.issuperset(t.dest):
            return False
        if self.slot_window is not None:
            lo, hi = self.slot_window
            if t.t_start < lo or t.t_end > hi:
                return False
        return True


def iter_extensions(
    triple: ODTTriple,
    graph: RegionGraph,
    td: TimeDomain,
    limits: Optional[GenerationLimits] = None,
    unique: bool = True,
) -> Iterator[tuple[int, int, ODTTriple]]:
    """Yield ``(dimension, new_element, candidate)`` minimal generalizations.

    With ``unique=True`` the neighbor sets of all origin (dest) members are
    collected first and the existing components subtracted in one step, so
    each candidate is produced exactly once.  With ``unique=False`` the
    per-member neighborhoods are walked directly, which can yield the same
    candidate several times; callers deduplicate.  Connectivity and
    disjointness hold by construction: only graph neighbors of a connected
    component are added.
    """
    o, d = triple.origin, triple.dest
    a, b = triple.t_start, triple.t_end
    adj = graph.adj
    lim = limits

    if lim is None or lim.max_origin is None or len(o) < lim.max_origin:
        dom = None if lim is None else lim.origin_domain
        if unique:
            grown: set[int] = set()
            for r in o:
                grown.update(adj[r])
            grown.difference_update(o)
            grown.difference_update(d)
            new_origins: Iterable[int] = sorted(grown)
        else:
            new_origins = (
                nb for r in o for nb in adj[r] if nb not in o and nb not in d
            )
        for elem in new_origins:
            if dom is not None and elem not in dom:
                continue
            yield DIM_ORIGIN, elem, ODTTriple(_insert(o, elem), d, a, b)

    if lim is None or lim.max_dest is None or len(d) < lim.max_dest:
        dom = None if lim is None else lim.dest_domain
        if unique:
            grown = set()
            for r in d:
                grown.update(adj[r])
            grown.difference_update(o)
            grown.difference_update(d)
            new_dests: Iterable[int] = sorted(grown)
        else:
            new_dests = (
                nb for r in d for nb in adj[r] if nb not in o and nb not in d
            )
        for elem in new_dests:
            if dom is not None and elem not in dom:
                continue
            yield DIM_DEST, elem, ODTTriple(o, _insert(d, elem), a, b)

    if lim is None or lim.max_slots is None or (b - a + 1) < lim.max_slots:
        lo = 0 if lim is None or lim.slot_window is None else lim.slot_window[0]
        hi = (
            td.slot_count - 1
            if lim is None or lim.slot_window is None
            else lim.slot_window[1]
        )
        if a - 1 >= lo:
            yield DIM_TIME, a - 1, ODTTriple(o, d, a - 1, b)
        if b + 1 <= hi:
            yield DIM_TIME, b + 1, ODTTriple(o, d, a, b + 1)


def _insert(sorted_tuple: tuple[int, ...], elem: int) -> tuple[int, ...]:
    # tuples stay sorted; linear scan beats bisect at these sizes
    for i, v in enumerate(sorted_tuple):
        if elem < v:
            return sorted_tuple[:i] + (elem,) + sorted_tuple[i:]
    return sorted_tuple + (elem,)


def minimal_generalizations(
    triple: ODTTriple, graph: RegionGraph, td: TimeDomain
) -> list[ODTTriple]:
    """All valid triples one atomic element larger than ``triple``.

    Candidates add one region from the origin's (dest's) neighborhood that
    is in neither component, or extend the slot range by one at either end
    within ``[0, td.slot_count)``.  Each candidate appears exactly once;
    the list is empty when no generalization exists.
    """
    return [cand for _, _, cand in iter_extensions(triple, graph, td, unique=True)]


def difference(cand: ODTTriple, p: ODTTriple) -> ODTTriple:
    """The triple covering exactly the atomic cells gained by ``cand`` over ``p``.

    ``cand`` must be a minimal generalization of ``p``: precisely one
    dimension grew, by one atomic element.  The changed dimension of the
    result holds only the new element; the other two are copied from ``p``.
    """
    o_extra = set(cand.origin) - set(p.origin)
    d_extra = set(cand.dest) - set(p.dest)
    time_changed = (cand.t_start, cand.t_end) != (p.t_start, p.t_end)
    changed = (len(o_extra) > 0) + (len(d_extra) > 0) + time_changed
    if changed != 1 or not (set(p.origin) <= set(cand.origin) and set(p.dest) <= set(cand.dest)):
        raise ValueError(f"{cand} is not a minimal generalization of {p}")
    if o_extra:
        if len(o_extra) != 1 or cand.dest != p.dest:
            raise ValueError(f"{cand} is not a minimal generalization of {p}")
        return ODTTriple((o_extra.pop(),), p.dest, p.t_start, p.t_end)
    if d_extra:
        if len(d_extra) != 1 or cand.origin != p.origin:
            raise ValueError(f"{cand} is not a minimal generalization of {p}")
        return ODTTriple(p.origin, (d_extra.pop(),), p.t_start, p.t_end)
    if cand.t_start == p.t_start - 1 and cand.t_end == p.t_end:
        slot = cand.t_start
    elif cand.t_start == p.t_start and cand.t_end == p.t_end + 1:
        slot = cand.t_end
    else:
        raise ValueError(f"{cand} is not a minimal generalization of {p}")
    return ODTTriple(p.origin, p.dest, slot, slot)


def card(triple: ODTTriple) -> int:
    """Number of atomic (o, d, t) cells inside ``triple``."""
    return triple.card


def is_valid_triple(triple: ODTTriple, graph: RegionGraph, td: TimeDomain) -> bool:
    """Full validity check: canonical form, connectivity, disjointness, range."""
    if tuple(sorted(triple.origin)) != triple.origin:
        return False
    if tuple(sorted(triple.dest)) != triple.dest:
        return False
    if not triple.origin or not triple.dest:
        return False
    if set(triple.origin) & set(triple.dest):
        return False
    if not 0 <= triple.t_start <= triple.t_end < td.slot_count:
        return False
    return graph.is_connected_subset(triple.origin) and graph.is_connected_subset(
        triple.dest
    )


def ratio_passes(cnt: int, cardinality: int, s_r: float) -> bool:
    """Single ratio comparison shared by every miner and the oracle.

    Centralized so floating-point rounding behaves identically on every
    code path that decides pattern-hood.
    """
    return cnt >= s_r * cardinality


def checked_fraction(value: float, name: str) -> float:
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise ValueError(f"{name} must be a finite number")
    if not 0.0 < value <= 1.0:
        raise ValueError(f"{name} must be in (0, 1]")
    return float(value)
