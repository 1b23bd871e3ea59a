"""Deterministic synthetic instances for tests and benchmarks.

Stands in for real trip datasets: small graph families (grids, paths,
connected random graphs) with flows drawn cell-wise at a configurable
density, either uniform or Zipf-skewed.  Generation is a pure function of
the spec, including its seed, down to the bytes written to disk.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .ingest import AggregatedTriple, TripsTable, table_from_rows
from .model import RegionGraph, TimeDomain


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for one synthetic instance.

    ``graph_kind`` is ``grid`` (args w, h), ``path`` (args n) or
    ``random_edges`` (args n, p; a random spanning tree keeps the graph
    connected, extra edges appear with probability p).
    ``flow_distribution`` is ``("uniform", lo, hi)`` or ``("zipf", s, max)``
    with cell values in [1, max] weighted v**-s.  ``self_pair_rows`` adds
    that many origin==dest rows when writing the trips file, to exercise
    the ingestion drop path; the in-memory table never contains them.
    """

    graph_kind: str
    graph_args: tuple
    slot_count: int
    triple_density: float
    flow_distribution: tuple = ("uniform", 1, 10)
    seed: int = 0
    self_pair_rows: int = 0

    def __post_init__(self) -> None:
        if self.graph_kind not in ("grid", "path", "random_edges"):
            raise ValueError(f"unknown graph kind {self.graph_kind!r}")
        if not 0.0 <= self.triple_density <= 1.0:
            raise ValueError("triple_density must be in [0, 1]")
        if self.slot_count < 1:
            raise ValueError("slot_count must be >= 1")
        kind = self.flow_distribution[0]
        if kind not in ("uniform", "zipf"):
            raise ValueError(f"unknown flow distribution {kind!r}")


def grid(w: int, h: int, slot_count: int, density: float, seed: int = 0, **kw) -> SynthSpec:
    return SynthSpec("grid", (w, h), slot_count, density, seed=seed, **kw)


def path(n: int, slot_count: int, density: float, seed: int = 0, **kw) -> SynthSpec:
    return SynthSpec("path", (n,), slot_count, density, seed=seed, **kw)


def _edge_list(spec: SynthSpec, rng: random.Random) -> list[tuple[str, str]]:
    kind = spec.graph_kind
    if kind == "grid":
        w, h = spec.graph_args
        if w < 1 or h < 1:
            raise ValueError("grid dimensions must be positive")
        name = lambda x, y: f"n{y * w + x}"
        edges = []
        for y in range(h):
            for x in range(w):
                if x + 1 < w:
                    edges.append((name(x, y), name(x + 1, y)))
                if y + 1 < h:
                    edges.append((name(x, y), name(x, y + 1)))
        return edges
    if kind == "path":
        (n,) = spec.graph_args
        if n < 2:
            raise ValueError("path needs at least 2 nodes")
        return [(f"n{i}", f"n{i + 1}") for i in range(n - 1)]
    n, p = spec.graph_args
    if n < 2:
        raise ValueError("random graph needs at least 2 nodes")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must be in [0, 1]")
    # spanning tree first so the instance loads without connectivity warnings
    order = list(range(n))
    rng.shuffle(order)
    present: set[tuple[int, int]] = set()
    edges = []
    for idx in range(1, n):
        a, b = order[rng.randrange(idx)], order[idx]
        key = (min(a, b), max(a, b))
        present.add(key)
        edges.append((f"n{a}", f"n{b}"))
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in present and rng.random() < p:
                present.add((a, b))
                edges.append((f"n{a}", f"n{b}"))
    return edges


def generate(spec: SynthSpec) -> tuple[RegionGraph, TripsTable]:
    """Materialize the instance; identical spec yields identical objects."""
    rng = random.Random(spec.seed)
    graph = RegionGraph.from_edges(_edge_list(spec, rng))
    td = TimeDomain(slot_count=spec.slot_count)
    n, m = graph.n, spec.slot_count
    total_cells = n * (n - 1) * m
    k = round(spec.triple_density * total_cells)
    chosen = rng.sample(range(total_cells), k) if k else []
    flows = _draw_flows(spec.flow_distribution, len(chosen), rng)
    block = (n - 1) * m
    rows = []
    for idx, flow in zip(chosen, flows):
        o, rest = divmod(idx, block)
        d_rank, t = divmod(rest, m)
        d = d_rank if d_rank < o else d_rank + 1
        rows.append(AggregatedTriple(o, d, t, flow))
    return graph, table_from_rows(rows, td, total_raw_trips=len(rows))


def _draw_flows(dist: tuple, k: int, rng: random.Random) -> list[int]:
    if k == 0:
        return []
    if dist[0] == "uniform":
        _, lo, hi = dist
        return [rng.randint(lo, hi) for _ in range(k)]
    _, s, vmax = dist
    population = range(1, vmax + 1)
    weights = [v ** -float(s) for v in population]
    return rng.choices(population, weights=weights, k=k)


def write_instance(spec: SynthSpec, graph_path: str, trips_path: str) -> tuple[RegionGraph, TripsTable]:
    """Write edge-list and trips CSV files that reload to the same instance."""
    rng = random.Random(spec.seed)
    edges = _edge_list(spec, rng)
    graph = RegionGraph.from_edges(edges)
    _, table = generate(spec)
    with open(graph_path, "w", encoding="utf-8") as fh:
        for a, b in edges:
            fh.write(f"{a} {b}\n")
    with open(trips_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("origin,dest,timeslot,flow\n")
        for row in table.rows:
            fh.write(
                f"{graph.label_of(row.o)},{graph.label_of(row.d)},{row.t},{row.support}\n"
            )
        label0 = graph.label_of(0)
        for _ in range(spec.self_pair_rows):
            fh.write(f"{label0},{label0},0,1\n")
    return graph, table
