"""Parsing and aggregation of region graphs and trip records.

File formats:

* Graph: UTF-8 text, one edge per line as two whitespace-separated region
  names; ``#`` starts a comment line.
* Trips: CSV with header ``origin,dest,timeslot,flow`` or
  ``origin,dest,time,flow`` (``time`` is HH:MM and is mapped to a slot by
  integer division of minutes-since-midnight by the slot width).  The
  ``flow`` column is optional and defaults to 1 per row.  An optional
  trailing ``period`` column supports a single label filter at load time.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import GraphFormatError, TripsFormatError
from .model import RegionGraph, RegionId, TimeDomain, checked_fraction

logger = logging.getLogger("odtflow.ingest")


class AggregatedTriple(NamedTuple):
    """One aggregated (origin, dest, slot) cell with its summed flow."""

    o: RegionId
    d: RegionId
    t: int
    support: int


@dataclass
class TripsTable:
    """Aggregated trips: one row per distinct (o, d, t), supports summed.

    ``total_raw_trips`` counts input rows before merging; rows with equal
    origin and destination are dropped at load time and tallied in
    ``dropped_self_rows`` / ``dropped_self_flow``.
    """

    rows: list[AggregatedTriple]
    time_domain: TimeDomain
    total_raw_trips: int
    dropped_self_rows: int = 0
    dropped_self_flow: int = 0

    @property
    def support_sum(self) -> int:
        return sum(r.support for r in self.rows)

    def nonzero_rows(self) -> list[AggregatedTriple]:
        return [r for r in self.rows if r.support > 0]


@dataclass
class AtomicPatternSet:
    """The top-``s_a`` fraction of atomic triples by support.

    ``members`` is the ground truth every miner counts against.
    ``dests_of[r]`` holds the regions r' with some member (r, r', t);
    ``srcs_of[r]`` the regions r' with some member (r', r, t).  These two
    maps back the fast zero-support check.
    """

    members: frozenset[tuple[int, int, int]]
    threshold_support: int
    dests_of: dict[int, frozenset[int]] = field(default_factory=dict)
    srcs_of: dict[int, frozenset[int]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.members)


def load_graph(path: str) -> RegionGraph:
    """Parse an edge-list file and return the finalized region graph.

    Duplicate edges and self-loops are dropped with a warning; a
    disconnected graph is allowed but warned about.  Malformed lines raise
    :class:`GraphFormatError` with the line number.
    """
    edges: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    duplicates = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) != 2:
                raise GraphFormatError(
                    f"{path}:{lineno}: expected two region names, got {len(parts)} tokens"
                )
            a, b = parts
            if a == b:
                logger.warning("%s:%d: self-loop %r ignored", path, lineno, a)
                continue
            key = (a, b) if a <= b else (b, a)
            if key in seen:
                duplicates += 1
                logger.warning("%s:%d: duplicate edge %s %s", path, lineno, a, b)
                continue
            seen.add(key)
            edges.append((a, b))
    if not edges:
        raise GraphFormatError(f"{path}: no edges found")
    graph = RegionGraph.from_edges(edges)
    if duplicates:
        logger.warning("%s: %d duplicate edges ignored", path, duplicates)
    if graph.component_count() > 1:
        logger.warning(
            "%s: graph is disconnected (%d components)", path, graph.component_count()
        )
    return graph


def _parse_clock(text: str, lineno: int, path: str) -> int:
    parts = text.strip().split(":")
    if len(parts) != 2:
        raise TripsFormatError(f"{path}:{lineno}: malformed time {text!r}")
    try:
        hh, mm = int(parts[0]), int(parts[1])
    except ValueError:
        raise TripsFormatError(f"{path}:{lineno}: malformed time {text!r}") from None
    if hh < 0 or not 0 <= mm < 60:
        raise TripsFormatError(f"{path}:{lineno}: malformed time {text!r}")
    return hh * 60 + mm


def load_trips(
    path: str,
    graph: RegionGraph,
    td: TimeDomain,
    period: Optional[str] = None,
) -> TripsTable:
    """Load and aggregate a trips CSV against a loaded graph.

    Unknown region names and malformed times/slots/flows raise
    :class:`TripsFormatError`.  Rows with origin equal to destination are
    dropped and counted.  When ``period`` is given and the CSV carries a
    ``period`` column, only matching rows are kept.
    """
    counts: dict[tuple[int, int, int], int] = {}
    total = 0
    dropped_rows = 0
    dropped_flow = 0
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TripsFormatError(f"{path}: empty file") from None
        cols = [h.strip().lower() for h in header]
        if cols[:2] != ["origin", "dest"]:
            raise TripsFormatError(f"{path}:1: header must start with origin,dest")
        if len(cols) < 3 or cols[2] not in ("timeslot", "time"):
            raise TripsFormatError(
                f"{path}:1: third column must be 'timeslot' or 'time'"
            )
        clock = cols[2] == "time"
        has_flow = len(cols) > 3 and cols[3] == "flow"
        period_col = cols.index("period") if "period" in cols else None

        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if period is not None and period_col is not None:
                if row[period_col].strip() != period:
                    continue
            o_name, d_name = row[0].strip(), row[1].strip()
            try:
                o = graph.id_of(o_name)
                d = graph.id_of(d_name)
            except KeyError as exc:
                raise TripsFormatError(f"{path}:{lineno}: {exc.args[0]}") from None
            if clock:
                minutes = _parse_clock(row[2], lineno, path)
                slot = td.slot_of_minutes(minutes)
            else:
                try:
                    slot = int(row[2])
                except ValueError:
                    raise TripsFormatError(
                        f"{path}:{lineno}: malformed timeslot {row[2]!r}"
                    ) from None
            if not 0 <= slot < td.slot_count:
                raise TripsFormatError(
                    f"{path}:{lineno}: timeslot {slot} outside [0, {td.slot_count})"
                )
            if has_flow:
                try:
                    flow = int(row[3])
                except (ValueError, IndexError):
                    raise TripsFormatError(
                        f"{path}:{lineno}: malformed flow {row[3:4]!r}"
                    ) from None
                if flow < 0:
                    raise TripsFormatError(f"{path}:{lineno}: negative flow {flow}")
            else:
                flow = 1
            total += 1
            if o == d:
                dropped_rows += 1
                dropped_flow += flow
                continue
            key = (o, d, slot)
            counts[key] = counts.get(key, 0) + flow
    if dropped_rows:
        logger.warning(
            "%s: dropped %d rows with origin == dest (flow %d)",
            path,
            dropped_rows,
            dropped_flow,
        )
    rows = [AggregatedTriple(o, d, t, s) for (o, d, t), s in sorted(counts.items())]
    return TripsTable(
        rows=rows,
        time_domain=td,
        total_raw_trips=total,
        dropped_self_rows=dropped_rows,
        dropped_self_flow=dropped_flow,
    )


def table_from_rows(
    rows: list[AggregatedTriple], td: TimeDomain, total_raw_trips: Optional[int] = None
) -> TripsTable:
    """Assemble a table from pre-aggregated rows (merging duplicates)."""
    counts: dict[tuple[int, int, int], int] = {}
    for r in rows:
        if r.o == r.d:
            raise ValueError("aggregated rows must have origin != dest")
        key = (r.o, r.d, r.t)
        counts[key] = counts.get(key, 0) + r.support
    merged = [AggregatedTriple(o, d, t, s) for (o, d, t), s in sorted(counts.items())]
    return TripsTable(
        rows=merged,
        time_domain=td,
        total_raw_trips=len(rows) if total_raw_trips is None else total_raw_trips,
    )


def extract_atomic_patterns(table: TripsTable, s_a: float) -> AtomicPatternSet:
    """Select the top-``s_a`` fraction of non-zero-support triples.

    The threshold is the support of the ``ceil(s_a * n)``-th triple in
    decreasing support order over the ``n`` non-zero rows, and every triple
    with support at or above the threshold is included, so ties at the
    cutoff may push membership slightly past the exact fraction.
    """
    checked_fraction(s_a, "s_a")
    if not table.rows:
        raise ValueError("empty trips table")
    nonzero = table.nonzero_rows()
    if not nonzero:
        return AtomicPatternSet(members=frozenset(), threshold_support=0)
    supports = sorted((r.support for r in nonzero), reverse=True)
    rank = math.ceil(s_a * len(nonzero))
    threshold = supports[rank - 1]
    members = frozenset(
        (r.o, r.d, r.t) for r in nonzero if r.support >= threshold
    )
    dests: dict[int, set[int]] = {}
    srcs: dict[int, set[int]] = {}
    for o, d, _t in members:
        dests.setdefault(o, set()).add(d)
        srcs.setdefault(d, set()).add(o)
    return AtomicPatternSet(
        members=members,
        threshold_support=threshold,
        dests_of={r: frozenset(v) for r, v in dests.items()},
        srcs_of={r: frozenset(v) for r, v in srcs.items()},
    )
