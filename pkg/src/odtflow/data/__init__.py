"""Bundled demo instance: a four-district ring with a morning flow peak.

Hand-built miniature used by the tests and the README walkthrough: trips
B->D at 9:20 and 9:29 merge into one slot-18 cell with flow 3 under
30-minute slots, and mining at s_a=0.5, s_r=0.6 yields a two-origin
pattern ({A,B} -> {D} at slot 18) on top of the three atomic patterns.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..ingest import TripsTable, load_graph, load_trips
from ..model import RegionGraph, TimeDomain

DEMO_TIME_DOMAIN = TimeDomain(slot_count=48, slot_width_minutes=30)


def demo_paths() -> tuple[Path, Path]:
    """Filesystem paths of the demo graph and trips files."""
    root = resources.files(__name__)
    return Path(str(root / "demo_graph.txt")), Path(str(root / "demo_trips.csv"))


def demo_instance() -> tuple[RegionGraph, TripsTable]:
    graph_path, trips_path = demo_paths()
    graph = load_graph(str(graph_path))
    table = load_trips(str(trips_path), graph, DEMO_TIME_DOMAIN)
    return graph, table
