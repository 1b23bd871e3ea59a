"""3D prefix-sum index over the atomic-pattern 0/1 cube.

Treat the atomic pattern set as a cube ``A[o][d][t]`` of 0/1 cells.  The
index stores the cumulative array ``R`` of shape (N+1) x (N+1) x (M+1)
with ``R[i][j][k]`` equal to the sum of ``A`` over all cells with indices
below (i, j, k), zero whenever any index is zero.  Any axis-aligned box
count then costs eight lookups via inclusion-exclusion, which yields a
constant-time upper bound on the number of atomic patterns inside a
generalized triple: the box spanned by the min/max ids of each component
is a superset of the triple's cells.  Bound tightness is what the DFS id
assignment of :class:`~odtflow.model.RegionGraph` buys.
"""

from __future__ import annotations

import numpy as np

from .ingest import AtomicPatternSet
from .model import ODTTriple


class PrefixSumIndex:
    """Dense cumulative-sum cube with O(1) box queries.

    Storage is a flat row-major list of (N+1)(N+1)(M+1) integers; memory is
    O(N^2 * M), acceptable for the region counts this package targets.
    Immutable after :meth:`build`.
    """

    __slots__ = ("n_regions", "n_slots", "_flat", "_sj", "_si")

    def __init__(self, n_regions: int, n_slots: int, flat: list[int]):
        self.n_regions = n_regions
        self.n_slots = n_slots
        self._flat = flat
        self._sj = n_slots + 1
        self._si = (n_regions + 1) * (n_slots + 1)

    @classmethod
    def build(cls, aps: AtomicPatternSet, n_regions: int, n_slots: int) -> "PrefixSumIndex":
        """Accumulate the 0/1 cube of ``aps`` members into the index."""
        cube = np.zeros((n_regions + 1, n_regions + 1, n_slots + 1), dtype=np.int64)
        for o, d, t in aps.members:
            cube[o + 1, d + 1, t + 1] = 1
        cube.cumsum(axis=0, out=cube)
        cube.cumsum(axis=1, out=cube)
        cube.cumsum(axis=2, out=cube)
        # flat python list: scalar indexing in the hot pruning path is
        # noticeably faster than numpy item access
        return cls(n_regions, n_slots, cube.ravel().tolist())

    @property
    def nbytes(self) -> int:
        return 8 * len(self._flat)

    def range_sum(self, a: int, b: int, c: int, d: int, e: int, f: int) -> int:
        """Exact count of atomic patterns in the box ``[a,b]x[c,d]x[e,f]``.

        All bounds are 0-based and inclusive: origins ``a..b``, dests
        ``c..d``, slots ``e..f``.
        """
        if not (0 <= a <= b < self.n_regions):
            raise IndexError(f"origin range [{a}, {b}] out of bounds")
        if not (0 <= c <= d < self.n_regions):
            raise IndexError(f"dest range [{c}, {d}] out of bounds")
        if not (0 <= e <= f < self.n_slots):
            raise IndexError(f"slot range [{e}, {f}] out of bounds")
        return self._box(a, b + 1, c, d + 1, e, f + 1)

    def _box(self, a0: int, b1: int, c0: int, d1: int, e0: int, f1: int) -> int:
        flat = self._flat
        si, sj = self._si, self._sj
        return (
            flat[b1 * si + d1 * sj + f1]
            - flat[a0 * si + d1 * sj + f1]
            - flat[b1 * si + c0 * sj + f1]
            - flat[b1 * si + d1 * sj + e0]
            + flat[a0 * si + c0 * sj + f1]
            + flat[b1 * si + c0 * sj + e0]
            + flat[a0 * si + d1 * sj + e0]
            - flat[a0 * si + c0 * sj + e0]
        )

    def upper_bound(self, triple: ODTTriple) -> int:
        """Admissible bound on the atomic patterns inside ``triple``.

        Counts the bounding box of the component id ranges, so the result
        is always >= the exact membership count, with equality whenever
        both region components are contiguous id runs.
        """
        o, d, t_start, t_end = triple
        return self._box(o[0], o[-1] + 1, d[0], d[-1] + 1, t_start, t_end + 1)

    @property
    def total(self) -> int:
        """Number of atomic patterns in the whole cube."""
        return self._flat[-1]
