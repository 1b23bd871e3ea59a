"""Exception types shared across the package."""


class OdtError(Exception):
    """Base class for package-specific errors."""


class GraphFormatError(OdtError):
    """Malformed edge-list file; message carries the offending line number."""


class TripsFormatError(OdtError):
    """Malformed trips CSV; message carries the offending line number."""


class ConstraintError(OdtError):
    """Invalid constrained-mining domain (disconnected, empty, or bad range)."""


class InstanceTooLarge(OdtError):
    """Instance exceeds the brute-force reference guard rails."""


class PoolExhausted(OdtError):
    """Sampling could not find a disjoint origin/dest pair within the retry cap."""


class MiningTimeout(OdtError):
    """Cooperative deadline exceeded inside a mining loop."""
