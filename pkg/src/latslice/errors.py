"""Exception taxonomy shared across the package."""


class LatsliceError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(LatsliceError):
    pass


class DegenerateBodyError(LatsliceError):
    """Body is not full-dimensional (no interior ball around the origin)."""


class UnboundedBodyError(LatsliceError):
    """H-rep rows do not positively span, so the body is unbounded."""


class SymmetryError(LatsliceError):
    """Representation violates the origin-symmetry pairing."""


class ExactVolumeUnsupportedError(LatsliceError):
    """Exact volume requested above the configured dimension cap."""


class SubspaceError(LatsliceError):
    pass


class BodyFormatError(LatsliceError):
    """Unparseable body spec, file, or rational literal."""


class ProgressionError(LatsliceError):
    """Progression operation preconditions violated (rank, properness, N)."""
