"""Exception types shared across the package."""


class SymdomError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(SymdomError):
    """Operands act on different numbers of complex coordinates."""


class PoleError(SymdomError):
    """A map was evaluated at (or too close to) a pole."""


class IdentityMapError(SymdomError):
    """Fixed-point query on the identity map: every point is fixed."""


class EmptyRegionError(SymdomError):
    """No interior or boundary could be found at the requested resolution."""


class SamplingError(SymdomError):
    """Rejection or refinement sampling failed within its attempt budget."""


class UnboundedRegionError(SymdomError):
    """An operation needs a finite bounding box and none is available."""


class ConstructionError(SymdomError):
    """A constructive procedure could not certify its parameters."""


class UnsupportedSliceError(SymdomError):
    """The requested planar slice cannot be formed for this region tree."""
