"""symdom: construct and verify symmetry-creating perturbations of domains in C^n."""

from .errors import (
    ConstructionError,
    DimensionMismatchError,
    EmptyRegionError,
    IdentityMapError,
    PoleError,
    SamplingError,
    SymdomError,
    UnboundedRegionError,
    UnsupportedSliceError,
)
from .maps import (
    AffineMap,
    BallShift,
    CayleyPhi,
    CayleyPhiInv,
    Composition,
    ConformalMap,
    DiscMobius,
    DiscToStrip,
    GeneralDiscAuto,
    Gj,
    Gt,
    Identity,
    InverseMap,
    Permutation,
    ProductMap,
    Rotation,
    StripToDisc,
    UnitaryMap,
    compose,
    fixed_points,
    infinitesimal_generator,
    inverse,
)
from .regions import (
    Ball,
    Classification,
    Complement,
    ConstMarker,
    DiagonalMarker,
    Difference,
    Disc,
    EmptyRegion,
    Fibered,
    HalfPlane,
    Intersection,
    Mapped,
    PjMarker,
    Product,
    Punctured,
    Region,
    Union,
    bounding_box,
    contains,
    slice_region,
    unit_ball,
    unit_disc,
)

__version__ = "0.1.0"
