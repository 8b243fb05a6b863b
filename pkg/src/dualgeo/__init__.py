"""Parametrised point-line duality and the geometric algorithms built on it."""

from .core import (
    BERG, AffineMapParams, DualityClass, DualParams, GeneralLine, Line2, Order, Point2, Position, Preset,
    affine_map_bijective, affine_map_collision, affine_map_line, classify, dual_line, dual_line_inverse,
    dual_point, dual_point_inverse, line_intersection, orthogonal_distance, polar_dual_line,
    polar_dual_point, preset, relative_position, residual, vertical_distance,
)
from .dual_d import (
    DualityClassD, DualParamsD, HyperplaneD, NormalizedHyperplane, PointD, PresetD, classify_d,
    dual_hyperplane_d, dual_point_d, polar_dual_d, polar_dual_d_inverse, preset_d, relative_position_d,
    residual_d, vertical_distance_d,
)
from .envelope import (
    Envelope, EnvelopePiece, Hull, convex_hull, hull_array, hull_chains, hull_chains_via_dual,
    is_on_hull_via_dual, lower_envelope, upper_envelope,
)
from .errors import (
    DegenerateInputError, DimensionMismatchError, DualGeoError, DuplicateSiteError, EmptyInputError,
    InvalidPolygonError, InvariantFailure, NumericRangeError, ValidationError,
)
from .halfplane import (
    ClampKind, FeasibleRegion, HalfPlane, LPObjective, LPResult, Polygon, Side, Status, XClamp,
    intersect_halfplanes, lp_maximize, polygon_kernel,
)
from .lifting import (
    KnnEntry, KnnResult, LiftedPlane, LineArrangement1D, build_arrangement_1d, f_eval, knn_bruteforce,
    knn_query, lift, topmost_at,
)
from .tolerance import Tolerance, default_tolerance

__version__ = "0.1.0"
