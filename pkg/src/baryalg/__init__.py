"""Barycentric algebra on convex polygons.

Weighted-mean terms and their convex-combination normal forms, barycentric
coordinate systems, partitions of unity and the tautological map.
"""
from .baryterm import (
    AxiomReport,
    ConvexCombination,
    Leaf,
    Node,
    check_axioms,
    comb_from_combination,
    complement,
    dual_mul,
    eval_term,
    flatten,
    left_comb,
    weighted_mean,
)
from .coordsys import (
    BlendedCoordinates,
    CoordinateSystem,
    ExternalCoordinates,
    PropertyReport,
    TriangulationCoordinates,
    WachspressCoordinates,
    triangulation_coords,
    verify_lagrange,
    verify_linear_precision,
    verify_partition_of_unity,
    wachspress_coords,
)
from .fixtures import load_fixture
from .geometry import Polygon, contains, fan_triangulate, sample_interior, validate_polygon
from .tautomap import (
    AffineMap,
    ClassificationFlags,
    PartitionOfUnity,
    affine_extension,
    blend,
    check_homomorphism,
    classify,
    pou_from_selfmap,
    tautological,
)
from .termlang import SourceError, parse, print_term

__version__ = "0.1.0"
