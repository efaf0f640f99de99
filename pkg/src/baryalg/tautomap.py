"""Partitions of unity on a polygon and the tautological map.

A partition of unity ``f = (f_1, ..., f_n)`` assigns to every point of the
polygon a vector on the standard simplex. Its tautological image is the map
``T_f(a) = sum_i f_i(a) v_i``. Coordinate systems are exactly the partitions
of unity with ``T_f`` equal to the identity.

Barycentric homomorphisms of the plane are represented as :class:`AffineMap`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .baryterm import check_weight, weighted_mean
from .coordsys import (
    CoordinateSystem,
    PropertyReport,
    WachspressCoordinates,
    max_violation,
)
from .errors import (
    NotAConvexCombination,
    NotAffinelyConsistent,
    PointNotTabulated,
    PointOutsidePolygon,
    PolygonMismatch,
    SelfMapEscapesPolygon,
)
from .geometry import (
    Polygon,
    as_point,
    contains,
    edge_distances,
    project_to_polygon,
    sample_interior,
)

DOMAIN_TOL = 1e-9
SUM_TOL = 1e-9
COMPONENT_TOL = 1e-12


class PartitionOfUnity:
    """A map from the polygon into the simplex, evaluated lazily.

    Use the constructors below rather than instantiating directly. ``raw``
    returns the unchecked vector; calling the object also enforces the
    partition-of-unity invariant.
    """

    def __init__(self, polygon: Polygon, fn: Callable[[np.ndarray], np.ndarray], source: str,
                 table_points=None):
        self.polygon = polygon
        self._fn = fn
        self.source = source
        self.table_points = table_points

    @property
    def n(self) -> int:
        return self.polygon.n

    def raw(self, a) -> np.ndarray:
        a = as_point(a)
        if not contains(self.polygon, a, DOMAIN_TOL):
            raise PointOutsidePolygon(a)
        return np.asarray(self._fn(a), dtype=float)

    def __call__(self, a) -> np.ndarray:
        f = self.raw(a)
        if abs(f.sum() - 1.0) > SUM_TOL or f.min() < -COMPONENT_TOL or f.max() > 1 + COMPONENT_TOL:
            raise NotAConvexCombination(f"value {f.tolist()} at {tuple(a)} is not on the simplex")
        return f

    def __repr__(self):
        return f"PartitionOfUnity({self.source})"

    @classmethod
    def from_coordinates(cls, cs: CoordinateSystem) -> "PartitionOfUnity":
        return cls(cs.polygon, cs.raw, cs.describe())

    @classmethod
    def constant(cls, polygon: Polygon, values=None) -> "PartitionOfUnity":
        vals = np.full(polygon.n, 1.0 / polygon.n) if values is None else np.asarray(values, float)
        if vals.shape != (polygon.n,):
            raise ValueError(f"constant partition needs {polygon.n} values")
        return cls(polygon, lambda a: vals.copy(), f"constant({vals.tolist()})")

    @classmethod
    def from_table(cls, polygon: Polygon, points, rows) -> "PartitionOfUnity":
        pts = np.asarray(points, dtype=float)
        rows = np.asarray(rows, dtype=float)
        if rows.shape != (len(pts), polygon.n):
            raise ValueError(f"table rows must have {polygon.n} columns, one row per point")
        index = {tuple(p): k for k, p in enumerate(pts.tolist())}

        def lookup(a):
            k = index.get(tuple(a.tolist()))
            if k is None:
                raise PointNotTabulated(a)
            return rows[k].copy()

        return cls(polygon, lookup, f"table({len(pts)} rows)", table_points=pts)


def tautological(f: PartitionOfUnity, a) -> np.ndarray:
    """``T_f(a) = sum_i f_i(a) v_i``."""
    return f.raw(a) @ f.polygon.vertices


def blend(f: PartitionOfUnity, g: PartitionOfUnity, q: float) -> PartitionOfUnity:
    """Pointwise ``(1 - q) f + q g``."""
    q = check_weight(q)
    if f.polygon != g.polygon:
        raise PolygonMismatch("cannot blend partitions of unity on different polygons")
    return PartitionOfUnity(f.polygon, lambda a: (1.0 - q) * f.raw(a) + q * g.raw(a),
                            f"blend({q!r}, {f.source}, {g.source})")


def pou_from_selfmap(coords: CoordinateSystem, g: Callable, label: str = "selfmap") -> PartitionOfUnity:
    """The partition ``a -> coords(g(a))``, whose tautological map is ``g``.

    ``g`` must be a pure function sending the polygon into itself; this is
    checked at each evaluation.
    """
    poly = coords.polygon

    def composed(a):
        b = np.asarray(g(a), dtype=float)
        if not contains(poly, b, DOMAIN_TOL):
            raise SelfMapEscapesPolygon(a, b)
        return coords.raw(b)

    return PartitionOfUnity(poly, composed, f"compose({coords.describe()}, {label})")


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class ClassificationFlags:
    in_set1: bool
    lagrange: bool
    taut_maps_into_polygon: bool
    in_K_pi: bool
    set1_violation: float
    lagrange_violation: float
    containment_violation: float
    linear_precision_violation: float
    samples_checked: int
    tolerance: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _set1_violation(f: PartitionOfUnity, a) -> float:
    v = f.raw(a)
    return max(abs(v.sum() - 1.0), -v.min(), v.max() - 1.0)


def classify(f: PartitionOfUnity, samples=None, tol: float = 1e-9, threads: int = 1) -> ClassificationFlags:
    """Place ``f`` in the chain of coordinate systems, Lagrange partitions and
    partitions of unity, on a finite sample.

    * ``in_set1``: raw values on the simplex at every sample.
    * ``lagrange``: ``f_i(v_j) = delta_ij`` at the vertices.
    * ``taut_maps_into_polygon``: ``T_f(a)`` in the polygon at every sample.
    * ``in_K_pi``: ``T_f(a) = a`` at every sample and vertex, together with
      the two conditions membership in K_Pi implies.

    Table-backed partitions default to their own rows as the sample.
    """
    if samples is None:
        if f.table_points is None:
            raise ValueError("samples are required unless f is table-backed")
        samples = f.table_points
    pts = np.asarray(samples, dtype=float).reshape(-1, 2)
    poly = f.polygon
    v = poly.vertices

    set1, _ = max_violation(lambda a: _set1_violation(f, a), pts, threads)
    eye = np.eye(poly.n)
    lag = max(float(np.abs(f.raw(v[j]) - eye[j]).max()) for j in range(poly.n))
    cont, _ = max_violation(lambda a: max(0.0, -float(edge_distances(poly, tautological(f, a)).min())),
                            pts, threads)
    lp, _ = max_violation(lambda a: float(np.linalg.norm(tautological(f, a) - a)),
                          np.vstack([pts, v]), threads)
    in_set1, lagrange = bool(set1 <= tol), bool(lag <= tol)
    return ClassificationFlags(
        in_set1=in_set1,
        lagrange=lagrange,
        taut_maps_into_polygon=bool(cont <= tol),
        in_K_pi=bool(lp <= tol and in_set1 and lagrange),
        set1_violation=float(set1),
        lagrange_violation=lag,
        containment_violation=float(cont),
        linear_precision_violation=float(lp),
        samples_checked=len(pts),
        tolerance=tol,
    )


def vertex_fixing_violation(f: PartitionOfUnity) -> float:
    """``max_j || T_f(v_j) - v_j ||``."""
    v = f.polygon.vertices
    return max(float(np.linalg.norm(tautological(f, v[j]) - v[j])) for j in range(f.n))


# -- affine maps (barycentric homomorphisms of the plane) -------------------

@dataclass(frozen=True, eq=False)
class AffineMap:
    linear: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        lin = np.array(self.linear, dtype=float).reshape(2, 2)
        off = np.array(self.offset, dtype=float).reshape(2)
        if not (np.all(np.isfinite(lin)) and np.all(np.isfinite(off))):
            raise ValueError("affine map entries must be finite")
        lin.setflags(write=False)
        off.setflags(write=False)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "offset", off)

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(np.eye(2), np.zeros(2))

    def __call__(self, p) -> np.ndarray:
        return np.asarray(p, dtype=float) @ self.linear.T + self.offset

    def distance_to_identity(self) -> float:
        return float(max(np.abs(self.linear - np.eye(2)).max(), np.abs(self.offset).max()))

    def __repr__(self):
        return f"AffineMap(linear={self.linear.tolist()}, offset={self.offset.tolist()})"


def affine_extension(poly: Polygon, vertex_images, tol: float = 1e-9) -> AffineMap:
    """The unique affine map sending each vertex to its image.

    Solved from the first three vertices; the remaining images must agree
    with that solution to within ``tol``.
    """
    img = np.asarray(vertex_images, dtype=float)
    if img.shape != (poly.n, 2):
        raise ValueError(f"need {poly.n} vertex images, got shape {img.shape}")
    v = poly.vertices
    lhs = np.hstack([v[:3], np.ones((3, 1))])
    sol = np.linalg.solve(lhs, img[:3])  # rows: linear^T (2 rows), then offset
    m = AffineMap(sol[:2].T, sol[2])
    for j in range(3, poly.n):
        res = float(np.linalg.norm(m(v[j]) - img[j]))
        if res > tol:
            raise NotAffinelyConsistent(j, res)
    return m


def check_homomorphism(m: Callable, samples: Iterable, tol: float = 1e-10) -> PropertyReport:
    """Largest ``|| m(p(a, b)) - p(m(a), m(b)) ||`` over ``(p, a, b)`` samples."""
    worst, worst_pt, count = 0.0, None, 0
    for p, a, b in samples:
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        err = float(np.linalg.norm(np.asarray(m(weighted_mean(p, a, b))) - weighted_mean(p, m(a), m(b))))
        if worst_pt is None or err > worst:
            worst, worst_pt = err, (float(a[0]), float(a[1]))
        count += 1
    return PropertyReport(count, worst, bool(worst <= tol), worst_pt, tol)


def maps_into_polygon(poly: Polygon, m: Callable, samples, tol: float = 1e-9) -> PropertyReport:
    """Containment of ``m(x)`` for every sample and every vertex ``x``."""
    pts = np.vstack([np.asarray(samples, dtype=float).reshape(-1, 2), poly.vertices])
    viol = [max(0.0, -float(edge_distances(poly, m(x)).min())) for x in pts]
    k = int(np.argmax(viol))
    return PropertyReport(len(pts), viol[k], bool(viol[k] <= tol), (float(pts[k, 0]), float(pts[k, 1])), tol)


def cyclic_shift_map(poly: Polygon, shift: int = 1) -> AffineMap:
    """Affine map sending ``v_j`` to ``v_{j+shift}``; only consistent for
    polygons with that rotational symmetry (e.g. the square)."""
    return affine_extension(poly, np.roll(poly.vertices, -shift, axis=0))


# -- seeded self-maps ------------------------------------------------------

def _random_shape(rng: np.random.Generator, poly: Polygon):
    """Centre, random linear part and the largest scale keeping all vertex
    images inside the polygon."""
    c = sample_interior(poly, 1, int(rng.integers(2**63)))[0]
    lin = rng.normal(size=(2, 2))
    m = poly.vertices.mean(axis=0)
    w = (poly.vertices - m) @ lin.T
    v = poly.vertices
    e = np.roll(v, -1, axis=0) - v
    normals = np.stack([-e[:, 1], e[:, 0]], axis=1) / np.linalg.norm(e, axis=1)[:, None]
    slack = edge_distances(poly, c)  # >= 0 for every edge
    rates = w @ normals.T  # (vertex, edge): rate of change of the edge distance
    with np.errstate(divide="ignore"):
        limits = np.where(rates < 0, slack[None, :] / -rates, np.inf)
    return c, lin, m, float(limits.min())


def random_affine_endomorphism(poly: Polygon, rng: np.random.Generator) -> AffineMap:
    """A random affine map sending the polygon into itself."""
    c, lin, m, tmax = _random_shape(rng, poly)
    t = tmax * rng.uniform(0.05, 1.0)
    return AffineMap(t * lin, c - t * lin @ m)


def random_escaping_affine_map(poly: Polygon, rng: np.random.Generator) -> AffineMap:
    """A random affine map with at least one vertex image outside the polygon."""
    c, lin, m, tmax = _random_shape(rng, poly)
    t = tmax * rng.uniform(1.2, 2.0)
    return AffineMap(t * lin, c - t * lin @ m)


def simplex_distortion_map(poly: Polygon, rng: np.random.Generator | None = None,
                           exponents=None, mixing=None, coords: CoordinateSystem | None = None):
    """Nonlinear self-map ``a -> sum_i phi(lambda(a))_i v_i``.

    ``phi`` raises coordinates to per-vertex powers, renormalises, then applies
    a column-stochastic mixing matrix; it maps the simplex into itself, so the
    result stays inside the polygon. With no mixing the vertices are fixed.
    """
    n = poly.n
    coords = coords or WachspressCoordinates(poly)
    if exponents is None:
        exponents = rng.uniform(0.5, 2.5, size=n)
    if mixing is None:
        mixing = np.eye(n)
    elif isinstance(mixing, str) and mixing == "random":
        mixing = rng.random((n, n))
        mixing /= mixing.sum(axis=0, keepdims=True)
    exponents = np.asarray(exponents, dtype=float)
    mixing = np.asarray(mixing, dtype=float)

    def g(a):
        lam = np.clip(coords.raw(a), 0.0, None) ** exponents
        return (mixing @ (lam / lam.sum())) @ poly.vertices

    return g


def clamped_map(poly: Polygon, h: Callable) -> Callable:
    """``a -> nearest point of the polygon to h(a)``."""
    return lambda a: project_to_polygon(poly, h(a))
