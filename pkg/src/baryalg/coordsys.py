"""Barycentric coordinate systems on convex polygons and their verifiers.

Every system exposes two evaluations:

* ``raw(p)`` - the plain float vector the construction produces, with no
  clean-up; the verifiers measure this.
* ``__call__(p)`` - the same values as a :class:`ConvexCombination`, so the
  partition of unity holds by type.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .baryterm import ConvexCombination, check_weight
from .errors import PointNotTabulated, PointOutsidePolygon, PolygonMismatch
from .geometry import Polygon, as_point, fan_triangulate

DOMAIN_TOL = 1e-9
LOCATE_TOL = 1e-12


class CoordinateSystem:
    """A map from points of ``polygon`` to coefficient vectors of length ``n``."""

    kind = "abstract"

    def __init__(self, polygon: Polygon):
        self.polygon = polygon
        v = polygon.vertices
        self._edges = np.roll(v, -1, axis=0) - v
        self._edge_len = np.hypot(self._edges[:, 0], self._edges[:, 1])

    @property
    def n(self) -> int:
        return self.polygon.n

    def raw(self, p) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, p) -> ConvexCombination:
        return ConvexCombination(self.raw(p))

    def _edge_cross(self, p) -> np.ndarray:
        """``e_j x (p - v_j)``: twice the signed area of ``(v_j, v_{j+1}, p)``."""
        e = self._edges
        d = p - self.polygon.vertices
        return e[:, 0] * d[:, 1] - e[:, 1] * d[:, 0]

    def _require_inside(self, p):
        p = as_point(p)
        cr = self._edge_cross(p)
        if (cr / self._edge_len).min() < -DOMAIN_TOL:
            raise PointOutsidePolygon(p)
        return p, cr

    def describe(self) -> str:
        return self.kind


class TriangulationCoordinates(CoordinateSystem):
    """Barycentric coordinates in the first fan triangle containing ``p``.

    This picks one convex combination per point deterministically; it is
    continuous but not smooth across the fan diagonals.
    """

    kind = "triangulation"

    def __init__(self, polygon: Polygon):
        super().__init__(polygon)
        self._tris = fan_triangulate(polygon)
        self._corners = [tuple(map(tuple, polygon.vertices[list(t)].tolist())) for t in self._tris]

    def raw(self, p) -> np.ndarray:
        p, _ = self._require_inside(p)
        best, best_key = None, -np.inf
        pt = (float(p[0]), float(p[1]))
        for tri, corners in zip(self._tris, self._corners):
            lam = triangle_barycentric(corners, pt)
            if lam.min() >= -LOCATE_TOL:
                best = (tri, lam)
                break
            # points just outside the polygon: fall back to the least-violated triangle
            if lam.min() > best_key:
                best, best_key = (tri, lam), lam.min()
        tri, lam = best
        out = np.zeros(self.n)
        out[list(tri)] = lam
        return out


def triangle_barycentric(tri, p) -> np.ndarray:
    """Barycentric coordinates of ``p`` in the triangle with rows ``tri``."""
    a, b, c = tri
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    l1 = ((b[0] - p[0]) * (c[1] - p[1]) - (b[1] - p[1]) * (c[0] - p[0])) / det
    l2 = ((c[0] - p[0]) * (a[1] - p[1]) - (c[1] - p[1]) * (a[0] - p[0])) / det
    l3 = ((a[0] - p[0]) * (b[1] - p[1]) - (a[1] - p[1]) * (b[0] - p[0])) / det
    return np.array([l1, l2, l3])


class WachspressCoordinates(CoordinateSystem):
    """Wachspress coordinates.

    ``w_i = C_i / (A_{i-1} A_i)`` with ``C_i`` the area of the corner triangle
    at ``v_i`` and ``A_j`` the area of ``(v_j, v_{j+1}, p)``. Inside the polygon
    the equivalent product form ``C_i * prod_{j != i-1, i} A_j`` is used, which
    has no division; on (or just outside) the boundary the edge limit applies,
    i.e. linear interpolation along the nearest edge.
    """

    kind = "wachspress"

    def __init__(self, polygon: Polygon):
        super().__init__(polygon)
        v = polygon.vertices
        prev, nxt = np.roll(v, 1, axis=0), np.roll(v, -1, axis=0)
        self._corner = 0.5 * ((v[:, 0] - prev[:, 0]) * (nxt[:, 1] - prev[:, 1])
                              - (v[:, 1] - prev[:, 1]) * (nxt[:, 0] - prev[:, 0]))
        n = polygon.n
        # row i drops the two edges adjacent to v_i: edge i-1 and edge i
        self._drop = np.eye(n, dtype=bool) | np.roll(np.eye(n, dtype=bool), -1, axis=1)

    def raw(self, p) -> np.ndarray:
        p, cr = self._require_inside(p)
        j = int(np.argmin(cr / self._edge_len))
        if cr[j] <= 0.0:
            return self._edge_limit(j, p)
        # scaled by the polygon area so the products stay well inside float range
        areas = cr / (2.0 * self.polygon.area)
        w = self._corner * np.where(self._drop, 1.0, areas[None, :]).prod(axis=1)
        return w / w.sum()

    def _edge_limit(self, j: int, p) -> np.ndarray:
        a, b = self.polygon.edge(j)
        ab = b - a
        t = float(np.clip(np.dot(p - a, ab) / np.dot(ab, ab), 0.0, 1.0))
        out = np.zeros(self.n)
        out[j] = 1.0 - t
        out[(j + 1) % self.n] += t
        return out


class BlendedCoordinates(CoordinateSystem):
    """Pointwise weighted mean ``(1 - q) * left + q * right``."""

    kind = "blend"

    def __init__(self, q: float, left: CoordinateSystem, right: CoordinateSystem):
        if left.polygon != right.polygon:
            raise PolygonMismatch("blended systems must live on the same polygon")
        super().__init__(left.polygon)
        self.q = check_weight(q)
        self.left, self.right = left, right

    def raw(self, p) -> np.ndarray:
        return (1.0 - self.q) * self.left.raw(p) + self.q * self.right.raw(p)

    def describe(self) -> str:
        return f"blend({self.q!r}, {self.left.describe()}, {self.right.describe()})"


class ExternalCoordinates(CoordinateSystem):
    """User-supplied values, either a callable or a table of sample rows.

    No invariant is imposed on the values, so the verifiers can be pointed at
    data that violates them. Table lookups match points exactly.
    """

    kind = "external"

    def __init__(self, polygon: Polygon, fn: Callable[[np.ndarray], Sequence[float]] | None = None,
                 points=None, rows=None):
        super().__init__(polygon)
        self._fn = fn
        self.points = None if points is None else np.asarray(points, dtype=float)
        self.rows = None if rows is None else np.asarray(rows, dtype=float)
        if fn is None:
            if self.points is None or self.rows is None:
                raise ValueError("need either a callable or a table of points and rows")
            if self.rows.shape != (len(self.points), polygon.n):
                raise ValueError(f"table rows must have {polygon.n} columns, one row per point")
            self._index = {tuple(pt): k for k, pt in enumerate(self.points.tolist())}

    @classmethod
    def from_table(cls, polygon: Polygon, points, rows) -> "ExternalCoordinates":
        return cls(polygon, points=points, rows=rows)

    @classmethod
    def constant(cls, polygon: Polygon, values=None) -> "ExternalCoordinates":
        vals = np.full(polygon.n, 1.0 / polygon.n) if values is None else np.asarray(values, float)
        return cls(polygon, fn=lambda p: vals.copy())

    def raw(self, p) -> np.ndarray:
        p, _ = self._require_inside(p)
        if self._fn is not None:
            return np.asarray(self._fn(p), dtype=float)
        k = self._index.get(tuple(p.tolist()))
        if k is None:
            raise PointNotTabulated(p)
        return self.rows[k].copy()


def read_table_csv(text: str, polygon: Polygon) -> ExternalCoordinates:
    """Parse ``x,y,b1,...,bn`` CSV into a tabulated system."""
    reader = csv.reader(io.StringIO(text))
    header = [h.strip() for h in next(reader)]
    expected = ["x", "y"] + [f"b{i}" for i in range(1, polygon.n + 1)]
    if header != expected:
        raise ValueError(f"table header must be {','.join(expected)!r}, got {','.join(header)!r}")
    data = np.array([[float(c) for c in row] for row in reader if row], dtype=float)
    if data.size == 0:
        data = data.reshape(0, len(expected))
    return ExternalCoordinates.from_table(polygon, data[:, :2], data[:, 2:])


def load_table(path, polygon: Polygon) -> ExternalCoordinates:
    return read_table_csv(Path(path).read_text(encoding="utf-8"), polygon)


# -- verifiers ---------------------------------------------------------------

@dataclass(frozen=True)
class PropertyReport:
    samples_checked: int
    max_violation: float
    passed: bool
    worst_point: tuple[float, float] | None
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "samples_checked": self.samples_checked,
            "max_violation": self.max_violation,
            "passed": self.passed,
            "worst_point": None if self.worst_point is None else list(self.worst_point),
            "tolerance": self.tolerance,
        }


def max_violation(violation: Callable[[np.ndarray], float], points, threads: int = 1):
    """``(value, index)`` of the largest violation, lowest index on ties.

    With ``threads > 1`` the points are split into contiguous chunks; the
    reduction is the same, so the result does not depend on the thread count.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    m = len(pts)
    if m == 0:
        return 0.0, None

    def scan(lo, hi):
        best, arg = -np.inf, lo
        for k in range(lo, hi):
            val = float(violation(pts[k]))
            if val > best or np.isnan(val):
                best, arg = val, k
                if np.isnan(val):
                    break
        return best, arg

    if threads <= 1 or m < 2 * threads:
        return scan(0, m)
    bounds = np.linspace(0, m, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda ab: scan(*ab), zip(bounds[:-1], bounds[1:])))
    best, arg = parts[0]
    for val, k in parts[1:]:
        if val > best or (np.isnan(val) and not np.isnan(best)):
            best, arg = val, k
    return best, arg


def _report(violation, points, tol, threads) -> PropertyReport:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    val, k = max_violation(violation, pts, threads)
    worst = None if k is None else (float(pts[k, 0]), float(pts[k, 1]))
    return PropertyReport(len(pts), float(val), bool(val <= tol), worst, tol)


def verify_partition_of_unity(cs: CoordinateSystem, points, tol: float = 1e-10,
                              threads: int = 1) -> PropertyReport:
    """Largest ``|sum_i b_i(p) - 1|`` over the points, on raw evaluations."""
    return _report(lambda p: abs(cs.raw(p).sum() - 1.0), points, tol, threads)


def verify_linear_precision(cs: CoordinateSystem, points, tol: float = 1e-9,
                            threads: int = 1) -> PropertyReport:
    """Largest ``|| sum_i b_i(p) v_i - p ||``."""
    v = cs.polygon.vertices
    return _report(lambda p: float(np.linalg.norm(cs.raw(p) @ v - p)), points, tol, threads)


def verify_lagrange(cs: CoordinateSystem, tol: float = 1e-9) -> PropertyReport:
    """Largest ``|b_i(v_j) - delta_ij|`` over all vertex pairs."""
    v = cs.polygon.vertices
    errs = [float(np.abs(cs.raw(v[j]) - np.eye(cs.n)[j]).max()) for j in range(cs.n)]
    j = int(np.argmax(errs))
    return PropertyReport(cs.n, errs[j], bool(errs[j] <= tol), (float(v[j, 0]), float(v[j, 1])), tol)


def verify_all(cs: CoordinateSystem, points, pou_tol: float = 1e-10, lp_tol: float = 1e-9,
               lagrange_tol: float = 1e-9, threads: int = 1) -> dict[str, PropertyReport]:
    return {
        "partition_of_unity": verify_partition_of_unity(cs, points, pou_tol, threads),
        "linear_precision": verify_linear_precision(cs, points, lp_tol, threads),
        "lagrange": verify_lagrange(cs, lagrange_tol),
    }


def triangulation_coords(poly: Polygon, p) -> ConvexCombination:
    return TriangulationCoordinates(poly)(p)


def wachspress_coords(poly: Polygon, p) -> ConvexCombination:
    return WachspressCoordinates(poly)(p)


def make_system(method: str, poly: Polygon) -> CoordinateSystem:
    builders = {"triangulation": TriangulationCoordinates, "wachspress": WachspressCoordinates}
    try:
        return builders[method](poly)
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(builders)}") from None
