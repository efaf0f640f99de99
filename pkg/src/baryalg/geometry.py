"""Convex polygons in the plane: validation, membership, fan triangulation
and seeded interior sampling.

Points are plain length-2 float arrays (anything ``np.asarray`` accepts).
Vertex indices are 0-based throughout the library; the term language and the
CLI use the 1-based names ``v1 .. vn``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DuplicateVertex, NotConvex, PolygonError, TooFewVertices

CONVEXITY_EPS = 1e-12


def as_point(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if arr.shape != (2,):
        raise ValueError(f"expected a planar point, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"point {p!r} has non-finite coordinates")
    return arr


def cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def signed_area(a, b, c) -> float:
    """Signed area of triangle ``abc``; positive when counter-clockwise."""
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


@dataclass(frozen=True, eq=False)
class Polygon:
    """A strictly convex polygon with counter-clockwise vertices.

    Build instances with :func:`validate_polygon`; the constructor trusts its
    input.
    """

    vertices: np.ndarray

    def __post_init__(self):
        self.vertices.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Polygon):
            return NotImplemented
        return self.vertices.shape == other.vertices.shape and bool(
            np.array_equal(self.vertices, other.vertices)
        )

    def __hash__(self):
        return hash(self.vertices.tobytes())

    @property
    def area(self) -> float:
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    @property
    def centroid(self) -> np.ndarray:
        """Vertex average (not the area centroid)."""
        return self.vertices.mean(axis=0)

    @property
    def diameter(self) -> float:
        d = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((d**2).sum(axis=-1)).max())

    def edge(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices[i], self.vertices[(i + 1) % self.n]

    def to_json(self) -> str:
        return json.dumps({"vertices": self.vertices.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "Polygon":
        data = json.loads(text)
        if not isinstance(data, dict) or "vertices" not in data:
            raise PolygonError('polygon JSON must be an object with a "vertices" array')
        return validate_polygon(data["vertices"])

    @classmethod
    def load(cls, path) -> "Polygon":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def validate_polygon(raw_vertices, eps: float = CONVEXITY_EPS) -> Polygon:
    """Check a vertex list and return it as a CCW :class:`Polygon`.

    Clockwise input is reversed. Convexity is tested on cross products of
    unit-normalised consecutive edges, and the total turning must be one full
    turn so that star polygons are rejected too.
    """
    try:
        verts = np.array(raw_vertices, dtype=float)
    except (TypeError, ValueError) as exc:
        raise PolygonError(f"cannot read vertices: {exc}") from None
    if verts.ndim != 2 or verts.shape[1] != 2:
        raise PolygonError(f"vertices must be a list of [x, y] pairs, got shape {verts.shape}")
    if len(verts) < 3:
        raise TooFewVertices(f"a polygon needs at least 3 vertices, got {len(verts)}")
    if not np.all(np.isfinite(verts)):
        raise PolygonError("vertex coordinates must be finite")

    n = len(verts)
    dist = np.sqrt(((verts[:, None, :] - verts[None, :, :]) ** 2).sum(axis=-1))
    dist[np.diag_indices(n)] = np.inf
    i, j = np.unravel_index(np.argmin(dist), dist.shape)
    if dist[i, j] <= eps:
        raise DuplicateVertex(f"vertices {i + 1} and {j + 1} coincide")

    x, y = verts[:, 0], verts[:, 1]
    if np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y) < 0:
        verts = verts[::-1].copy()

    edges = np.roll(verts, -1, axis=0) - verts
    units = edges / np.linalg.norm(edges, axis=1)[:, None]
    nxt = np.roll(units, -1, axis=0)
    turns = units[:, 0] * nxt[:, 1] - units[:, 1] * nxt[:, 0]
    bad = np.flatnonzero(turns <= eps)
    if bad.size:
        k = (int(bad[0]) + 1) % n
        raise NotConvex(f"polygon is not strictly convex at vertex {k + 1}")
    angles = np.arctan2(turns, (units * nxt).sum(axis=1))
    if not math.isclose(angles.sum(), 2 * math.pi, abs_tol=1e-6):
        raise NotConvex("vertex sequence winds more than once (self-intersecting)")
    return Polygon(verts)


def edge_distances(poly: Polygon, p) -> np.ndarray:
    """Signed distance from ``p`` to each edge line, positive on the inner side."""
    v = poly.vertices
    e = np.roll(v, -1, axis=0) - v
    d = np.asarray(p, dtype=float) - v
    return (e[:, 0] * d[:, 1] - e[:, 1] * d[:, 0]) / np.hypot(e[:, 0], e[:, 1])


def contains(poly: Polygon, p, tol: float = 1e-9) -> bool:
    """True if ``p`` lies in the closed polygon, allowing ``tol`` of slack."""
    return bool(edge_distances(poly, p).min() >= -tol)


def fan_triangulate(poly: Polygon) -> list[tuple[int, int, int]]:
    """Triangles ``(0, i, i+1)`` for ``i = 1 .. n-2`` (0-based indices)."""
    return [(0, i, i + 1) for i in range(1, poly.n - 1)]


def triangle_areas(poly: Polygon) -> np.ndarray:
    v = poly.vertices
    return np.array([signed_area(v[a], v[b], v[c]) for a, b, c in fan_triangulate(poly)])


def sample_interior(poly: Polygon, count: int, seed: int) -> np.ndarray:
    """Return ``count`` seeded points of the polygon as a ``(count, 2)`` array.

    A fan triangle is drawn with probability proportional to its area, then a
    point is drawn uniformly inside it (reflection of the unit square onto the
    lower triangle).
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = np.random.default_rng(seed)
    tris = np.array(fan_triangulate(poly))
    areas = triangle_areas(poly)
    pick = rng.choice(len(tris), size=count, p=areas / areas.sum())
    st = rng.random((count, 2))
    flip = st.sum(axis=1) > 1.0
    st[flip] = 1.0 - st[flip]
    v = poly.vertices
    a, b, c = (v[tris[pick, k]] for k in range(3))
    pts = a + st[:, :1] * (b - a) + st[:, 1:] * (c - a)
    # the affine formula can round a hair past an edge; pull such points in
    for k in range(count):
        if not contains(poly, pts[k], 1e-12):
            w = np.array([1.0 - st[k].sum(), st[k, 0], st[k, 1]])
            pts[k] = w @ np.stack([a[k], b[k], c[k]])
            if not contains(poly, pts[k], 1e-12):
                pts[k] = 0.5 * (pts[k] + poly.centroid)
    return pts


def project_to_polygon(poly: Polygon, p) -> np.ndarray:
    """Nearest point of the closed polygon to ``p``."""
    p = as_point(p)
    if contains(poly, p, 0.0):
        return p
    best, best_d = None, np.inf
    for i in range(poly.n):
        a, b = poly.edge(i)
        ab = b - a
        t = float(np.clip(np.dot(p - a, ab) / np.dot(ab, ab), 0.0, 1.0))
        q = a + t * ab
        d = float(np.hypot(*(p - q)))
        if d < best_d:
            best, best_d = q, d
    return best
