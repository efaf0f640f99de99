"""Two coordinate systems on a pentagon, checked and blended."""
import numpy as np

from baryalg import (
    BlendedCoordinates,
    TriangulationCoordinates,
    WachspressCoordinates,
    load_fixture,
    sample_interior,
)
from baryalg.coordsys import verify_all

np.set_printoptions(precision=4, suppress=True)

poly = load_fixture("pentagon")
tri = TriangulationCoordinates(poly)
wach = WachspressCoordinates(poly)

p = np.array([0.1, 0.2])
print("triangulation:", tri(p).coefficients)
print("wachspress:   ", wach(p).coefficients)

# Both reproduce the point from the vertices.
for cs in (tri, wach):
    print(type(cs).__name__, "reconstructs p:", np.allclose(cs(p).combine(poly.vertices), p))

# Weighted means of coordinate systems are again coordinate systems.
pts = sample_interior(poly, 500, seed=7)
for q in (0.25, 0.5, 0.75):
    blended = BlendedCoordinates(q, tri, wach)
    reports = verify_all(blended, pts)
    worst = max(r.max_violation for r in reports.values())
    print(f"blend q={q}: all properties hold={all(r.passed for r in reports.values())}, worst {worst:.1e}")
