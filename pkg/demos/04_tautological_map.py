"""Partitions of unity, the tautological map and affine self-maps of a square."""
import numpy as np

from baryalg import (
    PartitionOfUnity,
    WachspressCoordinates,
    affine_extension,
    check_homomorphism,
    classify,
    load_fixture,
    pou_from_selfmap,
    sample_interior,
    tautological,
)
from baryalg.tautomap import cyclic_shift_map, random_affine_endomorphism

np.set_printoptions(precision=4, suppress=True)

square = load_fixture("square")
pts = sample_interior(square, 300, seed=3)
wach = WachspressCoordinates(square)

# A coordinate system is a partition of unity whose tautological map is the identity.
f = PartitionOfUnity.from_coordinates(wach)
print("T_f(0.3, 0.6) =", tautological(f, [0.3, 0.6]))

# The constant partition sends everything to the centre.
const = PartitionOfUnity.constant(square)
print("constant T(0.3, 0.6) =", tautological(const, [0.3, 0.6]))

# Quarter-turn: coordinates of the rotated point. Still a partition of unity,
# but vertices no longer get their own unit vector.
rot = pou_from_selfmap(wach, cyclic_shift_map(square), "rotation")
for name, g in [("coordinates", f), ("constant", const), ("rotation", rot)]:
    flags = classify(g, pts)
    print(f"{name:12} in_set1={flags.in_set1} lagrange={flags.lagrange} in_K_pi={flags.in_K_pi}")

# Affine maps preserve weighted means; those fixing every vertex are the identity.
rng = np.random.default_rng(11)
m = random_affine_endomorphism(square, rng)
triples = [(rng.uniform(0.01, 0.99), a, b) for a, b in zip(pts[::2], pts[1::2])]
print("homomorphism error:", check_homomorphism(m, triples).max_violation)
fix = affine_extension(square, square.vertices)
print("vertex-fixing map distance to identity:", fix.distance_to_identity())
