"""Exception types raised across the package."""


class BarycentricError(Exception):
    """Base class for every error raised by :mod:`baryalg`."""


# -- geometry ---------------------------------------------------------------

class PolygonError(BarycentricError, ValueError):
    pass


class TooFewVertices(PolygonError):
    pass


class DuplicateVertex(PolygonError):
    pass


class NotConvex(PolygonError):
    pass


class PointOutsidePolygon(BarycentricError, ValueError):
    def __init__(self, point, message=None):
        self.point = tuple(float(c) for c in point)
        super().__init__(message or f"point {self.point} lies outside the polygon")


# -- terms and weights ------------------------------------------------------

class WeightOutOfRange(BarycentricError, ValueError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"weight {value!r} is not strictly inside (0, 1)")


class NotAConvexCombination(BarycentricError, ValueError):
    pass


class ZeroCoefficient(NotAConvexCombination):
    pass


class UnboundGenerator(BarycentricError, KeyError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"generator v{index} has no assigned point")

    def __str__(self):
        return self.args[0]


class LeafIndexOutOfRange(BarycentricError, IndexError):
    pass


# -- coordinate systems and partitions of unity ----------------------------

class PointNotTabulated(BarycentricError, KeyError):
    def __init__(self, point):
        self.point = tuple(float(c) for c in point)
        super().__init__(f"no table row for point {self.point}")

    def __str__(self):
        return self.args[0]


class PolygonMismatch(BarycentricError, ValueError):
    pass


class SelfMapEscapesPolygon(PointOutsidePolygon):
    def __init__(self, point, image):
        self.image = tuple(float(c) for c in image)
        super().__init__(
            point, f"self-map sends {tuple(float(c) for c in point)} to {self.image}, outside the polygon"
        )


class NotAffinelyConsistent(BarycentricError, ValueError):
    def __init__(self, index, residual):
        self.index = index
        self.residual = residual
        super().__init__(
            f"image of vertex v{index + 1} is off the affine extension by {residual:.3e}"
        )
