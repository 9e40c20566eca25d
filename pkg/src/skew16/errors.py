"""Exception types raised by the construction pipeline.

Every error carries a stable ``exit_code`` so the command line front end can
map failures to distinct process exit statuses.
"""


class Skew16Error(ValueError):
    exit_code = 10


class DegenerateLambda(Skew16Error):
    exit_code = 11


class OutOfInterval(Skew16Error):
    exit_code = 12


class NegativeDiscriminant(Skew16Error):
    exit_code = 13


class BoundViolation(Skew16Error):
    exit_code = 14


class EqualParameters(Skew16Error):
    exit_code = 15


class NonPositiveQ(Skew16Error):
    exit_code = 16


class P01Zero(Skew16Error):
    exit_code = 17


class NotDiagonal(Skew16Error):
    exit_code = 18


class ZeroCoordinate(Skew16Error):
    exit_code = 19


class RankDeficient(Skew16Error):
    exit_code = 20


class NotOnComplex(Skew16Error):
    exit_code = 21


class DegenerateQ4Q5(Skew16Error):
    exit_code = 22


class NoSurfacePoints(Skew16Error):
    exit_code = 23


class EmptyIsoSurface(Skew16Error):
    exit_code = 24


class BundleError(Skew16Error):
    """A run bundle is missing files or cannot be parsed."""

    exit_code = 3
