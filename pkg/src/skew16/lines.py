"""Plücker and Klein coordinates of lines in real projective 3-space.

Plücker vectors are ordered ``(p01, p02, p03, p12, p13, p23)``. Klein
coordinates are kept as six reals ``(e0, o1, e2, o3, e4, o5)``: the even slots
are the real Klein coordinates ``x0, x2, x4`` and the odd slots the imaginary
parts of the purely imaginary ``x1, x3, x5``. With this convention the
Plücker quadric reads ``e0^2 + e2^2 + e4^2 = o1^2 + o3^2 + o5^2``.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NonPositiveQ, P01Zero
from .params import QTriple

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# pairing thresholds for unit-normalized lines
MEET_TOL = 1e-9
SKEW_TOL = 1e-6


class PlueckerLine(NamedTuple):
    p01: float
    p02: float
    p03: float
    p12: float
    p13: float
    p23: float

    @classmethod
    def from_array(cls, arr) -> "PlueckerLine":
        return cls(*(float(v) for v in np.asarray(arr, dtype=float).reshape(6)))

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)

    @property
    def scale(self) -> float:
        return max(abs(v) for v in self)

    def relation(self) -> float:
        """Raw value of ``p01 p23 - p02 p13 + p03 p12``."""
        return self.p01 * self.p23 - self.p02 * self.p13 + self.p03 * self.p12

    def relation_residual(self) -> float:
        """Plücker relation relative to the squared largest coordinate."""
        s = self.scale
        if s == 0:
            raise ValueError("the zero vector is not a line")
        return abs(self.relation()) / (s * s)

    def normalized(self) -> "PlueckerLine":
        arr = self.as_array()
        n = np.linalg.norm(arr)
        if n == 0:
            raise ValueError("the zero vector is not a line")
        return PlueckerLine.from_array(arr / n)

    def matrix(self) -> np.ndarray:
        """Skew 4x4 matrix ``L`` with ``L[i, j] = p_ij``."""
        L = np.zeros((4, 4))
        for (i, j), v in zip(PAIRS, self):
            L[i, j] = v
            L[j, i] = -v
        return L


class KleinCoordinates(NamedTuple):
    e0: float
    o1: float
    e2: float
    o3: float
    e4: float
    o5: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)

    @property
    def even(self) -> np.ndarray:
        return np.array([self.e0, self.e2, self.e4])

    @property
    def odd(self) -> np.ndarray:
        return np.array([self.o1, self.o3, self.o5])

    def quadric_residual(self) -> float:
        """``|sum e^2 - sum o^2|`` relative to the squared scale."""
        arr = self.as_array()
        s = float(np.max(np.abs(arr)))
        return abs(float(self.even @ self.even - self.odd @ self.odd)) / (s * s)

    def reciprocal_residual(self) -> float:
        """Reciprocal identity ``sum 1/e^2 = sum 1/o^2``, relative to their total."""
        inv_e = 1.0 / self.even**2
        inv_o = 1.0 / self.odd**2
        return abs(float(inv_e.sum() - inv_o.sum())) / float(inv_e.sum() + inv_o.sum())

    def complex_form(self) -> np.ndarray:
        """The Klein vector ``(x0, ..., x5)`` as complex numbers."""
        arr = self.as_array().astype(complex)
        arr[1::2] *= 1j
        return arr


class LineFrame(NamedTuple):
    """Line spanned by ``(1, 0, x, y)`` and ``(0, 1, u, v)``."""

    x: float
    y: float
    u: float
    v: float

    def point(self, t: float) -> np.ndarray:
        return np.array([1.0, t, self.x + t * self.u, self.y + t * self.v])

    def to_pluecker(self) -> PlueckerLine:
        return PlueckerLine(1.0, self.u, self.v, -self.x, -self.y, self.x * self.v - self.y * self.u)


def _sqrt_positive(triple: QTriple) -> np.ndarray:
    vals = np.array(triple.as_tuple(), dtype=float)
    if not np.all(vals > 0):
        raise NonPositiveQ(f"all q values must be positive, got {triple.as_tuple()}")
    return np.sqrt(vals)


def pluecker_from_q(even: QTriple, odd: QTriple) -> PlueckerLine:
    """Base line whose Klein coordinates are ``2 sqrt(q_i)``.

    Returned in the raw gauge, not normalized.
    """
    r0, r2, r4 = _sqrt_positive(even)
    r1, r3, r5 = _sqrt_positive(odd)
    return PlueckerLine(
        p01=r0 + r1,
        p02=r2 + r3,
        p03=r4 + r5,
        p12=-(r4 - r5),
        p13=r2 - r3,
        p23=-(r0 - r1),
    )


def transversal_from_q(even: QTriple, odd: QTriple) -> PlueckerLine:
    """Image of the base line under ``x -> (-1/x0 : 1/x1 : ... : 1/x5)``.

    Returned in the gauge ``p01 = 1``. The line meets exactly ten lines of the
    group orbit of the base line.
    """
    a0, a2, a4 = 1.0 / _sqrt_positive(even)
    a1, a3, a5 = 1.0 / _sqrt_positive(odd)
    scale = -a0 - a1
    return PlueckerLine(
        p01=1.0,
        p02=(a2 - a3) / scale,
        p03=(a4 - a5) / scale,
        p12=(-a4 - a5) / scale,
        p13=(a2 + a3) / scale,
        p23=(a0 - a1) / scale,
    )


def klein_from_pluecker(p: PlueckerLine) -> KleinCoordinates:
    return KleinCoordinates(
        e0=p.p01 - p.p23,
        o1=p.p01 + p.p23,
        e2=p.p02 + p.p13,
        o3=p.p02 - p.p13,
        e4=p.p03 - p.p12,
        o5=p.p03 + p.p12,
    )


def pluecker_from_klein(k: KleinCoordinates) -> PlueckerLine:
    return PlueckerLine(
        p01=0.5 * (k.e0 + k.o1),
        p02=0.5 * (k.e2 + k.o3),
        p03=0.5 * (k.e4 + k.o5),
        p12=0.5 * (k.o5 - k.e4),
        p13=0.5 * (k.e2 - k.o3),
        p23=0.5 * (k.o1 - k.e0),
    )


def pluecker_from_points(a, b) -> PlueckerLine:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return PlueckerLine(*(float(a[i] * b[j] - a[j] * b[i]) for i, j in PAIRS))


def incidence_pairing(a: PlueckerLine, b: PlueckerLine, normalize: bool = True) -> float:
    """Polarized Plücker form; zero exactly when the two lines meet.

    With ``normalize`` both arguments are first scaled to unit length, so the
    result lies in ``[-2, 2]``.
    """
    if normalize:
        a = a.normalized()
        b = b.normalized()
    return (
        a.p01 * b.p23
        + a.p23 * b.p01
        - a.p02 * b.p13
        - a.p13 * b.p02
        + a.p03 * b.p12
        + a.p12 * b.p03
    )


def pairing_matrix(lines_a: np.ndarray, lines_b: np.ndarray) -> np.ndarray:
    """Vectorized pairing between rows of two ``(n, 6)`` arrays (no normalization)."""
    swap = np.array([5, 4, 3, 2, 1, 0])
    signs = np.array([1.0, -1.0, 1.0, 1.0, -1.0, 1.0])
    return np.asarray(lines_a) @ (np.asarray(lines_b)[:, swap] * signs).T


def frame_from_pluecker(p: PlueckerLine, tol: float = 1e-12) -> LineFrame:
    if abs(p.p01) <= tol * p.scale:
        raise P01Zero("p01 vanishes; the line is not in the chart z0 = 1, z1 free")
    return LineFrame(x=-p.p12 / p.p01, y=-p.p13 / p.p01, u=p.p02 / p.p01, v=p.p03 / p.p01)


def spanning_points(p: PlueckerLine) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal pair of points spanning the line.

    Works in every chart; for a decomposable bivector the column space of the
    skew matrix is exactly the 2-plane of the line.
    """
    L = p.normalized().matrix()
    u, _, _ = np.linalg.svd(L)
    a, b = u[:, 0], u[:, 1]
    # fix orientation so the points reproduce p up to a positive multiple
    if np.dot(pluecker_from_points(a, b).as_array(), p.as_array()) < 0:
        b = -b
    return a, b


def meets(a: PlueckerLine, b: PlueckerLine, meet_tol: float = MEET_TOL, skew_tol: float = SKEW_TOL) -> bool:
    """Decide incidence; values in the band between the thresholds are ill-conditioned."""
    val = abs(incidence_pairing(a, b))
    if val < meet_tol:
        return True
    if val > skew_tol:
        return False
    raise ValueError(f"pairing {val:.3e} falls between meet and skew thresholds")

