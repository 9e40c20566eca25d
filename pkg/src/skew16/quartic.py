"""Heisenberg-invariant real quartic forms.

The invariant quartics form a five dimensional space; this module fixes the
basis

    g0 = z0^4 + z1^4 + z2^4 + z3^4
    g1 = 2 (z0^2 z1^2 + z2^2 z3^2)
    g2 = 2 (z0^2 z2^2 + z1^2 z3^2)
    g3 = 2 (z0^2 z3^2 + z1^2 z2^2)
    g4 = 4 z0 z1 z2 z3

and represents a form by its five coefficients over it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import NotOnComplex, RankDeficient
from .heisenberg import enumerate_quotient
from .lines import LineFrame

BASIS_NAME = "heisenberg-invariant-v1"
Normalization = Literal["lambda4_one", "unit_norm", "raw"]

# singular value thresholds relative to the largest one
RANK_PRESENT = 1e-6
RANK_ABSENT = 1e-10
LAMBDA4_MIN = 1e-8

# index pairs multiplied in g1, g2, g3
_PARTNERS = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)


@dataclass(frozen=True)
class QuarticForm:
    coeffs: tuple[float, float, float, float, float]
    normalization: Normalization = "raw"

    def __post_init__(self):
        if len(self.coeffs) != 5:
            raise ValueError("an invariant quartic has exactly five coefficients")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, z) -> Union[float, np.ndarray]:
        return evaluate(self, z)

    def scaled(self, factor: float) -> "QuarticForm":
        return QuarticForm(tuple(factor * c for c in self.coeffs), "raw")


def basis_values(z) -> np.ndarray:
    """Basis elements at points ``z`` of shape ``(..., 4)``; returns ``(..., 5)``."""
    z = np.asarray(z, dtype=float)
    z0, z1, z2, z3 = np.moveaxis(z, -1, 0)
    sq = z * z
    s0, s1, s2, s3 = np.moveaxis(sq, -1, 0)
    return np.stack(
        [
            (sq * sq).sum(axis=-1),
            2.0 * (s0 * s1 + s2 * s3),
            2.0 * (s0 * s2 + s1 * s3),
            2.0 * (s0 * s3 + s1 * s2),
            4.0 * z0 * z1 * z2 * z3,
        ],
        axis=-1,
    )


def basis_gradients(z) -> np.ndarray:
    """Gradients of the basis elements, shape ``(..., 5, 4)``."""
    z = np.asarray(z, dtype=float)
    sq = z * z
    out = np.zeros(z.shape[:-1] + (5, 4))
    out[..., 0, :] = 4.0 * z * sq
    for k, pairs in enumerate(_PARTNERS, start=1):
        for i, j in pairs:
            out[..., k, i] = 4.0 * z[..., i] * sq[..., j]
            out[..., k, j] = 4.0 * z[..., j] * sq[..., i]
    for i in range(4):
        others = [j for j in range(4) if j != i]
        out[..., 4, i] = 4.0 * z[..., others[0]] * z[..., others[1]] * z[..., others[2]]
    return out


def evaluate(f: QuarticForm, z) -> Union[float, np.ndarray]:
    val = basis_values(z) @ f.as_array()
    return float(val) if np.ndim(val) == 0 else val


def gradient(f: QuarticForm, z) -> np.ndarray:
    return np.einsum("...kj,k->...j", basis_gradients(z), f.as_array())


def restriction_matrix_points(a, b) -> np.ndarray:
    """5x5 matrix whose row ``j`` holds the ``t^j`` coefficient of ``g_k(a + t b)``."""
    lin = [np.array([float(ai), float(bi)]) for ai, bi in zip(a, b)]

    def mul(*polys):
        out = np.array([1.0])
        for p in polys:
            out = P.polymul(out, p)
        return out

    def pad(c):
        res = np.zeros(5)
        res[: len(c)] = c
        return res

    z0, z1, z2, z3 = lin
    sq = [mul(p, p) for p in lin]
    cols = [
        pad(sum(pad(mul(s, s)) for s in sq)),
        pad(2.0 * (pad(mul(sq[0], sq[1])) + pad(mul(sq[2], sq[3])))),
        pad(2.0 * (pad(mul(sq[0], sq[2])) + pad(mul(sq[1], sq[3])))),
        pad(2.0 * (pad(mul(sq[0], sq[3])) + pad(mul(sq[1], sq[2])))),
        pad(4.0 * mul(z0, z1, z2, z3)),
    ]
    return np.column_stack(cols)


def restriction_matrix(frame: LineFrame) -> np.ndarray:
    """Restriction of the basis to ``P(t) = (1, t, x + t u, y + t v)``."""
    return restriction_matrix_points((1.0, 0.0, frame.x, frame.y), (0.0, 1.0, frame.u, frame.v))


def _row_scaled(B: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(B, axis=1)
    norms[norms == 0] = 1.0
    return B / norms[:, None]


def restriction_singular_values(B: np.ndarray) -> np.ndarray:
    return np.linalg.svd(_row_scaled(B), compute_uv=False)


def nullvector(B: np.ndarray) -> np.ndarray:
    """Unit vector spanning the numerical nullspace of a rank-4 restriction matrix."""
    _, s, vt = np.linalg.svd(_row_scaled(B))
    if s[3] <= RANK_PRESENT * s[0]:
        raise RankDeficient(f"restriction matrix has rank < 4 (singular values {s})")
    if s[4] >= RANK_ABSENT * s[0]:
        raise NotOnComplex(f"restriction matrix has full rank (singular values {s})")
    return vt[-1]


def normalize_coefficients(vec) -> QuarticForm:
    vec = np.asarray(vec, dtype=float)
    unit = vec / np.linalg.norm(vec)
    if abs(unit[4]) > LAMBDA4_MIN:
        return QuarticForm(tuple(vec / vec[4]), "lambda4_one")
    first = unit[np.flatnonzero(np.abs(unit) > LAMBDA4_MIN)[0]]
    return QuarticForm(tuple(unit if first > 0 else -unit), "unit_norm")


def solve_for_line(frame: LineFrame) -> QuarticForm:
    """The invariant quartic containing the line, normalized to ``lambda4 = 1``."""
    return normalize_coefficients(nullvector(restriction_matrix(frame)))


def solve_for_points(a, b) -> QuarticForm:
    """As :func:`solve_for_line` for the line through two arbitrary points."""
    return normalize_coefficients(nullvector(restriction_matrix_points(a, b)))


def relative_residual(f: QuarticForm, z) -> Union[float, np.ndarray]:
    """``|f(z)| / (|coeffs| |z|^4)``: invariant under scaling of ``f`` and ``z``."""
    z = np.asarray(z, dtype=float)
    nz = np.linalg.norm(z, axis=-1)
    val = np.abs(evaluate(f, z)) / (f.norm * nz**4)
    return float(val) if np.ndim(val) == 0 else val


def invariance_check(f: QuarticForm, n_points: int = 100, seed: int = 0) -> float:
    """Largest relative change of ``f`` under the group over random points."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n_points, 4))
    base = evaluate(f, z)
    scale = f.norm * np.linalg.norm(z, axis=1) ** 4
    worst = 0.0
    for g in enumerate_quotient():
        moved = evaluate(f, z @ g.matrix.T.astype(float))
        worst = max(worst, float(np.max(np.abs(moved - base) / scale)))
    return worst


def combine(forms: Sequence[QuarticForm], weights: Sequence[float]) -> QuarticForm:
    arr = sum(w * f.as_array() for f, w in zip(forms, weights))
    return QuarticForm(tuple(arr), "raw")
