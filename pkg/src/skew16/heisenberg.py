"""The level-2 Heisenberg group acting on real projective 3-space.

Elements of the quotient ``G' = H / {+-1}`` are stored as words
``s1^a s2^b t1^c t2^d`` with exponents in ``{0, 1}`` together with an integer
signed permutation matrix, normalized so its first nonzero entry is ``+1``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, Optional

import numpy as np

from .errors import NotDiagonal, ZeroCoordinate
from .lines import PAIRS, KleinCoordinates, PlueckerLine

Parity = Literal["even", "odd"]

SIGMA1 = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=np.int64)
SIGMA2 = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.int64)
TAU1 = np.diag([1, 1, -1, -1]).astype(np.int64)
TAU2 = np.diag([1, -1, 1, -1]).astype(np.int64)
GENERATORS = (SIGMA1, SIGMA2, TAU1, TAU2)
GENERATOR_NAMES = ("s1", "s2", "t1", "t2")

# Plücker -> Klein, rows (e0, o1, e2, o3, e4, o5), columns (p01, p02, p03, p12, p13, p23)
KLEIN_MATRIX = np.array(
    [
        [1, 0, 0, 0, 0, -1],
        [1, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 1, 0],
        [0, 1, 0, 0, -1, 0],
        [0, 0, 1, -1, 0, 0],
        [0, 0, 1, 1, 0, 0],
    ],
    dtype=np.int64,
)

_WORD_RE = re.compile(r"^s1\^([01]) s2\^([01]) t1\^([01]) t2\^([01])$")


def _normalize_sign(m: np.ndarray) -> np.ndarray:
    first = m.flat[np.flatnonzero(m)[0]]
    return m if first > 0 else -m


@dataclass(frozen=True)
class GroupElement:
    word: tuple[int, int, int, int]
    matrix: np.ndarray = field(compare=False, repr=False)

    @classmethod
    def from_word(cls, word) -> "GroupElement":
        word = tuple(int(w) for w in word)
        if len(word) != 4 or any(w not in (0, 1) for w in word):
            raise ValueError(f"word must be four exponents in {{0, 1}}, got {word!r}")
        m = np.eye(4, dtype=np.int64)
        for gen, e in zip(GENERATORS, word):
            if e:
                m = m @ gen
        m = _normalize_sign(m)
        m.setflags(write=False)
        return cls(word=word, matrix=m)

    @classmethod
    def parse(cls, label: str) -> "GroupElement":
        match = _WORD_RE.match(label.strip())
        if match is None:
            raise ValueError(f"cannot parse group word {label!r}")
        return cls.from_word(int(g) for g in match.groups())

    @property
    def label(self) -> str:
        return " ".join(f"{n}^{e}" for n, e in zip(GENERATOR_NAMES, self.word))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        # G' is abelian, so the word of a product is the xor of the words
        word = tuple(a ^ b for a, b in zip(self.word, other.word))
        return GroupElement.from_word(word)

    def compound(self) -> np.ndarray:
        """Second compound matrix: the induced action on Plücker vectors."""
        return second_compound(self.matrix)


@dataclass(frozen=True)
class SignPattern:
    signs: tuple[int, int, int, int, int, int]

    @property
    def minus_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def parity(self) -> Parity:
        return "even" if self.minus_count % 2 == 0 else "odd"

    def __mul__(self, other: "SignPattern") -> "SignPattern":
        return SignPattern(tuple(a * b for a, b in zip(self.signs, other.signs)))

    def projective(self) -> "SignPattern":
        """Representative with a positive first entry."""
        if self.signs[0] > 0:
            return self
        return SignPattern(tuple(-s for s in self.signs))


def second_compound(g: np.ndarray) -> np.ndarray:
    g = np.asarray(g)
    out = np.zeros((6, 6), dtype=g.dtype)
    for r, (i, j) in enumerate(PAIRS):
        for c, (k, l) in enumerate(PAIRS):
            out[r, c] = g[i, k] * g[j, l] - g[i, l] * g[j, k]
    return out


@lru_cache(maxsize=1)
def enumerate_quotient() -> tuple[GroupElement, ...]:
    """The 16 elements of ``G'`` in lexicographic word order."""
    return tuple(GroupElement.from_word(w) for w in itertools.product((0, 1), repeat=4))


def relations_hold() -> bool:
    """Check ``s_i^2 = t_i^2 = id`` and ``s_i t_i = -t_i s_i`` in exact integers."""
    eye = np.eye(4, dtype=np.int64)
    ok = all(np.array_equal(g @ g, eye) for g in GENERATORS)
    ok &= np.array_equal(SIGMA1 @ TAU1, -(TAU1 @ SIGMA1))
    ok &= np.array_equal(SIGMA2 @ TAU2, -(TAU2 @ SIGMA2))
    # the remaining generator pairs commute
    for a, b in ((SIGMA1, SIGMA2), (TAU1, TAU2), (SIGMA1, TAU2), (SIGMA2, TAU1)):
        ok &= np.array_equal(a @ b, b @ a)
    return bool(ok)


def act_on_point(g: GroupElement, z) -> np.ndarray:
    return g.matrix @ np.asarray(z, dtype=float)


def act_on_line(g: GroupElement, p: PlueckerLine) -> PlueckerLine:
    """Image of a line; equals recomputing Plücker coordinates from moved points."""
    return PlueckerLine.from_array(g.compound() @ p.as_array())


def klein_sign_action(g: GroupElement) -> SignPattern:
    """Diagonal action of ``g`` on the six Klein coordinates."""
    kinv = np.linalg.inv(KLEIN_MATRIX.astype(float))
    action = KLEIN_MATRIX @ g.compound() @ kinv
    diag = np.diag(action)
    if not (np.allclose(action, np.diag(diag), atol=1e-12) and np.allclose(np.abs(diag), 1.0, atol=1e-12)):
        raise NotDiagonal(f"{g.label} does not act diagonally on Klein coordinates")
    return SignPattern(tuple(int(round(d)) for d in diag)).projective()


def reciprocal_reference(base: KleinCoordinates) -> KleinCoordinates:
    """Real form of the complex reciprocal ``(1/x0, ..., 1/x5)`` of a Klein vector."""
    arr = base.as_array()
    ref = 1.0 / arr
    ref[1::2] *= -1.0
    return KleinCoordinates(*ref)


def _gauge(arr: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(arr)
    return arr if arr[nz[0]] > 0 else -arr


def parity_of(k: KleinCoordinates, base: Optional[KleinCoordinates] = None, tol: float = 1e-9) -> Parity:
    """Parity of the number of minus signs of a Klein vector.

    Without ``base`` the signs are counted directly after fixing the gauge so
    the first entry is positive. With ``base`` the vector is compared against
    the base line (even family) or its complex reciprocal (odd family),
    whichever matches its magnitude profile, and the signs are counted
    relative to that reference.
    """
    arr = k.as_array()
    scale = float(np.max(np.abs(arr)))
    if scale == 0 or np.any(np.abs(arr) <= tol * scale):
        raise ZeroCoordinate("parity is undefined on the fourfolds x_i = 0")
    if base is None:
        return "even" if int(np.sum(_gauge(arr) < 0)) % 2 == 0 else "odd"

    unit = arr / np.linalg.norm(arr)
    best = None
    for ref in (base.as_array(), reciprocal_reference(base).as_array()):
        ref_unit = ref / np.linalg.norm(ref)
        err = float(np.max(np.abs(np.abs(unit) - np.abs(ref_unit))))
        if best is None or err < best[0]:
            best = (err, ref_unit)
    err, ref_unit = best
    if err > 1e-6:
        raise ValueError("Klein vector matches neither the base line nor its reciprocal")
    rel = _gauge(np.sign(unit) * np.sign(ref_unit))
    return "even" if int(np.sum(rel < 0)) % 2 == 0 else "odd"


def orbit(p: PlueckerLine) -> list[tuple[GroupElement, PlueckerLine]]:
    return [(g, act_on_line(g, p)) for g in enumerate_quotient()]
