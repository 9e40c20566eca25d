"""Solving the q-system ``q_a + q_b + q_c = 1``, ``1/q_a + 1/q_b + 1/q_c = lambda``.

The even triple ``(q0, q2, q4)`` and the odd triple ``(q1, q3, q5)`` are both
solutions of the same system; they differ only in the chosen first coordinate.
Given the first coordinate the remaining two are the roots of a quadratic whose
discriminant is positive exactly on the admissible interval
``(sigma - sqrt(rho), sigma + sqrt(rho))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import (
    BoundViolation,
    DegenerateLambda,
    EqualParameters,
    NegativeDiscriminant,
    OutOfInterval,
)

RootSign = Literal["plus", "minus"]
Parity = Literal["even", "odd"]

# interval membership margin, relative to the interval width
INTERVAL_MARGIN = 1e-9
SINGULAR_TOL = 1e-9


@dataclass(frozen=True)
class AdmissibleInterval:
    sigma: float
    rho: float
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, q0: float) -> bool:
        margin = INTERVAL_MARGIN * self.width
        return self.lo + margin < q0 < self.hi - margin


@dataclass(frozen=True)
class QTriple:
    """Three positive reals with unit sum and prescribed reciprocal sum.

    For the even parity the entries are ``(q0, q2, q4)``, for the odd parity
    ``(q1, q3, q5)``.
    """

    a: float
    b: float
    c: float
    parity: Parity = "even"

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @property
    def total(self) -> float:
        return self.a + self.b + self.c

    @property
    def reciprocal_total(self) -> float:
        return 1.0 / self.a + 1.0 / self.b + 1.0 / self.c


@dataclass(frozen=True)
class SolveDiagnostics:
    N: float
    M: float
    delta: float
    omega: float
    root_sign: RootSign

    @property
    def delta_sq(self) -> float:
        return self.delta * self.delta


@dataclass(frozen=True)
class ElementarySolution:
    q: float
    s: float
    p: float
    s_prime: float
    p_prime: float
    even_roots: tuple[float, float]
    odd_roots: tuple[float, float]


def _check_lambda(lam: float) -> None:
    if not math.isfinite(lam) or lam <= 9.0:
        raise DegenerateLambda(
            f"lambda must exceed 9 (got {lam!r}); at lambda = 9 the admissible interval collapses"
        )


def admissible_interval(lam: float) -> AdmissibleInterval:
    """Return the open interval of first coordinates with a positive solution.

    >>> iv = admissible_interval(18.0)
    >>> round(iv.lo, 6), round(iv.hi, 6)
    (0.073075, 0.760258)
    """
    _check_lambda(lam)
    sigma = (lam - 3.0) / (2.0 * lam)
    rho = (lam - 9.0) * (lam - 1.0) / (4.0 * lam * lam)
    root = math.sqrt(rho)
    return AdmissibleInterval(sigma=sigma, rho=rho, lo=sigma - root, hi=sigma + root)


def diagnostics(lam: float, q0: float, root_sign: RootSign = "plus") -> SolveDiagnostics:
    N = (lam * q0 - 1.0) * (1.0 - q0)
    M = N - 4.0 * q0
    omega = (lam * q0 * q0 - q0 * (lam - 3.0) + 1.0) / lam
    dsq = N * M
    delta = math.sqrt(dsq) if dsq > 0 else float("nan")
    return SolveDiagnostics(N=N, M=M, delta=delta, omega=omega, root_sign=root_sign)


def solve_triple(
    lam: float,
    q0: float,
    root_sign: RootSign = "plus",
    parity: Parity = "even",
) -> tuple[QTriple, SolveDiagnostics]:
    """Complete ``q0`` to a positive triple on the curve ``C_lambda``.

    The last two entries are ``(N + Delta) / (2 (lambda q0 - 1))`` and its
    complement to ``1 - q0``; ``root_sign`` picks their order, so swapping it
    exchanges them exactly.
    """
    if root_sign not in ("plus", "minus"):
        raise ValueError(f"root_sign must be 'plus' or 'minus', got {root_sign!r}")
    interval = admissible_interval(lam)
    if not interval.contains(q0):
        raise OutOfInterval(
            f"q0 = {q0!r} is outside the admissible interval ({interval.lo:.12g}, {interval.hi:.12g})"
        )
    diag = diagnostics(lam, q0, root_sign)
    if not diag.N * diag.M > 0:
        raise NegativeDiscriminant(f"Delta^2 = {diag.N * diag.M!r} is not positive at q0 = {q0!r}")
    upper = (diag.N + diag.delta) / (2.0 * (lam * q0 - 1.0))
    lower = 1.0 - q0 - upper
    q2, q4 = (upper, lower) if root_sign == "plus" else (lower, upper)
    return QTriple(q0, q2, q4, parity), diag


def default_parameters(lam: float) -> tuple[float, float]:
    """Deterministic first coordinates for the even and odd triples.

    ``q0`` is the interval midpoint, ``q1`` the midpoint of its lower half.
    """
    interval = admissible_interval(lam)
    q0 = interval.sigma
    q1 = 0.5 * (interval.lo + interval.sigma)
    return q0, q1


def _quadratic_roots(s: float, p: float) -> tuple[float, float]:
    disc = s * s - 4.0 * p
    if disc < 0:
        raise BoundViolation(f"negative discriminant {disc!r}")
    root = math.sqrt(disc)
    return (0.5 * (s + root), 0.5 * (s - root))


def elementary_bound(q4: float, q5: float) -> float:
    return max(1.0 / q4 + 4.0 / (1.0 - q4), 1.0 / q5 + 4.0 / (1.0 - q5))


def solve_from_q4q5(q: float, q4: float, q5: float) -> ElementarySolution:
    """Solve the elementary problem with the third entries ``q4 != q5`` fixed.

    Each of the two returned root pairs completes its fixed entry to a triple
    with unit sum and reciprocal sum ``q``.
    """
    for name, val in (("q4", q4), ("q5", q5)):
        if not 0.0 < val < 1.0:
            raise BoundViolation(f"{name} = {val!r} must lie strictly between 0 and 1")
    if q4 == q5:
        raise EqualParameters("q4 and q5 must differ")
    bound = elementary_bound(q4, q5)
    if not q > bound:
        raise BoundViolation(f"q = {q!r} must strictly exceed {bound!r}")
    s = 1.0 - q4
    p = q4 * s / (q * q4 - 1.0)
    s_prime = 1.0 - q5
    p_prime = q5 * s_prime / (q * q5 - 1.0)
    return ElementarySolution(
        q=q,
        s=s,
        p=p,
        s_prime=s_prime,
        p_prime=p_prime,
        even_roots=_quadratic_roots(s, p),
        odd_roots=_quadratic_roots(s_prime, p_prime),
    )


def pencil_residual(lam: float, point: tuple[float, float, float]) -> tuple[float, float, bool]:
    """Evaluate the pencil member ``f_lambda`` and the plane ``g`` at a point.

    Returns ``(f, g, rank_deficient)`` where the last flag says whether the
    Jacobian of ``(f_lambda, g)`` drops rank, i.e. the gradient of
    ``f_lambda`` is parallel to ``(1, 1, 1)``. Any real ``lam`` is accepted.
    """
    q0, q2, q4 = point
    f = q2 * q4 + q0 * q4 + q0 * q2 - lam * q0 * q2 * q4
    g = q0 + q2 + q4 - 1.0
    d0 = q2 + q4 - lam * q2 * q4
    d2 = q0 + q4 - lam * q0 * q4
    d4 = q0 + q2 - lam * q0 * q2
    deficient = max(abs(d0 - d2), abs(d0 - d4), abs(d2 - d4)) < SINGULAR_TOL
    return f, g, deficient
