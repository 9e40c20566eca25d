"""Build the 32-line configuration for a given lambda and verify it."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from . import params
from .errors import DegenerateQ4Q5, NoSurfacePoints, P01Zero
from .heisenberg import GroupElement, enumerate_quotient, act_on_line, parity_of, relations_hold
from .lines import (
    MEET_TOL,
    SKEW_TOL,
    LineFrame,
    PlueckerLine,
    frame_from_pluecker,
    klein_from_pluecker,
    pairing_matrix,
    pluecker_from_q,
    spanning_points,
    transversal_from_q,
)
from .params import QTriple, SolveDiagnostics
from .quartic import QuarticForm, invariance_check, relative_residual, solve_for_line
from .smoothness import SmoothnessSample, smoothness_sample

log = logging.getLogger(__name__)

Family = Literal["even", "odd"]

SAMPLE_T = (-3.0, -1.0, -0.25, 0.0, 0.5, 1.0, 2.0)
Q4Q5_TOL = 1e-9
EXPECTED_MEETINGS = 10


@dataclass(frozen=True)
class Tolerances:
    residual: float = 1e-9
    meet: float = MEET_TOL
    skew: float = SKEW_TOL
    quadric: float = 1e-10
    reciprocal: float = 1e-9
    invariance: float = 1e-10
    gradient: float = 1e-3
    n_smooth: int = 1000
    seed: int = 1


@dataclass
class LineRecord:
    id: int
    family: Family
    group_word: GroupElement
    pluecker: PlueckerLine
    frame: Optional[LineFrame]


@dataclass
class VerificationReport:
    max_line_residual: float
    max_pluecker_residual: float
    min_intra_family_pairing: float
    max_meeting_pairing: float
    gap_band_count: int
    incidence_counts: list[int]
    quadric_residual: float
    reciprocal_residual: float
    group_relation_ok: bool
    parity_ok: bool
    invariance_residual: float
    min_sampled_gradient_norm: float
    smoothness_converged: int
    smoothness_skipped: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def incidence_ok(self) -> bool:
        return all(c == EXPECTED_MEETINGS for c in self.incidence_counts)


@dataclass
class Configuration:
    lam: float
    q0: float
    q1: float
    root: params.RootSign
    q_even: QTriple
    q_odd: QTriple
    lines: list[LineRecord]
    quartic: QuarticForm
    diagnostics_even: Optional[SolveDiagnostics] = None
    diagnostics_odd: Optional[SolveDiagnostics] = None
    report: Optional[VerificationReport] = None

    def family(self, name: Family) -> list[LineRecord]:
        return [rec for rec in self.lines if rec.family == name]

    @property
    def base_line(self) -> LineRecord:
        return self.lines[0]

    @property
    def interval(self) -> params.AdmissibleInterval:
        return params.admissible_interval(self.lam)


def _safe_frame(p: PlueckerLine) -> Optional[LineFrame]:
    try:
        return frame_from_pluecker(p)
    except P01Zero:
        return None


def _orbit_records(line: PlueckerLine, family: Family, start: int) -> list[LineRecord]:
    records = []
    for offset, g in enumerate(enumerate_quotient()):
        moved = act_on_line(g, line).normalized()
        records.append(LineRecord(start + offset, family, g, moved, _safe_frame(moved)))
    return records


def build_configuration(
    lam: float,
    q0: Optional[float] = None,
    q1: Optional[float] = None,
    root: params.RootSign = "plus",
    tolerances: Tolerances = Tolerances(),
    run_verify: bool = True,
) -> Configuration:
    """Solve for both triples, build both orbits and the quartic through them."""
    d0, d1 = params.default_parameters(lam)
    q0 = d0 if q0 is None else q0
    q1 = d1 if q1 is None else q1
    even, diag_even = params.solve_triple(lam, q0, root, "even")
    odd, diag_odd = params.solve_triple(lam, q1, root, "odd")
    if abs(even.c - odd.c) <= Q4Q5_TOL:
        raise DegenerateQ4Q5(
            f"q4 = {even.c!r} and q5 = {odd.c!r} coincide; the surface would be singular or ruled"
        )

    base = pluecker_from_q(even, odd)
    transversal = transversal_from_q(even, odd)
    lines = _orbit_records(base, "even", 0) + _orbit_records(transversal, "odd", 16)
    quartic = solve_for_line(frame_from_pluecker(base))

    config = Configuration(
        lam=lam,
        q0=q0,
        q1=q1,
        root=root,
        q_even=even,
        q_odd=odd,
        lines=lines,
        quartic=quartic,
        diagnostics_even=diag_even,
        diagnostics_odd=diag_odd,
    )
    if run_verify:
        config.report = verify(config, tolerances)
    return config


def line_residual(f: QuarticForm, p: PlueckerLine, ts=SAMPLE_T) -> float:
    """Largest relative value of ``f`` at points ``a + t b`` of the line."""
    a, b = spanning_points(p)
    pts = a[None, :] + np.asarray(ts)[:, None] * b[None, :]
    return float(np.max(relative_residual(f, pts)))


def verify(config: Configuration, tolerances: Tolerances = Tolerances()) -> VerificationReport:
    """Check every structural claim of a configuration; failures are recorded."""
    tol = tolerances
    failures: list[str] = []
    f = config.quartic

    line_res = [line_residual(f, rec.pluecker) for rec in config.lines]
    max_line_res = max(line_res)
    if not max_line_res < tol.residual:
        failures.append(f"line residual {max_line_res:.3e} >= {tol.residual:.1e}")

    plk = [rec.pluecker.relation_residual() for rec in config.lines]
    max_plk = max(plk)
    if not max_plk < tol.quadric:
        failures.append(f"Plücker relation residual {max_plk:.3e} >= {tol.quadric:.1e}")

    even = np.array([rec.pluecker.normalized() for rec in config.family("even")])
    odd = np.array([rec.pluecker.normalized() for rec in config.family("odd")])
    if len(even) != 16 or len(odd) != 16:
        failures.append(f"expected 16 + 16 lines, got {len(even)} + {len(odd)}")

    intra = np.concatenate(
        [np.abs(pairing_matrix(fam, fam)[~np.eye(len(fam), dtype=bool)]) for fam in (even, odd)]
    )
    min_intra = float(intra.min()) if intra.size else math.nan
    if not min_intra > tol.skew:
        failures.append(f"intra-family pairing {min_intra:.3e} <= {tol.skew:.1e}")

    cross = np.abs(pairing_matrix(even, odd))
    meeting = cross < tol.meet
    counts = [int(c) for c in meeting.sum(axis=1)] + [int(c) for c in meeting.sum(axis=0)]
    gap = int(np.sum((cross >= tol.meet) & (cross <= tol.skew)))
    max_meeting = float(cross[meeting].max()) if meeting.any() else math.nan
    if any(c != EXPECTED_MEETINGS for c in counts):
        failures.append(f"incidence counts {sorted(set(counts))} differ from {EXPECTED_MEETINGS}")
    if gap:
        failures.append(f"{gap} cross pairings fall between meet and skew thresholds")

    base_k = klein_from_pluecker(config.base_line.pluecker)
    quad = base_k.quadric_residual()
    recip = base_k.reciprocal_residual()
    if not quad < tol.quadric:
        failures.append(f"Klein quadric residual {quad:.3e}")
    if not recip < tol.reciprocal:
        failures.append(f"Klein reciprocal residual {recip:.3e}")

    group_ok = relations_hold()
    if not group_ok:
        failures.append("group relations violated")

    parity_ok = True
    for rec in config.lines:
        try:
            label = parity_of(klein_from_pluecker(rec.pluecker), base=base_k)
        except ValueError:
            label = None
        if label != rec.family:
            parity_ok = False
    if not parity_ok:
        failures.append("family labels disagree with Klein parity")

    inv = invariance_check(f)
    if not inv < tol.invariance:
        failures.append(f"invariance residual {inv:.3e}")

    try:
        smooth = smoothness_sample(f, tol.n_smooth, tol.seed)
        if not smooth.min_gradient_norm > tol.gradient:
            failures.append(f"sampled gradient norm {smooth.min_gradient_norm:.3e} suggests a singular point")
    except NoSurfacePoints:
        smooth = SmoothnessSample(math.nan, 0, tol.n_smooth)

    report = VerificationReport(
        max_line_residual=max_line_res,
        max_pluecker_residual=max_plk,
        min_intra_family_pairing=min_intra,
        max_meeting_pairing=max_meeting,
        gap_band_count=gap,
        incidence_counts=counts,
        quadric_residual=quad,
        reciprocal_residual=recip,
        group_relation_ok=group_ok,
        parity_ok=parity_ok,
        invariance_residual=inv,
        min_sampled_gradient_norm=smooth.min_gradient_norm,
        smoothness_converged=smooth.converged,
        smoothness_skipped=smooth.skipped,
        failures=failures,
    )
    for msg in failures:
        log.warning("verification: %s", msg)
    return report
