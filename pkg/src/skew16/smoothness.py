"""Sampled smoothness diagnostics for a real quartic surface.

Random starts in an affine chart are projected onto ``f = 0`` and then
refined towards points where the gradient also vanishes, by damped
Gauss-Newton on the overdetermined system ``(F, grad F) = 0``. The smallest
projective gradient norm found is reported. A small value flags a (near)
singular real point; a large one is evidence, not proof, of smoothness.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoSurfacePoints
from .quartic import QuarticForm, evaluate, gradient, relative_residual

CHARTS = (3, 0)
CONVERGED = 1e-12


@dataclass(frozen=True)
class SmoothnessSample:
    min_gradient_norm: float
    converged: int
    skipped: int


def _lift(w: np.ndarray, chart: int) -> np.ndarray:
    return np.insert(w, chart, 1.0, axis=-1)


def _chart_gradient(f: QuarticForm, w: np.ndarray, chart: int) -> np.ndarray:
    keep = [j for j in range(4) if j != chart]
    return gradient(f, _lift(w, chart))[..., keep]


def _chart_hessian(f: QuarticForm, w: np.ndarray, chart: int, h: float = 1e-5) -> np.ndarray:
    cols = []
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        cols.append((_chart_gradient(f, w + e, chart) - _chart_gradient(f, w - e, chart)) / (2 * h))
    return np.stack(cols, axis=-1)


def _project(f: QuarticForm, w: np.ndarray, chart: int, iterations: int) -> np.ndarray:
    for _ in range(iterations):
        val = evaluate(f, _lift(w, chart))
        g = _chart_gradient(f, w, chart)
        gg = np.einsum("ij,ij->i", g, g)
        step = np.where(gg > 0, val / np.where(gg > 0, gg, 1.0), 0.0)
        w = w - step[:, None] * g
    return w


def _refine(f: QuarticForm, w: np.ndarray, chart: int, iterations: int, damping: float = 1e-3) -> np.ndarray:
    for _ in range(iterations):
        val = evaluate(f, _lift(w, chart))
        g = _chart_gradient(f, w, chart)
        H = _chart_hessian(f, w, chart)
        J = np.concatenate([g[:, None, :], H], axis=1)
        r = np.concatenate([val[:, None], g], axis=1)
        JtJ = np.einsum("nij,nik->njk", J, J)
        mu = damping * np.trace(JtJ, axis1=1, axis2=2)[:, None, None] * np.eye(3)
        delta = np.linalg.solve(JtJ + mu + 1e-300 * np.eye(3), np.einsum("nij,ni->nj", J, r)[..., None])
        w = w - delta[..., 0]
    return w


def _accepted(f: QuarticForm, w: np.ndarray, chart: int) -> tuple[np.ndarray, np.ndarray]:
    z = _lift(w, chart)
    zn = np.linalg.norm(z, axis=1)
    res = relative_residual(f, z)
    ok = np.isfinite(res) & (res < CONVERGED) & (zn < 1e6)
    grad = np.linalg.norm(gradient(f, z[ok]), axis=1) / (f.norm * zn[ok] ** 3)
    return ok, grad


def smoothness_sample(
    f: QuarticForm,
    n: int = 1000,
    seed: int = 1,
    box: float = 2.0,
    iterations: int = 60,
    refine_iterations: int = 25,
) -> SmoothnessSample:
    """Smallest projective gradient norm ``|grad f(z)| / (|coeffs| |z|^3)`` found.

    Starts are split between the charts ``z3 = 1`` and ``z0 = 1``; starts
    whose projection does not converge are skipped and counted.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    counts = (n - n // 2, n // 2)
    found = []
    converged = 0
    skipped = 0
    with np.errstate(all="ignore"):
        for chart, count in zip(CHARTS, counts):
            if count == 0:
                continue
            w = _project(f, rng.uniform(-box, box, size=(count, 3)), chart, iterations)
            ok, grad = _accepted(f, w, chart)
            converged += int(ok.sum())
            skipped += int((~ok).sum())
            found.append(grad)
            if ok.any():
                refined = _project(f, _refine(f, w[ok], chart, refine_iterations), chart, iterations // 3)
                ok2, grad2 = _accepted(f, refined, chart)
                found.append(grad2)
    if converged == 0:
        raise NoSurfacePoints("no sample converged onto the real surface")
    return SmoothnessSample(float(np.concatenate(found).min()), converged, skipped)
