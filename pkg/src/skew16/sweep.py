"""Lambda sweep: build and verify one configuration per lambda, one CSV row each."""
from __future__ import annotations

import csv
import math
import time
from pathlib import Path

import numpy as np

from .configuration import Tolerances, build_configuration
from .errors import Skew16Error
from .params import admissible_interval

COLUMNS = (
    "lambda",
    "lo",
    "hi",
    "width",
    "q0",
    "q1",
    "q2",
    "q3",
    "q4",
    "q5",
    "max_line_residual",
    "min_intra_pairing",
    "incidence_ok",
    "min_gradient_norm",
    "passed",
    "wall_time_s",
    "error",
)


def sweep_values(start: float, stop: float, steps: int) -> np.ndarray:
    if not 9.0 < start < stop:
        raise ValueError("sweep requires 9 < from < to")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    return np.linspace(start, stop, steps)


def sweep_row(lam: float, tolerances: Tolerances = Tolerances()) -> dict:
    t0 = time.perf_counter()
    iv = admissible_interval(lam)
    row = dict.fromkeys(COLUMNS, math.nan)
    row.update({"lambda": lam, "lo": iv.lo, "hi": iv.hi, "width": iv.width, "error": ""})
    try:
        config = build_configuration(lam, tolerances=tolerances)
    except Skew16Error as exc:
        row.update(incidence_ok=False, passed=False, error=f"{type(exc).__name__}: {exc}")
    else:
        e, o, r = config.q_even, config.q_odd, config.report
        row.update(
            q0=e.a, q2=e.b, q4=e.c, q1=o.a, q3=o.b, q5=o.c,
            max_line_residual=r.max_line_residual,
            min_intra_pairing=r.min_intra_family_pairing,
            incidence_ok=r.incidence_ok,
            min_gradient_norm=r.min_sampled_gradient_norm,
            passed=r.passed,
            error="; ".join(r.failures),
        )
    row["wall_time_s"] = time.perf_counter() - t0
    return {k: row[k] for k in COLUMNS}


def run_sweep(start: float, stop: float, steps: int, tolerances: Tolerances = Tolerances()) -> list[dict]:
    return [sweep_row(float(lam), tolerances) for lam in sweep_values(start, stop, steps)]


def write_csv(rows: list[dict], path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (format(v, ".17g") if isinstance(v, float) else v) for k, v in row.items()})
    return path
