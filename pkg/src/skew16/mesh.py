"""Triangle mesh of the real surface in an affine chart, plus clipped lines.

The chart ``z_k = 1`` is sampled on a ``resolution^3`` grid spanning
``[-box, box]^3`` and triangulated with marching cubes. Lines are written as
two-point polylines clipped to the same box.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from skimage.measure import marching_cubes

from .configuration import LineRecord
from .errors import EmptyIsoSurface
from .lines import spanning_points
from .quartic import QuarticForm, evaluate, gradient

CHARTS = {"z0": 0, "z1": 1, "z2": 2, "z3": 3}


@dataclass(frozen=True)
class MeshOptions:
    chart: str = "z3"
    box_half_width: float = 2.0
    resolution: int = 30

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ValueError(f"chart must be one of {sorted(CHARTS)}, got {self.chart!r}")
        if not self.box_half_width > 0:
            raise ValueError("box_half_width must be positive")
        if int(self.resolution) != self.resolution or self.resolution < 8:
            raise ValueError("resolution must be an integer >= 8")

    @property
    def axis(self) -> int:
        return CHARTS[self.chart]

    @property
    def spacing(self) -> float:
        return 2.0 * self.box_half_width / (self.resolution - 1)


@dataclass
class Mesh:
    vertices: np.ndarray
    faces: np.ndarray
    options: MeshOptions
    max_grid_gradient: float

    @property
    def cell_diagonal(self) -> float:
        return math.sqrt(3.0) * self.options.spacing

    @property
    def residual_bound(self) -> float:
        return self.cell_diagonal * self.max_grid_gradient


@dataclass
class Polyline:
    name: str
    family: str
    id: int
    points: np.ndarray


def lift(w: np.ndarray, axis: int) -> np.ndarray:
    return np.insert(np.asarray(w, dtype=float), axis, 1.0, axis=-1)


def chart_values(f: QuarticForm, w: np.ndarray, axis: int) -> np.ndarray:
    return evaluate(f, lift(w, axis))


def chart_gradient_norm(f: QuarticForm, w: np.ndarray, axis: int) -> np.ndarray:
    keep = [j for j in range(4) if j != axis]
    return np.linalg.norm(gradient(f, lift(w, axis))[..., keep], axis=-1)


def mesh_surface(f: QuarticForm, options: MeshOptions = MeshOptions()) -> Mesh:
    n = options.resolution
    axis = options.axis
    ticks = np.linspace(-options.box_half_width, options.box_half_width, n)
    grid = np.stack(np.meshgrid(ticks, ticks, ticks, indexing="ij"), axis=-1)
    values = chart_values(f, grid, axis)
    if not (values.min() < 0.0 < values.max()):
        raise EmptyIsoSurface("the quartic does not change sign inside the box")
    h = options.spacing
    verts, faces, _, _ = marching_cubes(values, level=0.0, spacing=(h, h, h))
    verts = verts - options.box_half_width
    max_grad = float(chart_gradient_norm(f, grid, axis).max())
    return Mesh(vertices=verts, faces=faces.astype(np.int64), options=options, max_grid_gradient=max_grad)


def vertex_residuals(f: QuarticForm, mesh: Mesh) -> np.ndarray:
    return np.abs(chart_values(f, mesh.vertices, mesh.options.axis))


def _clip(p0: np.ndarray, d: np.ndarray, half: float) -> Optional[tuple[float, float]]:
    lo, hi = -math.inf, math.inf
    for k in range(3):
        if abs(d[k]) < 1e-15:
            if abs(p0[k]) > half:
                return None
            continue
        t1 = (-half - p0[k]) / d[k]
        t2 = (half - p0[k]) / d[k]
        lo = max(lo, min(t1, t2))
        hi = min(hi, max(t1, t2))
    if lo >= hi:
        return None
    return lo, hi


def clip_line(record: LineRecord, options: MeshOptions) -> Optional[Polyline]:
    """Affine segment of a line inside the box, or None if it misses the box."""
    axis = options.axis
    a, b = spanning_points(record.pluecker)
    ak, bk = a[axis], b[axis]
    denom = ak * ak + bk * bk
    if denom < 1e-24:
        return None  # line at infinity of this chart
    base = (ak * a + bk * b) / denom
    direction = bk * a - ak * b
    keep = [j for j in range(4) if j != axis]
    p0, d = base[keep], direction[keep]
    span = _clip(p0, d, options.box_half_width)
    if span is None:
        return None
    pts = np.array([p0 + span[0] * d, p0 + span[1] * d])
    return Polyline(f"{record.family}_{record.id:02d}", record.family, record.id, pts)


def clip_lines(records: Sequence[LineRecord], options: MeshOptions) -> list[Polyline]:
    return [pl for pl in (clip_line(rec, options) for rec in records) if pl is not None]


def write_obj(mesh: Mesh, path) -> Path:
    path = Path(path)
    with path.open("w", encoding="ascii") as fh:
        o = mesh.options
        fh.write(f"# skew16 surface chart={o.chart} box={o.box_half_width:.17g} resolution={o.resolution}\n")
        fh.write("o surface\n")
        for v in mesh.vertices:
            fh.write(f"v {v[0]:.9f} {v[1]:.9f} {v[2]:.9f}\n")
        for face in mesh.faces + 1:
            fh.write(f"f {face[0]} {face[1]} {face[2]}\n")
    return path


def write_polylines(polylines: Sequence[Polyline], path) -> Path:
    path = Path(path)
    with path.open("w", encoding="ascii") as fh:
        fh.write("# skew16 lines clipped to the mesh box\n")
        offset = 1
        for pl in polylines:
            fh.write(f"o {pl.name}\n")
            fh.write(f"# family={pl.family} id={pl.id}\n")
            for p in pl.points:
                fh.write(f"v {p[0]:.9f} {p[1]:.9f} {p[2]:.9f}\n")
            fh.write("l " + " ".join(str(offset + i) for i in range(len(pl.points))) + "\n")
            offset += len(pl.points)
    return path


def sidecar_path(out_file) -> Path:
    out = Path(out_file)
    return out.with_name(out.stem + ".lines.obj")
