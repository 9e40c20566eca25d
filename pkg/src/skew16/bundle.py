"""Run bundles: ``params.json``, ``lines.json``, ``quartic.json``, ``report.json``.

Output is deterministic: keys keep insertion order and every float is written
with 17 significant digits, so identical runs produce byte-identical files
and every value parses back exactly. Non-finite floats are written as null.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict
from pathlib import Path
from typing import Any

from . import __version__
from .configuration import Configuration, LineRecord, VerificationReport
from .errors import BundleError
from .heisenberg import GroupElement
from .lines import LineFrame, PlueckerLine
from .params import QTriple, SolveDiagnostics
from .quartic import BASIS_NAME, QuarticForm

def _fmt(obj: Any, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        text = format(obj, ".17g")
        return text if any(c in text for c in ".en") else text + ".0"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_fmt(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_fmt(v, 0) for v in obj) + "]"
        items = [inner + _fmt(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return _fmt(obj, 0) + "\n"


def write_json(path: Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path: Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise BundleError(f"missing bundle file {path}") from exc
    except json.JSONDecodeError as exc:
        raise BundleError(f"cannot parse {path}: {exc}") from exc


def _floats(values) -> list[float]:
    return [float(v) for v in values]


def _diag_dict(d: SolveDiagnostics) -> dict:
    return {"N": d.N, "M": d.M, "Delta": d.delta, "omega": d.omega, "root_sign": d.root_sign}


def params_dict(config: Configuration, seed: int) -> dict:
    iv = config.interval
    out = {
        "version": __version__,
        "lambda": float(config.lam),
        "q0": float(config.q0),
        "q1": float(config.q1),
        "root": config.root,
        "seed": int(seed),
        "interval": {"sigma": iv.sigma, "rho": iv.rho, "lo": iv.lo, "hi": iv.hi},
        "q_even": _floats(config.q_even.as_tuple()),
        "q_odd": _floats(config.q_odd.as_tuple()),
    }
    if config.diagnostics_even is not None and config.diagnostics_odd is not None:
        out["diagnostics"] = {
            "even": _diag_dict(config.diagnostics_even),
            "odd": _diag_dict(config.diagnostics_odd),
        }
    return out


def lines_dict(config: Configuration) -> dict:
    return {
        "version": __version__,
        "lines": [
            {
                "id": rec.id,
                "family": rec.family,
                "group_word": rec.group_word.label,
                "pluecker": _floats(rec.pluecker),
                "frame": None if rec.frame is None else _floats(rec.frame),
            }
            for rec in config.lines
        ],
    }


def quartic_dict(f: QuarticForm) -> dict:
    return {"basis": BASIS_NAME, "coefficients": _floats(f.coeffs), "normalization": f.normalization}


def report_dict(report: VerificationReport) -> dict:
    out = asdict(report)
    out["incidence_ok"] = report.incidence_ok
    out["passed"] = report.passed
    return out


def write_bundle(config: Configuration, out_dir, seed: int = 1) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_json(out / "params.json", params_dict(config, seed))
    write_json(out / "lines.json", lines_dict(config))
    write_json(out / "quartic.json", quartic_dict(config.quartic))
    if config.report is not None:
        write_json(out / "report.json", report_dict(config.report))
    return out


def parse_quartic(data: dict) -> QuarticForm:
    if data.get("basis") != BASIS_NAME:
        raise BundleError(f"unknown quartic basis {data.get('basis')!r}")
    try:
        return QuarticForm(tuple(float(c) for c in data["coefficients"]), data.get("normalization", "raw"))
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleError(f"malformed quartic record: {exc}") from exc


def parse_line(data: dict) -> LineRecord:
    try:
        frame = data.get("frame")
        return LineRecord(
            id=int(data["id"]),
            family=data["family"],
            group_word=GroupElement.parse(data["group_word"]),
            pluecker=PlueckerLine(*(float(v) for v in data["pluecker"])),
            frame=None if frame is None else LineFrame(*(float(v) for v in frame)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleError(f"malformed line record: {exc}") from exc


def _parse_diag(data: dict) -> SolveDiagnostics:
    return SolveDiagnostics(
        N=float(data["N"]),
        M=float(data["M"]),
        delta=float(data["Delta"]),
        omega=float(data["omega"]),
        root_sign=data["root_sign"],
    )


def read_bundle(in_dir) -> tuple[Configuration, dict]:
    """Load a configuration from a bundle; returns it with the raw params record."""
    src = Path(in_dir)
    if not src.is_dir():
        raise BundleError(f"bundle directory {src} does not exist")
    params = read_json(src / "params.json")
    lines = read_json(src / "lines.json")
    quartic = parse_quartic(read_json(src / "quartic.json"))
    try:
        even = QTriple(*(float(v) for v in params["q_even"]), parity="even")
        odd = QTriple(*(float(v) for v in params["q_odd"]), parity="odd")
        diags = params.get("diagnostics") or {}
        config = Configuration(
            lam=float(params["lambda"]),
            q0=float(params["q0"]),
            q1=float(params["q1"]),
            root=params["root"],
            q_even=even,
            q_odd=odd,
            lines=[parse_line(rec) for rec in lines["lines"]],
            quartic=quartic,
            diagnostics_even=_parse_diag(diags["even"]) if "even" in diags else None,
            diagnostics_odd=_parse_diag(diags["odd"]) if "odd" in diags else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleError(f"malformed bundle: {exc}") from exc
    return config, params
