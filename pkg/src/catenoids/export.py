"""Deterministic file writers: OBJ, ASCII PLY, CSV and a JSON sidecar.

Floats are written with ``'%.9g'``, which never consults the locale, and
negative zero is normalised so that re-running a configuration reproduces
files byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections.abc import Iterable
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .mesh import MeshBundle, Polyline

FORMATS = ("obj", "ply", "csv", "json")
_SUFFIX = {".obj": "obj", ".ply": "ply", ".csv": "csv", ".json": "json"}


def fmt(x: float) -> str:
    return "%.9g" % (float(x) + 0.0)


def _row(values: Iterable) -> str:
    return " ".join(fmt(v) for v in values)


def format_from_path(path) -> str:
    fmt_ = _SUFFIX.get(Path(path).suffix.lower())
    if fmt_ is None:
        raise ConfigError(f"cannot infer the export format from {path!r}; pass it explicitly")
    return fmt_


def _write_text(path, lines: list[str]) -> Path:
    path = Path(path)
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("\n".join(lines))
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def _as3(points: np.ndarray) -> np.ndarray:
    """Pad planar curves with z = 0; reject raw 4D data."""
    points = np.asarray(points, dtype=float)
    if points.shape[1] == 2:
        return np.column_stack([points, np.zeros(len(points))])
    if points.shape[1] != 3:
        raise ConfigError("OBJ and PLY need 3D vertices; use projection hollowball/solid_torus or CSV")
    return points


def _geometry(obj):
    """Vertex block, triangles and polylines (as index runs) of a bundle or polyline."""
    if isinstance(obj, Polyline):
        pts = _as3(obj.points)
        return pts, np.empty((0, 3), dtype=int), [np.arange(len(pts))]
    vertices = [_as3(obj.vertices)]
    runs = []
    start = len(obj.vertices)
    for line in obj.polylines:
        pts = _as3(line.points)
        vertices.append(pts)
        runs.append(start + np.arange(len(pts)))
        start += len(pts)
    return np.concatenate(vertices), obj.triangles, runs


def write_obj(obj: MeshBundle | Polyline, path) -> Path:
    vertices, triangles, runs = _geometry(obj)
    lines = ["v " + _row(v) for v in vertices]
    lines += ["f %d %d %d" % tuple(t + 1) for t in triangles]
    lines += ["l " + " ".join(str(i + 1) for i in run) for run in runs]
    return _write_text(path, lines)


def write_ply(obj: MeshBundle | Polyline, path) -> Path:
    vertices, triangles, runs = _geometry(obj)
    edges = [(a, b) for run in runs for a, b in zip(run[:-1], run[1:])]
    lines = [
        "ply",
        "format ascii 1.0",
        f"element vertex {len(vertices)}",
        "property double x",
        "property double y",
        "property double z",
        f"element face {len(triangles)}",
        "property list uchar int vertex_indices",
    ]
    if edges:
        lines += [f"element edge {len(edges)}", "property int vertex1", "property int vertex2"]
    lines.append("end_header")
    lines += [_row(v) for v in vertices]
    lines += ["3 %d %d %d" % tuple(t) for t in triangles]
    lines += ["%d %d" % e for e in edges]
    return _write_text(path, lines)


def write_csv(obj: MeshBundle | Polyline, path) -> Path:
    """One row per vertex (bundle) or per curve sample (polyline).

    Bundle columns: ``r,theta,x0,x1,x2,x3[,px,py,pz],region,residual``; for
    the AdS family the ``r`` column carries ``s``.
    """
    if isinstance(obj, Polyline):
        lines = [",".join(obj.columns)]
        lines += [",".join(fmt(x) for x in p) for p in obj.points]
        return _write_text(path, lines)
    header = ["r", "theta", "x0", "x1", "x2", "x3"]
    if obj.projected:
        header += ["px", "py", "pz"]
    header += ["region", "residual"]
    lines = [",".join(header)]
    for i in range(len(obj.u)):
        cells = [fmt(obj.u[i]), fmt(obj.theta[i])]
        cells += [fmt(x) for x in obj.points4[i]]
        if obj.projected:
            cells += [fmt(x) for x in obj.vertices[i]]
        cells += [str(obj.region[i]), fmt(obj.residual[i])]
        lines.append(",".join(cells))
    return _write_text(path, lines)


def sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def write_meta(path, config: dict, files: Iterable = (), extra: dict | None = None) -> Path:
    """JSON sidecar: configuration, library version and file checksums.

    File names are stored relative to the sidecar's directory.  No
    timestamps, sorted keys.
    """
    from . import __version__

    path = Path(path)
    base = path.parent
    checksums = {}
    for f in files:
        f = Path(f)
        checksums[os.path.relpath(f, base).replace(os.sep, "/")] = sha256(f)
    doc = {"config": config, "version": __version__, "files": checksums}
    if extra:
        doc.update(extra)
    text = json.dumps(doc, sort_keys=True, indent=2)
    return _write_text(path, text.split("\n"))


def bundle_summary(bundle: MeshBundle) -> dict:
    return {
        "vertices": int(len(bundle.vertices)),
        "triangles": int(len(bundle.triangles)),
        "refined_cells": int(bundle.refined_cells),
        "dropped_triangles": int(bundle.dropped_triangles),
        "polylines": int(len(bundle.polylines)),
    }


def export(obj: MeshBundle | Polyline, fmt_: str, path) -> Path:
    """Write ``obj`` to ``path`` in the named format."""
    fmt_ = fmt_.lower()
    if fmt_ == "obj":
        return write_obj(obj, path)
    if fmt_ == "ply":
        return write_ply(obj, path)
    if fmt_ == "csv":
        return write_csv(obj, path)
    if fmt_ == "json":
        if isinstance(obj, Polyline):
            return write_meta(path, {"kind": obj.kind, **obj.params}, extra={"samples": len(obj.points)})
        return write_meta(path, obj.config.to_dict(), extra={"counts": bundle_summary(obj)})
    raise ConfigError(f"unknown format {fmt_!r}; expected one of {', '.join(FORMATS)}")
