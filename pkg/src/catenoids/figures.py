"""Regenerate the four figure sets as mesh/curve files plus PNG previews.

Every artifact is listed with its SHA-256 in ``manifest.json``; running
:func:`make_figures` twice with the same arguments yields identical bytes.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path

import numpy as np

from .export import bundle_summary, sha256, write_csv, write_meta, write_obj
from .mesh import MeshBundle, RunConfig, curve_polyline, sample_and_mesh
from .trochoid import (
    fit_hypotrochoid,
    hypotrochoid,
    hypotrochoid_period,
    trochoid_params,
)

log = logging.getLogger(__name__)


def figure_configs(n_r: int = 48, n_theta: int = 96, jobs: int = 1) -> dict[str, RunConfig]:
    """Mesh configurations of the surface figures, keyed by file stem."""
    common = dict(n_r=n_r, n_theta=n_theta, jobs=jobs, r_min=math.exp(-3), r_max=math.exp(3))
    return {
        "fig1_C_II_2": RunConfig(family="II", m=2, second_sheet=True, include_lines=True, **common),
        "fig1_image_f_II_2": RunConfig(family="II", m=2, **common),
        "fig2_C_II_3": RunConfig(family="II", m=3, include_lines=True, **common),
        "fig2_C_II_3_half": RunConfig(family="II", m=3, include_lines=True, theta_range=(0.0, math.pi), **common),
        "fig4_ads_2": RunConfig(family="AdS", m=2, n_r=n_theta, n_theta=n_theta, jobs=jobs),
        "fig4_ads_3": RunConfig(family="AdS", m=3, n_r=n_theta, n_theta=n_theta, jobs=jobs),
    }


def _render_mesh(bundle: MeshBundle, path: Path, title: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig = plt.figure(figsize=(5, 5), dpi=100)
    ax = fig.add_subplot(projection="3d")
    v = bundle.vertices
    ax.plot_trisurf(v[:, 0], v[:, 1], v[:, 2], triangles=bundle.triangles, color="#9ab", linewidth=0, alpha=0.8)
    for line in bundle.polylines:
        p = line.points
        ax.plot(p[:, 0], p[:, 1], p[:, 2], color="#c33", linewidth=1)
    ax.set_title(title)
    ax.set_box_aspect((1, 1, 1))
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def _render_trochoids(curves: dict[int, np.ndarray], rolls: dict[int, np.ndarray], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, len(curves), figsize=(4 * len(curves), 4), dpi=100)
    for ax, (m, pts) in zip(np.atleast_1d(axes), curves.items()):
        ax.plot(pts[:, 0], pts[:, 1], color="#236", linewidth=1.5, label="gamma")
        ax.plot(rolls[m][:, 0], rolls[m][:, 1], color="#e83", linewidth=0.8, linestyle="--", label="roulette")
        ax.set_aspect("equal")
        ax.set_title(f"m = {m}")
    np.atleast_1d(axes)[0].legend(loc="upper right", fontsize="small")
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def make_figures(outdir, png: bool = True, jobs: int = 1, n_r: int = 48, n_theta: int = 96) -> dict:
    """Write every figure artifact into ``outdir`` and return the manifest."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    summaries = {}

    for stem, config in figure_configs(n_r, n_theta, jobs).items():
        bundle = sample_and_mesh(config)
        written.append(write_obj(bundle, outdir / f"{stem}.obj"))
        summaries[stem] = bundle_summary(bundle)
        if png:
            _render_mesh(bundle, outdir / f"{stem}.png", stem)
            written.append(outdir / f"{stem}.png")
        log.info("%s: %s", stem, summaries[stem])

    curves, rolls = {}, {}
    for m in (2, 3, 4):
        line = curve_polyline("trochoid", 720, m=m)
        curves[m] = line.points
        written.append(write_csv(line, outdir / f"fig3_trochoid_{m}.csv"))
        fit = fit_hypotrochoid(m, n=2000)
        params = trochoid_params(m)
        s = np.linspace(0, hypotrochoid_period(params, fit.fixed), 1440)
        rolls[m] = hypotrochoid(params, s, fixed=fit.fixed)
        summaries[f"fig3_trochoid_{m}"] = {"samples": 720, "fixed_circle": fit.fixed}
    if png:
        _render_trochoids(curves, rolls, outdir / "fig3_trochoids.png")
        written.append(outdir / "fig3_trochoids.png")

    manifest_path = outdir / "manifest.json"
    write_meta(manifest_path, {"png": png, "n_r": n_r, "n_theta": n_theta}, written, {"counts": summaries})
    return {"manifest": str(manifest_path), "files": {p.name: sha256(p) for p in written}}
