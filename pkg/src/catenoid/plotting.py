"""Matplotlib rendering of generating curves and period sweeps.

Figures are written with fixed metadata and a fixed SVG hash salt so that
repeated runs produce identical files.
"""

from __future__ import annotations

import io
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_STYLE = {
    "font.family": "serif",
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.linewidth": 0.8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "xtick.direction": "in",
    "ytick.direction": "in",
    "lines.linewidth": 1.0,
    "svg.hashsalt": "catenoid",
    "svg.fonttype": "path",
    "path.simplify": False,
}

PAD = 0.05


def _padded(lo, hi):
    span = hi - lo
    if span == 0:
        span = 1.0
    return lo - PAD * span, hi + PAD * span


def _save(fig, target, fmt):
    # drop timestamps so output bytes depend only on the data
    metadata = {"svg": {"Date": None}, "png": {"Software": None}, "pdf": {"CreationDate": None}}.get(fmt)
    fig.savefig(target, format=fmt, metadata=metadata)
    plt.close(fig)


def curve_figure(artifact):
    """Figure of a generating curve with its ambient frame.

    For ``c > 0`` the projected curve is drawn inside the disk of radius
    ``1/sqrt(c)``; for ``c <= 0`` the half-plane ``y >= 0`` is drawn with the
    rotation axis along ``y = 0``.
    """
    meta = artifact.metadata
    x = np.asarray(artifact.column(1))
    y = np.asarray(artifact.column(2))
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 4.5) if meta["c"] > 0 else (6.0, 3.6))
        if meta["c"] > 0:
            r = 1.0 / math.sqrt(meta["c"])
            t = np.linspace(0.0, 2.0 * math.pi, 721)
            ax.plot(r * np.cos(t), r * np.sin(t), color="0.6", lw=0.8)
            ax.set_xlim(*_padded(-r, r))
            ax.set_ylim(*_padded(-r, r))
            ax.set_xlabel(r"$x_{n+1}$")
            ax.set_ylabel(r"$x_{n+2}$")
        else:
            xlo, xhi = _padded(float(x.min()), float(x.max()))
            ax.axhline(0.0, color="0.6", lw=0.8)
            ax.fill_between([xlo, xhi], 0.0, float(y.max()) * (1 + PAD), color="0.95", lw=0)
            ax.set_xlim(xlo, xhi)
            ax.set_ylim(-PAD * float(y.max()), float(y.max()) * (1 + PAD))
            ax.set_xlabel("x (along axis)")
            ax.set_ylabel("y (distance to axis)")
        ax.plot(x, y, color="k")
        ax.set_aspect("equal")
        ax.set_title(f"c = {meta['c']:g}, n = {meta['n']}, a = {meta['a']:g}")
        fig.tight_layout()
    return fig


def period_figure(rows, n):
    a = [r["a"] for r in rows if r["error"] == ""]
    t = [r["T_over_pi"] for r in rows if r["error"] == ""]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.4))
        ax.plot(a, t, color="k", marker=".", ms=3)
        ax.axhline(1.0, color="0.6", lw=0.8, ls="--")
        ax.axhline(math.sqrt(2.0), color="0.6", lw=0.8, ls="--")
        ax.set_xlabel("a")
        ax.set_ylabel(r"$T(a)/\pi$")
        ax.set_title(f"n = {n}")
        fig.tight_layout()
    return fig


def write_figure(fig, path: str) -> None:
    fmt = path.rsplit(".", 1)[-1].lower() if "." in path else "svg"
    with plt.rc_context(_STYLE):
        _save(fig, path, fmt)


def figure_svg_text(fig) -> str:
    buf = io.StringIO()
    with plt.rc_context(_STYLE):
        _save(fig, buf, "svg")
    return buf.getvalue()
