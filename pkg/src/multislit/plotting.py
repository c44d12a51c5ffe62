"""Matplotlib figure rendering for the report commands.

Every function takes plain arrays plus an output path and writes a PNG.
The Agg backend is forced so the CLI works headless; nothing here opens
a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_DPI = 150


def _finish(fig, path) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return str(path)


def plot_beta_sweep(one_path_knowledge, visibility, coherence, n, path) -> str:
    """Visibility and normalized coherence against one-path knowledge."""
    fig, ax = plt.subplots(figsize=(5.4, 3.8))
    ax.plot(one_path_knowledge, visibility, "-", color="tab:blue", label="visibility")
    ax.plot(one_path_knowledge, coherence, "--", color="tab:red", label="coherence")
    ax.set_xlabel("one-path knowledge  1 - beta")
    ax.set_ylabel("visibility / coherence")
    ax.set_title(f"n = {n} paths, pi phase on path {n}")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.05)
    ax.grid(alpha=0.3)
    ax.legend(loc="best")
    return _finish(fig, path)


def plot_screen_pattern(x, curves, labels, fringe_width, path, ylabel="normalized density") -> str:
    """One or more screen-density curves over position x (meters)."""
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    for values, label in zip(curves, labels):
        ax.plot(x / fringe_width, values, label=label)
    ax.set_xlabel("x / fringe width")
    ax.set_ylabel(ylabel)
    ax.grid(alpha=0.3)
    if len(curves) > 1:
        ax.legend(loc="best", fontsize=8)
    return _finish(fig, path)


def plot_time_sweep(t_over_tau, visibility, coherence, n, path) -> str:
    """Fringe visibility and coherence against scaled decoherence time."""
    fig, ax = plt.subplots(figsize=(5.4, 3.8))
    ax.plot(t_over_tau, visibility, "-", color="tab:blue", label="visibility")
    ax.plot(t_over_tau, coherence, "--", color="tab:red", label="coherence")
    ax.set_xlabel("t / tau")
    ax.set_ylabel("visibility / coherence")
    ax.set_title(f"n = {n} paths under selective damping")
    ax.grid(alpha=0.3)
    ax.legend(loc="best")
    return _finish(fig, path)


def plot_phase_scan(theta, intensity, n, beta, path) -> str:
    fig, ax = plt.subplots(figsize=(5.4, 3.8))
    ax.plot(theta, intensity, color="tab:blue")
    ax.set_xlabel("phase theta (rad)")
    ax.set_ylabel("channel intensity")
    ax.set_title(f"n = {n}, beta = {beta:g}")
    ax.grid(alpha=0.3)
    return _finish(fig, path)


def plot_decay_table(t_over_tau, visibility, coherence, n, path) -> str:
    return plot_time_sweep(t_over_tau, visibility, coherence, n, path)
