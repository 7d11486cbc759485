"""Renders the report's plot series to PNG files."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_DPI = 150
_CLASS_COLORS = {"0": "#1f77b4", "1": "#d62728"}


def _class_color(label: str) -> str:
    return _CLASS_COLORS.get(label, "#555555")


def render_histograms(histograms: dict, out_dir: str) -> list[str]:
    paths = []
    for name, block in histograms.items():
        edges = block["bin_edges"]
        centers = [(lo + hi) / 2.0 for lo, hi in zip(edges[:-1], edges[1:])]
        width = (edges[1] - edges[0]) * 0.42
        fig, ax = plt.subplots(figsize=(7, 4))
        for k, (label, counts) in enumerate(sorted(block["per_class"].items())):
            offset = (k - (len(block["per_class"]) - 1) / 2.0) * width
            ax.bar(
                [c + offset for c in centers],
                counts,
                width=width,
                label=f"class {label}",
                color=_class_color(label),
            )
        ax.set_xlabel(name)
        ax.set_ylabel("instances")
        ax.set_title(f"{name} by class")
        ax.legend()
        fig.tight_layout()
        path = os.path.join(out_dir, f"hist_{name}.png")
        fig.savefig(path, dpi=_DPI)
        plt.close(fig)
        paths.append(path)
    return paths


def render_scatter(scatter: list[dict], out_dir: str) -> str:
    fig = plt.figure(figsize=(6, 5))
    ax = fig.add_subplot(projection="3d")
    for label in sorted({str(p["label"]) for p in scatter}):
        pts = [p for p in scatter if str(p["label"]) == label]
        ax.scatter(
            [p["discrimination"] for p in pts],
            [p["difficulty"] for p in pts],
            [p["guessing"] for p in pts],
            label=f"class {label}",
            color=_class_color(label),
            s=14,
        )
    ax.set_xlabel("discrimination")
    ax.set_ylabel("difficulty")
    ax.set_zlabel("guessing")
    ax.legend()
    path = os.path.join(out_dir, "param_scatter.png")
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def render_probability(probability_by_instance: list[dict], out_dir: str) -> str:
    fig, ax = plt.subplots(figsize=(8, 4))
    probs = [p["probability"] for p in probability_by_instance]
    ax.plot(range(len(probs)), probs, marker=".", linewidth=0.8, color="#1f77b4")
    ax.axhline(0.5, color="#999999", linestyle="--", linewidth=0.8)
    ax.set_xlabel("test instance (descending discrimination)")
    ax.set_ylabel("success probability")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title("probability of a correct answer per instance")
    fig.tight_layout()
    path = os.path.join(out_dir, "probability_by_instance.png")
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def render_icc(icc_curves: dict, theta: float, out_dir: str) -> str:
    fig, ax = plt.subplots(figsize=(6, 4))
    grid = icc_curves["theta_grid"]
    for item_id, curve in sorted(icc_curves["items"].items()):
        ax.plot(
            grid,
            curve["probabilities"],
            label=f"{item_id} (a={curve['discrimination']:.2f})",
        )
    ax.axvline(theta, color="#999999", linestyle="--", linewidth=0.8, label="ability")
    ax.set_xlabel("ability")
    ax.set_ylabel("success probability")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title("item characteristic curves")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(out_dir, "icc_pair.png")
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def render_all(series: dict, theta: float, out_dir: str) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    paths = render_histograms(series["histograms"], out_dir)
    paths.append(render_scatter(series["scatter"], out_dir))
    paths.append(render_probability(series["probability_by_instance"], out_dir))
    paths.append(render_icc(series["icc_curves"], theta, out_dir))
    return paths
