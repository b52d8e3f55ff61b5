"""Plots a rank 3 fan truncation as its stereographic projection, with a CSV of projected rays."""
import logging
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns

import config
from utils.fan_approx import FanTruncation, ProjectionError, stereographic_project

# Set a consistent style and palette for all plots
sns.set_style("whitegrid")
sns.set_palette("deep")

# Fixed ids and no timestamp keep the SVG byte-identical between runs
plt.rcParams["svg.hashsalt"] = "mutfan"

DECIMALS = 6
EDGE_SAMPLES = 32


def _rays(fan: FanTruncation) -> list:
    return sorted({c.generators[0] for c in fan.cones if len(c.generators) == 1})


def projection_frame(fan: FanTruncation) -> pd.DataFrame:
    """
    Projected coordinates of every ray of the fan.

    Rays pointing at the projection pole are left out with a warning.

    Returns:
        pd.DataFrame: Columns label, g1..gn, x, y, one row per ray, sorted by generator.
    """
    rows = []
    for ray in _rays(fan):
        try:
            x, y = stereographic_project(ray)
        except ProjectionError as e:
            logging.warning(f"Skipping ray {list(ray)}: {e}")
            continue
        row = {"label": fan.labels.get(ray, ",".join(str(v) for v in ray))}
        row.update({f"g{i + 1}": v for i, v in enumerate(ray)})
        row.update({"x": round(x, DECIMALS), "y": round(y, DECIMALS)})
        rows.append(row)
    return pd.DataFrame(rows)


def _edge_path(u, v):
    u, v = np.array(u, dtype=float), np.array(v, dtype=float)
    u, v = u / np.linalg.norm(u), v / np.linalg.norm(v)
    points = []
    for t in np.linspace(0.0, 1.0, EDGE_SAMPLES):
        points.append(stereographic_project((1.0 - t) * u + t * v))
    return np.round(np.array(points), DECIMALS)


def write_projection_csv(fan: FanTruncation, filepath: str) -> str:
    """Writes the projected ray coordinates as CSV. Returns the filepath, or None for an empty fan."""
    df = projection_frame(fan)
    if df.empty:
        logging.warning("No rays to write for the projection CSV.")
        return None
    df.to_csv(filepath, index=False, lineterminator="\n")
    logging.info(f"Wrote projected coordinates: {filepath}")
    return filepath


def generate_fan_plot(fan: FanTruncation, filepath: str = None, filename: str = "fan.svg") -> str:
    """
    Draws the projected rays and the great-circle edges of the 2-dimensional cones.

    Args:
        fan (FanTruncation): A fan of rank 3 vectors.
        filepath (str): Where to save the SVG. Defaults to filename inside config.PLOT_DIR.
        filename (str): File name used when filepath is not given.

    Returns:
        str or None: The filepath of the saved plot, or None if there is nothing to draw.
    """
    rays = _rays(fan)
    if not rays:
        logging.warning("No rays provided for fan plot.")
        return None
    if len(rays[0]) != 3:
        logging.warning(f"Fan plots need rank 3 vectors, got rank {len(rays[0])}.")
        return None
    df = projection_frame(fan)
    if df.empty:
        logging.warning("No projectable rays for fan plot.")
        return None

    if filepath is None:
        os.makedirs(config.PLOT_DIR, exist_ok=True)
        filepath = os.path.join(config.PLOT_DIR, filename)

    plt.figure(figsize=(12, 7), facecolor='#f5f5f5')
    for cone in fan.cones:
        if len(cone.generators) != 2:
            continue
        try:
            path = _edge_path(*cone.generators)
        except ProjectionError:
            logging.warning(f"Edge {cone.generators} passes through the projection pole; not drawn.")
            continue
        plt.plot(path[:, 0], path[:, 1], color="gray", linewidth=1.5, alpha=0.8)
    sns.scatterplot(x="x", y="y", data=df, s=60, color="black", zorder=3)
    for _, row in df.iterrows():
        plt.annotate(row["label"], (row["x"], row["y"]), textcoords="offset points", xytext=(5, 5), fontsize=10)
    plt.title('Stereographic Projection of the Fan', fontsize=18)
    plt.gca().set_aspect("equal", adjustable="datalim")
    plt.grid(True, linestyle=':', alpha=0.6)
    plt.tight_layout()

    plt.savefig(filepath, format="svg", metadata={"Date": None})
    plt.close()
    logging.info(f"Generated fan plot: {filepath}")
    return filepath


__all__ = ["generate_fan_plot", "projection_frame", "write_projection_csv"]
