"""PNG rendering of tripartite-negativity traces next to the CSV output."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# past this many curves a sweep is drawn as a density map
MAX_LINES = 8


def plot_runs(series_list, labels, path, title="", param=None, values=None):
    """Draw N123(t) for one run or a sweep and save it to ``path``."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    numeric = values is not None and all(isinstance(v, (int, float)) for v in values)
    if len(series_list) > MAX_LINES and numeric:
        t = series_list[0].times
        grid = np.array([s.n123 for s in series_list])
        mesh = ax.pcolormesh(t, np.asarray(values, dtype=float), grid, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label="N123")
        ax.set_ylabel(param or "parameter")
    else:
        for s, lab in zip(series_list, labels):
            ax.plot(s.times, s.n123, label=lab)
        ax.set_ylabel("N123")
        if len(series_list) > 1:
            ax.legend(title=param, fontsize="small")
    ax.set_xlabel("t a")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
