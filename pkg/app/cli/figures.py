"""Optional SVG renderings of the reproduced datasets; the CSVs stay the reference output."""
import logging
from pathlib import Path
from typing import Dict, List, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from app.errors import OutputError  # noqa: E402

logger = logging.getLogger(__name__)

# fixed ids and no date keep the SVG bytes stable between runs
plt.rcParams["svg.hashsalt"] = "aerprov"

Series = Dict[str, Tuple[List[float], List[float]]]


def render_lines(path: Path, series: Series, xlabel: str, ylabel: str, title: str,
                 logy: bool = False) -> Path:
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    try:
        for label, (xs, ys) in series.items():
            ax.plot(xs, ys, label=label, linewidth=1.2)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        if logy:
            ax.set_yscale("log")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as error:
        raise OutputError(f"cannot write {path}: {error.strerror}") from error
    finally:
        plt.close(fig)
    logger.info("wrote %s", path)
    return path
