"""Figure rendering for the report command.

Everything here draws to files through the Agg backend, so reports can
be produced on headless machines alongside the CSV output.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .evaluate import FourCaseTally  # noqa: E402


def save_figure(fig, path: Path, dpi: int = 150) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    return path


def correct_counts_figure(reports: list[dict]):
    """Grouped horizontal bars: correct answers per dataset, per method."""
    names = [rep["dataset"] for rep in reports]
    ov = [rep.get("correct_overlap") or 0 for rep in reports]
    nonov = [rep.get("correct_nonoverlap") or 0 for rep in reports]
    height = max(2.5, 0.5 * len(names) + 1.2)
    fig, ax = plt.subplots(figsize=(7.5, height))
    ypos = range(len(names))
    bar_h = 0.38
    ax.barh([y + bar_h / 2 for y in ypos], ov, height=bar_h,
            label="overlapping", color="#4878d0")
    ax.barh([y - bar_h / 2 for y in ypos], nonov, height=bar_h,
            label="non-overlapping", color="#ee854a")
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("correct test strings")
    ax.set_title("Correct answers by counting method")
    ax.legend(loc="lower right")
    fig.tight_layout()
    return fig


def tally_figure(tally: FourCaseTally, p_value: float | None = None):
    """2x2 correctness matrix with margins, one cell per case."""
    cells = [
        [tally.case1, tally.case2],
        [tally.case3, tally.case4],
    ]
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    ax.imshow(cells, cmap="Blues", vmin=0)
    for r in range(2):
        for col in range(2):
            share = cells[r][col] / tally.total if tally.total else 0.0
            color = "white" if share > 0.45 else "black"
            ax.text(col, r, f"{cells[r][col]}", ha="center", va="center",
                    color=color, fontsize=14)
    # Rows follow overlapping correctness, columns non-overlapping.
    ax.set_xticks([0, 1])
    ax.set_xticklabels(["correct", "incorrect"])
    ax.set_yticks([0, 1])
    ax.set_yticklabels(["correct", "incorrect"])
    ax.set_xlabel(f"non-overlapping  ({tally.correct_nonoverlap} correct)")
    ax.set_ylabel(f"overlapping  ({tally.correct_overlap} correct)")
    title = f"Paired outcomes over {tally.total} test strings"
    if p_value is not None:
        title += f"\nexact test p = {p_value:.3g}"
    ax.set_title(title)
    fig.tight_layout()
    return fig


def render_report_figures(reports: list[dict], out_dir: Path,
                          p_value: float | None = None) -> list[Path]:
    """Render the standard report figures; returns the written paths."""
    written = [
        save_figure(correct_counts_figure(reports), out_dir / "correct_counts.png")
    ]
    total = FourCaseTally(0, 0, 0, 0)
    have_tallies = True
    for rep in reports:
        if rep.get("tally") is None:
            have_tallies = False
            break
        total = total + FourCaseTally(**rep["tally"])
    if have_tallies and total.total:
        written.append(save_figure(tally_figure(total, p_value), out_dir / "tally.png"))
    return written
