"""CSV tables and PNG figures for suite results."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def write_csv(res, path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(res.columns)
        w.writerows(res.rows)
    return path


def _numeric_columns(res) -> list:
    cols = []
    for i, c in enumerate(res.columns):
        if res.rows and all(isinstance(r[i], (int, float)) and not isinstance(r[i], bool)
                            for r in res.rows):
            cols.append((i, c))
    return cols


def write_png(res, path: Path) -> Path:
    """Grouped bar chart of the numeric columns, one group per row."""
    labels = [" ".join(str(r[j]) for j in range(len(r))
                       if not isinstance(r[j], (int, float)) or isinstance(r[j], bool) or j == 0)
              for r in res.rows]
    cols = [(i, c) for i, c in _numeric_columns(res) if i != 0] or _numeric_columns(res)
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(res.rows) + 3), 4))
    if cols and res.rows:
        width = 0.8 / len(cols)
        for k, (i, c) in enumerate(cols):
            xs = [j + k * width for j in range(len(res.rows))]
            ax.bar(xs, [r[i] for r in res.rows], width, label=c)
        ax.set_xticks([j + 0.4 - width / 2 for j in range(len(res.rows))])
        ax.set_xticklabels([lb[:28] for lb in labels], rotation=40, ha="right", fontsize=7)
        ax.legend(fontsize=8)
    else:
        ax.text(0.5, 0.5, "no numeric data", ha="center", va="center")
        ax.set_axis_off()
    status = "PASS" if res.ok else "FAIL"
    ax.set_title(f"{res.name}: {status} ({res.passed} passed, {res.failed} failed)")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def write_report(res, outdir) -> list:
    """Write NAME.csv, NAME.png and NAME.json into outdir; return the paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [write_csv(res, out / f"{res.name}.csv"), write_png(res, out / f"{res.name}.png")]
    summary = out / f"{res.name}.json"
    summary.write_text(json.dumps(res.to_json(), indent=1, default=str))
    paths.append(summary)
    return paths
