"""Campaign report figures.

Renders the outcome of a detection campaign to PNG files so a report
directory can hold charts next to the CSV. Import cost is deferred to call
time and the Agg backend is forced, so headless runs never touch a display.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path

from .attacks import CampaignReport

OUTCOME_ORDER = ("correct-decode", "repaired", "detected", "false-decode")
_COLORS = {
    "correct-decode": "#4c9f70",
    "repaired": "#3a7ca5",
    "detected": "#d9a441",
    "false-decode": "#c23b22",
}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def outcome_figure(report: CampaignReport, path: Path) -> Path:
    """Stacked bars: trial outcomes per attack kind."""
    plt = _pyplot()
    by_kind: dict[str, Counter] = {}
    for r in report.records:
        by_kind.setdefault(r.kind, Counter())[r.outcome] += 1
    kinds = sorted(by_kind)
    fig, ax = plt.subplots(figsize=(max(6.0, 1.1 * len(kinds)), 4.0))
    bottoms = [0] * len(kinds)
    for outcome in OUTCOME_ORDER:
        heights = [by_kind[k].get(outcome, 0) for k in kinds]
        ax.bar(kinds, heights, bottom=bottoms, label=outcome,
               color=_COLORS[outcome])
        bottoms = [b + h for b, h in zip(bottoms, heights)]
    ax.set_ylabel("trials")
    ax.set_title("extraction outcome per attack kind")
    ax.legend(fontsize=8)
    ax.tick_params(axis="x", labelrotation=20)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def property_figure(report: CampaignReport, path: Path) -> Path:
    """Bars: how often each structural property was violated."""
    plt = _pyplot()
    names = list(report.breakdown) or ["none"]
    values = [report.breakdown.get(n, 0) for n in names]
    fig, ax = plt.subplots(figsize=(max(5.0, 1.0 * len(names)), 3.6))
    ax.bar(names, values, color="#5b5f97")
    ax.set_ylabel("violations")
    ax.set_title("violated properties across the campaign")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_campaign_figures(report: CampaignReport, out_dir) -> list[Path]:
    """Write every campaign chart into out_dir; returns the created paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [
        outcome_figure(report, out / "outcomes_by_attack.png"),
        property_figure(report, out / "violated_properties.png"),
    ]
