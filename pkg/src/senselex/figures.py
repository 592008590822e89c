"""Bar-chart renderings of a merge report, one PNG per decision family."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from senselex.derivations import DERIVATIVE_VERDICTS
from senselex.pipeline import MergeReport, sibling_path
from senselex.rules import RULE_KINDS
from senselex.synonyms import SYNONYM_VERDICTS
from senselex.taxonomy import ALIGNMENT_STATUSES

_PANELS = (
    ("synonyms", "synonym verdicts", "synonym_counts", SYNONYM_VERDICTS),
    ("derivatives", "derivative verdicts", "derivative_counts", DERIVATIVE_VERDICTS),
    ("alignments", "alignment statuses", "alignment_counts", ALIGNMENT_STATUSES),
    ("rules", "rule kinds", "rule_counts", RULE_KINDS),
)


def render_figures(report: MergeReport, out_path: Path | str) -> list[Path]:
    """Write one bar chart per decision family next to ``out_path``.

    Files are named ``{stem}.{family}.png`` and the list of written paths is
    returned in panel order.
    """
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for family, title, attribute, labels in _PANELS:
        counts = getattr(report, attribute)
        values = [counts.get(label, 0) for label in labels]
        fig, ax = plt.subplots(figsize=(6.4, 0.6 + 0.5 * len(labels)))
        try:
            positions = range(len(labels))
            ax.barh(positions, values, color="#4878b0")
            ax.set_yticks(list(positions))
            ax.set_yticklabels(labels)
            ax.invert_yaxis()
            ax.set_xlabel("count")
            ax.set_title(title)
            for position, value in zip(positions, values):
                ax.annotate(
                    str(value),
                    (value, position),
                    textcoords="offset points",
                    xytext=(4, 0),
                    va="center",
                    fontsize=9,
                )
            fig.tight_layout()
            target = sibling_path(out_path, f"{family}.png")
            fig.savefig(target, dpi=100, metadata={"Software": "senselex"})
            written.append(target)
        finally:
            plt.close(fig)
    return written
