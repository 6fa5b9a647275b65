"""Figure rendering for the batch report: per-degree basis counts and the
composition summary, written as PNG files next to the delimited output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_irr_counts(counts: dict[int, int], path) -> None:
    """Bar chart of irreducible-word counts by degree."""
    degrees = sorted(counts)
    values = [counts[d] for d in degrees]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(degrees, values, color="#4878a8")
    ax.set_xlabel("degree")
    ax.set_ylabel("basis words")
    ax.set_title("Quotient basis size by degree")
    ax.set_xticks(degrees)
    for d, v in zip(degrees, values):
        ax.annotate(str(v), (d, v), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_composition_summary(records, path) -> None:
    """Bar chart of composition outcomes grouped by ambiguity-word degree."""
    from .words import deg

    by_degree: dict[int, list[int]] = {}
    for rec in records:
        slot = by_degree.setdefault(deg(rec.word), [0, 0])
        slot[0 if rec.trivial else 1] += 1
    degrees = sorted(by_degree)
    trivial = [by_degree[d][0] for d in degrees]
    residual = [by_degree[d][1] for d in degrees]
    fig, ax = plt.subplots(figsize=(6, 4))
    if degrees:
        ax.bar(degrees, trivial, color="#5a9e6f", label="trivial")
        ax.bar(degrees, residual, bottom=trivial, color="#b24a3c",
               label="nonzero residual")
        ax.legend()
        ax.set_xticks(degrees)
    else:
        ax.text(0.5, 0.5, "no compositions", ha="center", va="center",
                transform=ax.transAxes)
    ax.set_xlabel("ambiguity word degree")
    ax.set_ylabel("compositions")
    ax.set_title("Composition check summary")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
