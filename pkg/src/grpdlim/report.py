"""Batch report: per-groupoid skeletal statistics as CSV plus rendered
matplotlib figures, written side by side in an output directory."""

from __future__ import annotations

import csv
import os

from .equiv import skeleton
from .holim import loop_groupoid


def workspace_report(ws, out_dir):
    """Summarize every groupoid in a workspace.

    Writes ``summary.csv`` (one row per groupoid: sizes, number of
    isomorphism classes, automorphism group orders, loop groupoid size)
    and two PNG charts alongside it.  Returns the list of rows.
    """
    os.makedirs(out_dir, exist_ok=True)
    rows = []
    for name in ws.order:
        d = ws.decls[name]
        if d.kind != "groupoid":
            continue
        g = d.value
        rep = skeleton(g)
        lx = loop_groupoid(g)
        rows.append({
            "name": name,
            "objects": g.n_objects,
            "morphisms": g.n_morphisms,
            "iso_classes": len(rep.iso_classes),
            "aut_orders": " ".join(
                str(grp.order) for grp in rep.automorphism_groups
            ),
            "loop_objects": lx.groupoid.n_objects,
        })
    csv_path = os.path.join(out_dir, "summary.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(
            fh,
            fieldnames=[
                "name", "objects", "morphisms", "iso_classes",
                "aut_orders", "loop_objects",
            ],
        )
        writer.writeheader()
        writer.writerows(rows)
    _render_figures(rows, out_dir)
    return rows


def _render_figures(rows, out_dir):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [r["name"] for r in rows]

    fig, ax = plt.subplots(figsize=(max(4, len(rows)), 3.2))
    ax.bar(names, [r["objects"] for r in rows], label="objects")
    ax.bar(
        names,
        [r["iso_classes"] for r in rows],
        label="iso classes",
        alpha=0.7,
    )
    ax.set_ylabel("count")
    ax.set_title("groupoid sizes and isomorphism classes")
    ax.legend()
    fig.autofmt_xdate(rotation=45)
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "sizes.png"))
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(max(4, len(rows)), 3.2))
    ax.bar(names, [r["loop_objects"] for r in rows], color="tab:green")
    ax.set_ylabel("objects of the loop groupoid")
    ax.set_title("loop groupoid sizes")
    fig.autofmt_xdate(rotation=45)
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "loops.png"))
    plt.close(fig)
