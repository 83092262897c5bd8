"""Render an enumeration run to a directory: delimited models plus figures.

The figures summarize the run: per-output delay in evaluations, the
weight trajectory (visibly monotone for ordered runs), and the count of
models per weight level.  When the connective profile certifies degree
2, the level chart overlays the guaranteed lower bound on the upper
levels.
"""

from __future__ import annotations

import os
from math import comb

from .clones import clone_profile
from .enumeration import ORDER_NONE, effective_base, enumerate_models


def write_report(
    phi,
    out_dir,
    order=ORDER_NONE,
    weights=None,
    limit=None,
    force_bruteforce=False,
):
    """Run an enumeration and write models.tsv plus three PNG charts.

    Returns a dict mapping artifact names to file paths.  Propagates
    Intractable and OpenCase untouched so callers can map exit codes.
    """
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    stream = enumerate_models(
        phi, order=order, weights=weights, force_bruteforce=force_bruteforce
    )
    rows = []
    for bits, weight in stream:
        rows.append(("".join(map(str, bits)), weight))
        if limit is not None and len(rows) >= limit:
            break

    os.makedirs(out_dir, exist_ok=True)
    paths = {}

    tsv = os.path.join(out_dir, "models.tsv")
    with open(tsv, "w") as fh:
        for bits, weight in rows:
            fh.write(f"{bits}\t{weight}\n")
    paths["models"] = tsv

    delays = stream.delays[: len(rows)]
    fig, ax = plt.subplots(figsize=(7, 4))
    if delays:
        ax.plot(range(1, len(delays) + 1), delays, lw=1.0, color="tab:blue")
        ax.axhline(
            stream.max_delay_evals, color="tab:red", ls="--", lw=0.8,
            label=f"max = {stream.max_delay_evals}",
        )
        ax.legend(loc="upper right")
    ax.set_xlabel("output index")
    ax.set_ylabel("evaluations since previous output")
    ax.set_title(f"delay profile ({stream.algorithm})")
    fig.tight_layout()
    delays_png = os.path.join(out_dir, "delays.png")
    fig.savefig(delays_png, dpi=120)
    plt.close(fig)
    paths["delays"] = delays_png

    fig, ax = plt.subplots(figsize=(7, 4))
    if rows:
        ax.step(
            range(1, len(rows) + 1),
            [w for _, w in rows],
            where="post",
            color="tab:green",
        )
    ax.set_xlabel("output index")
    ax.set_ylabel("weight")
    ax.set_title(f"weight trajectory (order: {order})")
    fig.tight_layout()
    weights_png = os.path.join(out_dir, "weights.png")
    fig.savefig(weights_png, dpi=120)
    plt.close(fig)
    paths["weights"] = weights_png

    counts = {}
    for _, w in rows:
        counts[w] = counts.get(w, 0) + 1
    fig, ax = plt.subplots(figsize=(7, 4))
    if counts:
        ks = sorted(counts)
        ax.bar(ks, [counts[k] for k in ks], color="tab:gray", label="models")
        n = len(phi.variables)
        if weights is None and n and clone_profile(effective_base(phi)).all_0sep_deg2:
            top = [k for k in range(-(-n // 2), n + 1)]
            ax.plot(
                top,
                [comb(n - 1, k - 1) for k in top],
                "r_",
                markersize=12,
                label="guaranteed minimum",
            )
        ax.legend(loc="best")
    ax.set_xlabel("weight")
    ax.set_ylabel("model count")
    ax.set_title("models per weight level")
    fig.tight_layout()
    levels_png = os.path.join(out_dir, "levels.png")
    fig.savefig(levels_png, dpi=120)
    plt.close(fig)
    paths["levels"] = levels_png

    return paths
