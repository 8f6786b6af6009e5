"""Figure rendering for test reports and study summaries.

Figures are written next to the delimited/JSON outputs; plotting is
always optional and never affects the numeric pipeline.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["plot_test_report", "plot_study_result"]


def plot_test_report(report, outdir: str) -> list[str]:
    """Render per-candidate p-values and replicate histograms.

    Returns the list of files written.
    """
    os.makedirs(outdir, exist_ok=True)
    written = []

    fig, ax = plt.subplots(figsize=(6, 4))
    idx = [c.index for c in report.candidates]
    pvals = [c.p for c in report.candidates]
    ax.bar(idx, pvals, color="steelblue", width=0.6)
    ax.axhline(report.config.alpha, color="crimson", ls="--", lw=1, label=f"alpha = {report.config.alpha:g}")
    ax.set_xticks(idx)
    ax.set_xlabel("candidate axis (by decreasing eigenvalue)")
    ax.set_ylabel("bootstrap p-value")
    ax.set_ylim(0, 1.05)
    ax.set_title(f"global p = {report.global_p:.4f}  ({'reject' if report.reject else 'no rejection'})")
    ax.legend(loc="upper right")
    fig.tight_layout()
    path = os.path.join(outdir, "candidate_pvalues.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    d = len(report.candidates)
    fig, axes = plt.subplots(1, d, figsize=(4 * d, 3.2), squeeze=False)
    for ax, cand in zip(axes[0], report.candidates):
        ax.hist(cand.replicates, bins=30, color="gray", alpha=0.8)
        ax.axvline(cand.T, color="crimson", lw=1.5, label=f"T = {cand.T:.3f}")
        ax.set_title(f"candidate {cand.index}: p = {cand.p:.4f}")
        ax.set_xlabel("bootstrap statistic")
        ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    path = os.path.join(outdir, "bootstrap_replicates.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)
    return written


def plot_study_result(result, label: str, outdir: str) -> list[str]:
    """Render the study rejection rate with its Wilson interval."""
    os.makedirs(outdir, exist_ok=True)
    fig, ax = plt.subplots(figsize=(5, 4))
    rate = result.rejection_rate
    err = np.array([[rate - result.wilson_low], [result.wilson_high - rate]])
    ax.bar([0], [rate], width=0.4, color="steelblue")
    ax.errorbar([0], [rate], yerr=err, fmt="none", ecolor="black", capsize=5)
    for j, r in enumerate(result.per_candidate_rates, start=1):
        ax.bar([j], [r], width=0.4, color="lightsteelblue")
    ax.set_xticks(range(len(result.per_candidate_rates) + 1))
    ax.set_xticklabels(["global"] + [f"cand {j}" for j in range(1, len(result.per_candidate_rates) + 1)])
    ax.set_ylabel("rejection rate")
    ax.set_ylim(0, 1.0)
    ax.set_title(f"{label}  (R = {result.repetitions})")
    fig.tight_layout()
    path = os.path.join(outdir, "rejection_rates.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return [path]
