"""ROC curves and AUC."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata


@dataclass(frozen=True, eq=False)
class RocReport:
    fpr: np.ndarray
    tpr: np.ndarray
    auc: float

    @property
    def points(self):
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))


def _check(scores, labels):
    scores = np.asarray(scores, dtype=np.float64).ravel()
    labels = np.asarray(labels).ravel()
    if scores.shape != labels.shape:
        raise ValueError(f"{scores.size} scores but {labels.size} labels")
    if not np.all((labels == 0) | (labels == 1)):
        raise ValueError("labels must be 0 or 1")
    n_pos = int(labels.sum())
    if n_pos == 0 or n_pos == labels.size:
        raise ValueError("ROC/AUC need both classes among the labels")
    return scores, labels.astype(bool)


def roc_points(scores, labels) -> RocReport:
    """One ROC point per distinct score, sweeping the threshold downward."""
    scores, pos = _check(scores, labels)
    order = np.argsort(-scores, kind="mergesort")
    s, p = scores[order], pos[order]
    last_of_group = np.r_[s[1:] != s[:-1], True]
    tp = np.cumsum(p)[last_of_group]
    fp = np.cumsum(~p)[last_of_group]
    tpr = np.r_[0, tp] / tp[-1]
    fpr = np.r_[0, fp] / fp[-1]
    area = float(np.sum(np.diff(fpr) * (tpr[1:] + tpr[:-1]) / 2))
    return RocReport(fpr, tpr, area)


def auc(scores, labels) -> float:
    """Mann-Whitney AUC; tied positive/negative pairs count one half."""
    scores, pos = _check(scores, labels)
    n_pos = int(pos.sum())
    n_neg = pos.size - n_pos
    ranks = rankdata(scores)
    return float((ranks[pos].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg))


def write_roc_csv(report: RocReport, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["fpr", "tpr"])
        for f, t in report.points:
            w.writerow([repr(f), repr(t)])


def roc_svg(report: RocReport, title: str = "", size: int = 320) -> str:
    """Minimal standalone SVG of the ROC curve with FPR/TPR axes."""
    pad = 40
    span = size - 2 * pad

    def xy(f, t):
        return f"{pad + f * span:.2f},{size - pad - t * span:.2f}"

    curve = " ".join(xy(f, t) for f, t in report.points)
    area = " ".join([xy(0, 0), curve, xy(1, 0)])
    return "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="12">',
        f'<rect x="{pad}" y="{pad}" width="{span}" height="{span}" fill="white" stroke="black"/>',
        f'<polygon points="{area}" fill="#1f77b4" fill-opacity="0.25"/>',
        f'<polyline points="{xy(0, 0)} {xy(1, 1)}" fill="none" stroke="gray" stroke-dasharray="4 3"/>',
        f'<polyline points="{curve}" fill="none" stroke="#1f77b4" stroke-width="2"/>',
        f'<text x="{size / 2}" y="{size - 10}" text-anchor="middle">FPR</text>',
        f'<text x="12" y="{size / 2}" text-anchor="middle" '
        f'transform="rotate(-90 12 {size / 2})">TPR</text>',
        f'<text x="{size / 2}" y="{pad - 12}" text-anchor="middle">'
        f'{title} AUC = {report.auc:.4f}</text>',
        "</svg>",
        "",
    ])
