"""Figures for search and classification reports, rendered off-screen."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def value_histogram(counts: Counter, n: int, path: str | Path) -> Path:
    """Log-scaled histogram of |M_n| over the enumerated vectors (zero excluded)."""
    path = Path(path)
    mags = np.array([abs(v) for v in counts], dtype=float)
    weights = np.array(list(counts.values()), dtype=float)
    keep = mags > 0
    fig, ax = plt.subplots(figsize=(7, 4))
    if keep.any():
        hi = np.log10(mags[keep].max()) + 0.1
        bins = np.logspace(0, max(hi, 1.0), 60)
        ax.hist(mags[keep], bins=bins, weights=weights[keep], color="#3b6ea8")
        ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(f"|M_{n}|")
    ax.set_ylabel("vectors (up to symmetry)")
    ax.set_title(f"Circulant determinant magnitudes, n = {n}")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def tag_chart(tags: dict[int, str], path: str | Path) -> Path:
    """Cumulative good and bad counts against the prime bound."""
    path = Path(path)
    primes = sorted(tags)
    good = np.cumsum([tags[p] == "good" for p in primes])
    bad = np.cumsum([tags[p] == "bad" for p in primes])
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.step(primes, good, where="post", label="good", color="#2a9d5c")
    ax.step(primes, bad, where="post", label="bad", color="#c0392b")
    ax.set_xlabel("p (p = 1 mod 15)")
    ax.set_ylabel("primes up to p")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
