"""Deterministic test-field corpus.

Five shapes cycle through the corpus: indicators, constants on a block,
two-level steps, truncated radial power spikes, and blockwise random
nonnegative fields.  Everything is driven by one integer seed, so a corpus
is reproducible bit for bit; fields are supported inside the central part
of the window (operators need room around the support).
"""

from __future__ import annotations

import numpy as np

from .fields import SampledField

KINDS = ("indicator", "constant", "two_level", "radial_power", "random_blocks")


def make_field(kind: str, h: float, n_cells: int, rng: np.random.Generator,
               support_fraction: float = 0.5) -> SampledField:
    xs = (np.arange(n_cells) - (n_cells - 1) / 2.0) * h
    half = support_fraction * n_cells * h / 2.0
    vals = np.zeros(n_cells)
    if kind == "indicator":
        w = rng.uniform(0.15, 0.9) * half
        c = rng.uniform(-0.8, 0.8) * (half - w)
        vals = ((np.abs(xs - c) < w)).astype(float)
    elif kind == "constant":
        level = rng.uniform(0.2, 5.0)
        vals = np.where(np.abs(xs) < half, level, 0.0)
    elif kind == "two_level":
        w1 = rng.uniform(0.1, 0.5) * half
        c1 = rng.uniform(-0.9, 0.0) * half
        w2 = rng.uniform(0.1, 0.5) * half
        c2 = rng.uniform(0.0, 0.9) * half
        v1, v2 = rng.uniform(0.2, 4.0, size=2)
        vals = v1 * (np.abs(xs - c1) < w1) + v2 * (np.abs(xs - c2) < w2)
    elif kind == "radial_power":
        beta = rng.uniform(0.2, 0.85)
        c = rng.uniform(-0.4, 0.4) * half
        with np.errstate(divide="ignore"):
            spike = np.abs(xs - c) ** (-beta)
        vals = np.where(np.abs(xs) < half, np.minimum(spike, h ** (-beta)), 0.0)
    elif kind == "random_blocks":
        blocks = rng.integers(6, 24)
        levels = rng.uniform(0.0, 3.0, size=blocks)
        rep = int(np.ceil(n_cells / blocks))
        prof = np.repeat(levels, rep)[:n_cells]
        vals = np.where(np.abs(xs) < half, prof, 0.0)
    else:
        raise ValueError(f"unknown corpus kind {kind!r}")
    if not np.any(vals > 0):
        vals[n_cells // 2] = 1.0  # keep every instance nontrivial
    return SampledField(h, vals)


def make_corpus(h: float, n_cells: int, count: int, seed: int,
                support_fraction: float = 0.5, kinds=KINDS) -> list:
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        kind = kinds[i % len(kinds)]
        out.append(make_field(kind, h, n_cells, rng, support_fraction))
    return out
