"""Decomposable local scores computed from data.

A scorer is any callable ``scorer(data, child, parents) -> float`` where
``parents`` is a bitmask not containing ``child``; lower is better. Only MDL
ships.
"""

import math

import numpy as np

from .core import iter_members
from .ingest import Dataset

# Above this many nominal parent configurations the running key is
# re-compressed to the observed configurations, keeping bincount small.
_COMPRESS_AT = 1 << 16


def _parent_keys(data: Dataset, parents: int):
    """Per-observation parent-configuration index and the index range."""
    key = np.zeros(data.m, dtype=np.int64)
    size = 1
    for j in iter_members(parents):
        key = key * data.arities[j] + data.codes[j]
        size *= data.arities[j]
        if size > _COMPRESS_AT:
            _, key = np.unique(key, return_inverse=True)
            key = key.astype(np.int64).reshape(-1)
            size = int(key.max()) + 1
    return key, size


def contingency_counts(data: Dataset, child: int, parents: int) -> np.ndarray:
    """Dense table ``N[u, x]`` over all nominal parent configurations ``u``.

    Configurations are indexed in mixed radix with the highest-numbered parent
    varying fastest.
    """
    if (parents >> child) & 1:
        raise ValueError("child must not be one of its own parents")
    key = np.zeros(data.m, dtype=np.int64)
    q = 1
    for j in iter_members(parents):
        key = key * data.arities[j] + data.codes[j]
        q *= data.arities[j]
    r = data.arities[child]
    counts = np.bincount(key * r + data.codes[child], minlength=q * r)
    return counts.reshape(q, r)


def _xlog2x_sum(counts: np.ndarray) -> float:
    c = counts[counts > 0].astype(float)
    return float(np.sum(c * np.log2(c)))


def mdl_terms(data: Dataset, child: int, parents: int) -> tuple[float, float]:
    """``(H, K)``: empirical conditional code length and parameter penalty, in bits."""
    if (parents >> child) & 1:
        raise ValueError("child must not be one of its own parents")
    r = data.arities[child]
    key, size = _parent_keys(data, parents)
    joint = np.bincount(key * r + data.codes[child], minlength=size * r)
    marginal = np.bincount(key, minlength=size)
    h = max(_xlog2x_sum(marginal) - _xlog2x_sum(joint), 0.0)

    q = 1
    for j in iter_members(parents):
        q *= data.arities[j]
    k = math.log2(data.m) / 2.0 * (r - 1) * q
    return h, k


def mdl_local_score(data: Dataset, child: int, parents: int) -> float:
    h, k = mdl_terms(data, child, parents)
    return h + k


SCORES = {"mdl": mdl_local_score}


def get_scorer(name: str):
    try:
        return SCORES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown score {name!r}; available: {', '.join(SCORES)}") from None
