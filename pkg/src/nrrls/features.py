"""Min-max normalization and polynomial feature expansion.

Scalers and expanders are immutable after construction; applying them is a
pure function, so they can be shared freely across folds and threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .errors import DimensionMismatchError

MAX_ORDER = 6

# Expanded dimension above which the CLI falls back from the full multinomial
# basis to per-feature powers.
DEFAULT_DIM_LIMIT = 2000


class ExpansionMode(Enum):
    FULL_MULTINOMIAL = "full"
    PER_FEATURE_POWERS = "powers"


@dataclass(frozen=True)
class MinMaxScaler:
    mins: np.ndarray
    maxs: np.ndarray


def scaler_fit(X) -> MinMaxScaler:
    """Fit per-feature min and max on the rows of X."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1:
        raise DimensionMismatchError(f"need a non-empty 2-d matrix, got shape {X.shape}")
    return MinMaxScaler(mins=X.min(axis=0), maxs=X.max(axis=0))


def scaler_apply(scaler: MinMaxScaler, x):
    """Map x to (x - min) / (max - min) per feature.

    Constant features map to 0; values outside the fitted range are not
    clipped, so out-of-range inputs land outside [0, 1].
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != scaler.mins.shape[0]:
        raise DimensionMismatchError(
            f"input has {x.shape[-1]} features, scaler has {scaler.mins.shape[0]}"
        )
    span = scaler.maxs - scaler.mins
    safe = np.where(span > 0, span, 1.0)
    out = (x - scaler.mins) / safe
    return np.where(span > 0, out, 0.0)


def full_multinomial_dim(raw_dim: int, order: int) -> int:
    """Number of monomials of total degree <= order in raw_dim variables."""
    return comb(raw_dim + order, order)


def per_feature_powers_dim(raw_dim: int, order: int) -> int:
    return 1 + raw_dim * order


def choose_mode(raw_dim: int, order: int, dim_limit: int = DEFAULT_DIM_LIMIT) -> ExpansionMode:
    """Full multinomial while its dimension stays within dim_limit, else powers."""
    if full_multinomial_dim(raw_dim, order) <= dim_limit:
        return ExpansionMode.FULL_MULTINOMIAL
    return ExpansionMode.PER_FEATURE_POWERS


@dataclass(frozen=True)
class PolyExpander:
    order: int
    raw_dim: int
    mode: ExpansionMode = ExpansionMode.FULL_MULTINOMIAL

    def __post_init__(self):
        if not 1 <= self.order <= MAX_ORDER:
            raise ValueError(f"order must be in 1..{MAX_ORDER}, got {self.order}")
        if self.raw_dim < 1:
            raise ValueError(f"raw_dim must be >= 1, got {self.raw_dim}")

    @property
    def out_dim(self) -> int:
        if self.mode is ExpansionMode.FULL_MULTINOMIAL:
            return full_multinomial_dim(self.raw_dim, self.order)
        return per_feature_powers_dim(self.raw_dim, self.order)

    def monomials(self):
        """Index tuples of the full-multinomial basis in graded-lex order.

        The empty tuple (constant term) comes first, then degree-1 terms in
        feature order, then degree-2, and so on.
        """
        terms = []
        for k in range(self.order + 1):
            terms.extend(combinations_with_replacement(range(self.raw_dim), k))
        return terms


def expand(e: PolyExpander, x) -> np.ndarray:
    """Expand a single raw feature vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != e.raw_dim:
        raise DimensionMismatchError(
            f"input has shape {x.shape}, expander expects ({e.raw_dim},)"
        )
    return expand_rows(e, x[None, :])[0]


def expand_rows(e: PolyExpander, X) -> np.ndarray:
    """Expand each row of an n x raw_dim matrix. Deterministic and order-stable."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != e.raw_dim:
        raise DimensionMismatchError(
            f"input has shape {X.shape}, expander expects (n, {e.raw_dim})"
        )
    n = X.shape[0]
    if e.mode is ExpansionMode.PER_FEATURE_POWERS:
        blocks = [np.ones((n, 1))]
        p = np.ones_like(X)
        for _ in range(e.order):
            p = p * X
            blocks.append(p)
        return np.hstack(blocks)
    cols = np.empty((n, e.out_dim))
    for j, term in enumerate(e.monomials()):
        c = np.ones(n)
        for idx in term:
            c = c * X[:, idx]
        cols[:, j] = c
    return cols
