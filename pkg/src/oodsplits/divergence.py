"""Categorical label distributions and Chernoff-coefficient divergences.

The similarity between two frequency distributions P and Q is the Chernoff
coefficient ``C_alpha = sum_k p_k^alpha * q_k^(1-alpha)``, a value in [0, 1];
the divergence is ``1 - C_alpha``. Atom distributions (scenario and action
labels pooled into one support) use alpha=0.5, compound distributions
(intents) use alpha=0.1.

``PairedDistributionState`` keeps the unnormalised Chernoff sum incrementally
up to date so a greedy splitter can score single-sample moves in O(1).
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field

Label = Hashable

ATOM_ALPHA = 0.5
COMPOUND_ALPHA = 0.1

# Integer counts drift-free; the float chernoff_sum is refreshed from scratch
# after this many committed moves to bound accumulated rounding error.
REFRESH_INTERVAL = 100_000


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")


def _term(c: float, d: float, alpha: float) -> float:
    """One unnormalised Chernoff term c^alpha * d^(1-alpha), with 0^x = 0."""
    if c == 0 or d == 0:
        return 0.0
    if alpha == 0.5:
        # sqrt is correctly rounded, which keeps symmetric optima exact
        return math.sqrt(c) * math.sqrt(d)
    return c**alpha * d ** (1.0 - alpha)


def scenario_atom(label: str) -> tuple[str, str]:
    """Namespace a scenario label into the pooled atom support."""
    return ("scenario", label)


def action_atom(label: str) -> tuple[str, str]:
    """Namespace an action label into the pooled atom support."""
    return ("action", label)


@dataclass(frozen=True)
class CategoricalDistribution:
    """Frequency distribution over hashable labels with integer counts."""

    counts: dict[Label, int]

    def __post_init__(self) -> None:
        for label, c in self.counts.items():
            if c < 0:
                raise ValueError(f"negative count for label {label!r}")

    @classmethod
    def from_labels(cls, labels: Iterable[Label]) -> CategoricalDistribution:
        return cls(dict(Counter(labels)))

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def probability(self, label: Label) -> float:
        total = self.total
        if total == 0:
            raise ValueError("empty distribution has no probabilities")
        return self.counts.get(label, 0) / total

    def support(self) -> set[Label]:
        return {k for k, c in self.counts.items() if c > 0}


def chernoff_coefficient(
    p: CategoricalDistribution, q: CategoricalDistribution, alpha: float
) -> float:
    """Chernoff coefficient C_alpha(P||Q) over the union support.

    Labels missing from either side contribute nothing (0^x = 0 for
    x in (0, 1)). Raises ValueError for an empty distribution or an
    alpha outside (0, 1).
    """
    _check_alpha(alpha)
    tp, tq = p.total, q.total
    if tp == 0 or tq == 0:
        raise ValueError("Chernoff coefficient undefined for empty distribution")
    # Identical distributions have coefficient exactly 1 regardless of alpha.
    probs_p = {k: c / tp for k, c in p.counts.items() if c > 0}
    probs_q = {k: c / tq for k, c in q.counts.items() if c > 0}
    if probs_p == probs_q:
        return 1.0
    num = math.fsum(
        _term(p.counts.get(k, 0), q.counts.get(k, 0), alpha)
        for k in p.support() | q.support()
    )
    return num / _term(tp, tq, alpha)


def divergence(
    p: CategoricalDistribution, q: CategoricalDistribution, alpha: float
) -> float:
    """Distribution divergence 1 - C_alpha(P||Q), in [0, 1]."""
    return 1.0 - chernoff_coefficient(p, q, alpha)


def atom_divergence(
    train_atoms: CategoricalDistribution, test_atoms: CategoricalDistribution
) -> float:
    """Divergence of pooled scenario/action label distributions (alpha=0.5)."""
    return divergence(train_atoms, test_atoms, ATOM_ALPHA)


def compound_divergence(
    train_compounds: CategoricalDistribution, test_compounds: CategoricalDistribution
) -> float:
    """Divergence of intent (label-combination) distributions (alpha=0.1)."""
    return divergence(train_compounds, test_compounds, COMPOUND_ALPHA)


@dataclass
class PairedDistributionState:
    """Two count histograms plus an incrementally maintained Chernoff sum.

    The sum ``sum_k left_k^alpha * right_k^(1-alpha)`` is kept over integer
    counts, so moving one count between sides touches exactly one term.
    Mutable and single-owner; use :meth:`peek` to score hypothetical moves
    without committing them.
    """

    left: Counter
    right: Counter
    alpha: float
    chernoff_sum: float = field(init=False)
    _moves_since_refresh: int = field(init=False, default=0)

    def __init__(self, left: Iterable[Label] | Counter, right: Iterable[Label] | Counter, alpha: float):
        _check_alpha(alpha)
        self.left = Counter(left)
        self.right = Counter(right)
        self.alpha = alpha
        self._moves_since_refresh = 0
        self.refresh()

    def refresh(self) -> None:
        """Recompute the Chernoff sum from scratch."""
        self.chernoff_sum = math.fsum(
            _term(self.left[k], self.right[k], self.alpha)
            for k in self.left.keys() | self.right.keys()
        )
        self._moves_since_refresh = 0

    @property
    def total_left(self) -> int:
        return sum(self.left.values())

    @property
    def total_right(self) -> int:
        return sum(self.right.values())

    def coefficient(self) -> float:
        """Current C_alpha; 0.0 when either side is empty (fully divergent)."""
        tl, tr = self.total_left, self.total_right
        if tl == 0 or tr == 0:
            return 0.0
        return self.chernoff_sum / _term(tl, tr, self.alpha)

    def move(self, label: Label, from_left: bool, count: int = 1) -> None:
        """Move ``count`` occurrences of ``label`` to the other side."""
        src, dst = (self.left, self.right) if from_left else (self.right, self.left)
        if src[label] < count:
            raise ValueError(f"cannot move {count} of {label!r}: only {src[label]} present")
        old = _term(self.left[label], self.right[label], self.alpha)
        src[label] -= count
        dst[label] += count
        new = _term(self.left[label], self.right[label], self.alpha)
        self.chernoff_sum += new - old
        self._moves_since_refresh += count
        if self._moves_since_refresh >= REFRESH_INTERVAL:
            self.refresh()

    def peek(self, labels: Sequence[Label], from_left: bool) -> float:
        """Coefficient if one count of each label moved, without committing.

        Duplicate labels move multiple counts. O(len(labels)).
        """
        deltas = Counter(labels)
        n = len(labels)
        tl = self.total_left + (-n if from_left else n)
        tr = self.total_right + (n if from_left else -n)
        if tl < 0 or tr < 0:
            raise ValueError("peek would move more counts than exist")
        if tl == 0 or tr == 0:
            return 0.0
        new_sum = self.chernoff_sum
        for label, m in deltas.items():
            cl, cr = self.left[label], self.right[label]
            if (cl if from_left else cr) < m:
                raise ValueError(f"cannot move {m} of {label!r}")
            nl, nr = (cl - m, cr + m) if from_left else (cl + m, cr - m)
            new_sum += _term(nl, nr, self.alpha) - _term(cl, cr, self.alpha)
        return new_sum / _term(tl, tr, self.alpha)

    def update_left(self, label: Label, delta: int) -> None:
        """Add or remove counts on the left side only (right side frozen)."""
        if self.left[label] + delta < 0:
            raise ValueError(f"left count of {label!r} would go negative")
        old = _term(self.left[label], self.right[label], self.alpha)
        self.left[label] += delta
        new = _term(self.left[label], self.right[label], self.alpha)
        self.chernoff_sum += new - old
        self._moves_since_refresh += abs(delta)
        if self._moves_since_refresh >= REFRESH_INTERVAL:
            self.refresh()

    def peek_update_left(self, labels: Sequence[Label], delta: int) -> float:
        """Coefficient if ``delta`` counts of each label were added to the left."""
        deltas = Counter(labels)
        tl = self.total_left + delta * len(labels)
        tr = self.total_right
        if tl < 0:
            raise ValueError("peek would remove more counts than exist")
        if tl == 0 or tr == 0:
            return 0.0
        new_sum = self.chernoff_sum
        for label, m in deltas.items():
            cl, cr = self.left[label], self.right[label]
            if cl + delta * m < 0:
                raise ValueError(f"left count of {label!r} would go negative")
            new_sum += _term(cl + delta * m, cr, self.alpha) - _term(cl, cr, self.alpha)
        return new_sum / _term(tl, tr, self.alpha)
