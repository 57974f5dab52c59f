"""Tests for Chernoff coefficients, divergences, and incremental state."""

import math
from collections import Counter

import numpy as np
import pytest

from oodsplits.divergence import (
    CategoricalDistribution,
    PairedDistributionState,
    action_atom,
    atom_divergence,
    chernoff_coefficient,
    compound_divergence,
    divergence,
    scenario_atom,
)


def dist(counts):
    return CategoricalDistribution(dict(counts))


def batch_coefficient(left: Counter, right: Counter, alpha: float) -> float:
    """Independent from-scratch oracle for the incremental state."""
    num = 0.0
    for k in set(left) | set(right):
        cl, cr = left[k], right[k]
        if cl > 0 and cr > 0:
            num += cl**alpha * cr ** (1 - alpha)
    tl, tr = sum(left.values()), sum(right.values())
    return num / (tl**alpha * tr ** (1 - alpha))


class TestChernoffCoefficient:
    def test_identical_distributions(self):
        p = dist({"a": 3, "b": 5, "c": 2})
        assert chernoff_coefficient(p, p, 0.5) == 1.0
        assert chernoff_coefficient(p, p, 0.1) == 1.0

    def test_identical_up_to_scale(self):
        p = dist({"a": 1, "b": 2})
        q = dist({"a": 3, "b": 6})
        assert chernoff_coefficient(p, q, 0.3) == 1.0

    def test_disjoint_supports(self):
        p = dist({"a": 4})
        q = dist({"b": 4})
        assert chernoff_coefficient(p, q, 0.5) == 0.0
        assert divergence(p, q, 0.5) == 1.0

    def test_hand_evaluated_half(self):
        # sqrt(0.5 * 1) + sqrt(0.5 * 0) = 0.70711
        p = dist({"x": 1, "y": 1})
        q = dist({"x": 2})
        assert chernoff_coefficient(p, q, 0.5) == pytest.approx(0.70711, abs=1e-5)

    def test_hand_evaluated_tenth(self):
        # 0.5^0.1 * 1^0.9 = 0.93303
        p = dist({"x": 1, "y": 1})
        q = dist({"x": 2})
        assert chernoff_coefficient(p, q, 0.1) == pytest.approx(0.93303, abs=1e-5)
        assert divergence(p, q, 0.1) == pytest.approx(0.06697, abs=1e-5)

    def test_empty_distribution_rejected(self):
        p = dist({"a": 1})
        with pytest.raises(ValueError):
            chernoff_coefficient(p, dist({}), 0.5)
        with pytest.raises(ValueError):
            chernoff_coefficient(dist({"a": 0}), p, 0.5)

    def test_alpha_out_of_range_rejected(self):
        p = dist({"a": 1})
        for alpha in (0.0, 1.0, -0.3, 2.0):
            with pytest.raises(ValueError):
                chernoff_coefficient(p, p, alpha)

    def test_symmetry_alpha_complement(self):
        # C_alpha(P||Q) == C_{1-alpha}(Q||P)
        rng = np.random.default_rng(11)
        labels = list("abcdefg")
        for _ in range(200):
            p = dist({l: int(c) for l, c in zip(labels, rng.integers(0, 9, 7)) if c})
            q = dist({l: int(c) for l, c in zip(labels, rng.integers(0, 9, 7)) if c})
            if p.total == 0 or q.total == 0:
                continue
            alpha = float(rng.uniform(0.05, 0.95))
            lhs = chernoff_coefficient(p, q, alpha)
            rhs = chernoff_coefficient(q, p, 1 - alpha)
            assert lhs == pytest.approx(rhs, rel=1e-12)
            assert 0.0 <= lhs <= 1.0

    def test_scale_invariance(self):
        rng = np.random.default_rng(12)
        labels = list("abcde")
        for _ in range(100):
            pc = {l: int(c) for l, c in zip(labels, rng.integers(1, 9, 5))}
            qc = {l: int(c) for l, c in zip(labels, rng.integers(1, 9, 5))}
            m = int(rng.integers(2, 50))
            base = chernoff_coefficient(dist(pc), dist(qc), 0.3)
            scaled = chernoff_coefficient(
                dist({l: c * m for l, c in pc.items()}), dist(qc), 0.3
            )
            assert scaled == pytest.approx(base, abs=1e-12)


class TestAtomCompoundDivergence:
    def test_identical_intent_profiles(self):
        p = dist({"s1_a1": 5, "s1_a2": 3})
        assert compound_divergence(p, p) == 0.0

    def test_diagonal_swap(self):
        # train {s1_a1, s2_a2}, test {s1_a2, s2_a1}, equal sizes: scenario and
        # action marginals match by symmetry while intent supports are disjoint.
        n = 6
        train_atoms = CategoricalDistribution.from_labels(
            [scenario_atom("s1")] * n + [action_atom("a1")] * n
            + [scenario_atom("s2")] * n + [action_atom("a2")] * n
        )
        test_atoms = CategoricalDistribution.from_labels(
            [scenario_atom("s1")] * n + [action_atom("a2")] * n
            + [scenario_atom("s2")] * n + [action_atom("a1")] * n
        )
        assert atom_divergence(train_atoms, test_atoms) == 0.0
        train_c = dist({"s1_a1": n, "s2_a2": n})
        test_c = dist({"s1_a2": n, "s2_a1": n})
        assert compound_divergence(train_c, test_c) == 1.0

    def test_reported_similarity_complement(self):
        # intent similarity 0.39 corresponds to compound divergence 0.61
        assert 1.0 - 0.39 == pytest.approx(0.61)


class TestPairedDistributionState:
    def test_move_then_move_back(self):
        state = PairedDistributionState(["a", "a", "b"], ["b", "c"], 0.5)
        before = state.chernoff_sum
        state.move("a", from_left=True)
        state.move("a", from_left=False)
        assert state.chernoff_sum == pytest.approx(before, rel=1e-9)

    def test_move_from_zero_count_rejected(self):
        state = PairedDistributionState(["a"], ["b"], 0.5)
        with pytest.raises(ValueError):
            state.move("b", from_left=True)

    def test_move_last_count_zeroes_term(self):
        state = PairedDistributionState(["a", "b"], ["a"], 0.5)
        state.move("a", from_left=True)
        # "a" now absent on the left; its term contributes nothing
        assert state.chernoff_sum == pytest.approx(
            batch_coefficient(state.left, state.right, 0.5)
            * (state.total_left**0.5 * state.total_right**0.5)
        )

    @pytest.mark.parametrize("alpha", [0.5, 0.1])
    def test_random_moves_match_batch_recomputation(self, alpha):
        rng = np.random.default_rng(7)
        labels = list("abcdefgh")
        left = Counter({l: 20 for l in labels})
        right = Counter({l: 20 for l in labels})
        state = PairedDistributionState(left, right, alpha)
        for _ in range(1000):
            label = labels[rng.integers(0, len(labels))]
            from_left = bool(rng.integers(0, 2))
            src = state.left if from_left else state.right
            if src[label] == 0:
                continue
            state.move(label, from_left)
            inc = state.coefficient()
            ref = batch_coefficient(state.left, state.right, alpha)
            assert inc == pytest.approx(ref, rel=1e-9)

    def test_peek_matches_committed_move(self):
        rng = np.random.default_rng(3)
        labels = list("abcd")
        state = PairedDistributionState(
            Counter({l: 10 for l in labels}), Counter({l: 10 for l in labels}), 0.1
        )
        for _ in range(100):
            pick = [labels[i] for i in rng.integers(0, 4, size=2)]
            from_left = bool(rng.integers(0, 2))
            if any(state.left[l] if from_left else state.right[l] == 0 for l in pick):
                continue
            if min((state.left if from_left else state.right)[l] for l in set(pick)) < 2:
                continue
            predicted = state.peek(pick, from_left)
            for l in pick:
                state.move(l, from_left)
            assert state.coefficient() == pytest.approx(predicted, rel=1e-12)

    def test_empty_side_coefficient_zero(self):
        state = PairedDistributionState(["a"], ["a"], 0.5)
        state.move("a", from_left=True)
        assert state.coefficient() == 0.0
