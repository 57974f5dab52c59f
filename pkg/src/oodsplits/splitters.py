"""Construction of the four out-of-distribution split configurations.

Every splitter is a pure function of (corpus, config, seed): OOV splits strip
test intents from training, CG splits target a train-test compound divergence
with a greedy optimiser, double-action CG splits withhold test action pairs,
and microphone-mismatch splits restrict training to headset recordings. OOD
splits come paired with a matched in-distribution control sharing the same
test set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .corpus import Corpus, Utterance
from .divergence import (
    ATOM_ALPHA,
    COMPOUND_ALPHA,
    PairedDistributionState,
    action_atom,
    scenario_atom,
)
from .seeding import substream

# Commit threshold: an improvement smaller than this is float noise.
_EPS = 1e-12


class ConstructionError(Exception):
    """A split's constraints cannot be satisfied on this corpus."""


@dataclass(frozen=True)
class Split:
    """Disjoint train/dev/test utterance id sets (stored sorted)."""

    train: tuple[str, ...]
    dev: tuple[str, ...] = ()
    test: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "train", tuple(sorted(self.train)))
        object.__setattr__(self, "dev", tuple(sorted(self.dev)))
        object.__setattr__(self, "test", tuple(sorted(self.test)))
        subsets = [set(self.train), set(self.dev), set(self.test)]
        for a, b in itertools.combinations(subsets, 2):
            if a & b:
                raise ValueError(f"split subsets overlap: {sorted(a & b)[:5]}")

    def subsets(self) -> dict[str, tuple[str, ...]]:
        return {"train": self.train, "dev": self.dev, "test": self.test}


@dataclass(frozen=True)
class MicSplit:
    """Headset-only train/dev with a test set partitioned by microphone."""

    train: tuple[str, ...]
    dev: tuple[str, ...]
    test_headset: tuple[str, ...]
    test_other: tuple[str, ...]

    def __post_init__(self):
        for name in ("train", "dev", "test_headset", "test_other"):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name))))

    def subsets(self) -> dict[str, tuple[str, ...]]:
        return {
            "train": self.train,
            "dev": self.dev,
            "test_headset": self.test_headset,
            "test_other": self.test_other,
        }


@dataclass(frozen=True)
class PairSample:
    """Two utterances sharing a scenario but differing in action."""

    first: str
    second: str
    scenario: str
    action_pair: tuple[str, str]

    def __post_init__(self):
        object.__setattr__(self, "action_pair", tuple(sorted(self.action_pair)))
        if len(set(self.action_pair)) != 2:
            raise ValueError(f"actions must differ, got {self.action_pair}")

    @classmethod
    def from_utterances(cls, u1: Utterance, u2: Utterance) -> PairSample:
        if u1.scenario != u2.scenario:
            raise ValueError(
                f"pair scenarios differ: {u1.scenario!r} vs {u2.scenario!r}"
            )
        first, second = sorted((u1, u2), key=lambda u: u.id)
        return cls(first.id, second.id, u1.scenario, (u1.action, u2.action))

    @property
    def combo(self) -> str:
        """Scenario and unordered action pair as one compound label."""
        return f"{self.scenario}_{self.action_pair[0]}+{self.action_pair[1]}"


@dataclass(frozen=True)
class DaSplit:
    """Train/dev/test sets of pair samples."""

    train: tuple[PairSample, ...]
    dev: tuple[PairSample, ...] = ()
    test: tuple[PairSample, ...] = ()

    def subsets(self) -> dict[str, tuple[PairSample, ...]]:
        return {"train": self.train, "dev": self.dev, "test": self.test}


@dataclass(frozen=True)
class SplitPair:
    """An OOD split with its matched in-distribution control."""

    ood: Split | DaSplit
    control: Split | DaSplit
    kind: str  # oov | cg | da_cg
    meta: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        if self.ood.test != self.control.test:
            raise ValueError("ood and control must share one test set")


@dataclass(frozen=True)
class DbcaConfig:
    """Targets and knobs for the greedy divergence optimiser."""

    target_compound_divergence: float = 0.7
    atom_weight: float = 1.0
    test_fraction: float = 0.1
    dev_fraction: float = 0.1
    candidate_pool: int = 1
    max_passes: int = 50
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.target_compound_divergence <= 1.0:
            raise ValueError("target_compound_divergence must be in [0, 1]")
        if self.atom_weight < 0:
            raise ValueError("atom_weight must be nonnegative")
        for name in ("test_fraction", "dev_fraction"):
            if not 0.0 < getattr(self, name) < 1.0:
                raise ValueError(f"{name} must be in (0, 1)")
        if self.candidate_pool < 1 or self.max_passes < 1:
            raise ValueError("candidate_pool and max_passes must be >= 1")


@dataclass(frozen=True)
class GreedyResult:
    """A train/test assignment plus its achieved divergences."""

    split: Split
    atom_divergence: float
    compound_divergence: float
    objective: float


def _atom_labels(utt: Utterance) -> tuple:
    return (scenario_atom(utt.scenario), action_atom(utt.action))


def greedy_dbca(corpus: Corpus, cfg: DbcaConfig) -> GreedyResult:
    """Greedy train/test assignment targeting a compound divergence.

    Starts from a seeded random assignment, then makes improvement passes in
    seeded random order, committing a sample's move to the other subset when
    it strictly decreases ``|D_compound - target| + atom_weight * D_atom``
    and the test fraction stays within +-20% of ``cfg.test_fraction``.
    Stops after a pass without commits or after ``max_passes``. Dev is empty;
    carve it afterwards with :func:`carve_dev`.
    """
    if len(corpus) == 0:
        raise ValueError("corpus is empty")
    ids = sorted(corpus.ids)
    n = len(ids)
    target = cfg.target_compound_divergence
    beta = cfg.atom_weight
    tf = cfg.test_fraction
    lo, hi = 0.8 * tf, 1.2 * tf

    init_rng = np.random.default_rng(substream(cfg.seed, "dbca-init"))
    in_test = dict(zip(ids, init_rng.random(n) < tf))
    test_count = sum(in_test.values())

    atoms = PairedDistributionState(
        [a for i in ids if not in_test[i] for a in _atom_labels(corpus[i])],
        [a for i in ids if in_test[i] for a in _atom_labels(corpus[i])],
        ATOM_ALPHA,
    )
    compounds = PairedDistributionState(
        [corpus[i].intent for i in ids if not in_test[i]],
        [corpus[i].intent for i in ids if in_test[i]],
        COMPOUND_ALPHA,
    )

    def objective() -> float:
        d_atom = 1.0 - atoms.coefficient()
        d_comp = 1.0 - compounds.coefficient()
        return abs(d_comp - target) + beta * d_atom

    current = objective()
    visit_rng = np.random.default_rng(substream(cfg.seed, "dbca-visit"))

    for _ in range(cfg.max_passes):
        order = visit_rng.permutation(n)
        commits = 0
        for start in range(0, n, cfg.candidate_pool):
            best = None
            for j in order[start : start + cfg.candidate_pool]:
                sid = ids[j]
                from_train = not in_test[sid]
                new_test = test_count + (1 if from_train else -1)
                if new_test == 0 or new_test == n:
                    continue
                ratio, new_ratio = test_count / n, new_test / n
                inside = lo <= new_ratio <= hi
                approaching = abs(new_ratio - tf) < abs(ratio - tf)
                if not inside and not approaching:
                    continue
                a_coeff = atoms.peek(_atom_labels(corpus[sid]), from_left=from_train)
                c_coeff = compounds.peek([corpus[sid].intent], from_left=from_train)
                score = abs((1.0 - c_coeff) - target) + beta * (1.0 - a_coeff)
                if score < current - _EPS and (best is None or score < best[0]):
                    best = (score, sid, from_train)
            if best is not None:
                _, sid, from_train = best
                for label in _atom_labels(corpus[sid]):
                    atoms.move(label, from_left=from_train)
                compounds.move(corpus[sid].intent, from_left=from_train)
                in_test[sid] = from_train
                test_count += 1 if from_train else -1
                updated = objective()
                assert updated <= current + 1e-9, "objective increased on commit"
                current = updated
                commits += 1
        if commits == 0:
            break

    atoms.refresh()
    compounds.refresh()
    d_atom = 1.0 - atoms.coefficient()
    d_comp = 1.0 - compounds.coefficient()
    split = Split(
        train=tuple(i for i in ids if not in_test[i]),
        test=tuple(i for i in ids if in_test[i]),
    )
    return GreedyResult(split, d_atom, d_comp, abs(d_comp - target) + beta * d_atom)


def _greedy_control_train(
    corpus: Corpus, test_ids: tuple[str, ...], cfg: DbcaConfig
) -> tuple[Split, float, float]:
    """Select a train subset matching a frozen test set's distributions.

    Moves toggle membership of the remaining samples in train (target
    compound divergence 0); the train size never drops below half the pool.
    """
    pool = sorted(set(corpus.ids) - set(test_ids))
    if not pool:
        raise ConstructionError("no samples left outside the test set")
    selected = dict.fromkeys(pool, True)
    train_size = len(pool)
    min_train = max(1, len(pool) // 2)
    beta = cfg.atom_weight

    atoms = PairedDistributionState(
        [a for i in pool for a in _atom_labels(corpus[i])],
        [a for i in test_ids for a in _atom_labels(corpus[i])],
        ATOM_ALPHA,
    )
    compounds = PairedDistributionState(
        [corpus[i].intent for i in pool],
        [corpus[i].intent for i in test_ids],
        COMPOUND_ALPHA,
    )

    def objective() -> float:
        return (1.0 - compounds.coefficient()) + beta * (1.0 - atoms.coefficient())

    current = objective()
    visit_rng = np.random.default_rng(substream(cfg.seed, "control-visit"))

    for _ in range(cfg.max_passes):
        order = visit_rng.permutation(len(pool))
        commits = 0
        for j in order:
            sid = pool[j]
            delta = -1 if selected[sid] else 1
            if train_size + delta < min_train:
                continue
            a_coeff = atoms.peek_update_left(_atom_labels(corpus[sid]), delta)
            c_coeff = compounds.peek_update_left([corpus[sid].intent], delta)
            score = (1.0 - c_coeff) + beta * (1.0 - a_coeff)
            if score < current - _EPS:
                for label in _atom_labels(corpus[sid]):
                    atoms.update_left(label, delta)
                compounds.update_left(corpus[sid].intent, delta)
                selected[sid] = not selected[sid]
                train_size += delta
                current = objective()
                commits += 1
        if commits == 0:
            break

    atoms.refresh()
    compounds.refresh()
    d_atom = 1.0 - atoms.coefficient()
    d_comp = 1.0 - compounds.coefficient()
    split = Split(
        train=tuple(i for i in pool if selected[i]), test=tuple(test_ids)
    )
    return split, d_atom, d_comp


def carve_dev(
    corpus: Corpus, split: Split, dev_fraction: float, seed: int
) -> Split:
    """Carve a dev subset out of train, stratified by intent."""
    if not 0.0 <= dev_fraction < 1.0:
        raise ValueError("dev_fraction must be in [0, 1)")
    if split.dev:
        raise ValueError("split already has a dev subset")
    rng = np.random.default_rng(substream(seed, "carve"))
    by_intent: dict[str, list[str]] = {}
    for i in split.train:
        by_intent.setdefault(corpus[i].intent, []).append(i)
    dev: list[str] = []
    for intent in sorted(by_intent):
        group = sorted(by_intent[intent])
        k = round(dev_fraction * len(group))
        picked = rng.choice(len(group), size=k, replace=False)
        dev.extend(group[p] for p in sorted(picked))
    dev_set = set(dev)
    train = tuple(i for i in split.train if i not in dev_set)
    return Split(train=train, dev=tuple(dev), test=split.test)


def make_oov_split(
    corpus: Corpus,
    test_intent_count: int,
    min_samples_per_intent: int,
    seed: int,
    dev_fraction: float = 0.1,
) -> SplitPair:
    """Out-of-vocabulary split pair: test intents never occur in ood train/dev.

    The shared test set samples ``max(1, min_samples_per_intent // 2)``
    utterances from each of the ``test_intent_count`` best-populated intents,
    leaving the rest of their samples as the replacement pool for the
    control. The control swaps half of ood train/dev per scenario for
    pool samples, keeping per-scenario counts identical.
    """
    by_intent: dict[str, list[str]] = {}
    for utt in corpus:
        by_intent.setdefault(utt.intent, []).append(utt.id)
    eligible = [
        i for i in sorted(by_intent) if len(by_intent[i]) >= min_samples_per_intent
    ]
    if len(eligible) < test_intent_count:
        raise ConstructionError(
            f"need {test_intent_count} intents with >= {min_samples_per_intent} "
            f"samples, found {len(eligible)}"
        )
    eligible.sort(key=lambda i: (-len(by_intent[i]), i))
    test_intents = set(eligible[:test_intent_count])
    per_intent = max(1, min_samples_per_intent // 2)

    rng = np.random.default_rng(substream(seed, "oov-test"))
    test: list[str] = []
    for intent in sorted(test_intents):
        group = sorted(by_intent[intent])
        picked = rng.choice(len(group), size=per_intent, replace=False)
        test.extend(group[p] for p in sorted(picked))

    pool = [i for i in sorted(corpus.ids) if corpus[i].intent not in test_intents]
    ood = carve_dev(
        corpus, Split(train=tuple(pool), test=tuple(test)), dev_fraction, substream(seed, "oov-carve")
    )

    test_set = set(test)
    heldout: dict[str, list[str]] = {}
    for intent in sorted(test_intents):
        for i in sorted(by_intent[intent]):
            if i not in test_set:
                heldout.setdefault(corpus[i].scenario, []).append(i)

    replace_rng = np.random.default_rng(substream(seed, "oov-replace"))
    control_train = _replace_half_per_scenario(corpus, ood.train, heldout, replace_rng)
    control_dev = _replace_half_per_scenario(corpus, ood.dev, heldout, replace_rng)
    control = Split(train=control_train, dev=control_dev, test=ood.test)
    return SplitPair(ood=ood, control=control, kind="oov")


def _replace_half_per_scenario(
    corpus: Corpus,
    ids: tuple[str, ...],
    heldout: dict[str, list[str]],
    rng: np.random.Generator,
) -> tuple[str, ...]:
    """Swap floor(n/2) ids per scenario for held-out ones, consuming the pool."""
    by_scenario: dict[str, list[str]] = {}
    for i in ids:
        by_scenario.setdefault(corpus[i].scenario, []).append(i)
    result: list[str] = []
    for scenario in sorted(by_scenario):
        group = sorted(by_scenario[scenario])
        k = len(group) // 2
        pool = heldout.get(scenario, [])
        if len(pool) < k:
            raise ConstructionError(
                f"scenario {scenario!r}: need {k} held-out samples with test "
                f"intents, only {len(pool)} available"
            )
        dropped = set(rng.choice(len(group), size=k, replace=False))
        kept = [g for idx, g in enumerate(group) if idx not in dropped]
        taken = sorted(rng.choice(len(pool), size=k, replace=False), reverse=True)
        added = [pool.pop(t) for t in taken]
        result.extend(kept + added)
    return tuple(result)


def make_cg_split(corpus: Corpus, cfg: DbcaConfig) -> SplitPair:
    """Compositional-generalisation split pair via the greedy optimiser.

    The OOD side maximises toward ``cfg.target_compound_divergence``; the
    control keeps the same test set and re-selects train from the remaining
    samples with both divergences minimised.
    """
    ood_res = greedy_dbca(corpus, cfg)
    control_raw, ctl_da, ctl_dc = _greedy_control_train(
        corpus, ood_res.split.test, replace(cfg, target_compound_divergence=0.0)
    )
    ood = carve_dev(corpus, ood_res.split, cfg.dev_fraction, substream(cfg.seed, "cg-ood"))
    control = carve_dev(corpus, control_raw, cfg.dev_fraction, substream(cfg.seed, "cg-control"))
    meta = (
        ("ood_atom_divergence", ood_res.atom_divergence),
        ("ood_compound_divergence", ood_res.compound_divergence),
        ("ood_objective", ood_res.objective),
        ("control_atom_divergence", ctl_da),
        ("control_compound_divergence", ctl_dc),
    )
    return SplitPair(ood=ood, control=control, kind="cg", meta=meta)


def make_base_split(
    corpus: Corpus, test_fraction: float, dev_fraction: float, seed: int
) -> Split:
    """Plain stratified-by-intent random split (an 'original'-style split)."""
    if not 0.0 < test_fraction < 1.0 or not 0.0 <= dev_fraction < 1.0:
        raise ValueError("fractions out of range")
    if test_fraction + dev_fraction >= 1.0:
        raise ValueError("test_fraction + dev_fraction must be < 1")
    rng = np.random.default_rng(substream(seed, "base"))
    by_intent: dict[str, list[str]] = {}
    for utt in corpus:
        by_intent.setdefault(utt.intent, []).append(utt.id)
    train: list[str] = []
    dev: list[str] = []
    test: list[str] = []
    for intent in sorted(by_intent):
        group = sorted(by_intent[intent])
        order = rng.permutation(len(group))
        n_test = round(test_fraction * len(group))
        n_dev = round(dev_fraction * len(group))
        test.extend(group[i] for i in order[:n_test])
        dev.extend(group[i] for i in order[n_test : n_test + n_dev])
        train.extend(group[i] for i in order[n_test + n_dev :])
    return Split(train=tuple(train), dev=tuple(dev), test=tuple(test))


def _action_buckets(corpus: Corpus, ids) -> dict[str, dict[str, list[str]]]:
    """scenario -> action -> sorted utterance ids."""
    buckets: dict[str, dict[str, list[str]]] = {}
    for i in sorted(ids):
        utt = corpus[i]
        buckets.setdefault(utt.scenario, {}).setdefault(utt.action, []).append(i)
    return buckets


def _available_action_pairs(bucket: dict[str, list[str]]) -> set[tuple[str, str]]:
    actions = sorted(a for a, ids in bucket.items() if ids)
    return {(a, b) for a, b in itertools.combinations(actions, 2)}


def _enumerate_pairs(
    corpus: Corpus, bucket: dict[str, list[str]], allowed: set[tuple[str, str]]
) -> list[PairSample]:
    pairs = []
    for a, b in sorted(allowed):
        for u1 in bucket.get(a, ()):
            for u2 in bucket.get(b, ()):
                pairs.append(
                    PairSample.from_utterances(corpus[u1], corpus[u2])
                )
    return pairs


def _sample_pairs(
    corpus: Corpus,
    bucket: dict[str, list[str]],
    allowed: set[tuple[str, str]],
    count: int,
    rng: np.random.Generator,
    scenario: str,
) -> list[PairSample]:
    candidates = _enumerate_pairs(corpus, bucket, allowed)
    if len(candidates) < count:
        raise ConstructionError(
            f"scenario {scenario!r}: only {len(candidates)} distinct pairs "
            f"available, need {count}"
        )
    picked = rng.choice(len(candidates), size=count, replace=False)
    return [candidates[p] for p in sorted(picked)]


def make_da_splits(
    corpus: Corpus,
    pairs_per_scenario: int,
    seed: int,
    original_split: Split | None = None,
) -> SplitPair:
    """Double-action split pair over same-scenario, different-action pairs.

    Pairs are drawn inside each subset of ``original_split`` (a stratified
    base split is generated when none is given). The OOD side keeps the
    unordered action pairs of the test set out of train and dev; the control
    swaps half of those pairs back in per scenario, preserving counts.
    """
    if original_split is None:
        original_split = make_base_split(corpus, 0.1, 0.1, substream(seed, "da-base"))
    buckets = {
        name: _action_buckets(corpus, ids)
        for name, ids in original_split.subsets().items()
    }
    scenarios = sorted(
        s
        for s in buckets["test"]
        if all(len(_available_action_pairs(buckets[sub].get(s, {}))) > 0
               for sub in ("train", "dev", "test"))
    )
    if not scenarios:
        raise ConstructionError("no scenario has usable action pairs in all subsets")

    choice_rng = np.random.default_rng(substream(seed, "da-choice"))
    pair_rng = np.random.default_rng(substream(seed, "da-pairs"))
    replace_rng = np.random.default_rng(substream(seed, "da-replace"))

    test_pairs: list[PairSample] = []
    ood_train: list[PairSample] = []
    ood_dev: list[PairSample] = []
    ctl_train: list[PairSample] = []
    ctl_dev: list[PairSample] = []

    for s in scenarios:
        avail = {
            sub: _available_action_pairs(buckets[sub].get(s, {}))
            for sub in ("train", "dev", "test")
        }
        shared = sorted(avail["test"] & avail["train"] & avail["dev"])
        if not shared:
            raise ConstructionError(
                f"scenario {s!r}: no action pair occurs in every subset"
            )
        order = choice_rng.permutation(len(shared))
        held: set[tuple[str, str]] = set()
        quota = max(1, math.ceil(len(avail["test"]) / 2))
        for j in order:
            cand = shared[j]
            if len(held) >= quota:
                break
            if avail["train"] - held - {cand} and avail["dev"] - held - {cand}:
                held.add(cand)
        if not held:
            raise ConstructionError(
                f"scenario {s!r}: cannot hold out any action pair for the test "
                "set without exhausting train or dev"
            )

        test_pairs.extend(
            _sample_pairs(corpus, buckets["test"][s], held, pairs_per_scenario,
                          pair_rng, s)
        )
        s_train = _sample_pairs(
            corpus, buckets["train"][s], avail["train"] - held,
            pairs_per_scenario, pair_rng, s,
        )
        s_dev = _sample_pairs(
            corpus, buckets["dev"][s], avail["dev"] - held,
            pairs_per_scenario, pair_rng, s,
        )
        ood_train.extend(s_train)
        ood_dev.extend(s_dev)
        ctl_train.extend(
            _replace_half_pairs(corpus, s_train, buckets["train"][s], held,
                                replace_rng, s)
        )
        ctl_dev.extend(
            _replace_half_pairs(corpus, s_dev, buckets["dev"][s], held,
                                replace_rng, s)
        )

    ood = DaSplit(train=tuple(ood_train), dev=tuple(ood_dev), test=tuple(test_pairs))
    control = DaSplit(train=tuple(ctl_train), dev=tuple(ctl_dev), test=tuple(test_pairs))
    return SplitPair(ood=ood, control=control, kind="da_cg")


def _replace_half_pairs(
    corpus: Corpus,
    pairs: list[PairSample],
    bucket: dict[str, list[str]],
    held: set[tuple[str, str]],
    rng: np.random.Generator,
    scenario: str,
) -> list[PairSample]:
    """Swap floor(n/2) pairs for ones whose action pair occurs in the test set."""
    k = len(pairs) // 2
    dropped = set(rng.choice(len(pairs), size=k, replace=False))
    kept = [p for idx, p in enumerate(pairs) if idx not in dropped]
    replacements = _sample_pairs(corpus, bucket, held, k, rng, scenario)
    return kept + replacements


def make_mic_split(corpus: Corpus, original_split: Split) -> MicSplit:
    """Microphone-mismatch split: headset-only training, paired test sets.

    Train and dev keep only headset recordings of the original subsets. The
    original test set is partitioned by the headset flag, then both halves
    are restricted to speakers occurring in each.
    """
    train = [i for i in original_split.train if corpus[i].headset]
    dev = [i for i in original_split.dev if corpus[i].headset]
    test_h = [i for i in original_split.test if corpus[i].headset]
    test_o = [i for i in original_split.test if not corpus[i].headset]
    speakers_h = {corpus[i].speaker for i in test_h}
    speakers_o = {corpus[i].speaker for i in test_o}
    common = speakers_h & speakers_o
    test_h = [i for i in test_h if corpus[i].speaker in common]
    test_o = [i for i in test_o if corpus[i].speaker in common]
    if not test_h or not test_o:
        raise ConstructionError(
            "no speakers recorded with both microphone conditions in the test set"
        )
    return MicSplit(
        train=tuple(train), dev=tuple(dev),
        test_headset=tuple(test_h), test_other=tuple(test_o),
    )


# ---------------------------------------------------------------------------
# Split directory I/O
# ---------------------------------------------------------------------------

def _write_id_file(path: Path, ids) -> None:
    path.write_text("".join(f"{i}\n" for i in ids), encoding="utf-8")


def _write_pair_file(path: Path, pairs) -> None:
    path.write_text(
        "".join(f"{p.first}\t{p.second}\n" for p in pairs), encoding="utf-8"
    )


def write_split(split: Split | MicSplit | DaSplit, out_dir: str | Path) -> None:
    """Write one file per subset (ids, or tab-separated id pairs) into a dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, members in split.subsets().items():
        path = out / f"{name}.txt"
        if isinstance(split, DaSplit):
            _write_pair_file(path, members)
        else:
            _write_id_file(path, members)


def read_split(split_dir: str | Path, corpus: Corpus | None = None):
    """Read a split directory back into a Split, MicSplit, or DaSplit.

    Pair files (two tab-separated ids per line) need ``corpus`` to recover
    the pair labels.
    """
    split_dir = Path(split_dir)
    files = {p.stem: p for p in split_dir.glob("*.txt")}
    if "train" not in files:
        raise FileNotFoundError(f"no train.txt in {split_dir}")

    def read_ids(name):
        if name not in files:
            return ()
        return tuple(
            line.strip() for line in files[name].read_text(encoding="utf-8").splitlines()
            if line.strip()
        )

    first_line = files["train"].read_text(encoding="utf-8").splitlines()
    is_pairs = bool(first_line) and "\t" in first_line[0]
    if is_pairs:
        if corpus is None:
            raise ValueError("reading a pair split requires the corpus")

        def read_pairs(name):
            if name not in files:
                return ()
            pairs = []
            for line in files[name].read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                a, b = line.split("\t")
                pairs.append(PairSample.from_utterances(corpus[a], corpus[b]))
            return tuple(pairs)

        return DaSplit(
            train=read_pairs("train"), dev=read_pairs("dev"), test=read_pairs("test")
        )
    if "test_headset" in files or "test_other" in files:
        return MicSplit(
            train=read_ids("train"), dev=read_ids("dev"),
            test_headset=read_ids("test_headset"), test_other=read_ids("test_other"),
        )
    return Split(train=read_ids("train"), dev=read_ids("dev"), test=read_ids("test"))
