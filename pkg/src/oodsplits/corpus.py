"""Labeled utterance corpora: parsing, serialisation, and synthetic fixtures.

A corpus is a set of utterances, each carrying a transcript, a scenario
label, an action label, a headset flag, and a speaker. The intent label is
never stored; it is always derived as ``scenario + "_" + action``. Corpora
are immutable after construction and safe to share.
"""

from __future__ import annotations

import json
import random
import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

INTENT_SEPARATOR = "_"

_KNOWN_FIELDS = {"id", "transcript", "scenario", "action", "headset", "speaker", "audio_ref"}

# Shared filler vocabulary for synthetic fixtures.
_STOPWORDS = ("the", "a", "to", "my", "me", "please", "can", "you", "for", "now")


class CorpusError(Exception):
    """Base class for corpus data errors."""


class ParseError(CorpusError):
    """A line could not be decoded as a record."""


class SchemaError(CorpusError):
    """A record is missing or misusing a required field."""


class IntegrityError(CorpusError):
    """A record violates a corpus-level uniqueness constraint."""


def derive_intent(scenario: str, action: str) -> str:
    return f"{scenario}{INTENT_SEPARATOR}{action}"


def split_intent(intent: str) -> tuple[str, str]:
    """Invert :func:`derive_intent`. Scenario labels never contain the separator."""
    scenario, sep, action = intent.partition(INTENT_SEPARATOR)
    if not sep or not scenario or not action:
        raise ValueError(f"not an intent label: {intent!r}")
    return scenario, action


def tokenize(transcript: str) -> tuple[str, ...]:
    """Lowercase, split on whitespace, strip punctuation at token edges."""
    tokens = []
    for raw in transcript.lower().split():
        word = raw.strip(string.punctuation)
        if word:
            tokens.append(word)
    return tuple(tokens)


@dataclass(frozen=True)
class Utterance:
    """One labeled recording."""

    id: str
    transcript: str
    scenario: str
    action: str
    headset: bool
    speaker: str
    audio_ref: str = ""
    extra: tuple[tuple[str, object], ...] = ()
    tokens: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tokenize(self.transcript))

    @property
    def intent(self) -> str:
        return derive_intent(self.scenario, self.action)


class Corpus:
    """Id-indexed collection of utterances with derived label inventories."""

    def __init__(self, utterances: Iterator[Utterance] | list[Utterance]):
        self._by_id: dict[str, Utterance] = {}
        for utt in utterances:
            if utt.id in self._by_id:
                raise IntegrityError(f"duplicate utterance id {utt.id!r}")
            self._by_id[utt.id] = utt
        self.scenarios = frozenset(u.scenario for u in self._by_id.values())
        self.actions = frozenset(u.action for u in self._by_id.values())
        self.intents = frozenset(u.intent for u in self._by_id.values())

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self) -> Iterator[Utterance]:
        return iter(self._by_id.values())

    def __contains__(self, utt_id: str) -> bool:
        return utt_id in self._by_id

    def __getitem__(self, utt_id: str) -> Utterance:
        try:
            return self._by_id[utt_id]
        except KeyError:
            raise IntegrityError(f"unknown utterance id {utt_id!r}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, Corpus) and self._by_id == other._by_id

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self._by_id)

    def subset(self, ids) -> list[Utterance]:
        """Utterances for the given ids, in the given order."""
        return [self[i] for i in ids]


def _record_to_utterance(rec: dict, lineno: int) -> Utterance:
    for name in ("id", "transcript", "scenario", "action", "headset", "speaker"):
        if name not in rec:
            raise SchemaError(f"line {lineno}: missing field {name!r}")
    if not isinstance(rec["headset"], bool):
        raise SchemaError(f"line {lineno}: field 'headset' must be a boolean")
    transcript = str(rec["transcript"])
    if not tokenize(transcript):
        raise SchemaError(f"line {lineno}: transcript has no tokens")
    extra = tuple(sorted((k, rec[k]) for k in rec.keys() - _KNOWN_FIELDS))
    return Utterance(
        id=str(rec["id"]),
        transcript=transcript,
        scenario=str(rec["scenario"]),
        action=str(rec["action"]),
        headset=rec["headset"],
        speaker=str(rec["speaker"]),
        audio_ref=str(rec.get("audio_ref", "")),
        extra=extra,
    )


def parse_corpus(path: str | Path) -> Corpus:
    """Read a line-delimited corpus file (one JSON object per line, UTF-8).

    Unknown fields are preserved opaquely. Raises ParseError with the line
    number for undecodable lines, SchemaError for missing fields, and
    IntegrityError for duplicate ids.
    """
    utterances = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as err:
                raise ParseError(f"line {lineno}: {err.msg}") from err
            if not isinstance(rec, dict):
                raise ParseError(f"line {lineno}: record is not an object")
            utterances.append(_record_to_utterance(rec, lineno))
    return Corpus(utterances)


def serialize_utterance(utt: Utterance) -> str:
    rec = {
        "id": utt.id,
        "transcript": utt.transcript,
        "scenario": utt.scenario,
        "action": utt.action,
        "headset": utt.headset,
        "speaker": utt.speaker,
    }
    if utt.audio_ref:
        rec["audio_ref"] = utt.audio_ref
    rec.update(dict(utt.extra))
    return json.dumps(rec, sort_keys=True, ensure_ascii=False)


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus in the line-delimited format read by parse_corpus."""
    with open(path, "w", encoding="utf-8") as handle:
        for utt in corpus:
            handle.write(serialize_utterance(utt) + "\n")


def filter_headset(corpus: Corpus, headset: bool) -> Corpus:
    """Corpus restricted to utterances with the given headset flag."""
    return Corpus([u for u in corpus if u.headset == headset])


@dataclass(frozen=True)
class FixtureConfig:
    """Shape of a deterministic synthetic corpus.

    Every intent owns ``vocab_words_per_label`` signature words that occur
    only in its own utterances; shared stopwords are mixed in at
    ``stopword_rate``. Action names are shared across scenarios, so the
    corpus has ``n_scenarios * actions_per_scenario`` distinct intents.
    """

    n_scenarios: int = 2
    actions_per_scenario: int = 2
    samples_per_intent: int = 10
    vocab_words_per_label: int = 3
    stopword_rate: float = 0.3
    headset_rate: float = 0.5
    n_speakers: int = 4
    seed: int = 0

    def __post_init__(self):
        for name in ("n_scenarios", "actions_per_scenario", "samples_per_intent",
                     "vocab_words_per_label", "n_speakers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        for name in ("stopword_rate", "headset_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")


def generate_fixture(cfg: FixtureConfig) -> Corpus:
    """Deterministic synthetic corpus; equal (cfg, seed) gives equal corpora."""
    rng = random.Random(cfg.seed)
    scenarios = [f"s{i}" for i in range(cfg.n_scenarios)]
    actions = [f"a{j}" for j in range(cfg.actions_per_scenario)]
    utterances = []
    idx = 0
    for scenario in scenarios:
        for action in actions:
            signature = [
                f"{scenario}{action}w{k}" for k in range(cfg.vocab_words_per_label)
            ]
            for _ in range(cfg.samples_per_intent):
                n_sig = rng.randint(1, cfg.vocab_words_per_label)
                words = rng.sample(signature, n_sig)
                tokens = []
                for word in words:
                    if rng.random() < cfg.stopword_rate:
                        tokens.append(rng.choice(_STOPWORDS))
                    tokens.append(word)
                if rng.random() < cfg.stopword_rate:
                    tokens.append(rng.choice(_STOPWORDS))
                utterances.append(
                    Utterance(
                        id=f"u{idx:05d}",
                        transcript=" ".join(tokens),
                        scenario=scenario,
                        action=action,
                        headset=rng.random() < cfg.headset_rate,
                        speaker=f"spk{idx % cfg.n_speakers}",
                    )
                )
                idx += 1
    return Corpus(utterances)
