"""Generation of all regular inflected forms of a lemma.

The generator derives the word-class-specific stem from the lemma (for
vowel-final nominals, by stripping the final vowel), combines it with every
ending of every applicable morpheme, and finally extends the result with
prefix combinations. Word classes that are not supplied are guessed from
the lemma's ending. Pronoun lemmata bypass all of this: their paradigm
stores full forms, which are returned directly.

Every candidate form is checked against the general phonotactic rules; a
form that fails is repaired by sandhi-merging stem and ending, or dropped
when no merge candidate is valid either.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import RuleNotApplicableError
from .grammar.model import FeatureSet, Morph, Morpheme
from .grammar.store import PRONOUN_CLASS, ParadigmStore
from .phonology.alphabet import DEFAULT_PHONOTACTICS, PhonotacticRules, normalize
from .phonology.sandhi import SandhiEngine

FALLBACK_CLASSES = ("noun", "adjective", "numeral")
DEFAULT_PRUNING = 10


@dataclass(frozen=True)
class ConstructedWord:
    """A generated surface form with its source lemma, stem and features."""

    word: str
    lemma: str
    stem: str
    features: FeatureSet = field(hash=False)

    def to_record(self) -> dict:
        """The nested key-value document used by the lexicon."""
        return {
            "word": self.word,
            "grammar": {
                "morphology": {
                    "lemma": self.lemma,
                    "information": dict(self.features),
                }
            },
        }

    def dedup_key(self) -> tuple:
        return self.word, tuple(sorted(self.features.items()))


@dataclass(frozen=True)
class WordClassGuess:
    word_class: str
    weight: int


@dataclass(frozen=True)
class StemRule:
    """How to derive a stem from a lemma of one declension."""

    declension: str
    lemma_suffix: str
    strip: str | None = None
    append: str = ""

    @property
    def stripped(self) -> str:
        return self.strip if self.strip is not None else self.lemma_suffix


def load_stem_rules(path: str | Path) -> dict[str, list[StemRule]]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return {
        word_class: [StemRule(**entry) for entry in entries]
        for word_class, entries in raw.items()
    }


def load_prefixes(path: str | Path) -> list[str]:
    prefixes = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = normalize(line.strip())
        if line and not line.startswith("#"):
            prefixes.append(line)
    return prefixes


def derive_stem(lemma: str, rule: StemRule) -> str:
    """Apply one stem-derivation rule; deterministic."""
    if not lemma.endswith(rule.lemma_suffix) or len(lemma) <= len(rule.stripped):
        raise RuleNotApplicableError(f"rule {rule.declension!r} does not fit {lemma!r}")
    return lemma[: len(lemma) - len(rule.stripped)] + rule.append


def apply_affixes(
    words: list[ConstructedWord], prefixes: list[str]
) -> list[ConstructedWord]:
    """Every prefix x word combination; an empty prefix list changes nothing."""
    if not prefixes:
        return list(words)
    out = []
    for prefix in prefixes:
        for word in words:
            features = dict(word.features)
            features["prefix"] = prefix
            out.append(
                ConstructedWord(prefix + word.word, word.lemma, word.stem, features)
            )
    return out


def _declension_token(morpheme: Morpheme) -> str | None:
    return morpheme.feature("declension") or morpheme.feature("conjugation")


class MorphologyGenerator:
    def __init__(
        self,
        store: ParadigmStore,
        stem_rules: dict[str, list[StemRule]],
        prefixes: list[str],
        sandhi: SandhiEngine | None = None,
        phonotactics: PhonotacticRules = DEFAULT_PHONOTACTICS,
    ):
        self.store = store
        self.stem_rules = stem_rules
        self.prefixes = prefixes
        self.sandhi = sandhi
        self.phonotactics = phonotactics

    # -- word class guessing --------------------------------------------

    def guess_wordclass_lemma(self, word: str) -> list[str]:
        """Word classes whose known lemma endings match the word's ending.

        Unknown endings fall back to the open classes: in the worst case a
        bare lemma is declined as noun, adjective and numeral.
        """
        word = normalize(word)
        if not word:
            raise ValueError("empty lemma")
        classes = [
            word_class
            for word_class, rules in self.stem_rules.items()
            if any(
                word.endswith(r.lemma_suffix) and len(word) > len(r.stripped)
                for r in rules
            )
        ]
        if self.store.pronoun_morphemes_for(word):
            classes.append(PRONOUN_CLASS)
        return classes or list(FALLBACK_CLASSES)

    def guess_wordclass_inflected(
        self, word: str, pruning: int = DEFAULT_PRUNING
    ) -> list[WordClassGuess]:
        """Weighted word-class guesses for an inflected form.

        Every paradigm ending that the word ends with contributes its length
        (in characters) to its word class's weight, so longer identified
        suffixes count more. The descending list is cut off at the first
        neighbour pair closer together than the pruning parameter.
        """
        word = normalize(word)
        weights: dict[str, int] = {}
        for word_class in self.store.word_classes:
            total = 0
            for morpheme in self.store.endings_for(word_class):
                for morph in morpheme.morphs:
                    if morph.surface and word.endswith(morph.surface):
                        total += len(morph.surface)
            if total:
                weights[word_class] = total
        if not weights:
            guesses = [WordClassGuess(wc, 1) for wc in self.store.word_classes]
        else:
            order = {wc: i for i, wc in enumerate(self.store.word_classes)}
            ranked = sorted(weights.items(), key=lambda kv: (-kv[1], order[kv[0]]))
            guesses = [WordClassGuess(wc, w) for wc, w in ranked]
        kept = guesses[:1]
        for current, following in zip(guesses, guesses[1:]):
            if current.weight - following.weight < pruning:
                break
            kept.append(following)
        return kept

    # -- form construction ------------------------------------------------

    def validate_word(self, word: str) -> bool:
        return self.phonotactics.is_valid(word)

    def combine(self, stem: str, morph: Morph) -> str | None:
        """Join stem and ending; sandhi-repair invalid joins.

        Plain concatenation wins if it passes the validator; otherwise the
        first valid sandhi merge of (stem, ending) is used. None means no
        variant was valid.
        """
        candidate = stem + morph.surface
        if self.validate_word(candidate):
            return candidate
        if self.sandhi is not None and stem and morph.surface:
            for merged in self.sandhi.merge([stem, morph.surface]):
                if " " not in merged and self.validate_word(merged):
                    return merged
        return None

    def generate(
        self,
        lemma: str,
        word_class: str | None = None,
        options: dict | None = None,
    ) -> list[ConstructedWord]:
        """All regular forms of the lemma.

        Options: ``gender`` restricts nominal generation to one gender;
        ``affixes`` is one of "extend" (default: bare forms plus every
        prefix combination), "product" (prefix combinations only) or
        "none"; ``prefixes`` overrides the prefix list.
        """
        options = options or {}
        lemma = normalize(lemma)
        if not lemma:
            raise ValueError("empty lemma")
        if word_class is not None and word_class != PRONOUN_CLASS:
            self.store.paradigm(word_class)  # raises UnknownWordClassError
        classes = [word_class] if word_class else self.guess_wordclass_lemma(lemma)

        # Pronoun paradigms store complete words; prefixes attach only to
        # forms built from a stem.
        full_forms: list[ConstructedWord] = []
        bare: list[ConstructedWord] = []
        for wc in classes:
            if wc == PRONOUN_CLASS:
                full_forms.extend(self._pronoun_forms(lemma))
            else:
                bare.extend(self._declined_forms(lemma, wc, options.get("gender")))

        mode = options.get("affixes", "extend")
        prefixes = options.get("prefixes", self.prefixes)
        if mode == "none":
            combined = full_forms + bare
        elif mode == "product":
            combined = full_forms + apply_affixes(bare, prefixes)
        else:
            combined = full_forms + bare + apply_affixes(bare, prefixes)

        out, seen = [], set()
        for word in combined:
            key = word.dedup_key()
            if key not in seen:
                seen.add(key)
                out.append(word)
        return out

    def _pronoun_forms(self, lemma: str) -> list[ConstructedWord]:
        forms = []
        for morpheme in self.store.pronoun_morphemes_for(lemma):
            for morph in morpheme.morphs:
                forms.append(
                    ConstructedWord(morph.surface, lemma, "", dict(morpheme.features))
                )
        return forms

    def _declined_forms(
        self, lemma: str, word_class: str, gender: str | None
    ) -> list[ConstructedWord]:
        forms = []
        for rule in self.stem_rules.get(word_class, []):
            try:
                stem = derive_stem(lemma, rule)
            except RuleNotApplicableError:
                continue
            for morpheme in self.store.endings_for(word_class):
                if _declension_token(morpheme) != rule.declension:
                    continue
                if gender and morpheme.feature("gender") not in (None, gender):
                    continue
                for morph in morpheme.morphs:
                    word = self.combine(stem, morph)
                    if word is not None:
                        forms.append(
                            ConstructedWord(word, lemma, stem, dict(morpheme.features))
                        )
        return forms

    def write_generated(self, lexicon, words: list[ConstructedWord]) -> int:
        """Bulk mode: insert generated records into the lexicon."""
        inserted = 0
        for word in words:
            if lexicon.insert("generated", word.to_record()):
                inserted += 1
        lexicon.flush()
        return inserted
