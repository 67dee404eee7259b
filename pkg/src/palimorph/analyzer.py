"""Morphological analysis, lemmatization and stemming.

Analysis runs the pipeline: exact pronoun lookup, exact irregular lookup,
prefix identification, then per guessed word class the identification of
paradigm endings, the stem/ending boundary and the word-class-specific
lemma. All consistent readings are returned; nothing is disambiguated.

Records serialize to the nested key-value document used by the lexicon:

    {"word": ..., "grammar": {"morphology": {"lemma": ...,
                                             "information": {...}}}}
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import LexiconUnavailableError
from .grammar.model import FeatureSet, Morpheme
from .grammar.store import PRONOUN_CLASS, ParadigmStore
from .generator import MorphologyGenerator, StemRule
from .phonology.alphabet import normalize

log = logging.getLogger(__name__)

Segmentation = list[tuple[str, str]]  # (surface, role in {prefix, stem, ending})


@dataclass(frozen=True)
class AnalysisRecord:
    word: str
    lemma: str
    information: FeatureSet = field(hash=False)
    segmentation: Segmentation | None = field(default=None, hash=False)
    extra: dict = field(default_factory=dict, hash=False, compare=False)

    def to_document(self) -> dict:
        document = dict(self.extra)
        document["word"] = self.word
        grammar = document.setdefault("grammar", {})
        morphology = grammar.setdefault("morphology", {})
        morphology["lemma"] = self.lemma
        morphology["information"] = dict(self.information)
        if self.segmentation is not None:
            document["segmentation"] = [list(part) for part in self.segmentation]
        return document

    @classmethod
    def from_document(cls, document: dict) -> "AnalysisRecord":
        extra = {
            k: v for k, v in document.items() if k not in ("word", "grammar", "segmentation")
        }
        grammar = dict(document.get("grammar", {}))
        morphology = grammar.pop("morphology", {})
        if grammar:
            extra["grammar"] = grammar  # unknown grammar fields, kept verbatim
        segmentation = document.get("segmentation")
        return cls(
            word=document.get("word", ""),
            lemma=morphology.get("lemma", ""),
            information=dict(morphology.get("information", {})),
            segmentation=[tuple(part) for part in segmentation] if segmentation else None,
            extra=extra,
        )


@dataclass(frozen=True)
class Lemmatization:
    lemma: str
    word_class: str | None

    def to_document(self, word: str) -> dict:
        information = {"paradigm": self.word_class} if self.word_class else {}
        return {
            "word": word,
            "grammar": {"morphology": {"lemma": self.lemma, "information": information}},
        }


def _word_class_of(record: dict) -> str | None:
    morphology = record.get("grammar", {}).get("morphology", {})
    return morphology.get("information", {}).get("paradigm") or record.get("word_class")


class MorphologyAnalyzer:
    def __init__(self, generator: MorphologyGenerator):
        self.generator = generator
        self.store: ParadigmStore = generator.store
        self.prefixes = generator.prefixes
        self._ending_index: dict[str, dict[str, list[Morpheme]]] = {}
        self._ending_lengths: dict[str, list[int]] = {}
        self._inverse_rules: dict[tuple[str, str], StemRule] = {}
        for word_class in self.store.word_classes:
            index: dict[str, list[Morpheme]] = {}
            for morpheme in self.store.endings_for(word_class):
                for morph in morpheme.morphs:
                    if morph.surface:
                        index.setdefault(morph.surface, []).append(morpheme)
            self._ending_index[word_class] = index
            self._ending_lengths[word_class] = sorted({len(e) for e in index}, reverse=True)
        for word_class, rules in generator.stem_rules.items():
            for rule in rules:
                self._inverse_rules[(word_class, rule.declension)] = rule

    # -- analysis -----------------------------------------------------------

    def analyze(
        self, word: str, word_class: str | None = None, pruning: int = 0
    ) -> list[AnalysisRecord]:
        """All morphological readings of a surface form, offline.

        Pronoun and irregular hits come first and carry no segmentation.
        By default every word class the guesser can motivate is tried
        (pruning 0); a supplied word class restricts the rule-based step.
        """
        word = normalize(word)
        if not word:
            raise ValueError("empty word")
        records: list[AnalysisRecord] = []
        for hit in self.store.lookup_exact(word):
            records.append(AnalysisRecord(word, hit.lemma, dict(hit.features)))

        if word_class is not None:
            classes = [word_class]
        else:
            classes = [
                guess.word_class
                for guess in self.generator.guess_wordclass_inflected(word, pruning)
            ]

        seen = {(r.lemma, tuple(sorted(r.information.items()))) for r in records}
        for prefix, rest in self._prefix_splits(word):
            for wc in classes:
                if wc == PRONOUN_CLASS:
                    continue
                for record in self._rule_based(word, prefix, rest, wc):
                    key = (record.lemma, tuple(sorted(record.information.items())))
                    if key not in seen:
                        seen.add(key)
                        records.append(record)
        return records

    def _prefix_splits(self, word: str) -> list[tuple[str, str]]:
        splits = [("", word)]
        for prefix in self.prefixes:
            if word.startswith(prefix) and len(word) > len(prefix):
                splits.append((prefix, word[len(prefix) :]))
        return splits

    def _rule_based(self, word, prefix, rest, word_class) -> list[AnalysisRecord]:
        index = self._ending_index.get(word_class)
        if not index:
            return []
        records = []
        for length in self._ending_lengths[word_class]:
            if length >= len(rest):
                continue
            ending = rest[len(rest) - length :]
            for morpheme in index.get(ending, ()):
                stem = rest[: len(rest) - length]
                lemma = self._lemma_from_stem(stem, morpheme, word_class)
                if lemma is None:
                    continue
                information = dict(morpheme.features)
                segmentation: Segmentation = []
                if prefix:
                    information["prefix"] = prefix
                    segmentation.append((prefix, "prefix"))
                segmentation += [(stem, "stem"), (ending, "ending")]
                records.append(AnalysisRecord(word, lemma, information, segmentation))
        return records

    def _lemma_from_stem(
        self, stem: str, morpheme: Morpheme, word_class: str
    ) -> str | None:
        token = morpheme.feature("declension") or morpheme.feature("conjugation")
        if token is None:
            return None
        rule = self._inverse_rules.get((word_class, token))
        if rule is None:
            return None
        if rule.append:
            if not stem.endswith(rule.append):
                return None
            stem = stem[: -len(rule.append)]
        return stem + rule.stripped

    def analyze_with_dictionary(
        self, word: str, lexicon, word_class: str | None = None
    ) -> list[AnalysisRecord]:
        """Dictionary-backed analysis: stored records verbatim, else offline."""
        try:
            if lexicon is None:
                raise LexiconUnavailableError("no lexicon open")
            stored = lexicon.lookup("generated", word)
        except LexiconUnavailableError as exc:
            log.warning("lexicon unavailable (%s); analyzing offline", exc)
            return self.analyze(word, word_class)
        if stored:
            return [AnalysisRecord.from_document(doc) for doc in stored]
        return self.analyze(word, word_class)

    # -- lemmatization --------------------------------------------------------

    def lemmatize(self, word: str, word_class: str | None = None) -> list[Lemmatization]:
        """Lemma and word class of every reading, offline."""
        out, seen = [], set()
        for record in self.analyze(word, word_class):
            item = Lemmatization(record.lemma, record.information.get("paradigm"))
            if item not in seen:
                seen.add(item)
                out.append(item)
        return out

    def lemmatize_with_dictionary(self, word: str, lexicon) -> list[Lemmatization]:
        """Dictionary-backed lemmatization.

        A word found in the lemma collection is its own lemma; entries in
        the generated collection contribute their stored lemma. Without any
        hit the offline method is used.
        """
        try:
            if lexicon is None:
                raise LexiconUnavailableError("no lexicon open")
            own = lexicon.lookup("lemma", word)
            stored = lexicon.lookup("generated", word)
        except LexiconUnavailableError as exc:
            log.warning("lexicon unavailable (%s); lemmatizing offline", exc)
            return self.lemmatize(word)
        out, seen = [], set()
        for record in own:
            item = Lemmatization(normalize(word), _word_class_of(record))
            if item not in seen:
                seen.add(item)
                out.append(item)
        for document in stored:
            record = AnalysisRecord.from_document(document)
            item = Lemmatization(record.lemma, record.information.get("paradigm"))
            if item not in seen:
                seen.add(item)
                out.append(item)
        return out or self.lemmatize(word)

    # -- stemming -------------------------------------------------------------

    def stem(self, word: str) -> str:
        """Strip paradigm endings until none fits, longest first per round."""
        word = normalize(word)
        endings = sorted(self.store.strippable_endings(), key=len, reverse=True)
        while True:
            for ending in endings:
                if len(word) > len(ending) and word.endswith(ending):
                    word = word[: len(word) - len(ending)]
                    break
            else:
                return word
