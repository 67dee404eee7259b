"""Loading of grammar files, irregular-form files and pronoun tables.

Grammar files are hierarchical XML. The innermost elements are the morphs
(word endings, or full forms in the pronoun paradigm); every element
traversed on the way down contributes one feature, so the path to a morph
is its morphological information:

    <noun>
      <declension type="a">
        <gender type="masculine">
          <number type="singular">
            <case type="dative"><ending>āya</ending></case>
    ...

The root element names the word class and becomes the ``paradigm`` feature.
An element with a ``type`` attribute contributes ``tag=type``; an element
without one contributes ``parent-tag=tag`` (e.g. ``pronoun=personal``).

Irregular files are plain text, one entry per line:

    eko{paradigm=numeral, number=singular, gender=masculine, case=nominative}

Entries are grouped by lemma through the file name: ``irregular/eka.txt``
holds the forms of the lemma *eka*.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

from ..errors import (
    EmptyParadigmError,
    MalformedDocumentError,
    MalformedEntryError,
    UnknownWordClassError,
)
from ..phonology.alphabet import normalize
from .model import FeatureSet, IrregularEntry, Morph, Morpheme, Paradigm

PRONOUN_CLASS = "pronoun"


def load_paradigm(source: str) -> Paradigm:
    """Parse one grammar document into a paradigm."""
    try:
        root = ET.fromstring(normalize(source))
    except ET.ParseError as exc:
        raise MalformedDocumentError(str(exc)) from exc

    morphemes: list[Morpheme] = []

    def walk(element: ET.Element, features: FeatureSet):
        leaves = [child for child in element if len(child) == 0]
        branches = [child for child in element if len(child) > 0]
        if leaves:
            morphs = tuple(
                Morph(
                    normalize(child.text or ""),
                    occurrence=child.get("occurrence"),
                )
                for child in leaves
            )
            morphemes.append(Morpheme(morphs, dict(features)))
        for child in branches:
            key_value = _feature_for(child, element.tag)
            child_features = dict(features)
            child_features[key_value[0]] = key_value[1]
            walk(child, child_features)

    walk(root, {"paradigm": root.tag})
    if not morphemes:
        raise EmptyParadigmError(f"paradigm {root.tag!r} has no endings")
    return Paradigm(root.tag, tuple(morphemes))


def _feature_for(element: ET.Element, parent_tag: str) -> tuple[str, str]:
    type_value = element.get("type")
    if type_value is not None:
        return element.tag, normalize(type_value)
    return parent_tag, element.tag


_ENTRY = re.compile(r"(?P<form>[^{}\s]+)\{(?P<body>[^{}]*)\}\Z")


def load_irregulars(text: str) -> list[IrregularEntry]:
    """Parse an irregular-form file: ``form{key=value, key=value, ...}``."""
    entries = []
    for lineno, raw in enumerate(normalize(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _ENTRY.match(line)
        if not m:
            raise MalformedEntryError(f"line {lineno}: bad entry {raw!r}")
        features: FeatureSet = {}
        for pair in m.group("body").split(","):
            key, sep, value = pair.partition("=")
            if not sep or not key.strip() or not value.strip():
                raise MalformedEntryError(f"line {lineno}: bad pair {pair!r}")
            features[key.strip()] = value.strip()
        entries.append(IrregularEntry(m.group("form"), features))
    return entries


@dataclass(frozen=True)
class ExactHit:
    kind: str  # "pronoun" or "irregular"
    features: FeatureSet
    lemma: str


class ParadigmStore:
    """Immutable-after-load holder of paradigms, pronouns and irregulars."""

    def __init__(self):
        self._paradigms: dict[str, Paradigm] = {}
        self._irregulars: dict[str, list[tuple[FeatureSet, str]]] = {}
        self._pronoun_forms: dict[str, list[tuple[Morpheme, str]]] = {}
        self._pronoun_by_lemma: dict[str, list[Morpheme]] = {}

    # -- loading ------------------------------------------------------------

    def add_paradigm(self, paradigm: Paradigm) -> None:
        self._paradigms[paradigm.word_class] = paradigm
        if paradigm.word_class == PRONOUN_CLASS:
            self._index_pronouns(paradigm)

    def add_irregulars(self, entries: list[IrregularEntry], lemma: str) -> None:
        for entry in entries:
            self._irregulars.setdefault(entry.form, []).append((entry.features, lemma))

    def load_directory(self, grammar_dir: Path, irregular_dir: Path | None = None) -> None:
        for path in sorted(Path(grammar_dir).glob("*.xml")):
            self.add_paradigm(load_paradigm(path.read_text(encoding="utf-8")))
        if irregular_dir is not None:
            for path in sorted(Path(irregular_dir).glob("*.txt")):
                entries = load_irregulars(path.read_text(encoding="utf-8"))
                self.add_irregulars(entries, lemma=normalize(path.stem))

    def _index_pronouns(self, paradigm: Paradigm) -> None:
        # The lemma of a pronoun form is the nominative singular of its
        # person/subtype group.
        lemma_by_group: dict[tuple, str] = {}
        groups = []
        for morpheme in paradigm.morphemes:
            group = tuple(
                sorted(
                    (k, v)
                    for k, v in morpheme.features.items()
                    if k not in ("case", "number", "gender")
                )
            )
            groups.append(group)
            if (
                morpheme.feature("case") == "nominative"
                and morpheme.feature("number") == "singular"
                and group not in lemma_by_group
            ):
                lemma_by_group[group] = morpheme.morphs[0].surface
        for morpheme, group in zip(paradigm.morphemes, groups):
            lemma = lemma_by_group.get(group, morpheme.morphs[0].surface)
            self._pronoun_by_lemma.setdefault(lemma, []).append(morpheme)
            for morph in morpheme.morphs:
                self._pronoun_forms.setdefault(morph.surface, []).append(
                    (morpheme, lemma)
                )

    # -- queries ------------------------------------------------------------

    @property
    def word_classes(self) -> list[str]:
        return list(self._paradigms)

    def paradigm(self, word_class: str) -> Paradigm:
        try:
            return self._paradigms[word_class]
        except KeyError:
            raise UnknownWordClassError(word_class) from None

    def endings_for(self, word_class: str) -> list[Morpheme]:
        """All morphemes of the word class's paradigm, in document order."""
        return list(self.paradigm(word_class).morphemes)

    def lookup_exact(self, form: str) -> list[ExactHit]:
        """Pronoun-table and irregular-file matches for the exact form."""
        form = normalize(form)
        hits = [
            ExactHit(PRONOUN_CLASS, dict(morpheme.features), lemma)
            for morpheme, lemma in self._pronoun_forms.get(form, [])
        ]
        hits.extend(
            ExactHit("irregular", dict(features), lemma)
            for features, lemma in self._irregulars.get(form, [])
        )
        return hits

    def pronoun_morphemes_for(self, lemma: str) -> list[Morpheme]:
        """The pronoun morphemes of the group whose citation form is `lemma`."""
        return list(self._pronoun_by_lemma.get(normalize(lemma), []))

    def strippable_endings(self) -> set[str]:
        """Every non-empty ending of the ending-bearing paradigms.

        Full-form paradigms (pronouns) contribute words, not endings, and
        are left out.
        """
        endings: set[str] = set()
        for word_class, paradigm in self._paradigms.items():
            if word_class == PRONOUN_CLASS:
                continue
            endings.update(e for e in paradigm.endings() if e)
        return endings
