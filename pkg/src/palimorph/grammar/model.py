"""Data model for inflection paradigms.

A paradigm is a list of morphemes; a morpheme is a bundle of morphs (ending
variants, or full forms for pronouns) sharing one feature set. Feature sets
are plain ordered dicts of string key-value pairs; feature-set comparison is
dict equality, so the order non-terminal nodes were traversed in does not
matter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

FeatureSet = dict[str, str]


@dataclass(frozen=True)
class Morph:
    """One ending (or full form). An empty surface is a zero ending."""

    surface: str
    occurrence: str | None = None

    @property
    def is_zero(self) -> bool:
        return self.surface == ""


@dataclass(frozen=True)
class Morpheme:
    morphs: tuple[Morph, ...]
    features: FeatureSet = field(hash=False)

    def feature(self, key: str, default: str | None = None) -> str | None:
        return self.features.get(key, default)


@dataclass(frozen=True)
class Paradigm:
    word_class: str
    morphemes: tuple[Morpheme, ...]

    def endings(self) -> set[str]:
        return {m.surface for mor in self.morphemes for m in mor.morphs}


@dataclass(frozen=True)
class IrregularEntry:
    form: str
    features: FeatureSet = field(hash=False)
