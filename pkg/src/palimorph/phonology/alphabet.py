"""Phoneme inventory and phonotactic word validation.

All toolkit text is normalized to composed Unicode (NFC) on load, so each
diacritical letter (ā, ṃ, ñ, ...) is one code point. Aspirate digraphs
(kh, gh, ch, jh, ṭh, ḍh, th, dh, ph, bh) count as single phonemes when
tokenizing, but they naturally match as two-character sequences in plain
string operations.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

VOWELS = ("a", "i", "u", "e", "o", "ā", "ī", "ū")

# Base consonant letters, one code point each after NFC.
_SIMPLE_CONSONANTS = (
    "k", "g", "c", "j", "ṭ", "ḍ", "t", "d", "p", "b",
    "y", "r", "l", "ḷ", "v", "h", "s",
    "ṅ", "ñ", "ṇ", "n", "m", "ṃ",
)

# Aspirate digraph -> unaspirated base letter.
ASPIRATE_BASE = {
    "kh": "k", "gh": "g", "ch": "c", "jh": "j", "ṭh": "ṭ",
    "ḍh": "ḍ", "th": "t", "dh": "d", "ph": "p", "bh": "b",
}

CONSONANTS = tuple(ASPIRATE_BASE) + _SIMPLE_CONSONANTS

LONG_TO_SHORT = {"ā": "a", "ī": "i", "ū": "u"}
SHORT_TO_LONG = {"a": "ā", "i": "ī", "u": "ū"}

_VOWEL_SET = frozenset(VOWELS)
_FINAL_OK = _VOWEL_SET | {"ṃ"}


def normalize(text: str) -> str:
    """Return `text` in the canonical composed form used throughout."""
    return unicodedata.normalize("NFC", text)


def tokenize(word: str) -> list[str]:
    """Split a word into phonemes, treating aspirate digraphs as one token.

    Characters outside the Pali inventory become single-character tokens.
    """
    tokens = []
    i = 0
    while i < len(word):
        pair = word[i : i + 2]
        if pair in ASPIRATE_BASE:
            tokens.append(pair)
            i += 2
        else:
            tokens.append(word[i])
            i += 1
    return tokens


def is_vowel(phoneme: str) -> bool:
    return phoneme in _VOWEL_SET


@dataclass(frozen=True)
class PhonotacticRules:
    """The simple, general word-validity rules, kept in one place.

    A word is invalid if it is empty, lacks a vowel, contains a run of more
    than `max_consonant_run` consecutive non-vowel phonemes, or ends in a
    phoneme other than a vowel or the niggahīta.
    """

    max_consonant_run: int = 2
    require_vowel: bool = True
    require_legal_final: bool = True

    def is_valid(self, word: str) -> bool:
        if not word:
            return False
        tokens = tokenize(word)
        if self.require_vowel and not any(is_vowel(t) for t in tokens):
            return False
        run = 0
        for t in tokens:
            run = 0 if is_vowel(t) else run + 1
            if run > self.max_consonant_run:
                return False
        if self.require_legal_final and tokens[-1] not in _FINAL_OK:
            return False
        return True


DEFAULT_PHONOTACTICS = PhonotacticRules()


def is_pronounceable(word: str) -> bool:
    """Validity of a single word under the default phonotactic rules."""
    return DEFAULT_PHONOTACTICS.is_valid(word)
