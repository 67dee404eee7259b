"""Compound splitting and merging.

Splitting scans a word left to right, recording every position at which the
pattern of a reversed (atomic) rule occurs. Each table entry, applied at its
position, produces one candidate decomposition; a depth parameter bounds how
many splits may be stacked on top of each other. Merging goes the other way:
two words are joined with the boundary marked by a space and every forward
rule whose pattern covers the boundary produces one merged candidate.

Split results validate themselves against the general phonotactic rules and
compute their lexicon confidence lazily, on first request.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import LexiconUnavailableError, TooFewWordsError
from .alphabet import DEFAULT_PHONOTACTICS, PhonotacticRules
from .reversal import AtomicRule
from .rules import ConstantTable, OperationRegistry, SandhiRule, match_at, render


@dataclass(frozen=True)
class SandhiTableEntry:
    """One applicable rule: the rule's pattern occurs at `position`."""

    position: int
    rule: AtomicRule


def self_validate(
    candidate: list[str], phonotactics: PhonotacticRules = DEFAULT_PHONOTACTICS
) -> bool:
    """True iff every constituent passes the phonotactic rules."""
    return bool(candidate) and all(phonotactics.is_valid(w) for w in candidate)


@dataclass
class SplitResult:
    """One candidate decomposition of a compound."""

    words: tuple[str, ...]
    applied: tuple[SandhiTableEntry, ...]
    valid: bool
    _splits: int = field(default=0, repr=False)
    _confidence: tuple[object, Fraction] | None = field(
        default=None, repr=False, compare=False
    )

    def text(self) -> str:
        return " ".join(self.words)

    def confidence(self, lexicon) -> Fraction:
        """Fraction of constituents found in the lexicon; computed lazily.

        The value is cached per lexicon state, so a lexicon update causes a
        fresh computation. Raises LexiconUnavailableError if no lexicon is
        given, which keeps "no lexicon" distinct from a confidence of 0.
        """
        if lexicon is None:
            raise LexiconUnavailableError("confidence needs an open lexicon")
        state = (id(lexicon), getattr(lexicon, "version", None))
        if self._confidence is not None and self._confidence[0] == state:
            return self._confidence[1]
        found = sum(1 for w in self.words if lexicon.contains_word(w))
        value = Fraction(found, len(self.words))
        self._confidence = (state, value)
        return value


def confidence(result: SplitResult, lexicon) -> Fraction:
    return result.confidence(lexicon)


def build_split_table(word: str, rules: list[AtomicRule]) -> list[SandhiTableEntry]:
    """All (position, rule) pairs where a rule pattern occurs in the word.

    Entries are ordered by position, then by rule order.
    """
    entries = []
    for position in range(len(word)):
        for rule in rules:
            if word.startswith(rule.lhs, position):
                entries.append(SandhiTableEntry(position, rule))
    return entries


def _shifted_position(entry: SandhiTableEntry, applied: tuple[SandhiTableEntry, ...]) -> int:
    """Table position of `entry` inside a result that has `applied` rules.

    Every rule applied at an earlier original position shifts later
    positions by the length difference of its two sides.
    """
    shift = 0
    for done in applied:
        if done.position < entry.position:
            shift += len(done.rule.rhs) - len(done.rule.lhs)
    return entry.position + shift


def split(
    word: str,
    depth: int,
    rules: list[AtomicRule],
    phonotactics: PhonotacticRules = DEFAULT_PHONOTACTICS,
) -> list[SplitResult]:
    """All decompositions of `word` reachable with at most `depth` splits.

    Depth 0 returns only the unmodified word. At depth 1 every table entry
    is applied once; greater depths re-apply the table to previous results,
    never re-applying an entry to the result it already produced. Identical
    results are retained once; rules without a split point in their
    replacement do not use up depth. The output order is deterministic:
    discovery order over the table.
    """
    identity = SplitResult((word,), (), self_validate([word], phonotactics))
    if depth <= 0:
        return [identity]

    table = build_split_table(word, rules)
    results: list[SplitResult] = [identity]
    seen: dict[tuple[str, ...], int] = {identity.words: 0}
    queue = [(word, identity)]
    while queue:
        text, result = queue.pop(0)
        for entry in table:
            if entry in result.applied:
                continue
            splitting = " " in entry.rule.rhs
            if splitting and result._splits >= depth:
                continue
            position = _shifted_position(entry, result.applied)
            if position < 0 or not text.startswith(entry.rule.lhs, position):
                continue
            new_text = (
                text[:position] + entry.rule.rhs + text[position + len(entry.rule.lhs) :]
            )
            words = tuple(new_text.split(" "))
            if words in seen:
                continue
            new_result = SplitResult(
                words,
                result.applied + (entry,),
                self_validate(list(words), phonotactics),
                _splits=result._splits + (1 if splitting else 0),
            )
            seen[words] = len(results)
            results.append(new_result)
            queue.append((new_text, new_result))
    return results


def merge_pair(
    first: str,
    second: str,
    rules: list[SandhiRule],
    consts: ConstantTable,
    registry: OperationRegistry,
) -> list[str]:
    """Merge one word pair: every rule applicable across the boundary fires.

    At most one rule application per candidate. If nothing applies, the pair
    is left unmerged: the space-separated form first, then the plain
    concatenation.
    """
    joined = first + " " + second
    boundary = len(first)
    candidates: list[str] = []
    for rule in rules:
        for start in range(len(joined)):
            for end, bindings in match_at(rule.lhs, joined, start, consts):
                # the match must cover exactly the boundary space
                if not (start <= boundary < end):
                    continue
                if joined[start:end].count(" ") != 1:
                    continue
                merged = joined[:start] + render(rule.rhs, bindings, registry) + joined[end:]
                if merged not in candidates:
                    candidates.append(merged)
    if not candidates:
        candidates = [joined, first + second]
    return candidates


def merge(
    words: list[str],
    rules: list[SandhiRule],
    consts: ConstantTable,
    registry: OperationRegistry,
) -> list[str]:
    """Merge two or more words pair-wise, left to right.

    The first pair's candidates are each merged with the next word, and so
    on until no words remain. Duplicates are dropped, order is preserved.
    """
    if len(words) < 2 or not all(words):
        raise TooFewWordsError("merging needs at least two non-empty words")
    results = [words[0]]
    for nxt in words[1:]:
        step: list[str] = []
        for current in results:
            for candidate in merge_pair(current, nxt, rules, consts, registry):
                if candidate not in step:
                    step.append(candidate)
        results = step
    return results


class SandhiEngine:
    """Splitting and merging bundled with their loaded rulesets."""

    def __init__(
        self,
        merge_rules: list[SandhiRule],
        split_rules: list[AtomicRule],
        consts: ConstantTable,
        registry: OperationRegistry,
        phonotactics: PhonotacticRules = DEFAULT_PHONOTACTICS,
    ):
        self.merge_rules = merge_rules
        self.split_rules = split_rules
        self.consts = consts
        self.registry = registry
        self.phonotactics = phonotactics

    def split(self, word: str, depth: int = 1) -> list[SplitResult]:
        return split(word, depth, self.split_rules, self.phonotactics)

    def merge(self, words: list[str]) -> list[str]:
        return merge(words, self.merge_rules, self.consts, self.registry)
