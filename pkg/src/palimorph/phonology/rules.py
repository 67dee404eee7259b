"""Parser and evaluator for the sandhi rule language.

Rule files contain one rewrite rule per line, ``lhs:rhs``. Rules are written
in the merge direction: the left-hand side is a pattern matched against text,
the right-hand side a template producing the replacement. A single ASCII
space inside a rule stands for the boundary between two words.

Pattern atoms (left-hand side):
    literals        characters matched as-is
    (a|ā)           a group of literal alternatives
    (VOWEL)         a constant: a named character class from the dictionary
                    file, always written in all-caps inside parentheses
    ^  $            start / end of the text

Template atoms (right-hand side):
    literals        copied as-is
    $n              back-reference to the n-th grouping expression of the
                    left-hand side (groups and constants count, numbering
                    starts at 1)
    +name(x)        operation call; x may be a literal or a back-reference

The dictionary file declares constants (``=VOWEL:a,i,u,e,o,ā,ī,ū``) and
operations (``+long(x)``). Operations are implemented here; the declaration
merely makes the name available to rule files.

Comments start with ``#`` and must begin at the start of the line; in-line
comments are rejected.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Callable, Union

from ..errors import (
    DanglingBackReferenceError,
    DomainError,
    MalformedLineError,
    RuleSyntaxError,
    UnbalancedParenthesesError,
    UnknownOperationError,
    UnresolvedConstantError,
)
from .alphabet import (
    ASPIRATE_BASE,
    CONSONANTS,
    LONG_TO_SHORT,
    SHORT_TO_LONG,
    VOWELS,
    normalize,
)

# ---------------------------------------------------------------------------
# Rule model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class Group:
    """Parenthesized literal alternatives, e.g. ``(iha|agga)``."""

    alternatives: tuple[str, ...]


@dataclass(frozen=True)
class ConstantRef:
    name: str


@dataclass(frozen=True)
class AnchorStart:
    pass


@dataclass(frozen=True)
class AnchorEnd:
    pass


@dataclass(frozen=True)
class BackRef:
    index: int


@dataclass(frozen=True)
class OpCall:
    name: str
    arg: "Atom"


Atom = Union[Literal, Group, ConstantRef, AnchorStart, AnchorEnd, BackRef, OpCall]


@dataclass(frozen=True)
class SandhiRule:
    lhs: tuple[Atom, ...]
    rhs: tuple[Atom, ...]
    source_line: str = field(default="", compare=False)

    def grouping_atoms(self) -> list[Atom]:
        """Grouping expressions of the lhs, in back-reference numbering order."""
        return [a for a in self.lhs if isinstance(a, (Group, ConstantRef))]

    def __str__(self) -> str:
        return rule_to_text(self)


_CONSTANT_NAME = re.compile(r"[A-Z_]+\Z")


@dataclass(frozen=True)
class ConstantTable:
    """Named character classes, each an ordered duplicate-free phoneme list."""

    entries: dict[str, tuple[str, ...]]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def members(self, name: str) -> tuple[str, ...]:
        try:
            return self.entries[name]
        except KeyError:
            raise UnresolvedConstantError(f"unknown constant {name!r}") from None


@dataclass(frozen=True)
class OperationRegistry:
    """Operations declared in the dictionary file, bound to built-ins."""

    entries: dict[str, Callable[[str], str]]

    def __contains__(self, name: str) -> bool:
        return name in self.entries


# ---------------------------------------------------------------------------
# Built-in operations
# ---------------------------------------------------------------------------

_CONSONANT_SET = frozenset(CONSONANTS)
_VOWEL_SET = frozenset(VOWELS)


def _duplicate(phoneme: str) -> str:
    # An aspirate digraph doubles only its base letter: kh -> kkh.
    if phoneme not in _CONSONANT_SET:
        raise DomainError(f"duplicate() needs a consonant, got {phoneme!r}")
    return ASPIRATE_BASE.get(phoneme, phoneme) + phoneme


def _short(phoneme: str) -> str:
    if phoneme not in _VOWEL_SET:
        raise DomainError(f"short() needs a vowel, got {phoneme!r}")
    return LONG_TO_SHORT.get(phoneme, phoneme)


def _long(phoneme: str) -> str:
    if phoneme not in _VOWEL_SET:
        raise DomainError(f"long() needs a vowel, got {phoneme!r}")
    return SHORT_TO_LONG.get(phoneme, phoneme)


BUILTIN_OPERATIONS: dict[str, Callable[[str], str]] = {
    "duplicate": _duplicate,
    "short": _short,
    "long": _long,
}


def eval_operation(registry: OperationRegistry, name: str, arg: str) -> str:
    if name not in registry:
        raise UnknownOperationError(f"operation {name!r} is not declared")
    return registry.entries[name](arg)


# ---------------------------------------------------------------------------
# Dictionary file
# ---------------------------------------------------------------------------


def parse_dictionary_file(text: str) -> tuple[ConstantTable, OperationRegistry]:
    """Parse constant and operation declarations.

    ``=NAME:a,b,c`` defines a constant, ``+name(x)`` declares an operation
    that must exist among the built-ins. Full-line comments and blank lines
    are ignored.
    """
    constants: dict[str, tuple[str, ...]] = {}
    operations: dict[str, Callable[[str], str]] = {}
    for lineno, raw in enumerate(normalize(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("="):
            name, sep, body = line[1:].partition(":")
            name = name.strip()
            if not sep or not _CONSTANT_NAME.match(name):
                raise MalformedLineError(f"line {lineno}: bad constant definition {raw!r}")
            members = tuple(m.strip() for m in body.split(","))
            if not all(members):
                raise MalformedLineError(f"line {lineno}: empty member in {name}")
            if len(set(members)) != len(members):
                raise MalformedLineError(f"line {lineno}: duplicate member in {name}")
            constants[name] = members
        elif line.startswith("+"):
            m = re.match(r"\+([a-z_]+)\(\s*\w+\s*\)\Z", line)
            if not m:
                raise MalformedLineError(f"line {lineno}: bad operation declaration {raw!r}")
            opname = m.group(1)
            if opname not in BUILTIN_OPERATIONS:
                raise UnknownOperationError(
                    f"line {lineno}: operation {opname!r} has no implementation"
                )
            operations[opname] = BUILTIN_OPERATIONS[opname]
        else:
            raise MalformedLineError(f"line {lineno}: not a definition: {raw!r}")
    return ConstantTable(constants), OperationRegistry(operations)


# ---------------------------------------------------------------------------
# Rule parsing
# ---------------------------------------------------------------------------

_SPECIAL = "()^$+#"


class _Tokenizer:
    def __init__(self, text: str, consts: ConstantTable, side: str, where: str):
        self.text = text
        self.consts = consts
        self.side = side  # "lhs" or "rhs"
        self.where = where
        self.pos = 0
        self.atoms: list[Atom] = []

    def error(self, kind, message: str) -> RuleSyntaxError:
        return kind(f"{self.where}: {message}")

    def run(self) -> tuple[Atom, ...]:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                self.atoms.append(self._group())
            elif ch == ")":
                raise self.error(UnbalancedParenthesesError, "unmatched ')'")
            elif ch == "#":
                raise self.error(MalformedLineError, "in-line comments are not allowed")
            elif ch == "+":
                self.atoms.append(self._operation())
            elif ch == "^":
                if self.side != "lhs":
                    raise self.error(MalformedLineError, "'^' is only valid in a pattern")
                self.atoms.append(AnchorStart())
                self.pos += 1
            elif ch == "$":
                self.atoms.append(self._dollar())
            elif ch == " ":
                self.atoms.append(Literal(" "))
                self.pos += 1
            else:
                self.atoms.append(self._literal())
        return tuple(self.atoms)

    def _literal(self) -> Literal:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _SPECIAL + " ":
            self.pos += 1
        return Literal(self.text[start : self.pos])

    def _balanced(self) -> str:
        """Consume from '(' to its matching ')' and return the inner text."""
        depth = 0
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return self.text[start + 1 : self.pos - 1]
            self.pos += 1
        raise self.error(UnbalancedParenthesesError, "unclosed '('")

    def _group(self) -> Atom:
        inner = self._balanced()
        if not inner:
            raise self.error(MalformedLineError, "empty group '()'")
        if self.side == "rhs":
            raise self.error(MalformedLineError, "groups are only valid in a pattern")
        if _CONSTANT_NAME.match(inner):
            if inner not in self.consts:
                raise self.error(UnresolvedConstantError, f"unknown constant {inner!r}")
            return ConstantRef(inner)
        alternatives = tuple(inner.split("|"))
        if not all(alternatives):
            raise self.error(MalformedLineError, f"empty alternative in ({inner})")
        return Group(alternatives)

    def _dollar(self) -> Atom:
        m = re.match(r"\$(\d+)", self.text[self.pos :])
        if m:
            if self.side != "rhs":
                raise self.error(
                    MalformedLineError, "back-references are only valid in a template"
                )
            self.pos += m.end()
            return BackRef(int(m.group(1)))
        if self.side == "lhs":
            self.pos += 1
            return AnchorEnd()
        raise self.error(MalformedLineError, "'$' must be followed by a group number")

    def _operation(self) -> OpCall:
        m = re.match(r"\+([a-z_]+)\(", self.text[self.pos :])
        if not m:
            raise self.error(MalformedLineError, "bad operation call")
        name = m.group(1)
        self.pos += m.end() - 1  # leave '(' as current char
        inner = self._balanced()
        arg = _parse_op_arg(inner, self.consts, self.where)
        return OpCall(name, arg)


def _parse_op_arg(inner: str, consts: ConstantTable, where: str) -> Atom:
    inner = inner.strip()
    m = re.match(r"\$(\d+)\Z", inner)
    if m:
        return BackRef(int(m.group(1)))
    if inner.startswith("(") and inner.endswith(")"):
        inner = inner[1:-1]
    if _CONSTANT_NAME.match(inner):
        if inner not in consts:
            raise UnresolvedConstantError(f"{where}: unknown constant {inner!r}")
        return ConstantRef(inner)
    if not inner or any(c in _SPECIAL for c in inner):
        raise MalformedLineError(f"{where}: bad operation argument {inner!r}")
    return Literal(inner)


def _backref_indices(atoms: tuple[Atom, ...]) -> Iterator[int]:
    for atom in atoms:
        if isinstance(atom, BackRef):
            yield atom.index
        elif isinstance(atom, OpCall) and isinstance(atom.arg, BackRef):
            yield atom.arg.index


def parse_rule_line(line: str, consts: ConstantTable, where: str = "rule") -> SandhiRule:
    lhs_text, sep, rhs_text = line.partition(":")
    if not sep:
        raise MalformedLineError(f"{where}: missing ':' in {line!r}")
    lhs_text, rhs_text = lhs_text.strip(), rhs_text.strip()
    if not lhs_text or not rhs_text:
        raise MalformedLineError(f"{where}: empty rule side in {line!r}")
    lhs = _Tokenizer(lhs_text, consts, "lhs", where).run()
    rhs = _Tokenizer(rhs_text, consts, "rhs", where).run()
    rule = SandhiRule(lhs, rhs, source_line=line)
    n_groups = len(rule.grouping_atoms())
    for index in _backref_indices(rhs):
        if not 1 <= index <= n_groups:
            raise DanglingBackReferenceError(
                f"{where}: ${index} exceeds the {n_groups} grouping expression(s)"
            )
    return rule


def parse_rules(text: str, consts: ConstantTable) -> list[SandhiRule]:
    """Parse a rule file: one ``lhs:rhs`` rule per line."""
    rules = []
    for lineno, raw in enumerate(normalize(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rules.append(parse_rule_line(line, consts, where=f"line {lineno}"))
    return rules


# ---------------------------------------------------------------------------
# Pretty printing
# ---------------------------------------------------------------------------


def atom_to_text(atom: Atom) -> str:
    if isinstance(atom, Literal):
        return atom.text
    if isinstance(atom, Group):
        return "(" + "|".join(atom.alternatives) + ")"
    if isinstance(atom, ConstantRef):
        return f"({atom.name})"
    if isinstance(atom, AnchorStart):
        return "^"
    if isinstance(atom, AnchorEnd):
        return "$"
    if isinstance(atom, BackRef):
        return f"${atom.index}"
    if isinstance(atom, OpCall):
        return f"+{atom.name}({atom_to_text(atom.arg)})"
    raise TypeError(f"not an atom: {atom!r}")


def rule_to_text(rule: SandhiRule) -> str:
    lhs = "".join(atom_to_text(a) for a in rule.lhs)
    rhs = "".join(atom_to_text(a) for a in rule.rhs)
    return f"{lhs}:{rhs}"


# ---------------------------------------------------------------------------
# Forward application (merge direction)
# ---------------------------------------------------------------------------


def match_at(
    atoms: tuple[Atom, ...], text: str, pos: int, consts: ConstantTable
) -> Iterator[tuple[int, dict[int, str]]]:
    """Yield (end, bindings) for every way `atoms` match `text` at `pos`.

    Bindings map grouping-expression numbers to the alternative they matched.
    All alternatives are explored, in declared order.
    """

    def walk(i: int, at: int, bindings: dict[int, str], group_no: int):
        if i == len(atoms):
            yield at, dict(bindings)
            return
        atom = atoms[i]
        if isinstance(atom, Literal):
            if text.startswith(atom.text, at):
                yield from walk(i + 1, at + len(atom.text), bindings, group_no)
        elif isinstance(atom, (Group, ConstantRef)):
            alts = (
                atom.alternatives
                if isinstance(atom, Group)
                else consts.members(atom.name)
            )
            for alt in alts:
                if text.startswith(alt, at):
                    bindings[group_no + 1] = alt
                    yield from walk(i + 1, at + len(alt), bindings, group_no + 1)
                    del bindings[group_no + 1]
        elif isinstance(atom, AnchorStart):
            if at == 0:
                yield from walk(i + 1, at, bindings, group_no)
        elif isinstance(atom, AnchorEnd):
            if at == len(text):
                yield from walk(i + 1, at, bindings, group_no)
        else:
            raise NotAtomicPattern(atom)

    yield from walk(0, pos, {}, 0)


class NotAtomicPattern(TypeError):
    """A template-only atom appeared in a pattern position."""


def render(
    atoms: tuple[Atom, ...],
    bindings: dict[int, str],
    registry: OperationRegistry,
) -> str:
    """Instantiate a template with the bindings of a successful match."""
    parts = []
    for atom in atoms:
        if isinstance(atom, Literal):
            parts.append(atom.text)
        elif isinstance(atom, BackRef):
            parts.append(bindings[atom.index])
        elif isinstance(atom, OpCall):
            if isinstance(atom.arg, Literal):
                value = atom.arg.text
            elif isinstance(atom.arg, BackRef):
                value = bindings[atom.arg.index]
            else:
                raise RuleSyntaxError(f"unresolved operation argument in {atom}")
            parts.append(eval_operation(registry, atom.name, value))
        else:
            raise RuleSyntaxError(f"{atom!r} cannot appear in a template")
    return "".join(parts)
