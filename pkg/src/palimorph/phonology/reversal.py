"""Reversal of merge-direction rules into split-direction atomic rules.

A merge rule rewrites a two-word boundary into a joined form. Splitting
needs the opposite direction, so every rule is turned around:

* atomic rules (literals only) simply exchange their sides;
* group/back-reference pairs are swapped before the sides are exchanged,
  so that references stay meaningful;
* groups without a back-reference become expandables on the new right-hand
  side and are multiplied out into one rule per alternative;
* operation calls that end up on the new left-hand side are resolved by
  enumerating the argument class and evaluating the operation per member.

The result of reversing a ruleset is a flat list of atomic rules, each a
pair of literal strings, the right-hand side carrying at most one space
(the split point).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotAtomicError, UnknownOperationError, UnreversibleRuleError
from .rules import (
    AnchorEnd,
    AnchorStart,
    Atom,
    BackRef,
    ConstantRef,
    ConstantTable,
    Group,
    Literal,
    OpCall,
    OperationRegistry,
    SandhiRule,
    eval_operation,
    rule_to_text,
)


@dataclass(frozen=True)
class AtomicRule:
    """A directly applicable rewrite: both sides are literal strings."""

    lhs: str
    rhs: str

    def __str__(self) -> str:
        return f"{self.lhs}:{self.rhs}"


def atomic_from_rule(rule: SandhiRule) -> AtomicRule:
    if not all(isinstance(a, Literal) for a in rule.lhs + rule.rhs):
        raise NotAtomicError(f"rule is not atomic: {rule_to_text(rule)}")
    lhs = "".join(a.text for a in rule.lhs)
    rhs = "".join(a.text for a in rule.rhs)
    return AtomicRule(lhs, rhs)


def reverse_atomic(rule: AtomicRule | SandhiRule) -> AtomicRule:
    """Exchange the sides of an atomic rule."""
    if isinstance(rule, SandhiRule):
        rule = atomic_from_rule(rule)
    return AtomicRule(rule.rhs, rule.lhs)


# ---------------------------------------------------------------------------
# Back-reference swapping
# ---------------------------------------------------------------------------


def _has_backrefs(rule: SandhiRule) -> bool:
    for atom in rule.rhs:
        if isinstance(atom, BackRef):
            return True
        if isinstance(atom, OpCall) and isinstance(atom.arg, BackRef):
            return True
    return False


def swap_backreferences(rule: SandhiRule) -> SandhiRule:
    """Exchange group/back-reference pairs and turn the rule around.

    Rules without back-references are returned unchanged. For the rest, each
    back-reference trades places with the group it refers to; the sides are
    then exchanged and the groups renumbered left-to-right on the new
    left-hand side, so every back-reference again points at its referent.
    Groups that had no back-reference end up as expandables on the new
    right-hand side.
    """
    if not _has_backrefs(rule):
        return rule

    groups = rule.grouping_atoms()
    referenced: dict[int, int] = {}  # group number -> rhs atom position
    for pos, atom in enumerate(rule.rhs):
        index = None
        if isinstance(atom, BackRef):
            index = atom.index
        elif isinstance(atom, OpCall) and isinstance(atom.arg, BackRef):
            index = atom.arg.index
        if index is not None:
            if index in referenced:
                raise UnreversibleRuleError(
                    f"${index} is referenced more than once: {rule_to_text(rule)}"
                )
            referenced[index] = pos

    # Exchange each pair in place.
    new_lhs: list[Atom] = []
    group_no = 0
    for atom in rule.lhs:
        if isinstance(atom, (Group, ConstantRef)):
            group_no += 1
            if group_no in referenced:
                new_lhs.append(BackRef(group_no))
                continue
        new_lhs.append(atom)
    new_rhs: list[Atom] = list(rule.rhs)
    for index, pos in referenced.items():
        atom = rule.rhs[pos]
        if isinstance(atom, OpCall):
            new_rhs[pos] = OpCall(atom.name, groups[index - 1])
        else:
            new_rhs[pos] = groups[index - 1]

    # Exchange the sides, then renumber against the new left-hand side.
    lhs, rhs = new_rhs, new_lhs
    renumber: dict[int, int] = {}
    seen = 0
    for atom in lhs:
        target = atom.arg if isinstance(atom, OpCall) else atom
        if isinstance(target, (Group, ConstantRef)):
            seen += 1
            old = _old_number(target, groups)
            if old is not None:
                renumber[old] = seen
    rhs = [
        BackRef(renumber[a.index]) if isinstance(a, BackRef) else a for a in rhs
    ]
    return SandhiRule(tuple(lhs), tuple(rhs), source_line=rule.source_line)


def _old_number(atom: Atom, groups: list[Atom]) -> int | None:
    for i, g in enumerate(groups, start=1):
        if g is atom:
            return i
    return None


# ---------------------------------------------------------------------------
# Expansion to atomic rules
# ---------------------------------------------------------------------------


def _tag_groups(atoms: tuple[Atom, ...]) -> list[tuple[Atom, int | None]]:
    """Pair each atom with the grouping number it carries, if any."""
    tagged = []
    seen = 0
    for atom in atoms:
        target = atom.arg if isinstance(atom, OpCall) else atom
        if isinstance(target, (Group, ConstantRef)):
            seen += 1
            tagged.append((atom, seen))
        else:
            tagged.append((atom, None))
    return tagged


def _alternatives(atom: Atom, consts: ConstantTable) -> tuple[str, ...]:
    if isinstance(atom, Group):
        return atom.alternatives
    return consts.members(atom.name)


def expand_reversed(
    rule: SandhiRule,
    consts: ConstantTable,
    registry: OperationRegistry | None = None,
) -> list[AtomicRule]:
    """Multiply a reversed rule out into atomic rules.

    Expandables are resolved left-to-right, left-hand side first, with the
    alternatives in declared order; back-references follow the alternative
    chosen for their group; operation calls are evaluated once their
    argument is concrete. The output order is therefore deterministic.
    """
    for atom in rule.lhs + rule.rhs:
        if isinstance(atom, (AnchorStart, AnchorEnd)):
            raise UnreversibleRuleError(
                f"anchored rules cannot be made atomic: {rule_to_text(rule)}"
            )

    lhs = _tag_groups(rule.lhs)
    # Right-hand-side expandables reference nothing; tag them None.
    rhs = [(atom, None) for atom in rule.rhs]
    out: list[AtomicRule] = []

    def evaluate(name: str, value: str) -> str:
        if registry is None:
            raise UnknownOperationError(
                f"rule needs operation {name!r} but no registry was given"
            )
        return eval_operation(registry, name, value)

    def substitute_refs(cells, index, value):
        result = []
        for atom, g in cells:
            if isinstance(atom, BackRef) and atom.index == index:
                atom = Literal(value)
            elif (
                isinstance(atom, OpCall)
                and isinstance(atom.arg, BackRef)
                and atom.arg.index == index
            ):
                atom = Literal(evaluate(atom.name, value))
            result.append((atom, g))
        return result

    def first_expandable(cells):
        for i, (atom, _g) in enumerate(cells):
            target = atom.arg if isinstance(atom, OpCall) else atom
            if isinstance(target, (Group, ConstantRef)):
                return i
        return None

    def normalize_ops(cells):
        result = []
        for atom, g in cells:
            if isinstance(atom, OpCall) and isinstance(atom.arg, Literal):
                atom = Literal(evaluate(atom.name, atom.arg.text))
            result.append((atom, g))
        return result

    def emit(lhs_cells, rhs_cells):
        texts = []
        for cells in (lhs_cells, rhs_cells):
            for atom, _g in cells:
                if not isinstance(atom, Literal):
                    raise UnreversibleRuleError(
                        f"cannot resolve {atom!r} in {rule_to_text(rule)}"
                    )
            texts.append("".join(atom.text for atom, _g in cells))
        out.append(AtomicRule(texts[0], texts[1]))

    def walk(lhs_cells, rhs_cells):
        lhs_cells = normalize_ops(lhs_cells)
        rhs_cells = normalize_ops(rhs_cells)
        i = first_expandable(lhs_cells)
        side, cells = ("lhs", lhs_cells) if i is not None else (None, None)
        if i is None:
            i = first_expandable(rhs_cells)
            side, cells = ("rhs", rhs_cells) if i is not None else (None, None)
        if i is None:
            emit(lhs_cells, rhs_cells)
            return
        atom, gid = cells[i]
        target = atom.arg if isinstance(atom, OpCall) else atom
        for value in _alternatives(target, consts):
            new_cell = (
                Literal(evaluate(atom.name, value))
                if isinstance(atom, OpCall)
                else Literal(value),
                None,
            )
            new_cells = cells[:i] + [new_cell] + cells[i + 1 :]
            if side == "lhs":
                nl, nr = new_cells, rhs_cells
            else:
                nl, nr = lhs_cells, new_cells
            if gid is not None:
                nl = substitute_refs(nl, gid, value)
                nr = substitute_refs(nr, gid, value)
            walk(nl, nr)

    walk(lhs, rhs)
    return out


def expand_alternatives(rule: SandhiRule, consts: ConstantTable) -> list[AtomicRule]:
    """Expand the expandables of a reversed rule whose pattern is literal."""
    return expand_reversed(rule, consts, registry=None)


def resolve_operations(
    rule: SandhiRule, consts: ConstantTable, registry: OperationRegistry
) -> list[AtomicRule]:
    """Resolve a reversed rule whose pattern is a single operation call.

    The argument class is enumerated; for each member the operation result
    becomes the pattern and the member replaces the matching back-reference.
    Remaining expandables are multiplied out afterwards.
    """
    if len(rule.lhs) != 1 or not isinstance(rule.lhs[0], OpCall):
        raise NotAtomicError(
            f"pattern is not a single operation call: {rule_to_text(rule)}"
        )
    return expand_reversed(rule, consts, registry)


# ---------------------------------------------------------------------------
# Whole-ruleset reversal
# ---------------------------------------------------------------------------


@dataclass
class ReversedRuleset:
    rules: list[AtomicRule]
    skipped: list[tuple[SandhiRule, str]] = field(default_factory=list)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


def reverse_ruleset(
    rules: list[SandhiRule],
    consts: ConstantTable,
    registry: OperationRegistry,
) -> ReversedRuleset:
    """Reverse a merge ruleset into atomic split rules.

    Per rule: swap group/back-reference pairs, exchange the sides, resolve
    operation calls and expand the remaining alternatives. Exact duplicates
    are dropped; rules that cannot be reversed are skipped and reported in
    the result's ``skipped`` list.
    """
    out: list[AtomicRule] = []
    seen: set[AtomicRule] = set()
    skipped: list[tuple[SandhiRule, str]] = []
    for rule in rules:
        try:
            if _has_backrefs(rule):
                turned = swap_backreferences(rule)
            else:
                turned = SandhiRule(rule.rhs, rule.lhs, source_line=rule.source_line)
            atomics = expand_reversed(turned, consts, registry)
        except UnreversibleRuleError as exc:
            skipped.append((rule, str(exc)))
            continue
        for atomic in atomics:
            if atomic not in seen:
                seen.add(atomic)
                out.append(atomic)
    return ReversedRuleset(out, skipped)


def ruleset_to_text(rules: list[AtomicRule], header: str = "") -> str:
    lines = []
    if header:
        lines.extend(f"# {line}" for line in header.splitlines())
    lines.extend(str(rule) for rule in rules)
    return "\n".join(lines) + "\n"


def atomic_rules_from_text(text: str, consts: ConstantTable) -> list[AtomicRule]:
    from .rules import parse_rules

    return [atomic_from_rule(r) for r in parse_rules(text, consts)]
