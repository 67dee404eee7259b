from .alphabet import PhonotacticRules, is_pronounceable, normalize, tokenize
from .reversal import (
    AtomicRule,
    ReversedRuleset,
    expand_alternatives,
    resolve_operations,
    reverse_atomic,
    reverse_ruleset,
    swap_backreferences,
)
from .rules import (
    ConstantTable,
    OperationRegistry,
    SandhiRule,
    eval_operation,
    parse_dictionary_file,
    parse_rules,
    rule_to_text,
)

__all__ = [
    "AtomicRule",
    "ConstantTable",
    "OperationRegistry",
    "PhonotacticRules",
    "ReversedRuleset",
    "SandhiRule",
    "eval_operation",
    "expand_alternatives",
    "is_pronounceable",
    "normalize",
    "parse_dictionary_file",
    "parse_rules",
    "resolve_operations",
    "reverse_atomic",
    "reverse_ruleset",
    "rule_to_text",
    "swap_backreferences",
    "tokenize",
]
