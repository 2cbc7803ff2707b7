"""Propositional Plausible Logic: non-monotonic reasoning with defeasible
rules, warning rules, and rule priorities over a paraconsistent classical
core.  Queries return a proof value per algorithm and one of four plausible
truth values (usually true / usually false / undetermined / ambiguous).
"""

from .classical import (
    Clause,
    clauses_of,
    entails,
    err,
    in_from,
    judiciously_proves,
    proves,
    resolution_closure,
    sat_filter,
    satisfiable,
    val_space,
)
from .engine import (
    ALG_ORDER,
    Alg,
    EvalNode,
    InvalidHistoryError,
    TreeBudgetError,
    TruthValue,
    co_algorithm,
    evaluation_tree,
    foes,
    provable,
    prove,
    tree_dot,
    tree_json,
    tree_value,
    truth_value,
)
from .formulas import (
    DEFAULT_MAX_ATOMS,
    Atom,
    AtomLimitError,
    Conj,
    Disj,
    FALSUM,
    Formula,
    FormulaClass,
    FormulaSyntaxError,
    Lit,
    Neg,
    VERUM,
    atoms,
    classify,
    complement,
    conj,
    core,
    disj,
    format_formula,
    lits,
    parse_formula,
    simplify,
)
from .kb import (
    Arrow,
    CyclicPriorityError,
    DuplicateRuleIdError,
    KbValidationError,
    PlausibleDescription,
    PriorityOverRseError,
    Rule,
    StrictRuleRejectedError,
    UnknownRuleIdError,
    build_axioms,
    build_strict_rules,
    clause_rules,
    validate_description,
)
from .kbtext import Diagnostic, KbDocument, KbSyntaxError, parse_kb, serialize_kb

__version__ = "0.1.0"
