"""Rules, priority relations, and plausible descriptions.

A knowledge base is supplied as facts (formulas), defeasible and warning
rules, and an acyclic priority relation.  Building a description converts
the facts into a satisfiable, minimal set of axiom clauses (via clause form,
the error filter, resolution closure, and the core), expands those axioms
into strict rules grouped by antecedent, and validates the priority
relation.  Strict rules are never supplied by the user; they exist only as
this derived closure of the facts.

The distinguished strict rule with the empty antecedent (whose consequent
conjoins all axioms) may not appear as the inferior side of any priority
pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from . import classical
from .classical import Clause, clause_formula
from .formulas import (
    DEFAULT_MAX_ATOMS,
    Disj,
    Formula,
    FormulaClass,
    classify,
    conj,
    format_formula,
    is_clause,
    lits,
    simplify,
)


class Arrow(Enum):
    STRICT = "->"
    DEFEASIBLE = "=>"
    WARNING = "~>"


@dataclass(frozen=True)
class Rule:
    """A rule: finite antecedent set, arrow kind, consequent formula."""

    rid: str
    antecedents: tuple[Formula, ...]
    arrow: Arrow
    consequent: Formula

    def __post_init__(self):
        # canonical, duplicate-free antecedent order
        members = {f._key: f for f in self.antecedents}
        object.__setattr__(
            self, "antecedents", tuple(members[k] for k in sorted(members))
        )

    @property
    def signature(self):
        """Identity-free content, for extensional comparison in tests."""
        return (frozenset(self.antecedents), self.arrow, self.consequent)

    def __repr__(self):
        ants = ",".join(format_formula(f) for f in self.antecedents)
        return f"{self.rid}: {{{ants}}} {self.arrow.value} {format_formula(self.consequent)}"


class KbValidationError(Exception):
    pass


class CyclicPriorityError(KbValidationError):
    def __init__(self, cycle: list[str]):
        super().__init__("cyclic priority: " + " > ".join(cycle + cycle[:1]))
        self.cycle = cycle


class PriorityOverRseError(KbValidationError):
    def __init__(self, superior: str, rse_id: str):
        super().__init__(
            f"priority pair {superior} > {rse_id} makes the axiom rule inferior"
        )


class UnknownRuleIdError(KbValidationError):
    def __init__(self, rid: str):
        super().__init__(f"unknown rule id: {rid}")
        self.rid = rid


class DuplicateRuleIdError(KbValidationError):
    def __init__(self, rid: str):
        super().__init__(f"duplicate rule id: {rid}")
        self.rid = rid


class StrictRuleRejectedError(KbValidationError):
    def __init__(self, rid: str):
        super().__init__(
            f"rule {rid}: strict rules are derived from facts, not user-supplied"
        )


def build_axioms(facts: Iterable[Formula],
                 max_atoms: int = DEFAULT_MAX_ATOMS) -> frozenset[Clause]:
    """Axiom clauses distilled from the facts.

    Pipeline: clause form, error filter, resolution closure, core.  The
    result is satisfiable, every member is contingent, and no member's
    literal set contains another's.
    """
    filtered = classical.sat_filter(classical.clauses_of(facts, max_atoms))
    return classical.cor_res(filtered)


def axiom_formulas(ax: Iterable[Clause]) -> frozenset[Formula]:
    """Axiom clauses as simplified formulas (units become bare literals)."""
    return frozenset(clause_formula(c, simplified=True) for c in ax)


def clause_rules(c: Formula) -> frozenset[Rule]:
    """Expand one contingent clause into its strict rules.

    An n-literal clause yields 2^n - 1 rules: the whole clause from the
    empty antecedent, plus one rule per proper nonempty literal subset K,
    concluding the (simplified) disjunction of K from the conjoined
    complements of the rest.  Antecedents and consequents are simplified.
    """
    if not is_clause(c):
        raise ValueError(f"not a clause: {c!r}")
    if classify(c) is not FormulaClass.CONTINGENT:
        raise ValueError(f"clause is not contingent: {c!r}")
    ls = lits(c)
    rules = {_content_rule((), Arrow.STRICT, simplify(c))}
    for size in range(1, len(ls)):
        for keep in combinations(sorted(ls), size):
            rest = ls - set(keep)
            antecedent = conj(l.complement().formula() for l in rest)
            consequent = simplify(Disj(l.formula() for l in keep))
            rules.add(_content_rule((antecedent,), Arrow.STRICT, consequent))
    return frozenset(rules)


def _content_rule(antecedents, arrow, consequent) -> Rule:
    rid = _strict_rule_id(antecedents)
    return Rule(rid, tuple(antecedents), arrow, consequent)


def _strict_rule_id(antecedents) -> str:
    if not antecedents:
        return "#rse"
    body = ",".join(sorted(format_formula(f) for f in antecedents))
    return f"#s({body})"


def build_strict_rules(ax_formulas: Iterable[Formula]) -> tuple[Rule, ...]:
    """Strict rules for an axiom set: clause expansions merged by antecedent.

    All expansion rules sharing an antecedent set are conjoined into one
    rule; the empty-antecedent rule is the distinguished axiom rule and
    concludes the (simplified) conjunction of all axioms.
    """
    grouped: dict[tuple, tuple[tuple[Formula, ...], set[Formula]]] = {}
    for c in ax_formulas:
        for r in clause_rules(c):
            key = tuple(f._key for f in r.antecedents)
            ants, consequents = grouped.setdefault(key, (r.antecedents, set()))
            consequents.add(r.consequent)
    out = []
    for key in sorted(grouped):
        ants, consequents = grouped[key]
        out.append(_content_rule(ants, Arrow.STRICT, conj(consequents)))
    return tuple(out)


def _find_cycle(pairs: Iterable[tuple[str, str]]) -> list[str] | None:
    """A superior->inferior cycle in the priority pairs, if any."""
    succ: dict[str, list[str]] = {}
    for sup, inf in pairs:
        succ.setdefault(sup, []).append(inf)
    state: dict[str, int] = {}  # 1 = on stack, 2 = done
    path: list[str] = []

    def visit(node: str) -> list[str] | None:
        state[node] = 1
        path.append(node)
        for nxt in succ.get(node, ()):
            if state.get(nxt) == 1:
                return path[path.index(nxt):]
            if state.get(nxt) is None:
                cycle = visit(nxt)
                if cycle is not None:
                    return cycle
        path.pop()
        state[node] = 2
        return None

    for start in sorted(succ):
        if state.get(start) is None:
            cycle = visit(start)
            if cycle is not None:
                return cycle
    return None


@dataclass
class PlausibleDescription:
    """An immutable, validated knowledge base ready for querying.

    `rules` holds the derived strict rules followed by the user rules;
    `priority` is the acyclic superior/inferior id-pair relation.  Query
    caches (fact checks, supporter sets) are memos: a cached value always
    equals recomputation, and concurrent reads are safe.
    """

    rules: tuple[Rule, ...]
    priority: frozenset[tuple[str, str]]
    axiom_clauses: frozenset[Clause]
    axioms: tuple[Formula, ...]
    rse_id: str | None
    max_atoms: int = DEFAULT_MAX_ATOMS
    _by_id: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_id = {r.rid: r for r in self.rules}

    def rule(self, rid: str) -> Rule:
        try:
            return self._by_id[rid]
        except KeyError:
            raise UnknownRuleIdError(rid) from None

    @property
    def rse(self) -> Rule | None:
        return self._by_id[self.rse_id] if self.rse_id else None

    def rsd(self) -> tuple[Rule, ...]:
        """The supporting rules: strict and defeasible, minus the axiom rule."""
        return tuple(
            r for r in self.rules
            if r.arrow is not Arrow.WARNING and r.rid != self.rse_id
        )

    def is_fact(self, f: Formula) -> bool:
        """Whether the axioms semantically entail f."""
        key = ("fact", f)
        hit = self._cache.get(key)
        if hit is None:
            hit = classical.entails(self.axioms, f, self.max_atoms)
            self._cache[key] = hit
        return hit

    def _supports(self, r: Rule, f: Formula) -> bool:
        key = ("sat", r.rid)
        consistent = self._cache.get(key)
        if consistent is None:
            consistent = classical.satisfiable(
                self.axioms + (r.consequent,), self.max_atoms
            )
            self._cache[key] = consistent
        if not consistent:
            return False
        key = ("ent", r.consequent, f)
        hit = self._cache.get(key)
        if hit is None:
            hit = classical.entails(
                self.axioms + (r.consequent,), f, self.max_atoms
            )
            self._cache[key] = hit
        return hit

    def supporters(self, f: Formula,
                   rules: Sequence[Rule] | None = None) -> tuple[Rule, ...]:
        """Rules whose consequent is consistent with and implies f (with the axioms)."""
        key = ("sup", f)
        all_sup = self._cache.get(key)
        if all_sup is None:
            all_sup = frozenset(r.rid for r in self.rules if self._supports(r, f))
            self._cache[key] = all_sup
        if rules is None:
            rules = self.rules
        return tuple(r for r in rules if r.rid in all_sup)

    def superior_supporters(self, f: Formula, s: Rule,
                            rules: Sequence[Rule] | None = None) -> tuple[Rule, ...]:
        """Supporters of f strictly superior to s."""
        return tuple(
            t for t in self.supporters(f, rules)
            if (t.rid, s.rid) in self.priority
        )

    def superior(self, r: Rule, s: Rule) -> bool:
        return (r.rid, s.rid) in self.priority


def validate_description(
    facts: Iterable[Formula],
    rules: Iterable[Rule],
    priority: Iterable[tuple[str, str]] = (),
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> PlausibleDescription:
    """Build a description from user input, or raise a KbValidationError.

    Checks: no user strict rules, unique ids, priority ids resolve, the
    axiom rule is never inferior, and the priority relation is acyclic.
    """
    user_rules = tuple(rules)
    for r in user_rules:
        if r.arrow is Arrow.STRICT:
            raise StrictRuleRejectedError(r.rid)

    ax_clauses = build_axioms(facts, max_atoms)
    ax = tuple(sorted(axiom_formulas(ax_clauses)))
    strict = build_strict_rules(ax)
    rse_id = "#rse" if ax else None

    seen = {r.rid for r in strict}
    for r in user_rules:
        if r.rid in seen:
            raise DuplicateRuleIdError(r.rid)
        seen.add(r.rid)

    pairs = []
    for sup, inf in priority:
        if sup not in seen:
            raise UnknownRuleIdError(sup)
        if inf not in seen:
            raise UnknownRuleIdError(inf)
        if inf == rse_id:
            raise PriorityOverRseError(sup, rse_id)
        pairs.append((sup, inf))

    cycle = _find_cycle(pairs)
    if cycle is not None:
        raise CyclicPriorityError(cycle)

    return PlausibleDescription(
        rules=strict + user_rules,
        priority=frozenset(pairs),
        axiom_clauses=ax_clauses,
        axioms=ax,
        rse_id=rse_id,
        max_atoms=max_atoms,
    )
