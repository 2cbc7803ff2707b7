"""Classical propositional core: valuations, clause form, resolution.

Clauses are represented as frozensets of literals read disjunctively; the
empty clause is the falsum.  On top of binary-resolution closure sit the
potential-error filter (drop every clause touching a literal derivable both
ways as a unit) and three proof relations: classical refutation, the
paraconsistent "judicious" refutation against the filtered clause set, and
membership in the consequence set (judicious minus tautologies).

Semantic entailment and satisfiability are decided independently by
exhaustive valuation, so resolution can be cross-checked against semantics.
"""

from __future__ import annotations

from typing import Iterable

from .formulas import (
    DEFAULT_MAX_ATOMS,
    AtomLimitError,
    Disj,
    Formula,
    FormulaClass,
    Lit,
    Neg,
    atoms,
    classify,
    evaluate,
    simplify,
)

Clause = frozenset[Lit]
ClauseSet = frozenset[Clause]

EMPTY_CLAUSE: Clause = frozenset()


def val_space(avars: Iterable[str]) -> list[frozenset[str]]:
    """All 2^n valuations over `avars`, as sets of true atoms, false outside."""
    ordered = sorted(set(avars))
    out = []
    for mask in range(1 << len(ordered)):
        out.append(frozenset(a for i, a in enumerate(ordered) if mask >> i & 1))
    return out


def _check_limit(avars, max_atoms: int) -> list[str]:
    ordered = sorted(avars)
    if len(ordered) > max_atoms:
        raise AtomLimitError(len(ordered), max_atoms)
    return ordered


def clauses_of(x, max_atoms: int = DEFAULT_MAX_ATOMS) -> ClauseSet:
    """Clause form of a formula, or the union over a set of formulas.

    One clause per falsifying valuation; the conjunction of the result is
    equivalent to the input formula.
    """
    if isinstance(x, Formula):
        x = (x,)
    out: set[Clause] = set()
    for f in x:
        avars = _check_limit(atoms(f), max_atoms)
        for v in val_space(avars):
            if not evaluate(f, v):
                out.add(frozenset(Lit(a, a in v) for a in avars))
    return frozenset(out)


def resolvents(c1: Clause, c2: Clause) -> Iterable[Clause]:
    for l in c1:
        if l.complement() in c2:
            yield (c1 - {l}) | (c2 - {l.complement()})


def resolution_closure(clauses: Iterable[Clause]) -> ClauseSet:
    """Least set containing `clauses` and closed under binary resolution."""
    closed: set[Clause] = set()
    frontier = list(set(clauses))
    while frontier:
        c = frontier.pop()
        if c in closed:
            continue
        closed.add(c)
        fresh = []
        for d in closed:
            fresh.extend(r for r in resolvents(c, d) if r not in closed)
        frontier.extend(fresh)
    return frozenset(closed)


def err(clauses: Iterable[Clause]) -> frozenset[Lit]:
    """Potential-error literals: unit-derivable together with their complement."""
    units = {next(iter(c)) for c in resolution_closure(clauses) if len(c) == 1}
    return frozenset(l for l in units if l.complement() in units)


def sat_filter(clauses: Iterable[Clause]) -> ClauseSet:
    """Drop the empty clause and every clause touching a potential error."""
    clauses = frozenset(clauses)
    bad = err(clauses)
    return frozenset(c for c in clauses if c and not (c & bad))


def core_clauses(clauses: Iterable[Clause]) -> ClauseSet:
    """Contingent-or-empty, subset-minimal members (clause-set core)."""
    kept = [c for c in set(clauses) if not any(l.complement() in c for l in c)]
    return frozenset(c for c in kept if not any(d < c for d in kept))


def cor_res(clauses: Iterable[Clause]) -> ClauseSet:
    return core_clauses(resolution_closure(clauses))


def clause_formula(c: Clause, simplified: bool = False) -> Formula:
    """Render a clause as a formula: or{...}, or a bare literal if simplified."""
    f = Disj(sorted(l.formula() for l in c))
    return simplify(f) if simplified else f


def proves(premises: Iterable[Formula], f: Formula,
           max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """Classical refutation: the clause form of {~f} ∪ premises resolves to falsum."""
    start = clauses_of(list(premises) + [Neg(f)], max_atoms)
    return EMPTY_CLAUSE in resolution_closure(start)


def judiciously_proves(premises: Iterable[Formula], f: Formula,
                       max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """Refutation against the error-filtered clause form of the premises."""
    start = clauses_of(Neg(f), max_atoms) | sat_filter(clauses_of(premises, max_atoms))
    return EMPTY_CLAUSE in resolution_closure(start)


def in_from(premises: Iterable[Formula], f: Formula,
            max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """f follows from the premises: judiciously proved and not a tautology."""
    if classify(f, max_atoms) is FormulaClass.TAUTOLOGY:
        return False
    return judiciously_proves(premises, f, max_atoms)


def entails(premises: Iterable[Formula], f: Formula,
            max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """Semantic consequence by exhaustive valuation over the joint atoms."""
    premises = list(premises)
    avars = set(atoms(f))
    for g in premises:
        avars |= atoms(g)
    ordered = _check_limit(avars, max_atoms)
    for v in val_space(ordered):
        if all(evaluate(g, v) for g in premises) and not evaluate(f, v):
            return False
    return True


def satisfiable(formulas: Iterable[Formula],
                max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    formulas = list(formulas)
    avars: set[str] = set()
    for g in formulas:
        avars |= atoms(g)
    ordered = _check_limit(avars, max_atoms)
    return any(
        all(evaluate(g, v) for g in formulas) for v in val_space(ordered)
    )


def clauses_satisfiable(clauses: Iterable[Clause]) -> bool:
    """Valuation-based satisfiability of a clause set (unit test oracle)."""
    clauses = list(clauses)
    avars = sorted({l.atom for c in clauses for l in c})
    for v in val_space(avars):
        if all(any((l.atom in v) != l.neg for l in c) for c in clauses):
            return True
    return False
