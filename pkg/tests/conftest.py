"""Shared builders: worked-example descriptions and a random-theory generator."""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

from ppl import (
    Arrow,
    Atom,
    Conj,
    Disj,
    Formula,
    Neg,
    PlausibleDescription,
    Rule,
    validate_description,
)

KB_DIR = Path(__file__).resolve().parent.parent / "kb"


def desc_plausible_default() -> PlausibleDescription:
    """One defeasible rule claiming a, nothing else."""
    return validate_description([], [Rule("ra", (), Arrow.DEFEASIBLE, Atom("a"))])


def desc_retracted_default() -> PlausibleDescription:
    """The defeasible claim for a together with the hard fact ~a."""
    return validate_description(
        [Neg(Atom("a"))], [Rule("ra", (), Arrow.DEFEASIBLE, Atom("a"))]
    )


def desc_ambiguity() -> PlausibleDescription:
    a, b = Atom("a"), Atom("b")
    return validate_description(
        [],
        [
            Rule("ra", (), Arrow.DEFEASIBLE, a),
            Rule("rna", (), Arrow.DEFEASIBLE, Neg(a)),
            Rule("rb", (), Arrow.DEFEASIBLE, b),
            Rule("ranb", (a,), Arrow.DEFEASIBLE, Neg(b)),
        ],
    )


def lottery_facts(n: int) -> list[Formula]:
    tickets = [Atom(f"s{i}") for i in range(1, n + 1)]
    facts: list[Formula] = [Disj(tickets)]
    facts += [Neg(Conj(pair)) for pair in combinations(tickets, 2)]
    return facts


def desc_lottery3() -> PlausibleDescription:
    tickets = [Atom(f"s{i}") for i in (1, 2, 3)]
    rules = [
        Rule(f"r1{i}", (), Arrow.DEFEASIBLE, Neg(t))
        for i, t in enumerate(tickets, 1)
    ]
    rules += [
        Rule("r14", (), Arrow.DEFEASIBLE, Disj([tickets[0], tickets[1]])),
        Rule("r15", (), Arrow.DEFEASIBLE, Disj([tickets[0], tickets[2]])),
        Rule("r16", (), Arrow.DEFEASIBLE, Disj([tickets[1], tickets[2]])),
    ]
    return validate_description(lottery_facts(3), rules)


def desc_lottery4() -> PlausibleDescription:
    tickets = [Atom(f"s{i}") for i in (1, 2, 3, 4)]
    rules = [
        Rule(f"d{i}", (), Arrow.DEFEASIBLE, Neg(t))
        for i, t in enumerate(tickets, 1)
    ]
    for combo in combinations(range(4), 3):
        rid = "t" + "".join(str(i + 1) for i in combo)
        rules.append(
            Rule(rid, (), Arrow.DEFEASIBLE, Disj([tickets[i] for i in combo]))
        )
    return validate_description(lottery_facts(4), rules)


# --- random theories for the property suites --------------------------------

_ATOMS = ("a", "b", "c")


def _formula_pool(rng: random.Random, atom_names) -> list[Formula]:
    lits = [Atom(a) for a in atom_names] + [Neg(Atom(a)) for a in atom_names]
    pool: list[Formula] = list(lits)
    for l1, l2 in combinations(lits, 2):
        pool.append(Disj([l1, l2]))
        pool.append(Conj([l1, l2]))
    return pool


def make_random_theory(rng: random.Random,
                       max_rules: int = 6) -> PlausibleDescription:
    """A small random theory: <=3 atoms, <=`max_rules` rules, <=4 acyclic
    priority pairs (empty half the time)."""
    while True:
        atom_names = rng.sample(_ATOMS, rng.randint(1, 3))
        pool = _formula_pool(rng, atom_names)
        lits = pool[: 2 * len(atom_names)]

        facts: list[Formula] = []
        roll = rng.random()
        if roll < 0.25:
            facts = [rng.choice(lits)]
        elif roll < 0.5:
            l1, l2 = rng.sample(lits, 2)
            facts = [Disj([l1, l2])]

        rules = []
        for i in range(rng.randint(1, 4)):
            n_ants = rng.choices((0, 1, 2), weights=(5, 4, 1))[0]
            ants = tuple(rng.choice(pool) for _ in range(n_ants))
            arrow = Arrow.WARNING if rng.random() < 0.25 else Arrow.DEFEASIBLE
            rules.append(Rule(f"u{i}", ants, arrow, rng.choice(pool)))

        priority: list[tuple[str, str]] = []
        if rng.random() < 0.5 and len(rules) >= 2:
            order = [r.rid for r in rules]
            rng.shuffle(order)
            candidates = list(combinations(order, 2))  # respects the order: acyclic
            rng.shuffle(candidates)
            priority = candidates[: rng.randint(1, 4)]

        desc = validate_description(facts, rules, priority)
        if len(desc.rules) <= max_rules:
            return desc


def probe_formulas(desc: PlausibleDescription) -> list[Formula]:
    """Literals plus all 2-literal clauses and dual-clauses over the theory's atoms."""
    atom_names = sorted(
        {a for r in desc.rules for f in (r.consequent, *r.antecedents)
         for a in _formula_atoms(f)}
    ) or ["a"]
    lits = [Atom(a) for a in atom_names] + [Neg(Atom(a)) for a in atom_names]
    probes: list[Formula] = list(lits)
    for l1, l2 in combinations(lits, 2):
        probes.append(Disj([l1, l2]))
        probes.append(Conj([l1, l2]))
    return probes


def _formula_atoms(f: Formula):
    from ppl import atoms

    return atoms(f)
