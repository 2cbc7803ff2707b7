"""Proof algorithms, evaluation trees, and plausible truth values.

Seven algorithms share one recursion.  The factual algorithm (phi) proves
exactly what the axioms entail.  The others prove a non-fact by finding a
supporting rule whose antecedents they can prove, then defeating every foe:
each foe is either team-defeated by a superior supporter or disabled by
showing the co-algorithm cannot prove the foe's antecedents.  Which rules
count as foes is the only thing that distinguishes the algorithms:

  pi, psi, beta, beta-p   every non-inferior opposing rule
  psi-p                   only opposing rules strictly superior to the one in use
  phi, pi-p               none

A history records every (algorithm, rule) choice made on the current
branch; a choice may never repeat, which bounds recursion depth by twice
the number of rules and makes every query terminate with +1 or -1.

The same recursion, written out with all alternatives instead of
short-circuiting, yields the evaluation tree: min nodes for antecedent
obligations, max nodes for rule choices, minus nodes for the co-algorithm
flip.  The root value of the tree always equals the recursive verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .formulas import Formula, Neg, format_formula
from .kb import PlausibleDescription, Rule


class Alg(Enum):
    """Names of the proof algorithms (ascii spellings, `-p` for primed)."""

    PHI = "phi"
    PI = "pi"
    PSI = "psi"
    BETA = "beta"
    BETA_P = "beta-p"
    PSI_P = "psi-p"
    PI_P = "pi-p"

    def __str__(self):
        return self.value


#: Hierarchy order, weakest prover first.
ALG_ORDER = (Alg.PHI, Alg.PI, Alg.PSI, Alg.BETA, Alg.BETA_P, Alg.PSI_P, Alg.PI_P)

_CO = {
    Alg.PHI: Alg.PHI,
    Alg.PI: Alg.PI_P,
    Alg.PI_P: Alg.PI,
    Alg.PSI: Alg.PSI_P,
    Alg.PSI_P: Alg.PSI,
    Alg.BETA: Alg.BETA_P,
    Alg.BETA_P: Alg.BETA,
}

# Algorithms that regard nothing as evidence against a formula.
_BLIND = frozenset((Alg.PHI, Alg.PI_P))


def co_algorithm(alg: Alg) -> Alg:
    """The co-algorithm: phi is self-dual, priming is an involution."""
    return _CO[alg]


class TruthValue(Enum):
    TRUE = "t"          # usually true: proves f, cannot prove ~f
    FALSE = "f"         # usually false: proves ~f, cannot prove f
    UNDETERMINED = "u"  # proves neither
    AMBIGUOUS = "a"     # proves both (primed algorithms only)

    def __str__(self):
        return self.value


HistoryEntry = tuple[Alg, str]
History = tuple[HistoryEntry, ...]


class InvalidHistoryError(Exception):
    pass


def check_history(desc: PlausibleDescription, alg: Alg, history) -> History:
    """Normalize and validate a history for a query under `alg`."""
    entries = []
    allowed = {alg, co_algorithm(alg)}
    for entry in history:
        tag, rid = entry
        try:
            tag = Alg(tag)
        except ValueError:
            raise InvalidHistoryError(f"unknown algorithm tag {tag!r}") from None
        if tag not in allowed:
            raise InvalidHistoryError(
                f"entry {tag}:{rid} does not belong to {alg} or its co-algorithm"
            )
        desc.rule(rid)
        if (tag, rid) in entries:
            raise InvalidHistoryError(f"repeated entry {tag}:{rid}")
        entries.append((tag, rid))
    return tuple(entries)


def foes(desc: PlausibleDescription, alg: Alg, f: Formula, r: Rule) -> tuple[Rule, ...]:
    """The rules `alg` must defeat before concluding f via r."""
    if alg in _BLIND or r.rid == desc.rse_id:
        return ()
    against = desc.supporters(Neg(f))
    if alg is Alg.PSI_P:
        return tuple(s for s in against if desc.superior(s, r))
    return tuple(s for s in against if not desc.superior(r, s))


class _Prover:
    def __init__(self, desc: PlausibleDescription):
        self.desc = desc
        self.rsd = desc.rsd()
        self.memo: dict = {}

    def prove(self, alg: Alg, hset: frozenset, x) -> int:
        if isinstance(x, Formula):
            return self.prove_formula(alg, hset, x)
        for f in x:
            if self.prove_formula(alg, hset, f) == -1:
                return -1
        return +1

    def prove_formula(self, alg: Alg, hset: frozenset, f: Formula) -> int:
        key = (alg, hset, f)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if self.desc.is_fact(f):
            value = +1
        elif alg is Alg.PHI:
            value = -1
        else:
            value = -1
            for r in self.desc.supporters(f, self.rsd):
                if (alg, r.rid) in hset:
                    continue
                if self.evidence_for(alg, hset, f, r) == +1:
                    value = +1
                    break
        self.memo[key] = value
        return value

    def evidence_for(self, alg: Alg, hset: frozenset, f: Formula, r: Rule) -> int:
        if self.prove(alg, hset | {(alg, r.rid)}, r.antecedents) == -1:
            return -1
        for s in foes(self.desc, alg, f, r):
            if self.defeated(alg, hset, f, s) == -1:
                return -1
        return +1

    def defeated(self, alg: Alg, hset: frozenset, f: Formula, s: Rule) -> int:
        for t in self.desc.superior_supporters(f, s, self.rsd):
            if (alg, t.rid) in hset:
                continue
            if self.prove(alg, hset | {(alg, t.rid)}, t.antecedents) == +1:
                return +1
        co = co_algorithm(alg)
        if (co, s.rid) not in hset:
            if self.prove(co, hset | {(co, s.rid)}, s.antecedents) == -1:
                return +1
        return -1


def prove(desc: PlausibleDescription, alg: Alg, x, history=()) -> int:
    """Proof value (+1 or -1) of a formula or finite formula set.

    The verdict depends on the history only through which entries it
    contains, so provers share work across branches keyed by entry set.
    """
    h = check_history(desc, alg, history)
    return _Prover(desc).prove(alg, frozenset(h), _normalize(x))


def provable(desc: PlausibleDescription, alg: Alg, x) -> bool:
    """Provability from the empty history."""
    return prove(desc, alg, x) == +1


def truth_value(desc: PlausibleDescription, alg: Alg, f: Formula) -> TruthValue:
    pos = provable(desc, alg, f)
    neg = provable(desc, alg, Neg(f))
    if pos and neg:
        return TruthValue.AMBIGUOUS
    if pos:
        return TruthValue.TRUE
    if neg:
        return TruthValue.FALSE
    return TruthValue.UNDETERMINED


def _normalize(x):
    if isinstance(x, Formula):
        return x
    members = {f._key: f for f in x}
    return tuple(members[k] for k in sorted(members))


# --- evaluation trees -------------------------------------------------------

@dataclass(frozen=True)
class Subject:
    """Label of an evaluation-tree node.

    kind is one of "set", "formula", "rule", "foe", "minus"; `formulas`
    is set for "set"/"minus" subjects, `formula` for the others, and the
    rule / opponent ids for "rule" and "foe" subjects.
    """

    kind: str
    alg: Alg
    history: History
    formulas: tuple[Formula, ...] | None = None
    formula: Formula | None = None
    rule: str | None = None
    foe: str | None = None

    def text(self) -> str:
        hist = ",".join(f"{tag} {rid}" for tag, rid in self.history)
        if self.kind in ("set", "minus"):
            body = "{" + ",".join(format_formula(f) for f in self.formulas) + "}"
            inner = f"({self.alg},({hist}),{body})"
            return "-" + inner if self.kind == "minus" else inner
        parts = [str(self.alg), f"({hist})", format_formula(self.formula)]
        if self.rule is not None:
            parts.append(self.rule)
        if self.foe is not None:
            parts.append(self.foe)
        return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class EvalNode:
    subject: Subject
    op: str  # "min", "max", or "minus"
    value: int
    children: tuple["EvalNode", ...]


class TreeBudgetError(Exception):
    """Tree construction refused: too many distinct nodes."""


class _TreeCore:
    """Shared construction rules: (operation, child subjects) of a subject."""

    def __init__(self, desc: PlausibleDescription):
        self.desc = desc
        self.rsd = desc.rsd()

    def expand(self, subject: Subject) -> tuple[str, tuple[Subject, ...]]:
        kind = subject.kind
        alg, h = subject.alg, subject.history
        if kind == "set":
            return "min", tuple(
                Subject("formula", alg, h, formula=f) for f in subject.formulas
            )
        if kind == "minus":
            return "minus", (Subject("set", alg, h, formulas=subject.formulas),)
        if kind == "formula":
            f = subject.formula
            if self.desc.is_fact(f):
                return "min", ()
            # The factual algorithm constructs no proof for a non-fact: a
            # childless max node keeps the root value equal to the verdict.
            if alg is Alg.PHI:
                return "max", ()
            hset = frozenset(h)
            return "max", tuple(
                Subject("rule", alg, h, formula=f, rule=r.rid)
                for r in self.desc.supporters(f, self.rsd)
                if (alg, r.rid) not in hset
            )
        if kind == "rule":
            f = subject.formula
            r = self.desc.rule(subject.rule)
            children = [
                Subject("set", alg, h + ((alg, r.rid),), formulas=r.antecedents)
            ]
            children += [
                Subject("foe", alg, h, formula=f, rule=r.rid, foe=s.rid)
                for s in foes(self.desc, alg, f, r)
            ]
            return "min", tuple(children)
        # foe: team-defeat branches, then the co-algorithm disable branch
        f = subject.formula
        s = self.desc.rule(subject.foe)
        hset = frozenset(h)
        children = [
            Subject("set", alg, h + ((alg, t.rid),), formulas=t.antecedents)
            for t in self.desc.superior_supporters(f, s, self.rsd)
            if (alg, t.rid) not in hset
        ]
        co = co_algorithm(alg)
        if (co, s.rid) not in hset:
            children.append(
                Subject("minus", co, h + ((co, s.rid),), formulas=s.antecedents)
            )
        return "max", tuple(children)


class _TreeBuilder(_TreeCore):
    """Materializes nodes, sharing subtrees with identical subjects."""

    def __init__(self, desc: PlausibleDescription, max_nodes: int):
        super().__init__(desc)
        self.max_nodes = max_nodes
        self.nodes: dict[Subject, EvalNode] = {}

    def build(self, subject: Subject) -> EvalNode:
        node = self.nodes.get(subject)
        if node is not None:
            return node
        if len(self.nodes) >= self.max_nodes:
            raise TreeBudgetError(f"more than {self.max_nodes} distinct nodes")
        op, child_subjects = self.expand(subject)
        children = tuple(self.build(c) for c in child_subjects)
        node = EvalNode(subject, op, _aggregate(op, children), children)
        self.nodes[subject] = node
        return node


class _TreeEvaluator(_TreeCore):
    """Root value of the tree, computed without materializing nodes.

    A subject's value depends on its history only through the entry set,
    so values are shared across the (possibly astronomically many)
    branches that differ only in entry order.  Children are evaluated
    lazily; min and max are order-insensitive, so the result equals the
    fully materialized tree's root value.
    """

    def __init__(self, desc: PlausibleDescription):
        super().__init__(desc)
        self.memo: dict = {}

    def value(self, subject: Subject) -> int:
        key = (subject.kind, subject.alg, frozenset(subject.history),
               subject.formulas, subject.formula, subject.rule, subject.foe)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        op, child_subjects = self.expand(subject)
        if op == "minus":
            result = -self.value(child_subjects[0])
        elif op == "min":
            result = +1
            for c in child_subjects:
                if self.value(c) == -1:
                    result = -1
                    break
        else:
            result = -1
            for c in child_subjects:
                if self.value(c) == +1:
                    result = +1
                    break
        self.memo[key] = result
        return result


def _aggregate(op: str, children: tuple[EvalNode, ...]) -> int:
    values = [c.value for c in children]
    if op == "minus":
        return -values[0]
    if op == "min":
        return -1 if -1 in values else +1
    return +1 if +1 in values else -1


def evaluation_tree(desc: PlausibleDescription, alg: Alg, x, history=(),
                    max_nodes: int = 200_000) -> EvalNode:
    """The evaluation tree rooted at (alg, history, x).

    Identical subjects share one node, so the result is a DAG presented
    as a tree; serialization re-expands shared subtrees.  The root value
    equals prove() on the same arguments.
    """
    h = check_history(desc, alg, history)
    root = _root_subject(alg, h, _normalize(x))
    return _TreeBuilder(desc, max_nodes).build(root)


def tree_value(desc: PlausibleDescription, alg: Alg, x, history=()) -> int:
    """Root value of the evaluation tree, without materializing nodes.

    Follows the tree construction rules rather than the prover's
    recursion, sharing values across branches whose histories contain the
    same entries, so it stays tractable where the materialized tree would
    not.  Always equals prove().
    """
    h = check_history(desc, alg, history)
    root = _root_subject(alg, h, _normalize(x))
    return _TreeEvaluator(desc).value(root)


def _root_subject(alg: Alg, h: History, x) -> Subject:
    if isinstance(x, Formula):
        return Subject("formula", alg, h, formula=x)
    return Subject("set", alg, h, formulas=x)


def tree_json(node: EvalNode) -> dict:
    """Tree as JSON-ready nested dicts: {subject, op, value, children}."""
    subject: dict = {
        "kind": node.subject.kind,
        "alg": node.subject.alg.value,
        "history": [[tag.value, rid] for tag, rid in node.subject.history],
    }
    if node.subject.formulas is not None:
        subject["formulas"] = [format_formula(f) for f in node.subject.formulas]
    if node.subject.formula is not None:
        subject["formula"] = format_formula(node.subject.formula)
    if node.subject.rule is not None:
        subject["rule"] = node.subject.rule
    if node.subject.foe is not None:
        subject["foe"] = node.subject.foe
    return {
        "subject": subject,
        "op": node.op,
        "value": node.value,
        "children": [tree_json(c) for c in node.children],
    }


_DOT_SHAPE = {"min": "box", "max": "ellipse", "minus": "diamond"}


def tree_dot(node: EvalNode) -> str:
    """Tree in DOT format; min/max/minus nodes get distinct shapes."""
    lines = ["digraph evaluation {"]
    counter = [0]

    def walk(n: EvalNode) -> str:
        name = f"n{counter[0]}"
        counter[0] += 1
        label = f"{n.subject.text()} = {n.value:+d}".replace('"', r"\"")
        lines.append(f'  {name} [shape={_DOT_SHAPE[n.op]}, label="{label}"];')
        for c in n.children:
            lines.append(f"  {name} -> {walk(c)};")
        return name

    walk(node)
    lines.append("}")
    return "\n".join(lines) + "\n"
