"""Formula construction, normalization, and the text grammar."""

import random
from itertools import product

import pytest

from ppl import (
    Atom,
    Conj,
    Disj,
    FALSUM,
    FormulaClass,
    FormulaSyntaxError,
    Lit,
    Neg,
    VERUM,
    atoms,
    classify,
    complement,
    core,
    format_formula,
    lits,
    parse_formula,
    simplify,
)
from ppl.formulas import evaluate

A, B, C = Atom("a"), Atom("b"), Atom("c")


class TestStructure:
    def test_set_members_ignore_order(self):
        assert Disj([A, B]) == Disj([B, A])
        assert hash(Conj([A, B, C])) == hash(Conj([C, A, B]))

    def test_set_members_ignore_duplicates(self):
        assert Disj([A, A, B]) == Disj([A, B])
        assert len(Conj([A, A]).members) == 1

    def test_double_negation_is_not_collapsed(self):
        assert Neg(Neg(A)) != A

    def test_empty_connectives(self):
        assert VERUM == Conj([])
        assert FALSUM == Disj([])
        assert VERUM != FALSUM

    def test_atom_names_validated(self):
        with pytest.raises(ValueError):
            Atom("and")
        with pytest.raises(ValueError):
            Atom("9x")

    def test_atoms_collects_all(self):
        assert atoms(Conj([Disj([A, Neg(B)]), C])) == {"a", "b", "c"}


class TestComplement:
    def test_atom(self):
        assert complement(Lit("a", False)) == Lit("a", True)

    def test_negated_atom(self):
        assert complement(Lit("a", True)) == Lit("a", False)

    def test_elementwise_on_sets(self):
        got = complement(frozenset({Lit("a", False), Lit("b", True)}))
        assert got == {Lit("a", True), Lit("b", False)}

    def test_involution_on_random_sets(self):
        rng = random.Random(7)
        for _ in range(100):
            ls = frozenset(
                Lit(rng.choice("abcd"), rng.random() < 0.5) for _ in range(4)
            )
            assert complement(complement(ls)) == ls


class TestLits:
    def test_literal_yields_itself(self):
        assert lits(A) == {Lit("a", False)}

    def test_clause_yields_its_set(self):
        assert lits(Disj([A, Neg(B)])) == {Lit("a", False), Lit("b", True)}
        assert lits(Conj([A, Neg(B)])) == {Lit("a", False), Lit("b", True)}

    def test_empty_clause(self):
        assert lits(FALSUM) == frozenset()

    def test_rejects_non_clause(self):
        with pytest.raises(ValueError):
            lits(Disj([Conj([A, B])]))


def _truth_table_class(f):
    """Independent classifier: enumerate assignments with itertools.product."""
    avars = sorted(atoms(f))
    values = [
        evaluate(f, {a for a, bit in zip(avars, bits) if bit})
        for bits in product((False, True), repeat=len(avars))
    ]
    if all(values):
        return FormulaClass.TAUTOLOGY
    if not any(values):
        return FormulaClass.CONTRADICTION
    return FormulaClass.CONTINGENT


class TestClassify:
    def test_excluded_middle(self):
        assert classify(Disj([A, Neg(A)])) is FormulaClass.TAUTOLOGY

    def test_contradiction(self):
        assert classify(Conj([A, Neg(A)])) is FormulaClass.CONTRADICTION

    def test_two_atom_disjunction_contingent(self):
        f = Disj([A, B])
        assert _truth_table_class(f) is FormulaClass.CONTINGENT
        assert classify(f) is FormulaClass.CONTINGENT

    def test_empty_connectives(self):
        assert classify(FALSUM) is FormulaClass.CONTRADICTION
        assert classify(VERUM) is FormulaClass.TAUTOLOGY

    def test_agrees_with_truth_table_on_random_formulas(self):
        rng = random.Random(11)
        for _ in range(150):
            f = _random_formula(rng, 2)
            assert classify(f) is _truth_table_class(f)


def _random_formula(rng, depth):
    roll = rng.random()
    if depth == 0 or roll < 0.35:
        a = Atom(rng.choice("abc"))
        return Neg(a) if rng.random() < 0.5 else a
    if roll < 0.55:
        return Neg(_random_formula(rng, depth - 1))
    members = [_random_formula(rng, depth - 1) for _ in range(rng.randint(0, 3))]
    return Conj(members) if rng.random() < 0.5 else Disj(members)


class TestSimplify:
    def test_singleton_disjunction_unwraps(self):
        assert simplify(Disj([A])) == A

    def test_empty_conjunction_unchanged(self):
        assert simplify(VERUM) == VERUM

    def test_nested_singletons_unwrap_recursively(self):
        assert simplify(Disj([Conj([B])])) == B

    def test_non_singletons_unchanged(self):
        f = Disj([A, B])
        assert simplify(f) == f


class TestCore:
    def test_drops_tautologies_and_supersets_then_unwraps(self):
        got = core({Disj([B, Neg(B)]), Disj([A, B]), Disj([A])})
        assert got == {A}

    def test_empty_input(self):
        assert core(set()) == frozenset()

    def test_empty_clause_survives(self):
        assert core({FALSUM}) == {FALSUM}

    def test_dual_clauses_drop_contradictions(self):
        got = core({Conj([B, Neg(B)]), Conj([A, B]), Conj([A])})
        assert got == {A}

    def test_mixed_kinds_rejected(self):
        with pytest.raises(ValueError):
            core({Disj([A, B]), Conj([A, B])})

    def test_idempotent_on_random_clause_sets(self):
        rng = random.Random(23)
        for _ in range(200):
            group = {
                Disj([Lit(rng.choice("abcd"), rng.random() < 0.5).formula()
                      for _ in range(rng.randint(0, 3))])
                for _ in range(rng.randint(0, 5))
            }
            first = core(group)
            assert core(first) == first


class TestTextGrammar:
    @pytest.mark.parametrize(
        "text",
        ["a", "~a", "~~x_1", "and{}", "or{}", "or{a,b}", "and{a,or{b,~c}}"],
    )
    def test_round_trip(self, text):
        f = parse_formula(text)
        assert parse_formula(format_formula(f)) == f

    def test_whitespace_tolerated(self):
        assert parse_formula(" or{ a , ~b } ") == Disj([A, Neg(B)])

    def test_canonical_form_is_sorted(self):
        assert format_formula(parse_formula("or{b,a}")) == "or{a,b}"

    @pytest.mark.parametrize(
        "text,pos",
        [("", 0), ("or{a", 4), ("and a", 4), ("a b", 2), ("~", 1), ("or{a b}", 5)],
    )
    def test_errors_carry_positions(self, text, pos):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse_formula(text)
        assert exc.value.pos == pos

    def test_reserved_words_are_not_atoms(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("or")
