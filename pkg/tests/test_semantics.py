"""Finite-model oracle: evaluation, witnesses, and model repair."""

from __future__ import annotations

import random

import pytest

from dlreason.absorption import induced_absorption
from dlreason.concepts import (
    Atom,
    Eq,
    Exists,
    Forall,
    Not,
    Role,
    Sub,
    mk_and,
    mk_or,
    nnf,
    tbox,
)
from dlreason.semantics import (
    CyclicDefinitionsError,
    EnumerationBudgetError,
    FiniteInterpretation,
    InvalidStratificationError,
    LabeledStructure,
    NotUnfoldedError,
    canonical_witness,
    enumerate_interpretations,
    eval_concept,
    find_stemming_model,
    is_unfolded,
    is_witness,
    repair_model_primitive,
    repair_model_stratified,
    sat_bruteforce,
    satisfies,
    stemming_interpretations,
    stems_from,
    tbox_disagreement,
)

A, B, D = Atom("A"), Atom("B"), Atom("D")
R = Role("R")


def _interp():
    return FiniteInterpretation(
        3,
        {"A": frozenset({0, 1}), "B": frozenset({1})},
        {"R": frozenset({(0, 1), (1, 2)})},
    )


class TestEvalAndSatisfies:
    def test_hand_cases(self):
        i = _interp()
        assert eval_concept(i, mk_and([A, B])) == frozenset({1})
        assert eval_concept(i, Exists(R, A)) == frozenset({0})
        assert eval_concept(i, Forall(R, B)) == frozenset({0, 2})
        assert eval_concept(i, Exists(R.inverse(), A)) == frozenset({1, 2})

    def test_satisfies_sub_vs_eq(self):
        i = _interp()
        assert satisfies(i, tbox([Sub(B, A)]))
        assert not satisfies(i, tbox([Eq(B, A)]))

    def test_bruteforce_and_disagreement(self):
        t = tbox([Sub(A, B)])
        m = sat_bruteforce(A, t, 2)
        assert m is not None and satisfies(m, t)
        assert eval_concept(m, A)
        assert sat_bruteforce(mk_and([A, Not(A)]), t, 2) is None
        d = tbox_disagreement(t, tbox([Eq(A, B)]), t.signature, 2)
        assert d is not None
        assert satisfies(d, t) != satisfies(d, tbox([Eq(A, B)]))

    def test_budget_guard(self):
        sig = tbox([Sub(A, Exists(R, B))]).signature
        with pytest.raises(EnumerationBudgetError):
            list(enumerate_interpretations(sig, 5, budget_bits=24))


class TestWitnesses:
    def test_stems_from(self):
        w = LabeledStructure(
            2, {"R": frozenset({(0, 1)})},
            {0: frozenset({A, Not(B)}), 1: frozenset({B})})
        good = FiniteInterpretation(
            2, {"A": frozenset({0}), "B": frozenset({1})},
            {"R": frozenset({(0, 1)})})
        assert stems_from(good, w)
        assert not stems_from(good.override({"B": {0, 1}}), w)
        bad_edges = FiniteInterpretation(2, good.atoms, {"R": frozenset()})
        assert not stems_from(bad_edges, w)

    def test_stemming_enumeration_counts_free_pairs(self):
        w = LabeledStructure(2, {}, {0: frozenset({A})})
        # B is free at both elements, A is free at element 1: 8 completions
        models = list(stemming_interpretations(w, extra_atoms=["B"]))
        assert len(models) == 8
        assert all(stems_from(i, w) for i in models)

    def test_clashing_structure_stems_nothing(self):
        w = LabeledStructure(1, {}, {0: frozenset({A, Not(A)})})
        assert list(stemming_interpretations(w)) == []
        assert not is_witness(w, A)

    def test_is_witness_requires_complex_labels_to_hold(self):
        some = Exists(R, B)
        good = LabeledStructure(
            2, {"R": frozenset({(0, 1)})},
            {0: frozenset({some}), 1: frozenset({B})})
        assert is_witness(good, some)
        # without the successor label the filler can be completed falsely
        bad = LabeledStructure(
            2, {"R": frozenset({(0, 1)})}, {0: frozenset({some})})
        assert not is_witness(bad, some)

    def test_canonical_witness(self):
        i = _interp()
        closure = [A, B, Not(B), Exists(R, B)]
        w = canonical_witness(i, closure)
        assert stems_from(i, w)
        assert Exists(R, B) in w.label(0) and Not(B) in w.label(0)
        assert is_witness(w, A)

    def test_find_stemming_model(self):
        w = LabeledStructure(1, {}, {0: frozenset({A})})
        assert find_stemming_model(w, tbox([Sub(A, B)])) is not None
        assert find_stemming_model(w, tbox([Sub(A, Not(A))])) is None


class TestUnfoldedCondition:
    def test_triggered_entries_and_residue(self):
        defs = [Eq(D, Exists(R, A))]
        a = induced_absorption(defs)
        ok = LabeledStructure(
            2, {"R": frozenset({(0, 1)})},
            {0: frozenset({D, nnf(Exists(R, A))}), 1: frozenset({A})})
        assert is_unfolded(ok, a)
        missing = LabeledStructure(2, {"R": frozenset({(0, 1)})},
                                   {0: frozenset({D})})
        assert not is_unfolded(missing, a)
        untriggered = LabeledStructure(1, {}, {0: frozenset({A})})
        assert is_unfolded(untriggered, a)


class TestRepairPrimitive:
    def test_defined_atom_gets_its_definition(self):
        defs = [Eq(D, Exists(R, A))]
        w = LabeledStructure(
            2, {"R": frozenset({(0, 1)})},
            {0: frozenset(), 1: frozenset({A})})
        i = repair_model_primitive(w, defs)
        assert stems_from(i, w)
        assert satisfies(i, tbox(defs))
        assert i.atoms["D"] == frozenset({0})

    def test_chained_definitions_in_uses_order(self):
        defs = [Eq(D, A), Eq(B, Exists(R, D))]
        w = LabeledStructure(
            2, {"R": frozenset({(0, 1)})}, {1: frozenset({A})})
        i = repair_model_primitive(w, defs)
        assert i.atoms["D"] == frozenset({1})
        assert i.atoms["B"] == frozenset({0})

    def test_rejects_bad_order_and_cycles(self):
        w = LabeledStructure(1, {}, {0: frozenset()})
        with pytest.raises(CyclicDefinitionsError):
            repair_model_primitive(w, [Eq(B, Exists(R, D)), Eq(D, A)])
        with pytest.raises(CyclicDefinitionsError):
            repair_model_primitive(w, [Eq(D, Exists(R, D))])
        with pytest.raises(ValueError):
            repair_model_primitive(w, [Sub(D, A)])

    def test_rejects_not_unfolded(self):
        defs = [Eq(D, A)]
        w = LabeledStructure(1, {}, {0: frozenset({D})})  # rhs missing
        with pytest.raises(NotUnfoldedError):
            repair_model_primitive(w, defs)
        clash = LabeledStructure(1, {}, {0: frozenset({A, Not(A)})})
        with pytest.raises(NotUnfoldedError):
            repair_model_primitive(clash, defs)


class TestRepairStratified:
    def test_cyclic_stratum_takes_least_fixed_point(self):
        # D == some R. D over a 2-cycle: the least fixed point is empty
        defs = [[Eq(D, Exists(R, D))]]
        w = LabeledStructure(2, {"R": frozenset({(0, 1), (1, 0)})}, {})
        i = repair_model_stratified(w, defs)
        assert satisfies(i, tbox([Eq(D, Exists(R, D))]))
        assert i.atoms["D"] == frozenset()

    def test_pinned_positive_label_grows_the_fixed_point(self):
        defs = [[Eq(D, Exists(R, D))]]
        w = LabeledStructure(
            2, {"R": frozenset({(0, 1), (1, 0)})},
            {0: frozenset({D, nnf(Exists(R, D))}),
             1: frozenset({D, nnf(Exists(R, D))})})
        i = repair_model_stratified(w, defs)
        assert i.atoms["D"] == frozenset({0, 1})

    def test_layered_strata(self):
        strata = [[Eq(D, A)], [Eq(B, Exists(R, D))]]
        w = LabeledStructure(
            2, {"R": frozenset({(0, 1)})}, {1: frozenset({A})})
        i = repair_model_stratified(w, strata)
        assert satisfies(i, tbox([ax for s in strata for ax in s]))
        assert i.atoms["B"] == frozenset({0})

    def test_rejects_non_monotone_stratum(self):
        w = LabeledStructure(1, {}, {0: frozenset()})
        with pytest.raises(InvalidStratificationError):
            repair_model_stratified(w, [[Eq(D, Not(D))]])

    def test_rejects_bad_layering_and_duplicates(self):
        w = LabeledStructure(1, {}, {0: frozenset()})
        with pytest.raises(InvalidStratificationError):
            repair_model_stratified(w, [[Eq(B, D)], [Eq(D, A)]])
        with pytest.raises(InvalidStratificationError):
            repair_model_stratified(w, [[Eq(D, A)], [Eq(D, B)]])


class TestRepairRandomised:
    def test_repair_yields_models_stemming_from_the_structure(self):
        rng = random.Random(5)
        for trial in range(20):
            # base atoms pinned at random, defined atoms unconstrained
            n = rng.randint(1, 3)
            edges = frozenset(
                (i, j) for i in range(n) for j in range(n)
                if rng.random() < 0.4)
            labels = {}
            for x in range(n):
                lab = set()
                for a in ("P1", "P2"):
                    roll = rng.random()
                    if roll < 0.4:
                        lab.add(Atom(a))
                    elif roll < 0.8:
                        lab.add(Not(Atom(a)))
                labels[x] = frozenset(lab)
            w = LabeledStructure(n, {"R": edges}, labels)
            defs = [Eq(D, mk_or([Atom("P1"), Exists(R, Atom("P2"))])),
                    Eq(B, mk_and([D, Atom("P2")]))]
            i = repair_model_primitive(w, defs)
            assert stems_from(i, w)
            assert satisfies(i, tbox(defs))
            j = repair_model_stratified(w, [[defs[0]], [defs[1]]])
            assert stems_from(j, w)
            assert satisfies(j, tbox(defs))
