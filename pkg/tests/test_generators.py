"""Benchmark generators: determinism and the shapes the benchmarks
rely on."""

from __future__ import annotations

import random

import pytest

from dlreason.absorption import DISP_TPRIM, absorb
from dlreason.concepts import Eq, concept_atoms
from dlreason.generators import (
    gen_cyclic_pairs,
    gen_galen_like,
    random_concept,
    random_instance,
    random_signature,
    random_tbox,
)
from dlreason.syntax import render_tbox


class TestCyclicPairs:
    def test_deterministic(self):
        assert render_tbox(gen_cyclic_pairs(3)) == render_tbox(gen_cyclic_pairs(3))

    def test_zero_is_empty(self):
        assert gen_cyclic_pairs(0).axioms == ()

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            gen_cyclic_pairs(-1)

    def test_pair_count_and_shape(self):
        t = gen_cyclic_pairs(2)
        assert len(t.axioms) == 8
        assert all(isinstance(ax, Eq) for ax in t)
        assert {"P_1", "S_1", "P_2", "S_2"} <= set(t.signature.atoms)

    def test_enhanced_strata_are_per_pair(self):
        a = absorb(gen_cyclic_pairs(3), "enhanced")
        assert a.tg == ()
        cyclic = [set(s) for s in a.strata if len(s) > 1]
        assert cyclic == [{"P_1", "S_1"}, {"P_2", "S_2"}, {"P_3", "S_3"}] or \
            sorted(map(sorted, cyclic)) == [["P_1", "S_1"], ["P_2", "S_2"],
                                            ["P_3", "S_3"]]

    def test_basic_mode_residue_grows_with_k(self):
        assert len(absorb(gen_cyclic_pairs(1), "basic").tg) == 1
        assert len(absorb(gen_cyclic_pairs(4), "basic").tg) == 4


class TestGalenLike:
    def test_deterministic_per_seed(self):
        assert (render_tbox(gen_galen_like(12, 4, seed=7))
                == render_tbox(gen_galen_like(12, 4, seed=7)))
        assert (render_tbox(gen_galen_like(12, 4, seed=7))
                != render_tbox(gen_galen_like(12, 4, seed=8)))

    def test_empty(self):
        assert gen_galen_like(0, 0).axioms == ()

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            gen_galen_like(-1, 0)
        with pytest.raises(ValueError):
            gen_galen_like(0, -1)

    def test_pure_definition_forest_absorbs_completely(self):
        a = absorb(gen_galen_like(10, 0), "basic")
        assert a.tg == ()
        assert all(e.disposition == DISP_TPRIM for e in a.log)

    def test_definitions_only_use_earlier_names(self):
        t = gen_galen_like(15, 0)
        seen: set = set()
        for ax in t:
            assert not (concept_atoms(ax.rhs) & {f"N_{i}" for i in range(1, 16)}
                        - seen)
            seen.add(ax.lhs.name)

    def test_general_axioms_have_complex_lhs(self):
        t = gen_galen_like(6, 5)
        general = t.axioms[6:]
        assert len(general) == 5
        from dlreason.concepts import And, Sub

        assert all(isinstance(ax, Sub) and isinstance(ax.lhs, And)
                   for ax in general)


class TestRandomSamplers:
    def test_signature_fits_the_enumeration_budget(self):
        rng = random.Random(1)
        for _ in range(200):
            atoms, roles = random_signature(rng)
            assert len(atoms) * 3 + len(roles) * 9 <= 24

    def test_concept_stays_in_signature(self):
        rng = random.Random(2)
        for _ in range(100):
            c = random_concept(rng, ["A", "B"], ["R"], depth=3)
            assert concept_atoms(c) <= {"A", "B"}

    def test_instance_is_reproducible(self):
        c1, t1 = random_instance(42)
        c2, t2 = random_instance(42)
        assert c1 == c2 and t1 == t2

    def test_tbox_axiom_cap(self):
        rng = random.Random(3)
        for _ in range(50):
            t = random_tbox(rng, ["A"], ["R"], max_axioms=4, depth=2)
            assert len(t.axioms) <= 4
