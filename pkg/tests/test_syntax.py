"""S-expression parsing and rendering."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from dlreason.concepts import Atom, Eq, Exists, Not, Role, Sub
from dlreason.generators import random_concept, random_tbox
from dlreason.syntax import (
    TBoxSyntaxError,
    parse_concept,
    parse_tbox,
    render_concept,
    render_tbox,
)


class TestParseConcept:
    def test_atoms_and_constants(self):
        assert parse_concept("A") == Atom("A")
        assert str(parse_concept("top")) == "top"
        assert str(parse_concept("bottom")) == "bottom"

    def test_nested(self):
        c = parse_concept("(some (inv R) (and A (not B)))")
        assert c == Exists(Role("R", True),
                           parse_concept("(and A (not B))"))

    def test_trailing_input_rejected(self):
        with pytest.raises(TBoxSyntaxError):
            parse_concept("A B")

    def test_error_carries_position(self):
        with pytest.raises(TBoxSyntaxError) as e:
            parse_concept("(and A (wrong B))")
        assert e.value.line == 1
        assert e.value.column > 1

    def test_unbalanced(self):
        with pytest.raises(TBoxSyntaxError):
            parse_concept("(and A B")


class TestParseTBox:
    def test_axiom_forms(self):
        t = parse_tbox(
            """
            ; a comment
            (define-primitive-concept A B)
            (define-concept C (some R A))
            (implies (and A C) B)
            (equal (not A) B)
            """
        )
        assert isinstance(t.axioms[0], Sub) and t.axioms[0].lhs == Atom("A")
        assert isinstance(t.axioms[1], Eq)
        assert isinstance(t.axioms[2], Sub)
        assert isinstance(t.axioms[3], Eq) and t.axioms[3].lhs == Not(Atom("A"))

    def test_define_forms_require_atomic_lhs(self):
        with pytest.raises(TBoxSyntaxError):
            parse_tbox("(define-concept (not A) B)")

    def test_order_preserved(self):
        t = parse_tbox("(implies A B) (implies B C)")
        assert [ax.lhs for ax in t] == [Atom("A"), Atom("B")]


def _rand_concept(seed):
    rng = random.Random(seed)
    return random_concept(rng, ["A", "B", "C"], ["R", "S"], depth=3)


def _rand_tbox(seed):
    rng = random.Random(seed)
    return random_tbox(rng, ["A", "B", "C"], ["R"])


class TestRoundTrip:
    @given(st.builds(_rand_concept, st.integers(0, 10_000)))
    def test_concept_round_trip(self, c):
        assert parse_concept(render_concept(c)) == c

    @given(st.builds(_rand_tbox, st.integers(0, 10_000)))
    def test_tbox_round_trip(self, t):
        assert parse_tbox(render_tbox(t)) == t
