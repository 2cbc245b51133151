"""Satisfiability and classification for ALC with inverse roles,
built around terminology absorption and lazy unfolding."""

from .concepts import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Bottom,
    Concept,
    Eq,
    Exists,
    Forall,
    Not,
    Or,
    Role,
    Signature,
    Sub,
    TBox,
    Top,
    complement,
    mk_and,
    mk_or,
    nnf,
    tbox,
)
from .syntax import parse_concept, parse_tbox, render_concept, render_tbox
from .absorption import Absorption, absorb, reconstruct_axioms, stratify
from .semantics import (
    FiniteInterpretation,
    LabeledStructure,
    eval_concept,
    repair_model_primitive,
    repair_model_stratified,
    sat_bruteforce,
    satisfies,
)
from .tableau import ReasonerConfig, SatResult, check_sat, subsumes
from .classify import Hierarchy, classify, format_hierarchy
from .generators import gen_cyclic_pairs, gen_galen_like
from .kernel import backend_name

__version__ = "0.1.0"

__all__ = [
    "And", "Atom", "Bottom", "BOTTOM", "Concept", "Eq", "Exists", "Forall",
    "Not", "Or", "Role", "Signature", "Sub", "TBox", "Top", "TOP",
    "complement", "mk_and", "mk_or", "nnf", "tbox",
    "parse_concept", "parse_tbox", "render_concept", "render_tbox",
    "Absorption", "absorb", "reconstruct_axioms", "stratify",
    "FiniteInterpretation", "LabeledStructure", "eval_concept",
    "repair_model_primitive", "repair_model_stratified", "sat_bruteforce",
    "satisfies",
    "ReasonerConfig", "SatResult", "check_sat", "subsumes",
    "Hierarchy", "classify", "format_hierarchy",
    "gen_cyclic_pairs", "gen_galen_like",
    "backend_name",
    "__version__",
]
