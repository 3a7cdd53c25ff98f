"""A verifiable kernel for implicational intuitionistic sequent calculus and
simply-typed lambda calculus: proof equivalence, cut-elimination, normal
forms, and the bidirectional proof/term translation."""

from .syntax import (
    Atom, Context, Formula, Imp, ParseError, Sequent, Variable,
    atom, fresh_variable, imp, parse_context, parse_formula, parse_sequent,
    print_formula, print_sequent, repetition_free, width,
)
from .terms import (
    Abs, App, Term, TermTypeError, Var, beta_eta_normalize, compose_terms,
    fv, fv_beta, fv_seq, parse_term, print_term, substitute, type_of,
)
from .proofs import (
    Preproof, ProofError, Violation, ax, ctr, cut, ex, height, is_cut_free,
    is_valid, limp, rimp, validate, weak,
)
from .ancestry import (
    ContractionTree, Occurrence, alpha_eq, ancestors, contraction_tree,
    is_well_labelled, make_well_labelled, slack, subst_strong,
)
from .rewrite import (
    RULE_IDS, RewriteStep, applicable_steps, apply_step, replay,
    translation_invariant,
)
from .normalize import (
    NormalFormReport, classify_normal, contraction_normalize,
    eliminate_all_cuts, eliminate_root_cut, find_eta_patterns, is_l_normal,
    is_normal, is_well_structured, l_normalize, special_l_normalize, to_normal,
)
from .translate import (
    AnnotatedPreproof, RepetitionError, annotate, invert, proof_equiv, translate,
)
from .category import (
    STAR, UNIT, ProofMorphism, TermMorphism, compose_functor_check,
    compose_proofs, functor_apply, identity_proof, open_proof,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
