"""Relative weak normalization and Lipschitz saturation of finitely
presented algebras, decided with Groebner bases over Q and F_p."""

from .algebra import (
    AlgebraMorphism,
    PresentedAlgebra,
    Sequence,
    TensorSquare,
    build_bridge,
    build_tensor_square,
    compose,
    identity,
    tensor_over,
)
from .corpus import CorpusDocument, load_corpus, load_document
from .diagram import (
    ClassificationReport,
    DiagramSquare,
    Mode,
    classify,
    contraction_check,
    has_nil_kernel,
    has_retraction,
    idempotency_check,
    is_integral,
    is_radicial,
    is_surjective,
    is_unramified,
    quotient_check,
    unramified_witness,
)
from .errors import *  # noqa: F401,F403
from .field import QQ, FieldSpec
from .groebner import GroebnerBasis, collect_stats, groebner_basis, lift, normal_form
from .ideals import (
    Ideal,
    elimination_ideal,
    ideal_intersection,
    is_idempotent,
    is_nil_ideal,
    kernel_of_morphism,
    radical_exponent,
    radical_membership,
    subalgebra_membership,
)
from .order import GREVLEX, LEX, BlockOrder, GrevLex, Lex, elimination
from .poly import Poly, PolyRing, poly_parse, poly_print, ring
from .saturation import (
    Answer,
    DependenceCertificate,
    Verdict3,
    dependence_search,
    lip_member,
    monomial_closure_member,
    wn_member,
)

__version__ = "0.1.0"
