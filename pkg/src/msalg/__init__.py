"""Exact symbolic engine for many-sorted universal algebra.

Free term algebras over many-sorted signatures, the clone of term families,
finite-model satisfaction by brute force, derived signature morphisms with
translation and reducts, 2-cells between them, generated clone-law
specifications with an executable equivalence between the two
axiomatizations, and a textual specification language with a batch CLI.
"""

from .errors import MsalgError
from .kernel import (
    OperationSymbol,
    Signature,
    Sort,
    SortMap,
    SortedSet,
    Variable,
    Word,
    apply_sharp,
    canonical_context,
    concat,
    coproduct_dagger,
)
from .terms import (
    App,
    Equation,
    GeneralTerm,
    Term,
    TermFamily,
    Var,
    family_from_general,
    general_from_family,
    kleisli_compose,
    mk_app,
    mk_var,
    substitute,
)
from .algebras import (
    FiniteAlgebra,
    FiniteOperation,
    Valuation,
    benabou_op_apply,
    check_homomorphism,
    hall_op_apply,
    realize,
    realize_general,
    satisfies,
    satisfies_all,
)
from .clones import (
    CloneEnv,
    benabou_sort,
    equal_mod_free_theory,
    eval_benabou,
    eval_hall,
    family_compose,
    family_parallel,
    family_project,
    family_tuple,
    hall_sort,
)
from .morphisms import (
    Derivor,
    Polyderivator,
    compose_polyderivators,
    identity_polyderivator,
    lift_derivor,
    lift_standard,
    mk_derivor,
    mk_polyderivator,
    reduct_algebra,
    satisfaction_condition_check,
    translate_equation,
    translate_general,
    translate_term,
)
from .transformations import (
    Proved,
    Refuted,
    Transformation,
    VerifiedOnModels,
    check_transformation_mod,
    check_transformation_strict,
    horizontal_compose,
    identity_transformation,
    induced_homomorphism,
    transformation_on_context,
    vertical_compose,
)
from .hallbenabou import (
    benabou_spec,
    bop_model,
    category_view,
    check_pd_spec_morphism,
    f_bh,
    f_hb,
    hall_spec,
    hb_polyderivator_d,
    hb_polyderivator_e,
    hb_transformations,
    hop_model,
)
from .speclang import Specification, Workspace, parse, print_workspace

__version__ = "0.1.0"
