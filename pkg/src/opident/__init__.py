"""Exact normal ordering and verification of operator identities for powers
of raising operators: Weyl algebra, Grassmann extension, Jackson-derivative
line, quantum plane and quantum hyperplane."""

from .errors import (
    ContextMismatch,
    ExprSyntaxError,
    IndexOutOfRange,
    InvalidContext,
    NotDivisible,
    NotInvariant,
    OutOfRange,
    PartsMismatch,
    UnknownGenerator,
    UnsupportedFamily,
    ZeroAtPole,
)
from .exprlang import parse, parse_scalar, print_expr
from .identities import (
    Family,
    IdentitySpec,
    ScalarFit,
    VerificationReport,
    build_q_sl2,
    build_qhyperplane_raising,
    build_qplane_raising,
    build_sl2,
    build_slk_raising,
    fit_relations5,
    rhs_closed_form,
    verify_identity,
)
from .opalg import (
    AlgebraContext,
    Generator,
    GenKind,
    NormalMonomial,
    OperatorExpr,
    RuleSet,
    graded_degree,
    make_context,
    normalize,
    power,
    rewrite,
)
from .polyrep import (
    OperatorMatrix,
    PolyElement,
    annihilates,
    apply,
    basis,
    derivative_profile,
    matrix_of,
)
from .scalar import (
    Q,
    Scalar,
    ScalarQuotient,
    multinomial,
    n_hat,
    q_binomial,
    q_factorial,
    q_number,
)

__version__ = "0.1.0"
