"""Exact computations for the planar Galilean conformal algebra and its Whittaker modules."""

from .algebra import (
    AlgebraKind,
    GeneratorId,
    LieElement,
    WhittakerHom,
    bracket_elem,
    bracket_gen,
    parse_generator,
    phi_eval,
)
from .coeff import CentralPoly, poly_add, poly_mul, poly_substitute, to_rational
from .errors import (
    ClosureError,
    ContextError,
    DomainError,
    ParamError,
    ParseError,
    PGCAError,
    StraighteningError,
)
from .modules import (
    ModuleCtx,
    ModuleKind,
    Window,
    enumerate_window,
    make_module,
    quotient_reduce,
    submodule_membership,
)
from .pbw import (
    W,
    ModuleVector,
    Partition,
    PBWMonomial,
    act_gen,
    act_word,
    nilpotency_index,
    star_act,
    straighten,
    trunc_functional,
)
from .solver import (
    closed_form_check,
    reducibility_probe,
    type_scan,
    verify_vector,
    whittaker_solve,
)

__version__ = "0.1.0"
