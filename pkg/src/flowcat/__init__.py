"""Signal flow graphs as string diagrams over k[s, s^-1].

Terms are parsed from a small text syntax, interpreted as corelations
(canonical kernel representations), analysed for controllability, and
executed by a register-level interpreter whose finite windows can be
compared with the denotational behaviour.
"""

from .control import (
    ControllabilityReport,
    controllable_part,
    is_controllable,
    pullback_span,
)
from .diagram import TypedTerm, parse, pretty, typecheck
from .field import GF, QQ, field_from_name
from .laurent import LaurentPoly, parse_poly
from .linalg import hermite_normal_form, smith_normal_form
from .matrix import PolyMatrix
from .opsem import (
    TraceWindow,
    check_window_trace,
    opsem_window_set,
    simulate,
    step_relation,
    window_behavior,
)
from .semantics import Corelation, Cospan, Span, behavior_equal, corelation

__version__ = "0.1.0"

__all__ = [
    "ControllabilityReport",
    "Corelation",
    "Cospan",
    "GF",
    "LaurentPoly",
    "PolyMatrix",
    "QQ",
    "Span",
    "TraceWindow",
    "TypedTerm",
    "behavior_equal",
    "check_window_trace",
    "controllable_part",
    "corelation",
    "field_from_name",
    "hermite_normal_form",
    "is_controllable",
    "opsem_window_set",
    "parse",
    "parse_poly",
    "pretty",
    "pullback_span",
    "simulate",
    "smith_normal_form",
    "step_relation",
    "typecheck",
    "window_behavior",
]
