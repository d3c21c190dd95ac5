"""Numerics for generalized (q; alpha, beta, gamma; nu)-deformed oscillator algebras."""

from .catalog import (
    BDY,
    AbcForm,
    ArikCoon,
    BiedenharnMacfarlane,
    ChungEtAl,
    NuModified,
    QNu,
    StructureSeq,
    TwoParam,
    TwoParamParams,
    Unified,
    UnifiedParams,
    abc_to_unified,
    bracket,
    structure_catalog,
    structure_recurrence,
    structure_two_param,
    structure_unified,
)
from .errors import ConsistencyError, ConvergenceError, DivergenceError, DomainError, RepresentationError
from .qcalc import DiscreteMeasure, SeriesPolicy
from .repclass import RepParams, casimir_values, classify, lambda_closed, lambda_recurrence

__version__ = "0.1.0"
