"""Probability aggregation over propositional agendas.

Linear pooling, rationality certificates via exact LP, Bayesian updating and
checks that updating commutes with pooling on a common-ground domain.
"""

from .agenda import Agenda, and_closure, build_agenda
from .dynamics import (
    CommonGround,
    LearningEvent,
    SessionState,
    bayes_update,
    check_phi_preserving,
    common_ground_of,
    dynamic_rationality_gap,
    run_sequence,
)
from .judgment import (
    Judgment,
    Measure,
    check_rational,
    consistent_with_truth,
    extension_bounds,
    judgment_from_measure,
    unique_joint,
)
from .logic import Formula, Language, formula_from_truthset, parse_formula
from .pooling import Profile, Weights, is_dictatorial, linear_pool

__version__ = "0.1.0"

__all__ = [
    "Agenda", "CommonGround", "Formula", "Judgment", "Language", "LearningEvent", "Measure",
    "Profile", "SessionState", "Weights", "and_closure", "bayes_update", "build_agenda",
    "check_phi_preserving", "check_rational", "common_ground_of", "consistent_with_truth",
    "dynamic_rationality_gap", "extension_bounds", "formula_from_truthset", "is_dictatorial",
    "judgment_from_measure", "linear_pool", "parse_formula", "run_sequence", "unique_joint",
]
