"""Elliptic fibrations on lattice models."""
from .configs import (
    AdeConfig, complete_configuration, find_ade_configurations, induce_fibration, induced_section,
)
from .kodaira import (
    DiagramType, FiberPlace, KodairaFiber, affine_marks, build_fiber, classify_diagram,
    classify_kodaira, kodaira_kind, local_contribution, translation_permutation,
)
from .models import (
    alternative_fibrations, fibration_by_name, rational_fibration, rational_fixture,
    standard_fibration,
)
from .sections import (
    FibrationData, SectionClass, as_section, fibration_from_curves, height_by_projection,
    height_pairing, reduce_to_section, translation_isometry, translation_pushforward,
    trivial_lattice_of,
)

__all__ = [
    "AdeConfig", "complete_configuration", "find_ade_configurations", "induce_fibration",
    "induced_section", "DiagramType", "FiberPlace", "KodairaFiber", "affine_marks", "build_fiber",
    "classify_diagram", "classify_kodaira", "kodaira_kind", "local_contribution",
    "translation_permutation", "alternative_fibrations", "fibration_by_name",
    "rational_fibration", "rational_fixture", "standard_fibration", "FibrationData",
    "SectionClass", "as_section", "fibration_from_curves", "height_by_projection",
    "height_pairing", "reduce_to_section", "translation_isometry", "translation_pushforward",
    "trivial_lattice_of",
]
