"""Johansson diagrams of filling Dehn spheres: validation, diagram groups,
first homology, connected-sum surgery and a census of Haken presentations."""

__version__ = "0.1.0"

from .diagram import (  # noqa: E402
    HakenPresentation,
    JohanssonDiagram,
    SisterPairing,
    Triplet,
    ValidationReport,
    classify_triplet,
    curve_crossing_graph,
    faces,
    forget_embedding,
    validate_diagram,
    validate_presentation,
)
from .group import AbelianGroup, abelianize, h1, presentation_from, recognize, smith_normal_form  # noqa: E402
from .surgery import SurgerySite, connected_sum, mirror  # noqa: E402
from .census import CensusQuery, canonical_form, census_h1, enumerate_presentations  # noqa: E402
from .io import parse, parse_diagram, parse_presentation, serialize_diagram  # noqa: E402

__all__ = [
    "HakenPresentation",
    "JohanssonDiagram",
    "SisterPairing",
    "Triplet",
    "ValidationReport",
    "classify_triplet",
    "curve_crossing_graph",
    "faces",
    "forget_embedding",
    "validate_diagram",
    "validate_presentation",
    "AbelianGroup",
    "abelianize",
    "h1",
    "presentation_from",
    "recognize",
    "smith_normal_form",
    "SurgerySite",
    "connected_sum",
    "mirror",
    "CensusQuery",
    "canonical_form",
    "census_h1",
    "enumerate_presentations",
    "parse",
    "parse_diagram",
    "parse_presentation",
    "serialize_diagram",
]
