"""Critical points of the product of vertex distances on a triangle's boundary."""

__version__ = "0.1.0"

from .census import CensusReport, IsoscelesCase, TheoremCase, analyze  # noqa: E402
from .config import DEFAULT, ToleranceConfig  # noqa: E402
from .edge import CriticalPoint, Kind, analyze_edge  # noqa: E402
from .geometry import Point, Triangle, adapted_frame, make_triangle  # noqa: E402

__all__ = [
    "CensusReport", "CriticalPoint", "DEFAULT", "IsoscelesCase", "Kind", "Point",
    "TheoremCase", "ToleranceConfig", "Triangle", "adapted_frame", "analyze",
    "analyze_edge", "make_triangle",
]
