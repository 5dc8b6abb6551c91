from .analysis import AnalysisState, analysis_pipeline, analyze, checks_passed
from .config import ToleranceConfig, load_tolerances
from .errors import (
    AntipolarError,
    DegenerateInput,
    DegeneratePoints,
    InputError,
    LatticeInconsistency,
    NotAntiSelfPolar,
    NotFullDimensional,
    NumericalDegeneracy,
    OriginNotInterior,
    PointFileError,
    UnknownCatalogName,
)
from .geometry import PointCloud

__version__ = "0.1.0"
