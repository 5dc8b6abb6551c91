class AntipolarError(Exception):
    """Base class for every error raised by the antipolar library."""


class InputError(AntipolarError):
    """Errors caused by the input itself; the CLI maps these to exit code 2."""


class DegenerateInput(InputError):
    pass


class NotFullDimensional(InputError):
    pass


class DegeneratePoints(InputError):
    pass


class UnknownCatalogName(InputError):
    pass


class PointFileError(InputError):
    def __init__(self, message: str, line_no: int = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class LatticeInconsistency(AntipolarError):
    pass


class OriginNotInterior(AntipolarError):
    pass


class NotAntiSelfPolar(AntipolarError):
    pass


class NumericalDegeneracy(AntipolarError):
    pass
