"""Exception hierarchy with coarse categories used for CLI exit codes."""


class UcadivError(Exception):
    """Base class for all toolkit errors."""


class DataError(UcadivError):
    """Malformed or inconsistent input data (exit code 3)."""


class ParseError(DataError):
    """File parse failure; carries the offending line number when known."""

    def __init__(self, message, path=None, lineno=None):
        self.path = path
        self.lineno = lineno
        prefix = ""
        if path is not None:
            prefix += str(path)
        if lineno is not None:
            prefix += f":{lineno}"
        if prefix:
            message = f"{prefix}: {message}"
        super().__init__(message)


class ConfigError(DataError):
    """Invalid run configuration (unknown keys, schema violations)."""


class ModelError(UcadivError):
    """Input violates a modeling assumption (exit code 4)."""


class NonPhysicalDataError(ModelError):
    """Passivity violated: non-positive mode resistance inside the band."""


class ModelMismatchError(ModelError):
    """Data inconsistent with the symmetric-circulant array structure."""


class NoResonanceError(ModelError):
    """Reactance has no zero crossing inside the fit band."""


class FitFailureError(ModelError):
    """Resonance fit produced a non-physical parameter set."""


class NumericError(UcadivError):
    """Numerical failure during evaluation (exit code 5)."""


class SingularSampleError(NumericError):
    """A per-frequency matrix solve hit a (near-)singular system."""

    def __init__(self, message, sample_index, frequency):
        self.sample_index = sample_index
        self.frequency = frequency
        super().__init__(
            f"{message} at sample {sample_index} (f/fc = {frequency:.6g})"
        )
