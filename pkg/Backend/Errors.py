# ===========================================================================================================
#                                         Errors.py
# ===========================================================================================================
# Exception types raised by the Backend.
# Library code only raises; Main.py decides how each family maps to a message and an exit code.


class MasaEntropyError(ValueError):
    """Base class for every error raised by the toolkit."""


# --- Shape & value checks ---

class DimensionError(MasaEntropyError):
    pass


class NotSquareError(DimensionError):
    pass


class NotFiniteError(MasaEntropyError):
    pass


# --- Operator properties ---

class NotUnitaryError(MasaEntropyError):
    pass


class NotHermitianError(MasaEntropyError):
    pass


class NotPositiveError(MasaEntropyError):
    pass


class NotStateError(MasaEntropyError):
    """A positive functional whose trace is not 1 where a state is required."""


class NotDiagonalError(MasaEntropyError):
    """A density operator or decomposition part that is not diagonal in the standard basis."""


class NotBistochasticError(MasaEntropyError):
    pass


# --- Families ---

class InvalidDecompositionError(MasaEntropyError):
    pass


class InvalidPartitionError(MasaEntropyError):
    pass


# --- Input surfaces ---

class MatrixFileError(MasaEntropyError):
    """A matrix document that cannot be read or does not follow the file format."""


class ConfigError(MasaEntropyError):
    pass


class UnknownSuiteError(MasaEntropyError):
    pass
