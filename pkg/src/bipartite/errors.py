"""Exception hierarchy shared by every module."""


class QuantumInputError(ValueError):
    """Base class for rejected inputs (bad shape, bad state, missing metadata)."""


class ShapeError(QuantumInputError):
    pass


class HermiticityError(QuantumInputError):
    def __init__(self, deviation: float, tol: float):
        self.deviation = deviation
        super().__init__(
            f"matrix is not Hermitian: max |A - A^dag| = {deviation:.3g}, expected <= {tol:g}"
        )


class ValidationError(QuantumInputError):
    """A state or operator violates one of its defining invariants."""


class MetadataError(QuantumInputError):
    """Bipartite dimensions are required but were not supplied."""


class UnsupportedDimensionError(QuantumInputError):
    pass


class DegenerateBranchError(QuantumInputError):
    """A forced measurement outcome has (numerically) zero probability."""
