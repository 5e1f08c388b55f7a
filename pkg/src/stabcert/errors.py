"""Exception hierarchy shared by the arithmetic and certification layers."""


class StabCertError(Exception):
    """Base class for every error raised by this package."""


class ResourceGuardError(StabCertError):
    """Exact computation refused because the operands would grow too large."""


class FactorizationError(StabCertError):
    """Bounded factorization could not split a cofactor.

    The stubborn cofactor is kept on the exception so callers can report it.
    """

    def __init__(self, cofactor, message=None):
        self.cofactor = cofactor
        super().__init__(message or f'could not factor cofactor {cofactor}')


class ModulusError(StabCertError):
    """A modulus cannot be used for the requested residue computation."""


class UnusableModulusError(ModulusError):
    """The modulus shares a factor with m or c, so an inverse is missing."""


class UselessModulusError(ModulusError):
    """Every residue is a cube modulo k, so a cube sieve can never pass."""


class DegreeDropError(StabCertError):
    """Leading coefficient vanishes modulo p."""


class NonSquarefreeError(StabCertError):
    """Reduction modulo p has a repeated factor."""


class CertificationError(StabCertError):
    """Internal contradiction while certifying; points at a bug or a data error."""
