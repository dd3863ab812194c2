"""Exception hierarchy shared by every module of the package."""


class LatgenError(Exception):
    """Base class; carries the CLI exit code for the failure kind."""

    exit_code = 1


class ParseError(LatgenError):
    exit_code = 2


class NotALattice(LatgenError):
    exit_code = 3


class CyclicCovers(NotALattice):
    pass


class DuplicateCover(NotALattice):
    pass


class NotAChain(LatgenError):
    exit_code = 3


class CapacityExceeded(LatgenError):
    exit_code = 4


class BoundExceeded(LatgenError):
    exit_code = 4


class FamilyMismatch(LatgenError):
    pass


class NonTermination(LatgenError):
    pass


class UnsupportedBlock(LatgenError):
    """A set operation whose result has no finite block description."""


class NotASublattice(LatgenError):
    pass


class NotProper(LatgenError):
    pass


class CertificateInvalid(LatgenError):
    pass
