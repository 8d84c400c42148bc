"""Exception hierarchy.

Every numerical failure raised by the library derives from
:class:`SymbidiscError`, so callers (the CLI in particular) can separate
domain errors from programming errors.
"""


class SymbidiscError(Exception):
    pass


class InputError(SymbidiscError, ValueError):
    """Malformed or out-of-domain input data."""


# scalar kit
class NotInner(SymbidiscError):
    pass


class RootFailure(SymbidiscError):
    pass


class IllConditioned(SymbidiscError):
    pass


# matrices / automorphisms
class NotPositiveDefinite(SymbidiscError):
    pass


class SingularResolvent(SymbidiscError):
    pass


class DegenerateDenominator(SymbidiscError):
    pass


class CenterOutsideBall(InputError):
    pass


# family
class FitFailure(SymbidiscError):
    pass


# analysis
class RoyalIntersection(SymbidiscError):
    def __init__(self, message, points=()):
        super().__init__(message)
        self.points = list(points)


class IdenticallyRoyal(RoyalIntersection):
    pass


class BranchAmbiguity(SymbidiscError):
    pass


# solver
class NodeCollision(InputError):
    pass


class TargetOutsideDomain(InputError):
    pass


class ScalarTarget(InputError):
    pass


class SpectrumOutsideDisc(InputError):
    pass
