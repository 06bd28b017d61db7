"""Exception hierarchy shared by all modules.

Each class carries an ``exit_code`` used by the command-line front end.
"""


class AlcoveError(Exception):
    exit_code = 1


class InadmissibleType(AlcoveError, ValueError):
    exit_code = 2


class FullCenterOfD2n(AlcoveError):
    """The non-cyclic center Z2 x Z2 of D_{2n} was requested."""

    exit_code = 3


class NonCyclicSubgroup(AlcoveError):
    exit_code = 3


class NonDominantWeight(AlcoveError, ValueError):
    exit_code = 2


class NonInvertible(AlcoveError):
    exit_code = 4


class NonModularLabelSet(AlcoveError):
    exit_code = 5


class OddDegenerate(AlcoveError):
    exit_code = 5


class VanishingGaussSum(AlcoveError):
    exit_code = 6


class InternalConsistencyError(AlcoveError):
    """A computed table contradicts a theorem the construction relies on."""

    exit_code = 10


class DegenerateNotInvertible(InternalConsistencyError):
    pass
