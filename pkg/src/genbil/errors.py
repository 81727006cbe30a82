"""Exception hierarchy.

``InvalidInput`` subclasses describe data that fails a structural law
(bad constants, a map that is not an anti-endomorphism, ...). ``Unmet``
subclasses signal that a mathematical precondition of an operation does not
hold for otherwise valid data. The CLI maps these to different exit codes.
"""


class GenbilError(Exception):
    pass


class InvalidInput(GenbilError, ValueError):
    pass


class Unmet(GenbilError):
    pass


class AssociativityViolation(InvalidInput):
    def __init__(self, i, j, k):
        self.indices = (i, j, k)
        super().__init__(f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})")


class UnityViolation(InvalidInput):
    def __init__(self, i):
        self.index = i
        super().__init__(f"unity does not act as identity on e{i}")


class PatternNotClosed(InvalidInput):
    def __init__(self, i, j, k):
        self.indices = (i, j, k)
        super().__init__(f"pattern has ({i},{j}) and ({j},{k}) but not ({i},{k})")


class PatternNotUnital(InvalidInput):
    def __init__(self, i):
        self.index = i
        super().__init__(f"pattern misses diagonal entry ({i},{i})")


class NotUnital(InvalidInput):
    def __init__(self):
        super().__init__("map does not send 1 to 1")


class NotAntiMultiplicative(InvalidInput):
    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"alpha(e{i} e{j}) != alpha(e{j}) alpha(e{i})")


class ModuleLawViolation(InvalidInput):
    def __init__(self, what, i, j=None):
        self.indices = (i,) if j is None else (i, j)
        super().__init__(f"{what} fails at {self.indices}")


class CompatibilityViolation(InvalidInput):
    def __init__(self, side, s, i, j):
        self.side, self.indices = side, (s, i, j)
        super().__init__(f"form violates the side-{side} law for e{s} at basis pair ({i},{j})")


class DimensionMismatch(InvalidInput):
    pass


class AlgebraMismatch(InvalidInput):
    pass


class BudgetExceeded(Unmet):
    pass


class NotInvertible(Unmet):
    pass


class NotRightRegular(Unmet):
    pass


class NotLeftRegular(Unmet):
    pass


class AlphaNotInvolution(Unmet):
    pass


class NotInvolution(Unmet):
    pass


class NotFieldCase(Unmet):
    pass


class NotSemisimple(Unmet):
    pass


class NotFree(Unmet):
    pass


class RankOneIdentificationFailed(Unmet):
    pass


class HypothesisViolated(Unmet):
    def __init__(self, which):
        self.which = which
        super().__init__(f"hypothesis violated: {which}")


class HypothesisUnverified(Unmet):
    pass


class CenterNotSplit(Unmet):
    pass


class Inconclusive(Unmet):
    pass


class DescentFailure(GenbilError, AssertionError):
    pass
