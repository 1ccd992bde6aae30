"""Exception hierarchy. Errors documented as "must not fire" signal bugs or convention mismatches."""


class IcanonError(Exception):
    """Base class for all library errors."""


class InvariantViolation(IcanonError):
    """An internal consistency check failed."""


# ring
class SkewViolation(IcanonError):
    pass


class ConstantTermObstruction(IcanonError):
    pass


class NonLaurentCoefficient(IcanonError):
    pass


# weyl
class NotSimpleConjugate(InvariantViolation):
    pass


# barsolve
class NotInvolution(IcanonError):
    pass


class Obstruction(IcanonError):
    def __init__(self, row, col, detail: str = ""):
        super().__init__(f"obstruction at ({row!r}, {col!r}) {detail}".rstrip())
        self.row, self.col = row, col


class NotTriangular(IcanonError):
    pass


class NotInSpan(IcanonError):
    pass


# hecke
class BadCosetData(IcanonError):
    pass


# tensor
class RankTooSmall(IcanonError):
    pass


class NoSolution(InvariantViolation):
    pass


class NonUniqueSolution(InvariantViolation):
    pass


class NoIntertwiner(InvariantViolation):
    pass


class NonUniqueIntertwiner(InvariantViolation):
    pass


class SpanMismatch(InvariantViolation):
    pass


class BasedMorphismViolation(InvariantViolation):
    pass


# cli
class ConfigError(IcanonError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class RankLimit(ConfigError):
    pass


class SizeLimit(ConfigError):
    pass


class InvalidParabolic(ConfigError):
    pass
