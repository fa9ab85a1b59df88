"""
Exception hierarchy.

Every error carries the process exit code the CLI should return and a
human-readable detail, the same pairing an HTTP layer gets from
``HTTPException(status_code, detail)``:

    2  invalid input (bad parameters, unknown fixture, inadmissible index)
    1  a property that must hold was violated (witness in the report)
"""

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2


class GKAutError(Exception):
    exit_code: int = EXIT_INVALID

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


# ── Tower ──────────────────────────────────────────────────────────────────

class TowerError(GKAutError):
    pass


class NotPrime(TowerError):
    pass


class MNotEven(TowerError):
    pass


class QuotientNotOdd(TowerError):
    pass


class ReducibleModulus(TowerError):
    pass


class InvalidTowerParameter(TowerError):
    pass


class TowerInvariantError(TowerError):
    exit_code = EXIT_VIOLATION


# ── Field arithmetic ───────────────────────────────────────────────────────

class FieldArithmeticError(GKAutError):
    pass


class DivisionByZero(FieldArithmeticError):
    pass


class ZeroInput(FieldArithmeticError):
    pass


class SNotDivisor(FieldArithmeticError):
    pass


# ── Linear algebra ─────────────────────────────────────────────────────────

class SingularMatrix(GKAutError):
    pass


class DimensionMismatch(GKAutError):
    exit_code = EXIT_VIOLATION


# ── Presemifield parameters ────────────────────────────────────────────────

class ParamsError(GKAutError):
    pass


class BNotNonSquare(ParamsError):
    pass


class ABNotInFQ(ParamsError):
    pass


class TowerInvalid(ParamsError):
    pass


class UnknownFixture(ParamsError):
    pass


class SingularTranslation(GKAutError):
    exit_code = EXIT_VIOLATION


# ── Autotopisms ────────────────────────────────────────────────────────────

class AutotopismError(GKAutError):
    pass


class NonAdmissible(AutotopismError):
    pass


class ZeroParameter(AutotopismError):
    pass


class ConventionMismatch(AutotopismError):
    exit_code = EXIT_VIOLATION


class ScaleTooLarge(GKAutError):
    pass


class PropertyViolation(GKAutError):
    exit_code = EXIT_VIOLATION
