class VbcodesError(Exception):
    exit_code = 1


class ConstraintViolation(VbcodesError, ValueError):
    """A construction or operation precondition does not hold."""

    exit_code = 2


class VerificationFailure(VbcodesError):
    """A requested check ran and failed, or could not conclude."""

    exit_code = 3


class BudgetExceeded(VbcodesError):
    """The requested route is too expensive for the instance; use another route."""

    exit_code = 4
