class InputError(ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class ConstraintError(ValueError):
    """Growth parameters breach one of the stated inequalities (CLI exit code 1)."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
