"""Exception hierarchy.

Everything a caller can trigger with bad input derives from :class:`InputError`
(itself a ``ValueError``); the CLI maps these to exit code 2.
"""


class InputError(ValueError):
    """Malformed or inconsistent input."""


class PrimeMismatchError(InputError):
    pass


class NoSquareRootError(InputError):
    pass


class UnsupportedError(InputError):
    """The operation exists but not for this kind of input."""


class AxiomViolation(InputError):
    """A structure failed validation.

    ``violations`` is a list of ``(axiom, witness)`` pairs; the witness is a
    small JSON-friendly description (usually an atom pair).
    """

    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(f"{axiom}: {witness}" for axiom, witness in self.violations)
        super().__init__(text or "axiom violation")
