"""Exception types shared by every module.

The CLI maps InputError/PreconditionError to exit code 2 (bad input or
usage) and TheoremViolationError to a loud abort: the latter means an
internal invariant that is supposed to be a theorem failed on concrete
data, which indicates a bug rather than a property of the input.
"""


class InputError(ValueError):
    """Malformed or inconsistent input (documents, indices, tables)."""


class PreconditionError(InputError):
    """An operation was called on a structure missing required features."""


class TheoremViolationError(RuntimeError):
    """A checked theorem failed on concrete data.

    Carries a serialized witness so the failing instance can be reloaded
    and re-examined.
    """

    def __init__(self, message, witness_text=None):
        super().__init__(message)
        self.witness_text = witness_text
