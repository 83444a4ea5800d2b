class InputError(ValueError):
    """Malformed instance, unknown identifier, or violated precondition."""


class SizeLimitError(InputError):
    """An exhaustive routine was asked to run above its enumeration cap."""


class ContractError(RuntimeError):
    """An internal postcondition failed; carries the offending witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
