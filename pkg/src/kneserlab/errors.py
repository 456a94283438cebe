"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ``Falsified`` -> 1, ``InvalidInput`` -> 2,
``CapExceeded`` -> 3.
"""


class KneserLabError(Exception):
    pass


class InvalidInput(KneserLabError, ValueError):
    """Input violates a documented precondition."""


class CapExceeded(KneserLabError):
    """An exhaustive search would exceed a configured size cap."""


class Falsified(KneserLabError):
    """A theorem instance produced no witness, or a certificate failed replay."""


class ClaimFailure(KneserLabError):
    """An intermediate claim of a constructive extraction did not hold.

    This signals an implementation bug, never a legitimate input.
    """

    def __init__(self, claim, detail=""):
        self.claim = claim
        self.detail = detail
        super().__init__(f"{claim}: {detail}" if detail else claim)
