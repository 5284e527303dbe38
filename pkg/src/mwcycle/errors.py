"""Error taxonomy shared by all modules.

Every domain error carries a short machine-readable code (the same strings
the CLI puts into JSON reports) plus a human message.
"""


class MWError(Exception):
    """Base class for catalog/domain errors with a stable code."""

    def __init__(self, code, message=""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)


def err(code, message=""):
    return MWError(code, message)
