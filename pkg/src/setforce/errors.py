"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class SetforceError(Exception):
    """Base class."""


class PropertyViolation(SetforceError, ValueError):
    """An input lacks an order-theoretic property the operation requires."""


class NotAWellOrder(PropertyViolation):
    pass


class PosetError(PropertyViolation):
    pass


class IncompatibleError(PropertyViolation):
    """Two conditions that must have a common extension do not."""


class UnknownElement(SetforceError, KeyError):
    def __str__(self):
        return f"unknown element: {self.args[0]!r}"


class FuelExhausted(SetforceError, RuntimeError):
    """A bounded search ran out of budget.

    This never means the searched-for object does not exist, only that the
    finite window examined was too small to exhibit it.
    """


class SizeLimitError(SetforceError, RuntimeError):
    pass


class LoadError(SetforceError, ValueError):
    """Malformed input text (expression, relation file, CLI token)."""
