"""Exceptions shared across the package."""


class InfeasibleError(Exception):
    """Parameters are outside the supported desk-scale ranges.

    The CLI maps this (and ValueError) to exit status 2; genuinely
    internal failures exit with status 1.
    """


class EnumerationCapExceeded(InfeasibleError):
    """An exhaustive enumeration would exceed the configured cap.

    Callers that can tolerate approximation should switch to a Monte
    Carlo path instead of raising the cap blindly.
    """
