"""Exception types shared by the engine and the CLI."""


class MalformedComplexError(ValueError):
    """A chain complex failed validation (shapes, d∘d = 0, closure)."""


class HypothesisError(ValueError):
    """Inputs fall outside the hypotheses of the result being applied.

    ``anchor`` names the result whose hypothesis was violated.
    """

    def __init__(self, message: str, anchor: str):
        super().__init__(f"{message} [{anchor}]")
        self.anchor = anchor


class UnsupportedSpaceError(ValueError):
    """No table source is available for the requested space."""
