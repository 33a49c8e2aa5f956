"""Exception types shared across the package."""


class WordGrowthOverflow(RuntimeError):
    """A word grew past the configured length guard."""

    def __init__(self, limit: int):
        super().__init__(f"word length exceeded the guard of {limit} letters")
        self.limit = limit


class RankMismatch(ValueError):
    pass


class ModelMismatch(ValueError):
    pass


class OneSidedCurve(ValueError):
    """A twist was requested about a curve whose neighbourhood is a Moebius band."""


class CharacterNotPreserved(ValueError):
    pass


class NonCommutingInput(ValueError):
    pass


class ParseError(ValueError):
    """Expression syntax error; ``offset`` is a byte offset into the UTF-8 source."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset
