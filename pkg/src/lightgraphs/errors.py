"""Exception types shared across the package."""


class InputError(ValueError):
    """An operation received input outside its contract."""


class PatternSyntaxError(InputError):
    """Malformed pattern or theorem text; carries the offset that failed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position
