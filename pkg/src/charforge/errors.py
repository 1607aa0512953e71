"""Exception hierarchy shared across pipeline stages.

ConfigError maps to exit code 1, DataError (and subclasses) to exit code 2.
"""


class CharforgeError(Exception):
    pass


class ConfigError(CharforgeError):
    pass


class DataError(CharforgeError):
    pass


class StageNotFoundError(DataError):
    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        msg = f"stage '{stage}' not found"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class CorefSpanError(DataError):
    pass


class CorpusTooSmallError(DataError):
    pass


class EmbedderError(DataError):
    pass
