"""Exception hierarchy shared across the pipeline.

The CLI maps these onto exit codes: ConfigError -> 1, DataError -> 2,
anything else raised inside a stage -> 3.
"""


class TweetflowError(Exception):
    """Base class for all pipeline errors."""


class ConfigError(TweetflowError):
    """Invalid configuration: bad file, missing resource, bad parameter."""


class DataError(TweetflowError):
    """Invalid or inconsistent input data."""


class StageError(TweetflowError):
    """A pipeline stage failed; upstream outputs missing or a step aborted."""
