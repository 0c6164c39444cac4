import logging
from contextlib import contextmanager

from rich.console import Console
from rich.logging import RichHandler


class ProcviewFormatter(logging.Formatter):
    """
    Formatter that prefixes records coming from the simulator with the tick they
    refer to. Records carry the tick in an optional ``tick`` attribute, set through
    the ``extra`` argument of the logging call.
    """

    def format(self, record):
        msg = super().format(record)
        tick = getattr(record, "tick", None)
        if tick is not None:
            msg = f"[t={tick}] {msg}"
        return msg


def configure_logging(verbosity: str = "warning"):
    """
    Configure logging for the procview library.

    Sets up logging format and levels for the CLI and for scripts. Records are
    rendered through a :class:`rich.logging.RichHandler` writing to stderr, so
    reports printed on stdout stay machine readable.

    Args:
        verbosity (str): Logging level as a string ("info", "debug", etc.).
    """
    if not isinstance(verbosity, str):
        raise TypeError("verbosity must be a string like 'info', 'debug', etc.")
    level = getattr(logging, verbosity.upper(), logging.WARNING)
    if level <= logging.DEBUG:
        fmt = "%(name)-35s - %(message)s"
    else:
        fmt = "%(message)s"

    handler = RichHandler(
        console=Console(stderr=True),
        show_time=level <= logging.DEBUG,
        show_path=False,
    )
    handler.setFormatter(ProcviewFormatter(fmt))

    # Set root logger to WARNING (default for all libraries)
    logging.basicConfig(
        level=logging.WARNING,
        handlers=[handler],
        force=True,
    )

    # Set only procview logs to the desired level
    logging.getLogger("procview").setLevel(level)


@contextmanager
def set_logger_level(logger_name, level):
    """
    Context manager to temporarily set the logging level for a logger.

    Args:
        logger_name (str): Name of the logger to set the level for.
        level (int): Logging level to set (e.g., logging.DEBUG, logging.INFO).

    Example:
        >>> with set_logger_level("procview.simulation", logging.ERROR):
        >>>     # code that should log only ERROR and above
    """
    logger = logging.getLogger(logger_name)
    old_level = logger.level
    logger.setLevel(level)
    try:
        yield
    finally:
        logger.setLevel(old_level)
