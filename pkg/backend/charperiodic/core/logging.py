import sys

from loguru import logger


def _stderr_sink(message) -> None:
    # Resolved per message so a replaced sys.stderr is honoured
    sys.stderr.write(message)


def configure_logging(level: str = "INFO") -> int:
    """
    Route loguru output to stderr at the given level

    stdout carries reports only, so the default sink is replaced.

    Returns:
        Handler id, for logger.remove once the caller is done
    """
    logger.remove()
    return logger.add(
        _stderr_sink,
        level=level.upper(),
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}",
    )
