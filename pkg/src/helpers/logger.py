import logging

_level = logging.WARNING


def configure_logging(level: str | int) -> None:
    """Set the level of every sfstri logger, existing and future."""
    global _level
    _level = logging.getLevelName(level) if isinstance(level, str) else level
    if not isinstance(_level, int):
        _level = logging.WARNING
    for name, logger in logging.Logger.manager.loggerDict.items():
        if name.startswith("sfstri") and isinstance(logger, logging.Logger):
            logger.setLevel(_level)


def get_logger(name: str) -> logging.Logger:
    logger = logging.getLogger(f"sfstri.{name}")
    logger.setLevel(_level)

    if not logger.handlers:
        # stderr, reports on stdout stay clean
        handler = logging.StreamHandler()
        formatter = logging.Formatter("%(asctime)s [%(levelname)s] %(message)s")
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False

    return logger
