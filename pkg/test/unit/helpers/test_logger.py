import logging

from src.helpers.logger import configure_logging, get_logger


def test_loggers_live_under_the_package_name():
    logger = get_logger("test.helpers")
    assert logger.name == "sfstri.test.helpers"
    assert len(logger.handlers) == 1
    assert not logger.propagate


def test_handler_is_added_once():
    first = get_logger("test.once")
    second = get_logger("test.once")
    assert first is second
    assert len(second.handlers) == 1


def test_configure_logging_reaches_existing_loggers():
    logger = get_logger("test.level")
    try:
        configure_logging("DEBUG")
        assert logger.level == logging.DEBUG
        assert get_logger("test.level.later").level == logging.DEBUG
        configure_logging("nonsense")
        assert logger.level == logging.WARNING
    finally:
        configure_logging(logging.WARNING)
