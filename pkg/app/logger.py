import logging

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_initialized = False


def init_logger(level: str = "INFO") -> None:
    """Configure the root handler once; later calls only change the level."""
    global _initialized
    root = logging.getLogger()
    if not _initialized:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        _initialized = True
    root.setLevel(level.upper())
