"""
Logging configuration for the application
"""

import logging
import logging.handlers
import sys
from config.settings import Settings

def setup_logging():
    """Setup application logging configuration."""
    settings = Settings()

    settings.LOGS_DIR.mkdir(parents=True, exist_ok=True)

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, settings.LOG_LEVEL.upper()))

    # Clear existing handlers
    root_logger.handlers.clear()

    formatter = logging.Formatter(settings.LOG_FORMAT)

    # Console handler on stderr, stdout belongs to the CLI results
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, settings.CONSOLE_LOG_LEVEL.upper()))
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    # File handler for all logs
    file_handler = logging.handlers.RotatingFileHandler(
        settings.LOGS_DIR / f"{settings.APP_NAME}.log",
        maxBytes=10*1024*1024,  # 10MB
        backupCount=5
    )
    file_handler.setLevel(getattr(logging, settings.LOG_LEVEL.upper()))
    file_handler.setFormatter(formatter)
    root_logger.addHandler(file_handler)

    # Error file handler
    error_handler = logging.handlers.RotatingFileHandler(
        settings.LOGS_DIR / "errors.log",
        maxBytes=10*1024*1024,  # 10MB
        backupCount=5
    )
    error_handler.setLevel(logging.ERROR)
    error_handler.setFormatter(formatter)
    root_logger.addHandler(error_handler)

    # Decoder-specific logger
    decoder_logger = logging.getLogger("decoders")
    decoder_logger.handlers.clear()
    decoder_handler = logging.handlers.RotatingFileHandler(
        settings.LOGS_DIR / "decoders.log",
        maxBytes=10*1024*1024,  # 10MB
        backupCount=5
    )
    decoder_handler.setFormatter(formatter)
    decoder_logger.addHandler(decoder_handler)

    # Simulation logger
    simulation_logger = logging.getLogger("services")
    simulation_logger.handlers.clear()
    simulation_handler = logging.handlers.RotatingFileHandler(
        settings.LOGS_DIR / "simulation.log",
        maxBytes=10*1024*1024,  # 10MB
        backupCount=5
    )
    simulation_handler.setFormatter(formatter)
    simulation_logger.addHandler(simulation_handler)

    logging.info("Logging configuration initialized")
