"""
Logging configuration for the command line engine
"""
import logging
import sys


def setup_logging(level: int = logging.INFO):
    """Setup engine logging with proper configuration"""
    # Create formatter
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    # Setup root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Remove existing handlers
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    # stdout carries tables and JSON only
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)

    # Add handler to root logger
    root_logger.addHandler(console_handler)

    # Setup specific loggers
    logging.getLogger("syzygy").setLevel(level)
    logging.getLogger("syzygy.services").setLevel(level)
    logging.getLogger("syzygy.services.koszul_service").setLevel(level)
    logging.getLogger("syzygy.services.curve_service").setLevel(level)

    # sympy's factorisation is chatty at DEBUG
    logging.getLogger("sympy").setLevel(logging.WARNING)
