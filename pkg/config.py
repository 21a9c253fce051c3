"""
Configuration settings for sturmdet
"""
import logging
import os
import sys
from fractions import Fraction
from typing import Optional

import structlog
from dotenv import load_dotenv

load_dotenv()

# Campaign Configuration
DEFAULT_SEED = int(os.getenv("STURMDET_SEED", "20240611"))
DEFAULT_TRIALS = int(os.getenv("STURMDET_TRIALS", "200"))
WORKERS = int(os.getenv("STURMDET_WORKERS", "1"))

# Random polynomial generation
DEGREE_RANGE = (3, 8)
COEFF_BOUND = 9  # integer coefficients drawn from [-COEFF_BOUND, COEFF_BOUND]
MATRIX_ENTRY_BOUND = 5

# Asymptotics
RATIO_BAND = (Fraction(3, 10), Fraction(4, 5))
DEFAULT_M = 1
DEFAULT_N_LIST = (10, 20, 40)
BETA_PAIRS = ((1, 2), (1, 3), (2, 4), (2, 5), (3, 6))
EULER_SWEEP_MAX = 12
FACTORIZATION_MAX_M = 5
CAUCHY_TRIALS = 50
CAUCHY_MAX_M = 6

# Benchmark
BENCH_DEGREES = (4, 12)
BENCH_REPS = 10
BENCH_CSV_HEADER = ("degree", "route", "rep", "nanos", "max_bits", "correct")

# Logging Configuration
LOG_LEVEL = os.getenv("STURMDET_LOG_LEVEL", "WARNING")
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
LOG_FILE = os.getenv("STURMDET_LOG_FILE")  # unset: stderr only


def configure_logging(level: str = LOG_LEVEL, log_file: Optional[str] = LOG_FILE) -> None:
    """Route structlog through stdlib logging; records go to stderr and optionally a file."""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.KeyValueRenderer(key_order=["event"], drop_missing=True),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )
