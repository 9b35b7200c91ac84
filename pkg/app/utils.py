"""Utility functions for logging, worker settings and result serialization."""

import os
import io
import csv
import json
import shutil
import logging
import datetime
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from errors import ConfigError


LOG_DIR = os.path.join(os.path.dirname(__file__), "..", "logs")

CSV_HEADER = ("parameter", "min_fidelity", "avg_fidelity", "max_fidelity", "n_states", "max_trace_dev")


@dataclass
class RunSettings:
    """
    Represents the settings of one CLI run.

    Attributes:
        workers (int): Number of concurrent sweep workers.
        output (Optional[str]): Output file; None writes to stdout.
        format (str): Output format, "csv" or "json".
        verbose (bool): Whether debug messages reach the console.
    """
    workers: int
    output: Optional[str]
    format: str
    verbose: bool


def resolve_workers(requested: Optional[int] = None) -> int:
    """
    Worker count for sweeps: an explicit request wins, then HOLONOMY_LAB_THREADS.
    0 or unset means one worker per CPU.
    """
    if requested is None:
        raw = os.getenv("HOLONOMY_LAB_THREADS", "0").strip() or "0"
        try:
            requested = int(raw)
        except ValueError as err:
            raise ConfigError(f"HOLONOMY_LAB_THREADS must be an integer, got {raw!r}") from err
    if requested < 0:
        raise ConfigError(f"worker count must be non-negative, got {requested}")
    return requested or (os.cpu_count() or 1)


def format_float(value: float) -> str:
    """12 significant digits; nan and inf print as such."""
    return format(float(value), ".12g")


def matrix_to_json(m) -> list:
    """Row-major nested list of [re, im] pairs."""
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    """
    Inverse of ``matrix_to_json``. Plain real entries are accepted as well.

    Raises:
        ConfigError: If the payload is not a rectangular matrix of numbers or pairs.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as err:
            raise ConfigError(f"matrix is not valid JSON: {err}") from err
    try:
        rows = [[complex(x[0], x[1]) if isinstance(x, (list, tuple)) else complex(x) for x in row]
                for row in data]
        return np.array(rows, dtype=np.complex128).reshape(len(rows), -1)
    except (TypeError, ValueError, IndexError) as err:
        raise ConfigError(f"matrix must be a list of rows of [re, im] pairs: {err}") from err


def reports_to_csv(reports: Sequence) -> str:
    """CSV text with the fixed sweep header, one row per report."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in reports:
        writer.writerow([
            format_float(r.parameter),
            format_float(r.min_fidelity),
            format_float(r.avg_fidelity),
            format_float(r.max_fidelity),
            str(r.n_states),
            format_float(r.max_trace_dev),
        ])
    return buffer.getvalue()


def reports_to_json(reports: Sequence) -> str:
    rows = [r.model_dump(mode="json") for r in reports]
    return json.dumps(rows, indent=2, allow_nan=True) + "\n"


def output_logging(logg: logging.Logger,
                   ttl: str,
                   info_str: str,
                   warning: Optional[str] = None) -> None:
    """
    Logs formatted output including a title, separator, optional warning, and information string.

    Args:
        logg (logging.Logger): The logger instance to use for output.
        ttl (str): The title or header string for the log output.
        info_str (str): The main information string to be logged.
        warning (Optional[str]): An optional warning message.
            If provided, it will be logged as a warning.
    """
    logg.info(ttl)
    logg.info("%s", "-" * len(ttl))
    if warning:
        logg.warning("%s\n", warning)
    logg.info("%s\n\n", str(info_str))


def setup_loggers(logfile_name: str, verbose: bool = False):
    """
    Creates the log directory and configures the sweep output logger (file)
    and the status logger (console).

    Args:
        logfile_name (str): The name of the log file to be created within the log directory.
        verbose (bool): Show debug messages on the console.
    """
    #----- SWEEP OUTPUT LOGGER -----
    os.makedirs(LOG_DIR, exist_ok=True)
    log_file = os.path.join(LOG_DIR, logfile_name)

    logging.basicConfig(level=logging.WARNING)
    logger = logging.getLogger("sweep_output_logger")
    logger.setLevel(logging.INFO)

    # Remove existing handlers to prevent duplicate logging
    if logger.hasHandlers():
        logger.handlers.clear()

    fh = logging.FileHandler(log_file, mode='w', encoding='utf-8')
    fh.setLevel(logging.INFO)
    fh.setFormatter(logging.Formatter('%(message)s'))
    logger.addHandler(fh)
    logger.propagate = False

    logger.info("%s", datetime.datetime.now().strftime('%Y-%m-%d %H:%M:%S'))

    #----- STATUS LOGGER -----
    level = "DEBUG" if verbose else os.getenv("HOLONOMY_LAB_LOG_LEVEL", "INFO").upper()
    status_logger = logging.getLogger("status_logger")
    status_logger.setLevel(logging.getLevelName(level) if isinstance(logging.getLevelName(level), int)
                           else logging.INFO)
    if not status_logger.handlers:
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
        status_logger.addHandler(console_handler)
    status_logger.propagate = False

    return logger, status_logger


def copy_log_file(logfile_name: str, kind: str):
    """
    Copies the specified log file to "sweep_output_<kind>.log" in the logs folder.
    """
    source_path = os.path.join(LOG_DIR, logfile_name)
    if not os.path.exists(source_path):
        return

    dest_path = os.path.join(LOG_DIR, f"sweep_output_{kind}.log")
    shutil.copy2(source_path, dest_path)
