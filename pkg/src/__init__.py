"""Root module."""

import logging
import os
import sys
import warnings

from ruamel.yaml import YAML

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MIN_WEIGHT = 1e-9  # generator clamp for strictly positive off-diagonals
DEFAULT_MDS_DIM = 3
DEFAULT_PLOT_DIM = 2
DEFAULT_RESTARTS = 16
DEFAULT_SEED = 0
DEFAULT_SMACOF_ITERS = 300
DEFAULT_SMACOF_TOL = 1e-8
DEFAULT_SSTRESS_ITERS = 2000
DEFAULT_SSTRESS_TOL = 1e-12
DEFAULT_REFINEMENT = "sstress"
DEFAULT_SIGMA = 0.5
DEFAULT_FEAT_DIM = 5
DEFAULT_PER_MODEL = 10
DEFAULT_NODES = 12
DEFAULT_MODELS = ("er", "circle", "corr")
DEFAULT_GAMMAS = tuple(range(1, 11))
DEFAULT_GAMMA_OPPOSITE = 11.0  # r(b, c) in the gamma family
DEFAULT_ENUMERATION_LIMIT = 10**7  # candidate maps per exact evaluation
DEFAULT_CORRESPONDENCE_LIMIT = 20  # |X|*|Y| cells for bitmask enumeration
DEFAULT_ISOMORPHISM_LIMIT = 8
DEFAULT_REGULAR_PAIR_LIMIT = 5
DEFAULT_MAX_THREADS_CAP = 16
DEFAULT_CONFIG_FILE_NAME = "config.yaml"
ENV_CONFIG_FILE_PATH_KEY = "NETMETRIC_CONFIG_FILE_PATH"
ENV_THREADS_KEY = "NETMETRIC_THREADS"
ENV_RUN_EXPERIMENTS_KEY = "NETMETRIC_RUN_EXPERIMENTS"
DEFAULT_LOGGER_LEVEL = "info"
DEFAULT_LOG_FILE_NAME = "netmetric.log"
DEFAULT_CONFIG_FILE_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), DEFAULT_CONFIG_FILE_NAME)

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_GUARD_EXCEEDED = 3
EXIT_INFEASIBLE = 4

warnings.filterwarnings("ignore", category=DeprecationWarning)


def read_config(config_path=DEFAULT_CONFIG_FILE_PATH):
    """Read config file."""
    if not (config_path and os.path.exists(config_path)):
        return None
    with open(file=config_path, encoding="utf-8") as config_file:
        config = YAML().load(config_file)
    return config if isinstance(config, dict) else None


def get_logger_config(config):
    """Get logger config."""
    if not (config and isinstance(config.get("app"), dict) and "logger" in config["app"]):
        return None
    config_app_logger = config["app"]["logger"] or {}
    logger_config = {}
    logger_config["level"] = (
        str(config_app_logger["level"]).strip().lower() if "level" in config_app_logger else DEFAULT_LOGGER_LEVEL
    )
    logger_config["filename"] = (
        str(config_app_logger["filename"]).strip() if config_app_logger.get("filename") else DEFAULT_LOG_FILE_NAME
    )
    return logger_config


def log_handler_exists(logger, handler_type, **kwargs):
    """Check for existing log handler."""
    for handler in logger.handlers:
        if type(handler) is not handler_type:
            continue
        if handler_type is logging.FileHandler:
            if handler.baseFilename.endswith(kwargs["filename"]):
                return True
        elif handler_type is logging.StreamHandler:
            if handler.stream is kwargs["stream"]:
                return True
        else:
            return True
    return False


class ColorfulConsoleFormatter(logging.Formatter):
    """Console formatter for log messages."""

    grey = "\x1b[38;21m"
    blue = "\x1b[38;5;39m"
    yellow = "\x1b[38;5;226m"
    red = "\x1b[38;5;196m"
    bold_red = "\x1b[31;1m"
    reset = "\x1b[0m"

    def __init__(self, fmt):
        """Construct with defaults."""
        super().__init__()
        self.fmt = fmt
        self.formats = {
            logging.DEBUG: self.grey + self.fmt + self.reset,
            logging.INFO: self.blue + self.fmt + self.reset,
            logging.WARNING: self.yellow + self.fmt + self.reset,
            logging.ERROR: self.red + self.fmt + self.reset,
            logging.CRITICAL: self.bold_red + self.fmt + self.reset,
        }

    def format(self, record):
        """Format the record."""
        log_fmt = self.formats.get(record.levelno)
        formatter = logging.Formatter(log_fmt)
        return formatter.format(record)


LOG_FORMAT = "%(asctime)s :: %(levelname)s :: %(name)s :: %(filename)s :: %(lineno)d :: %(message)s"


def get_logger():
    """Return logger.

    Results go to stdout, so the console handler writes to stderr.
    """
    logger = logging.getLogger()
    logger_config = get_logger_config(
        config=read_config(config_path=os.environ.get(ENV_CONFIG_FILE_PATH_KEY, DEFAULT_CONFIG_FILE_PATH)),
    )
    if not logger_config:
        if not log_handler_exists(logger=logger, handler_type=logging.NullHandler):
            logger.addHandler(logging.NullHandler())
        return logger

    level_name = logging.getLevelName(level=logger_config["level"].upper())
    logger.setLevel(level=level_name)

    if not log_handler_exists(
        logger=logger,
        handler_type=logging.FileHandler,
        filename=logger_config["filename"],
    ):
        file_handler = logging.FileHandler(logger_config["filename"])
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(file_handler)

    if not log_handler_exists(logger=logger, handler_type=logging.StreamHandler, stream=sys.stderr):
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(ColorfulConsoleFormatter(LOG_FORMAT))
        logger.addHandler(console_handler)
    return logger


LOGGER = get_logger()
