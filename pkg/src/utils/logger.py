"""
Logging system for the lab.
Colored console output plus optional master and per-run log files, all in UTC.
"""
import logging
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional, TYPE_CHECKING

import colorlog

if TYPE_CHECKING:
    from src.models.data_models import MetricsRow


class UTCFormatter(logging.Formatter):
    """Custom formatter that uses UTC time for all log messages"""

    def formatTime(self, record, datefmt=None):
        """Override formatTime to use UTC"""
        dt = datetime.fromtimestamp(record.created, tz=timezone.utc)
        if datefmt:
            return dt.strftime(datefmt)
        return dt.isoformat(timespec='seconds')


class UTCColoredFormatter(colorlog.ColoredFormatter):
    """Colored console formatter that uses UTC time"""

    def formatTime(self, record, datefmt=None):
        dt = datetime.fromtimestamp(record.created, tz=timezone.utc)
        if datefmt:
            return dt.strftime(datefmt)
        return dt.isoformat(timespec='seconds')


_FILE_FORMAT = '%(asctime)s UTC | %(levelname)-8s | %(message)s'
_FILE_DATEFMT = '%Y-%m-%d %H:%M:%S'


class LabLogger:
    """Custom logger for training runs"""

    def __init__(self, name: str = "biobp", log_to_file: bool = True,
                 log_to_console: bool = True, log_level: str = "INFO",
                 enable_detailed: bool = False, log_dir: str = "logs"):
        """
        Initialize the lab logger.

        Args:
            name: Logger name
            log_to_file: Enable file logging
            log_to_console: Enable console logging (stderr)
            log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            enable_detailed: Emit debug messages
            log_dir: Base directory for log files
        """
        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.DEBUG if enable_detailed else getattr(logging, log_level.upper()))
        self.logger.handlers.clear()
        self.logger.propagate = False

        self.enable_detailed = enable_detailed
        self.log_to_file = log_to_file
        self.log_dir = Path(log_dir)
        self.run_handlers: Dict[str, logging.FileHandler] = {}
        self._handler_lock = threading.Lock()

        if log_to_file:
            # logs/YYYY-MM-DD/main.log
            date_dir = self._date_dir()
            file_handler = logging.FileHandler(date_dir / "main.log", encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(UTCFormatter(_FILE_FORMAT, datefmt=_FILE_DATEFMT))
            self.logger.addHandler(file_handler)

        if log_to_console:
            console_handler = colorlog.StreamHandler()
            console_handler.setLevel(getattr(logging, log_level.upper()))
            console_handler.setFormatter(UTCColoredFormatter(
                '%(log_color)s%(asctime)s UTC | %(levelname)-8s | %(message)s',
                datefmt='%H:%M:%S',
                log_colors={
                    'DEBUG': 'cyan',
                    'INFO': 'white',
                    'WARNING': 'yellow',
                    'ERROR': 'red',
                    'CRITICAL': 'red,bg_white',
                }
            ))
            self.logger.addHandler(console_handler)

        if not self.logger.handlers:
            self.logger.addHandler(logging.NullHandler())

    def _date_dir(self) -> Path:
        date_dir = self.log_dir / datetime.now(timezone.utc).strftime("%Y-%m-%d")
        date_dir.mkdir(parents=True, exist_ok=True)
        return date_dir

    def _get_run_handler(self, run: str) -> Optional[logging.FileHandler]:
        """
        Get or create the file handler for one run.

        Args:
            run: Run tag, usually the rule name

        Returns:
            File handler for the run, or None if file logging is disabled
        """
        if not self.log_to_file:
            return None

        with self._handler_lock:
            if run in self.run_handlers:
                return self.run_handlers[run]
            try:
                handler = logging.FileHandler(self._date_dir() / f"{run}.log", encoding='utf-8')
                handler.setLevel(logging.DEBUG)
                handler.setFormatter(UTCFormatter(_FILE_FORMAT, datefmt=_FILE_DATEFMT))
                self.run_handlers[run] = handler
                return handler
            except OSError as e:
                self.logger.error(f"Failed to create log handler for {run}: {e}")
                return None

    def _log(self, level: int, message: str, run: Optional[str]) -> None:
        if run:
            handler = self._get_run_handler(run)
            if handler and level >= self.logger.getEffectiveLevel():
                record = self.logger.makeRecord(
                    self.logger.name, level, "(run_log)", 0, message, (), None
                )
                handler.emit(record)
            message = f"[{run}] {message}"
        self.logger.log(level, message)

    def info(self, message: str, run: Optional[str] = None):
        """Log info message"""
        self._log(logging.INFO, message, run)

    def debug(self, message: str, run: Optional[str] = None):
        """Log debug message (only if detailed logging enabled)"""
        if self.enable_detailed:
            self._log(logging.DEBUG, message, run)

    def warning(self, message: str, run: Optional[str] = None):
        """Log warning message"""
        self._log(logging.WARNING, message, run)

    def error(self, message: str, run: Optional[str] = None):
        """Log error message"""
        self._log(logging.ERROR, message, run)

    def separator(self, char: str = "=", length: int = 60):
        """Log a separator line"""
        self.logger.info(char * length)

    def header(self, title: str, width: int = 60):
        """Log a formatted header"""
        self.separator("=", width)
        padding = max((width - len(title) - 2) // 2, 1)
        self.logger.info(f"{'=' * padding} {title} {'=' * padding}")
        self.separator("=", width)

    def box(self, title: str, lines: List[str], width: int = 60):
        """Log a formatted box with title and content"""
        self.logger.info("╔" + "═" * (width - 2) + "╗")
        title_padding = max(width - len(title) - 4, 0)
        self.logger.info(f"║  {title}{' ' * title_padding}║")
        self.logger.info("╚" + "═" * (width - 2) + "╝")
        for line in lines:
            self.logger.info(line)

    def run_started(self, rule: str, description: str):
        """Log the start of a training run"""
        self.header(f"RUN STARTED - {rule}")
        self.info(description, rule)

    def metrics_row(self, row: "MetricsRow"):
        """Log one metrics row to the run's file"""
        angles = ", ".join("nan" if a is None else f"{a:.1f}" for a in row.alignment)
        self.info(
            f"step {row.step}: train_loss={row.train_loss:.4f} "
            f"test_loss={row.test_loss:.4f} test_acc={row.test_acc:.4f} align=[{angles}]",
            row.rule
        )

    def run_failed(self, rule: str, reason: str, context: Optional[dict] = None):
        """
        Log a failed run with optional context.

        Args:
            rule: Rule tag of the run
            reason: Error message
            context: Optional details to list below the error
        """
        self.error(f"Run failed: {reason}", rule)
        if context:
            for key, value in context.items():
                self.error(f"  {key}: {value}", rule)

    def compare_summary(self, summary: Dict[str, str]):
        """Log the outcome of every rule in a comparison"""
        self.box("COMPARISON SUMMARY", [f"{rule:8s} {status}" for rule, status in summary.items()])

    def close(self):
        """Close per-run and master handlers"""
        with self._handler_lock:
            for handler in self.run_handlers.values():
                handler.close()
            self.run_handlers.clear()
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)


# Global logger instance
_logger: Optional[LabLogger] = None


def get_logger() -> LabLogger:
    """Get the global logger instance"""
    global _logger
    if _logger is None:
        from src.config.config import LoggingConfig
        settings = LoggingConfig.from_env()
        _logger = LabLogger(
            log_to_file=settings.log_to_file,
            log_to_console=settings.log_to_console,
            log_level=settings.log_level,
            enable_detailed=settings.detailed_logging,
            log_dir=settings.log_dir
        )
    return _logger


def init_logger(log_to_file: bool = True, log_to_console: bool = True,
                log_level: str = "INFO", enable_detailed: bool = False,
                log_dir: str = "logs") -> LabLogger:
    """Initialize the global logger"""
    global _logger
    if _logger is not None:
        _logger.close()
    _logger = LabLogger(
        log_to_file=log_to_file,
        log_to_console=log_to_console,
        log_level=log_level,
        enable_detailed=enable_detailed,
        log_dir=log_dir
    )
    return _logger
