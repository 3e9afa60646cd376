import logging
import sys
from typing import Dict, Optional
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

try:
    from rich.console import Console
    from rich.logging import RichHandler
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False


# Shared log file, created at most once per process
_log_file_path: Optional[Path] = None

_LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'warn': logging.WARNING,
    'error': logging.ERROR,
}


@dataclass
class LogConfig:
    """Configuration for logging system"""
    level: str = "warning"
    log_dir: Optional[str] = None


class StructuredLogger:
    """Wrapper for Rich logging functionality with fallback to standard logging.

    Messages carry keyword fields rendered as ``message [key=value, ...]`` so
    that sweep and solver runs can be grepped by parameter. Console output always
    goes to stderr; stdout is reserved for CSV.
    """

    def __init__(self, component: str, level: str = "warning", log_dir: Optional[str] = None):
        self.component = component
        self.level = level.lower()
        self.log_dir = log_dir
        self._logger = logging.getLogger(self.component)
        self._configure()

    def _file_handler(self, log_dir: str) -> logging.FileHandler:
        """Get a handler on the shared run log file"""
        global _log_file_path

        if _log_file_path is None:
            directory = Path(log_dir)
            directory.mkdir(parents=True, exist_ok=True)
            timestamp = datetime.now().strftime('%Y-%m-%d_%H-%M-%S')
            _log_file_path = directory / f"run_{timestamp}.log"

        file_handler = logging.FileHandler(_log_file_path, encoding='utf-8')
        file_handler.setFormatter(logging.Formatter(
            fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        ))
        return file_handler

    def _configure(self):
        """Attach console (and optional file) handlers once per logger"""
        self._logger.setLevel(_LEVELS.get(self.level, logging.WARNING))
        self._logger.propagate = False

        if not any(getattr(h, '_geophase_console', False) for h in self._logger.handlers):
            if RICH_AVAILABLE:
                handler = RichHandler(
                    console=Console(stderr=True),
                    show_time=True,
                    show_path=False,
                    markup=False,
                    rich_tracebacks=True,
                )
                handler.setFormatter(logging.Formatter(fmt="%(message)s"))
            else:
                handler = logging.StreamHandler(sys.stderr)
                handler.setFormatter(logging.Formatter(
                    fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
                ))
            handler._geophase_console = True
            self._logger.addHandler(handler)

        if self.log_dir and not any(isinstance(h, logging.FileHandler) for h in self._logger.handlers):
            self._logger.addHandler(self._file_handler(self.log_dir))

    def _format_message(self, message: str, **kwargs) -> str:
        """Append keyword fields to the message"""
        if not kwargs:
            return message
        field_parts = [f"{key}={value}" for key, value in kwargs.items()]
        return f"{message} [{', '.join(field_parts)}]"

    def debug(self, message: str, **kwargs):
        """Log debug message"""
        if self._logger.isEnabledFor(logging.DEBUG):
            self._logger.debug(self._format_message(message, **kwargs))

    def info(self, message: str, **kwargs):
        """Log info message"""
        self._logger.info(self._format_message(message, **kwargs))

    def warn(self, message: str, **kwargs):
        """Log warning message"""
        self._logger.warning(self._format_message(message, **kwargs))

    def warning(self, message: str, **kwargs):
        """Alias for warn to maintain compatibility"""
        self.warn(message, **kwargs)

    def error(self, message: str, **kwargs):
        """Log error message"""
        self._logger.error(self._format_message(message, **kwargs))


class LoggerFactory:
    """Factory for creating configured loggers"""

    _global_config: LogConfig = LogConfig()
    _loggers: Dict[str, StructuredLogger] = {}

    @classmethod
    def configure_global_logger(cls, config: LogConfig):
        """Configure global logger settings and re-apply them to existing loggers"""
        cls._global_config = config
        for logger in cls._loggers.values():
            logger.level = config.level
            logger.log_dir = config.log_dir
            logger._configure()

    @classmethod
    def create_logger(cls, component: str) -> StructuredLogger:
        """Create or retrieve a logger for the given component"""
        if component in cls._loggers:
            return cls._loggers[component]

        config = cls._global_config
        logger = StructuredLogger(component, config.level, config.log_dir)
        cls._loggers[component] = logger
        return logger


def setup_logging(level: str = "warning", log_dir: Optional[str] = None) -> StructuredLogger:
    """Setup logging configuration for a CLI run"""
    config = LogConfig(level=level.lower(), log_dir=log_dir)
    LoggerFactory.configure_global_logger(config)
    return LoggerFactory.create_logger(__name__)
