"""Run logging utilities for capturing Monte Carlo run output."""

import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from src.shared.errors import ReportError


class RunLogger:
    """Logger for capturing one Monte Carlo run's output to a JSON file."""

    def __init__(self, scenario_name: str, run: int, output_path: Path) -> None:
        """
        Initialize run logger.

        Args:
            scenario_name: Scenario being run
            run: Monte Carlo run index
            output_path: Experiment output directory; logs go to its runs/ folder
        """
        self.scenario_name = scenario_name
        self.run = run
        self.started_at = datetime.now(timezone.utc)
        self.logs: list[dict[str, Any]] = []
        self.diagnostics: list[dict[str, Any]] = []
        self.runs_path = output_path / "runs"

    def log(self, level: str, message: str, **kwargs: Any) -> None:
        """
        Add a log entry.

        Args:
            level: Log level (INFO, WARNING, ERROR, etc.)
            message: Log message
            **kwargs: Additional context to include
        """
        entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": level,
            "message": message,
            **kwargs,
        }
        self.logs.append(entry)

    def info(self, message: str, **kwargs: Any) -> None:
        """Log info message."""
        self.log("INFO", message, **kwargs)

    def warning(self, message: str, **kwargs: Any) -> None:
        """Log warning message."""
        self.log("WARNING", message, **kwargs)

    def error(self, message: str, **kwargs: Any) -> None:
        """Log error message."""
        self.log("ERROR", message, **kwargs)

    def exception(self, message: str, exc: Exception) -> None:
        """Log exception."""
        self.log(
            "ERROR",
            message,
            exception=str(exc),
            exception_type=type(exc).__name__,
        )

    def iteration(
        self, method: str, time_step: int, iteration: int, **values: Any
    ) -> None:
        """Record per-iteration diagnostics (ELBO, disagreement, GOSPA)."""
        self.diagnostics.append(
            {"method": method, "time_step": time_step, "iteration": iteration, **values}
        )

    def save(self, success: bool, failures: int = 0) -> Path:
        """
        Save the log file.

        Args:
            success: Whether every method finished
            failures: Number of methods that failed in this run

        Returns:
            Path to the saved log file
        """
        completed_at = datetime.now(timezone.utc)
        log_file = self.runs_path / f"run_{self.run:03d}.json"

        log_data = {
            "scenario": self.scenario_name,
            "run": self.run,
            "started_at": self.started_at.isoformat(),
            "completed_at": completed_at.isoformat(),
            "duration_seconds": (completed_at - self.started_at).total_seconds(),
            "success": success,
            "failures": failures,
            "logs": self.logs,
            "diagnostics": self.diagnostics,
        }

        try:
            self.runs_path.mkdir(parents=True, exist_ok=True)
            with open(log_file, "w") as f:
                json.dump(log_data, f, indent=2)
        except OSError as e:
            raise ReportError(f"failed to write run log ({e})", log_file) from e

        return log_file


class RunLogHandler(logging.Handler):
    """Logging handler that captures logs to RunLogger."""

    def __init__(self, run_logger: RunLogger) -> None:
        """
        Initialize handler.

        Args:
            run_logger: RunLogger instance to write to
        """
        super().__init__()
        self.run_logger = run_logger

    def emit(self, record: logging.LogRecord) -> None:
        """Emit a log record."""
        try:
            msg = self.format(record)
            self.run_logger.log(
                record.levelname,
                msg,
                logger=record.name,
            )
        except Exception:
            self.handleError(record)
