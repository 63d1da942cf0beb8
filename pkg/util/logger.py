import os
import logging
from datetime import datetime
from typing import Optional


class RerankLogger:
    """Logger for the reranking toolkit."""

    def __init__(self, log_level: str = 'INFO'):
        """Initialize the logger.

        Args:
            log_level: Level applied to the logger and all of its handlers.
        """
        self.log_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "logs"))
        self.log_level = log_level
        self.log_file: Optional[str] = None

        self.logger = logging.getLogger("rerank")
        self.logger.setLevel(self.log_level)
        # Disable propagation to prevent duplicate log messages from parent loggers
        self.logger.propagate = False

        # Clear existing handlers to prevent duplicates on module reload
        if self.logger.handlers:
            self.logger.handlers.clear()

        self.formatter = logging.Formatter('%(levelname)s - %(message)s')
        console_handler = logging.StreamHandler()
        console_handler.setLevel(self.log_level)
        console_handler.setFormatter(self.formatter)
        self.logger.addHandler(console_handler)

    def set_level(self, log_level: str):
        """Change the level of the logger and every attached handler."""
        self.log_level = log_level.upper()
        self.logger.setLevel(self.log_level)
        for handler in self.logger.handlers:
            handler.setLevel(self.log_level)

    def attach_file(self, command: str) -> str:
        """Attach a timestamped file handler under logs/ and return its path."""
        os.makedirs(self.log_dir, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.log_file = os.path.join(self.log_dir, f"rerank_{command}_{timestamp}.log")
        file_handler = logging.FileHandler(self.log_file)
        file_handler.setLevel(self.log_level)
        file_handler.setFormatter(self.formatter)
        self.logger.addHandler(file_handler)
        return self.log_file

    def debug(self, message: str):
        """Log a debug message."""
        self.logger.debug(message)

    def info(self, message: str):
        """Log an info message."""
        self.logger.info(message)

    def warning(self, message: str):
        """Log a warning message."""
        self.logger.warning(message)

    def error(self, message: str):
        """Log an error message."""
        self.logger.error(message)

    def log_run_stats(self, instance_id: str, policy: str, stats):
        """Log the summary statistics of a batch of simulations."""
        msg = (f"Instance: {instance_id} | Policy: {policy} | Trials: {stats.trials} | "
               f"Mean: {stats.mean:.6f} | SE: {stats.se:.6f} | Min: {stats.min:.4f} | Max: {stats.max:.4f}")
        self.info(msg)

    def log_offline(self, instance_id: str, result):
        """Log an offline benchmark result."""
        self.info(f"Instance: {instance_id} | Offline: {result.method} | Status: {result.status} | Value: {result.value}")

    def log_audit(self, report):
        """Log one edge of a dual certificate audit."""
        msg = (f"Edge ({report.resource}, {report.arrival}) | N: {report.samples} | Mean: {report.mean:.6f} | "
               f"SE: {report.se:.6f} | Target: {report.target:.6f} | Verdict: {report.verdict}")
        if report.verdict == "pass":
            self.debug(msg)
        else:
            self.warning(msg)

    def log_bound(self, report):
        """Log the minimum of the bound function for one beta."""
        self.info(f"Beta: {report.beta} | Grid: {report.grid} | Minimum: {report.minimum:.6f} | "
                  f"Minimizer: ({report.z1:.4f}, {report.z2:.4f}, {report.x:.4f}) | Source: {report.source}")

    def log_violation(self, violation):
        """Log a structural property violation together with its replay seeds."""
        self.error(f"Violation: {violation.check} | y1: {violation.y1} | y2: {violation.y2} | {violation.detail}")


# Create a global logger instance
logger = RerankLogger()
