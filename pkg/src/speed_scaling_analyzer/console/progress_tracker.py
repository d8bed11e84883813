"""Progress bars and user messages for sweeps over instances and policies."""

import logging
import sys
import time
from contextlib import contextmanager
from typing import Iterator, Optional

from tqdm import tqdm


class ProgressTracker:
    """Shows a tqdm bar while a sweep runs and prints messages around it.

    Bars are drawn on stderr and only when it is a terminal, so piped output
    stays clean.
    """

    def __init__(self, enabled: bool = True, verbose: bool = False):
        """Initialize the progress tracker.

        Args:
            enabled: Whether bars and messages are shown at all.
            verbose: Whether to log timings.
        """
        self.enabled = enabled
        self.verbose = verbose
        self.logger = logging.getLogger(self.__class__.__name__)
        self._bar: Optional[tqdm] = None
        self._start_time = 0.0

    def start(self, total: int, description: str = "Running", unit: str = "runs") -> Optional[tqdm]:
        if not self.enabled:
            return None
        self._start_time = time.time()
        self._bar = tqdm(
            total=total,
            desc=description,
            unit=unit,
            disable=not sys.stderr.isatty(),
            leave=False,
            ncols=80,
            file=sys.stderr,
        )
        return self._bar

    def update(self, n: int = 1, status: str = "") -> None:
        if self._bar is not None:
            if status:
                self._bar.set_postfix_str(status, refresh=False)
            self._bar.update(n)

    def finish(self) -> float:
        """Close the bar and return the elapsed seconds."""
        if self._bar is not None:
            self._bar.close()
            self._bar = None
        elapsed = time.time() - self._start_time if self._start_time else 0.0
        self._start_time = 0.0
        if self.verbose:
            self.logger.debug(f"Operation completed in {elapsed:.2f} seconds")
        return elapsed

    @contextmanager
    def track(self, total: int, description: str = "Running", unit: str = "runs") -> Iterator["ProgressTracker"]:
        """Context manager around start/finish; yields the tracker itself."""
        self.start(total, description, unit)
        try:
            yield self
        finally:
            self.finish()

    def show_message(self, message: str, level: str = "info") -> None:
        """Print a message for the user without breaking the bar.

        Args:
            message: Text to print.
            level: "info", "warning" or "error"; errors go to stderr.
        """
        if not self.enabled and level != "error":
            return
        prefix = {"warning": "warning: ", "error": "error: "}.get(level, "")
        stream = sys.stderr if level == "error" else sys.stdout
        if self._bar is not None:
            tqdm.write(prefix + message, file=stream)
        else:
            print(prefix + message, file=stream)
