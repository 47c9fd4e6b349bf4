"""
Centralized Structured Logging Module
Provides JSON-lines event logging for checks, classifications and sweeps.
"""

import json
import logging
import sys
import time
import uuid
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from liefol import config

# Diagnostics go to stderr; reports are written to stdout by the CLI
logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


class StructuredLogger:
    """
    Structured JSON logger for library and CLI events.
    With no log directory configured, events are emitted at DEBUG level instead.
    """

    def __init__(self, log_dir: Optional[Path] = None):
        self.log_dir = log_dir
        self.session_id = str(uuid.uuid4())[:8]

    def _append(self, filename: str, entry: Dict[str, Any]):
        self.log_dir.mkdir(parents=True, exist_ok=True)
        with open(self.log_dir / filename, 'a', encoding='utf-8') as f:
            f.write(json.dumps(entry, default=str) + '\n')
            f.flush()

    def log_event(
        self,
        event_type: str,
        data: Dict[str, Any],
        session_id: Optional[str] = None
    ):
        """
        Log a structured event.

        Args:
            event_type: Type of event (e.g., 'check', 'classify', 'sweep', 'error')
            data: Event-specific data dictionary
            session_id: Optional session identifier
        """
        entry = {
            'timestamp': datetime.now(timezone.utc).isoformat(),
            'event_type': event_type,
            'session_id': session_id or self.session_id,
            **data
        }
        if self.log_dir is None:
            logger.debug("%s", json.dumps(entry, default=str))
            return
        try:
            self._append(config.EVENT_LOG_FILE, entry)
        except Exception as e:
            # Logging failure should never break a command
            logger.error(f"Structured logging failed: {e}")

    def log_check(
        self,
        dim: int,
        valid: bool,
        predicates: Optional[Dict[str, bool]],
        response_time: float,
        status: str = 'success'
    ):
        """Log a check of one algebra"""
        self.log_event('check', {
            'dim': dim,
            'valid': valid,
            'predicates': predicates or {},
            'response_time_ms': round(response_time * 1000, 2),
            'status': status
        })

    def log_classify(
        self,
        case: Optional[str],
        family: Optional[str],
        swapped: bool,
        exact: bool,
        response_time: float,
        status: str = 'success'
    ):
        """Log a classification request"""
        self.log_event('classify', {
            'case': case,
            'family': family,
            'swapped': swapped,
            'exact': exact,
            'response_time_ms': round(response_time * 1000, 2),
            'status': status
        })

    def log_family(self, family: str, parameters: Dict[str, str]):
        """Log a family instantiation"""
        self.log_event('family', {'family': family, 'parameters': parameters})

    def log_series(self, kind: str, size: int, k: Optional[int]):
        """Log a series construction"""
        self.log_event('series', {'kind': kind, 'size': size, 'k': k})

    def log_sweep(
        self,
        families: List[str],
        samples: int,
        seed: int,
        failures: int,
        response_time: float
    ):
        """Log a randomized sweep summary"""
        self.log_event('sweep', {
            'families': families,
            'samples': samples,
            'seed': seed,
            'failures': failures,
            'response_time_ms': round(response_time * 1000, 2)
        })

    def log_error(
        self,
        error_type: str,
        error_message: str,
        context: Optional[Dict] = None
    ):
        """Log an error event"""
        data = {
            'error_type': error_type,
            'error_message': str(error_message),
            'context': context or {}
        }
        self.log_event('error', data)

        if self.log_dir is None:
            return
        try:
            self._append(config.ERROR_LOG_FILE, {
                'timestamp': datetime.now(timezone.utc).isoformat(),
                'session_id': self.session_id,
                **data
            })
        except Exception as e:
            logger.error(f"Error log write failed: {e}")


@contextmanager
def log_request_timing(operation: str):
    """
    Context manager for timing operations.

    Usage:
        with log_request_timing('classify') as timer:
            ...
        elapsed = timer.elapsed
    """
    timer = _Timer()
    try:
        yield timer
    finally:
        timer.elapsed = time.perf_counter() - timer.start
        logger.debug(f"{operation} completed in {timer.elapsed * 1000:.2f}ms")


class _Timer:
    def __init__(self):
        self.start = time.perf_counter()
        self.elapsed = 0.0


# Global logger instance
app_logger = StructuredLogger(config.LOG_DIR)


def get_logger() -> StructuredLogger:
    """Get the global structured logger instance"""
    return app_logger
