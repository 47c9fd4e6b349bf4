"""
Configuration settings for liefol.
Contains paths, numeric constants and configurable parameters.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# === Paths ===
BASE_DIR = Path(__file__).parent

# JSON-lines event logs are written only when a directory is configured
_log_dir = os.getenv("LIEFOL_LOG_DIR")
LOG_DIR = Path(_log_dir) if _log_dir else None
EVENT_LOG_FILE = "events.log"
ERROR_LOG_FILE = "errors.log"
LOG_LEVEL = os.getenv("LIEFOL_LOG_LEVEL", "WARNING").upper()

# === Arithmetic ===
# approx-mode tolerance is TOLERANCE_SCALE * (1 + max |c|)
TOLERANCE_SCALE = float(os.getenv("LIEFOL_TOLERANCE_SCALE", "1e-9"))

# === Random draws ===
DEFAULT_SEED = int(os.getenv("LIEFOL_SEED", "0"))
DEFAULT_SAMPLES = int(os.getenv("LIEFOL_SAMPLES", "100"))
PARAMETER_BOUND = 9  # numerators and denominators lie in [-9, 9]
MAX_REJECTIONS = 1000
SWEEP_WORKERS = int(os.getenv("LIEFOL_WORKERS", "1"))

# === Frames ===
FRAME_LABELS_4D = ("X", "Y", "Z", "W")
VERTICAL_4D = (2, 3)

# === CLI exit codes ===
EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2

# === API Configuration ===
API_TITLE = "liefol API"
API_VERSION = "1.0.0"
API_HOST = os.getenv("LIEFOL_API_HOST", "127.0.0.1")
API_PORT = int(os.getenv("LIEFOL_API_PORT", "8000"))
