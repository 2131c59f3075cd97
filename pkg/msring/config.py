"""
Runtime configuration for msring.

Values come from the environment, after an optional env file has been
loaded with python-dotenv. Nothing already set in the environment is
overridden by the file.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent
ENV_FILE = Path(os.environ.get("MSRING_ENV_FILE", str(BASE_DIR / ".env.local")))
if ENV_FILE.exists():
    load_dotenv(ENV_FILE, override=False)

VERBOSE = os.environ.get("MSRING_VERBOSE", "0").strip().lower() in {"1", "true", "yes", "on"}
DEFAULT_SEED = int(os.environ.get("MSRING_SEED", "20240607"))
DEFAULT_PARALLEL = max(1, int(os.environ.get("MSRING_PARALLEL", "1")))

# Census enumerates 2^dim forms; rank 5 is the last size the solution space iterator accepts.
CENSUS_RANK_CEILING = 5
MAX_CENSUS_RANK = min(CENSUS_RANK_CEILING, int(os.environ.get("MSRING_MAX_CENSUS_RANK", "4")))
MAX_CANONICAL_RANK = int(os.environ.get("MSRING_MAX_CANONICAL_RANK", "4"))


def set_verbose(enabled: bool) -> None:
    global VERBOSE
    VERBOSE = bool(enabled)


def log(tag: str, message: str, *, force: bool = False) -> None:
    """Print a tagged progress line to stderr, e.g. ``[census] rho=3 classes=12``."""
    if VERBOSE or force:
        print(f"[{tag}] {message}", file=sys.stderr)
