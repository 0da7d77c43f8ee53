"""
fuscat Configuration Constants
"""

import os

from dotenv import load_dotenv

load_dotenv()

# App metadata
APP_VERSION = "0.1.0"
APP_TITLE = "fuscat: rank-4 based rings with two self-dual basis elements"
APP_DESCRIPTION = "Exact verification and categorification obstructions for rank-4 based rings"

# Logging
LOG_LEVEL = os.getenv("FUSCAT_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Parallelism (None = available parallelism)
_workers_env = os.getenv("FUSCAT_WORKERS")
DEFAULT_WORKERS = int(_workers_env) if _workers_env else None

# Exact arithmetic
INTERVAL_PRECISION_BITS = 256

# Basis convention for rank 4 with two self-dual elements: (1, X, Y, Z), X* = Z
RANK4_LABELS = ("1", "X", "Y", "Z")
RANK4_DUAL = (0, 3, 2, 1)

# Classification box for R(x, y, g, d)
DEFAULT_BOX = {
    "xmax": 3,
    "ymax": 3,
    "gmax": 6,
    "dmax": 40,
}

# Brute-force oracle budgets
DEFAULT_MAX_ORDER = 48
DEFAULT_MAX_COUNT = 8

# Obstruction scans
DEFAULT_MAX_E = 60
DEFAULT_MAX_C = 40

# Twist searches: cube roots for the K1 center, fourth roots for the K2 center
K1_TWIST_ORDER = 6
K2_TWIST_ORDER = 4

# Survivor sets claimed for the two families
EXPECTED_SURVIVORS = {
    "k1": (0, 2, 3, 6),
    "k2": (0, 1, 2),
}

# Integer codegree quadruples with a repeated value and reciprocal sum 1
EXPECTED_CODEGREE_TUPLES = {
    (12, 12, 3, 2),
    (8, 8, 4, 2),
    (10, 5, 5, 2),
    (6, 6, 6, 2),
    (6, 6, 3, 3),
    (6, 4, 4, 3),
    (12, 4, 3, 3),
    (4, 4, 4, 4),
}

# gamma = 8 exclusion: det A coefficients (lowest degree first) and the integer codegree product it must avoid
GAMMA8_DET_COEFFS = (512, 1024, 4608)
GAMMA8_DET_TARGET = 8 * 8 * 4 * 2
GAMMA8_SCAN_RANGE = 100

# Exit codes
EXIT_CODES = {
    "ok": 0,
    "usage": 1,
    "verification_failure": 2,
    "claim_mismatch": 3,
    "budget_exceeded": 4,
}

# Report formats
OUTPUT_FORMATS = ["text", "json", "csv"]
DEFAULT_FORMAT = "text"

# Streamlit page config
PAGE_CONFIG = {
    "page_title": "fuscat",
    "page_icon": "🧮",
    "layout": "wide",
    "initial_sidebar_state": "expanded",
}
