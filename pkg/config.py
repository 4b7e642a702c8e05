"""
Configuration and Environment Variables
"""

import os
from dotenv import load_dotenv
from pathlib import Path

# Load .env file explicitly
env_path = Path(__file__).parent / ".env"
load_dotenv(dotenv_path=env_path, override=False)

# ============ FIELD CONFIG ============
FIELD_CHARACTERISTIC = int(os.getenv("REES_LAB_CHAR", "32003"))
MIN_CHARACTERISTIC = 1000

# ============ RANDOMNESS CONFIG ============
# Every random choice is drawn from a stream derived from this seed
DEFAULT_SEED = int(os.getenv("REES_LAB_SEED", "1"))

# ============ ALGORITHM CONFIG ============
RANK_TRIALS = int(os.getenv("REES_LAB_RANK_TRIALS", "3"))
DEPTH_TRIALS = int(os.getenv("REES_LAB_DEPTH_TRIALS", "5"))
REDUCTION_R_MAX = int(os.getenv("REES_LAB_R_MAX", "10"))
LEVELS_SLACK = int(os.getenv("REES_LAB_LEVEL_SLACK", "3"))
SYMBOLIC_VARIABLE_BUDGET = int(os.getenv("REES_LAB_SYMBOLIC_BUDGET", "3"))
BOURBAKI_RETRIES = int(os.getenv("REES_LAB_BOURBAKI_RETRIES", "5"))
ROW_SEARCH_TRIALS = int(os.getenv("REES_LAB_ROW_SEARCH_TRIALS", "5"))

# ============ LOGGING CONFIG ============
LOG_LEVEL = os.getenv("REES_LAB_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# ============ FIXTURE CONFIG ============
FIXTURES_DIR = Path(os.getenv("REES_LAB_FIXTURES_DIR") or Path(__file__).parent / "fixtures")
MANIFEST_NAME = "manifest.json"

# ============ APP CONFIG ============
APP_VERSION = "1.0.0"
APP_TITLE = "rees-lab"
APP_DESCRIPTION = "Rees algebras, fiber cones, generic Bourbaki ideals and iterated Jacobian duals over GF(p)"
