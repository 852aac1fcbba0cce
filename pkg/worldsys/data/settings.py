import os
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[2]

DATA_DIR = Path(os.getenv("WORLDSYS_DATA_DIR", str(PROJECT_ROOT / "data")))
DEFAULT_DATASET = os.getenv("WORLDSYS_DATASET", "maddison_world_1_1973.csv")
EXTENDED_DATASET = os.getenv("WORLDSYS_EXTENDED_DATASET", "maddison_world_1_2002.csv")
LOG_LEVEL = os.getenv("WORLDSYS_LOG_LEVEL", "INFO").upper()
MAX_WORKERS = int(os.getenv("WORLDSYS_MAX_WORKERS", "4"))

# Subsistence-plus-infrastructure threshold, 1990 international dollars
DEFAULT_M = 440.0


def default_dataset_path() -> Path:
    return DATA_DIR / DEFAULT_DATASET


def extended_dataset_path() -> Path:
    return DATA_DIR / EXTENDED_DATASET
