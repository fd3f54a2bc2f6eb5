import os
from pathlib import Path

ABS_PATH_OF_TOP_LEVEL_DIR = os.path.abspath(os.path.dirname(Path(__file__)))

LOGGER_NAME = "skh"

CACHE_DIR_ENV_VAR = "SKH_CACHE_DIR"

OUTPUT_SCHEMA_VERSION = 1
