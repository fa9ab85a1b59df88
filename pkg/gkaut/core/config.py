from pathlib import Path

from pydantic import model_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    OUTPUT_DIR: Path = Path("reports")
    LOG_LEVEL: str = "INFO"

    model_config = {"env_file": ".env", "extra": "ignore", "env_prefix": "GKAUT_"}

    @model_validator(mode="after")
    def normalize_log_level(self) -> "Settings":
        self.LOG_LEVEL = self.LOG_LEVEL.upper()
        return self


settings = Settings()

# Report schema version written into every JSON header
REPORT_SCHEMA = 1

# Largest p^m handled at all (discrete-log tables live in memory)
MAX_FIELD_ORDER = 2**24

# check_s3 runs the Full policy up to this many spread-set members
S3_FULL_LIMIT = 2**20
S3_DEFAULT_SAMPLES = 10**4

# Sampled verification: random elements per (i, form) family
VERIFY_SAMPLE_SIZE = 10**4

# The ansatz sweep is quadratic in p^m
ORACLE_MAX_FIELD_ORDER = 3**6

# Closure / commutation probes in the structure report
STRUCTURE_PAIR_SAMPLES = 10**5
PRODUCT_VERIFY_SAMPLES = 10**4

# Rows per numpy batch in the sweeps
BATCH_SIZE = 4096

DEFAULT_SEED = 0
DEFAULT_THREADS = 1

# Verify every enumerated element when p^m is at most this
VERIFY_FULL_MAX_FIELD_ORDER = 3**6

# Nucleus solution spaces are enumerated element by element
NUCLEUS_MAX_SIZE = 2**16
