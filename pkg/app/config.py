"""
Configuration for the Turbofan Cycle Toolkit
"""

from pydantic_settings import BaseSettings
from pydantic import field_validator

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """Application settings"""

    # Tool Info
    TOOL_NAME: str = "turbofan-cycle"
    TOOL_VERSION: str = "1.0.0"

    # Directory searched for bare config names and for fuels.yaml
    CYCLE_CONFIG_DIR: str = "config"

    # Run defaults (overridden by --jobs / --format / --seed)
    DEFAULT_JOBS: int = 1
    DEFAULT_OUTPUT_FORMAT: str = "json"
    DEFAULT_SEED: int = 42

    # Logging
    LOG_LEVEL: str = "INFO"

    @field_validator('LOG_LEVEL', mode='before')
    @classmethod
    def normalize_log_level(cls, v):
        """Accept lower-case level names from the environment"""
        level = str(v).strip().upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {v}")
        return level

    @field_validator('DEFAULT_OUTPUT_FORMAT', mode='before')
    @classmethod
    def parse_output_format(cls, v):
        """Only csv and json writers exist"""
        if isinstance(v, str):
            v = v.strip().lower()
            if v not in ("csv", "json"):
                raise ValueError(f"DEFAULT_OUTPUT_FORMAT must be csv or json, got {v}")
        return v

    @field_validator('DEFAULT_JOBS')
    @classmethod
    def check_jobs(cls, v):
        if v < 1:
            raise ValueError("DEFAULT_JOBS must be at least 1")
        return v

    model_config = {"env_file": ".env", "case_sensitive": True, "extra": "ignore"}


# Global settings instance
settings = Settings()
