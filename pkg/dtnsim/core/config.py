"""
Process-level configuration loaded from environment variables.
Uses pydantic-settings for validation and type coercion.

Per-run parameters live in scenario files; these settings only cover
how the tool itself behaves (logging, output location, parallelism).
"""
from functools import lru_cache

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # -- App --
    LOG_LEVEL: str = "INFO"
    OUTPUT_DIR: str = "out"

    # -- Sweeps --
    SWEEP_WORKERS: int = 1  # 1 = run sequentially in-process

    # -- Mobility --
    LEG_RETRIES: int = 10  # destination redraws before staying put for a leg

    # -- Synthetic maps --
    GENMAP_JITTER: float = 0.0  # fraction of grid spacing; 0 reproduces bundled maps

    # -- Optional traces --
    CONTACT_TRACE: bool = False
    EVENTS_TRACE: bool = False

    model_config = {
        "env_prefix": "DTNSIM_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": True,
    }


@lru_cache()
def get_settings() -> Settings:
    """Cached settings singleton."""
    return Settings()
