"""Runtime configuration read from OODD_* environment variables"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class OoddSettings(BaseSettings):
    """Tunables for the iteration guards, batch sizes and the measure check.

    Every field can be overridden with an environment variable named
    OODD_<FIELD>, e.g. ``OODD_THREADS=8``.
    """

    model_config = SettingsConfigDict(env_prefix="OODD_", extra="ignore")

    threads: int = Field(default=4, ge=1)
    jump_cap: int = Field(default=10**6, ge=1)
    period_cap: int = Field(default=10**5, ge=1)
    max_digits: int = Field(default=64, ge=0)
    measure_k: int = Field(default=2000, ge=1)
    measure_tol: float = Field(default=5e-3, gt=0)
    den_max: int = Field(default=9, ge=1)


@lru_cache(maxsize=1)
def get_settings():
    """Load settings once per process.

    Returns:
        OoddSettings: The active configuration
    """
    return OoddSettings()
