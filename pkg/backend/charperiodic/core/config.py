from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# backend/charperiodic/core/config.py -> project root is four levels up
PROJECT_ROOT = Path(__file__).parent.parent.parent.parent
ENV_FILE = PROJECT_ROOT / ".env"


class Settings(BaseSettings):
    """Numerical defaults and runtime settings"""

    # Application
    APP_NAME: str = "charperiodic"
    APP_VERSION: str = "0.1.0"
    LOG_LEVEL: str = "INFO"

    # Problem validation
    EPS_A: float = Field(default=1e-6, gt=0)
    VALIDATION_SAMPLES: int = Field(default=64, ge=2)
    PERIODICITY_TOL: float = 1e-12

    # Characteristics
    ODE_STEPS: int = Field(default=512, ge=2)
    FD_STEP: float = Field(default=1e-6, gt=0)

    # Discretization
    GRID_NX: int = Field(default=64, ge=1)
    GRID_NT: int = Field(default=64, ge=4)
    DISSIPATIVITY_GRID: int = Field(default=128, ge=16)

    # Solvers
    TOL: float = Field(default=1e-8, gt=0)
    MAX_OUTER: int = Field(default=200, ge=1)
    MAX_INNER: int = Field(default=500, ge=1)
    ASSEMBLY_CAP: int = Field(default=20000, ge=1)
    KERNEL_THRESHOLD: float = Field(default=1e-6, gt=0)
    SINGULAR_PIVOT_TOL: float = Field(default=1e-10, gt=0)

    # Manufactured solutions
    BC_TOL: float = 1e-8

    # Parallelism (0 = one worker per CPU)
    THREADS: int = Field(default=0, ge=0)
    CHUNK_SIZE: int = Field(default=1024, ge=1)

    model_config = SettingsConfigDict(
        env_file=str(ENV_FILE),
        env_file_encoding="utf-8",
        env_prefix="CHARPERIODIC_",
        case_sensitive=True,
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
