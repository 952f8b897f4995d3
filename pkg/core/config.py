"""
Centralized Configuration Management

This module provides a singleton configuration manager that reads
environment variables from .env file with sensible defaults, plus the
pinned sdTr arrangement from the calibration file.
"""

import os
from pathlib import Path
from typing import Any

from dotenv import dotenv_values, load_dotenv, set_key

CALIBRATION_KEY = "SDTR_ARRANGEMENT"
DEFAULT_CALIBRATION_PATH = (
    Path(__file__).resolve().parent.parent / "calibration.env"
)


class AppConfig:
    """
    Centralized numerical and CLI configuration singleton.

    Reads configuration from environment variables with sensible defaults.
    Should be initialized once, before any algebra is evaluated.
    """

    _instance: "AppConfig | None" = None
    _initialized: bool = False

    def __new__(cls) -> "AppConfig":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        if not self._initialized:
            self._load_environment()
            self._load_config()
            self._initialized = True

    def _load_environment(self) -> None:
        """Load environment variables from .env file if it exists."""
        load_dotenv()

    def _load_config(self) -> None:
        """Load all configuration values with defaults."""
        # Grassmann kernel
        self.zero_threshold: float = float(
            os.getenv("SUPERQ_ZERO_THRESHOLD", "1e-14")
        )
        self.det_size_cap: int = int(os.getenv("SUPERQ_DET_SIZE_CAP", "6"))

        # Series evaluation (exp / log of supermatrices)
        self.exp_term_cap: int = int(os.getenv("SUPERQ_EXP_TERM_CAP", "64"))
        self.exp_term_tolerance: float = float(
            os.getenv("SUPERQ_EXP_TERM_TOL", "1e-13")
        )

        # Tolerances
        self.default_tolerance: float = float(
            os.getenv("SUPERQ_TOL", "1e-10")
        )
        self.normalization_tolerance: float = float(
            os.getenv("SUPERQ_NORM_TOL", "1e-9")
        )

        # CLI
        self.log_level: str = os.getenv("SUPERQ_LOG_LEVEL", "WARNING")
        self.calibration_path: Path = Path(
            os.getenv("SUPERQ_CONFIG", str(DEFAULT_CALIBRATION_PATH))
        )

    @property
    def sdtr_arrangement(self) -> str | None:
        """Arrangement id pinned in the calibration file, if any."""
        if not self.calibration_path.is_file():
            return None
        values = dotenv_values(self.calibration_path)
        return values.get(CALIBRATION_KEY) or None

    def pin_sdtr_arrangement(
        self, arrangement: str, path: Path | None = None
    ) -> Path:
        """Write the arrangement id to the calibration file."""
        target = Path(path) if path is not None else self.calibration_path
        target.parent.mkdir(parents=True, exist_ok=True)
        target.touch(exist_ok=True)
        set_key(str(target), CALIBRATION_KEY, arrangement, quote_mode="never")
        return target

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by key."""
        return getattr(self, key, default)

    def set(self, key: str, value: Any) -> None:
        """Set configuration value by key."""
        setattr(self, key, value)

    def validate_required(self) -> None:
        """Validate that the numerical settings are usable."""
        problems = []
        if not 0.0 <= self.zero_threshold < 1e-6:
            problems.append("SUPERQ_ZERO_THRESHOLD")
        if self.det_size_cap < 1:
            problems.append("SUPERQ_DET_SIZE_CAP")
        if self.exp_term_cap < 2:
            problems.append("SUPERQ_EXP_TERM_CAP")

        if problems:
            raise ValueError(
                f"Invalid configuration values: {', '.join(problems)}"
            )


# Global config instance
_config: AppConfig | None = None


def get_config() -> AppConfig:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = AppConfig()
    return _config


def reset_config() -> None:
    """Reset the global configuration (useful for testing)."""
    global _config
    _config = None
    AppConfig._instance = None
    AppConfig._initialized = False
