"""
Configuration management using Pydantic settings.
Loads configuration from environment variables.
"""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Module-level defaults shared by core functions that take explicit parameters
DEFAULT_MAX_LETTERS = 2**27
DEFAULT_N_MAX = 16
DEFAULT_TOLERANCE = 1e-9


class FibernormConfig(BaseSettings):
    """
    Configuration loaded from environment variables with FIBERNORM_ prefix.

    Core functions never read this object; the CLI and the MCP lifespan
    pass its values down as explicit arguments.

    Example .env file:
        FIBERNORM_DB=/srv/fibernorm/fibrations.json
        FIBERNORM_MAX_LETTERS=134217728
        FIBERNORM_N_MAX=16
        FIBERNORM_SEED=0
    """
    model_config = SettingsConfigDict(
        env_prefix='FIBERNORM_',
        env_file='.env',
        env_file_encoding='utf-8',
        extra='ignore'
    )

    # Default database file; None means "generate a metadata database"
    db: Path | None = None

    # Resource budget for every word computation
    max_letters: int = Field(default=DEFAULT_MAX_LETTERS, gt=0)

    # Exponent search cap for Bob and the eavesdropper
    n_max: int = Field(default=DEFAULT_N_MAX, ge=1)

    seed: int = 0
    tolerance: float = Field(default=DEFAULT_TOLERANCE, gt=0)

    # Channel shaping
    decoy_total: int = Field(default=50, ge=2)
    obfuscate: bool = True
    obfuscation_blowup: float = Field(default=2.0, ge=1.0)

    # Size of the generated database when no file is configured
    default_db_max_a: int = Field(default=8, ge=1)

    workers: int = Field(default=1, ge=1)

    @property
    def database_path(self) -> Path | None:
        """Resolved database path, or None when no file is configured."""
        if self.db is None:
            return None
        return self.db.expanduser().resolve()

    @property
    def has_database_file(self) -> bool:
        """True when a database file is configured and exists."""
        path = self.database_path
        return path is not None and path.is_file()


# Singleton instance
_config: FibernormConfig | None = None


def get_config() -> FibernormConfig:
    """Get or create config singleton."""
    global _config
    if _config is None:
        _config = FibernormConfig()
    return _config


def reset_config() -> None:
    """Drop the cached singleton so the next get_config() re-reads the environment."""
    global _config
    _config = None
