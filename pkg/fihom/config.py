"""Configuration management using Pydantic Settings."""

from __future__ import annotations

from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Defaults(BaseModel):
    """Computational defaults, overridable per CLI invocation."""

    model_config = ConfigDict(frozen=True)

    truncation: int = Field(default=8, ge=1, le=16, description="Largest degree represented")
    p_max: int = Field(default=3, ge=0, le=8, description="Largest homological degree")
    a_max: int = Field(default=4, ge=1, le=8, description="Largest derivative order")
    ring: Literal["Z", "Q"] = Field(default="Z", description="Coefficient ring")

    # Randomized corpus for verify-props
    corpus_size: int = Field(default=50, ge=1, description="Modules per corpus suite")
    corpus_seed: int = Field(default=0, description="Seed of the corpus generator")

    # Catalan verification envelope
    catalan_d_max: int = Field(default=3, ge=0, description="Largest source size d")
    catalan_b_max: int = Field(default=3, ge=1, description="Largest Catalan parameter b")
    catalan_n_max: int = Field(default=8, ge=1, description="Largest target size n")


class Settings(BaseSettings):
    """Process configuration.

    Only the worker count is read from the environment (``FIHOM_WORKERS``);
    everything else is a fixed default in ``defaults``.
    """

    model_config = SettingsConfigDict(
        env_prefix="FIHOM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    workers: int = Field(
        default=1,
        ge=1,
        le=64,
        description="Threads used for independent per-degree computations",
    )

    @property
    def defaults(self) -> Defaults:
        return Defaults()


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance.

    Use this function to access settings throughout the application.
    Settings are loaded once and cached for performance.
    """
    return Settings()
