from contextvars import ContextVar
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type

from pydantic import BaseModel, ConfigDict, Field, SecretStr, model_validator
from pydantic_settings import (
    BaseSettings,
    JsonConfigSettingsSource,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from src.errors import MissingArtifactError
from src.logger import get_logger

# Set up logger for this module
logger = get_logger()


class ChatMode(str, Enum):
    LIVE = "live"
    RECORD = "record"
    REPLAY = "replay"


class ParseMode(str, Enum):
    STRICT = "strict"
    LOOSE = "loose"


class EmbedProvider(str, Enum):
    HASH = "hash"
    REMOTE = "remote"


class RetrievalConfig(BaseModel):
    """Every retrieval knob the three answer methods share."""

    model_config = ConfigDict(frozen=True)

    k_seeds: int = Field(10, ge=1, description="Top-k entity seeds")
    k_chunks: int = Field(5, ge=1, description="Top-k text chunks")
    m_hops: int = Field(2, ge=0, description="Expansion radius around the seeds")
    chunk_size: int = Field(600, ge=1, description="Chunk length in characters")
    chunk_overlap: int = Field(100, ge=0, description="Overlap between chunks")
    prompt_budget: int = Field(8000, ge=1, description="Max prompt characters")
    context_budget: int = Field(6000, ge=1, description="Max context characters")
    leaf_budget: int = Field(400, ge=1, description="Leaf summary characters")
    parent_budget: int = Field(600, ge=1, description="Parent summary characters")
    leiden_resolution: float = Field(1.0, gt=0.0)
    rng_seed: int = Field(0, ge=0)

    @model_validator(mode="after")
    def check_overlap(self) -> "RetrievalConfig":
        if self.chunk_overlap >= self.chunk_size:
            raise ValueError(
                f"chunk_overlap ({self.chunk_overlap}) must be smaller than "
                f"chunk_size ({self.chunk_size})"
            )
        return self


# Settings context var holds the active file path between init_settings() and
# settings_customise_sources(), which pydantic-settings calls as a classmethod.
_config_file_ctx: ContextVar[Optional[Path]] = ContextVar("config_file", default=None)


class Settings(BaseSettings):
    # Endpoints
    chat_url: str = "http://localhost:11434/v1/chat/completions"
    chat_model: str = "gemma-3-27b-it"
    judge_url: Optional[str] = None
    judge_model: str = "gpt-4o"
    embed_url: str = "http://localhost:11434/v1/embeddings"
    embed_model: str = "nomic-embed-text"
    embed_provider: EmbedProvider = EmbedProvider.HASH
    embed_dim: int = Field(256, ge=8)
    api_key: Optional[SecretStr] = None

    # Transport
    mode: ChatMode = ChatMode.LIVE
    transcripts: Optional[Path] = None
    temperature: float = 0.0
    request_timeout: float = 120.0
    max_retries: int = Field(2, ge=0)
    jobs: int = Field(1, ge=1)
    seed: int = Field(0, ge=0)

    # KG construction
    parse_mode: ParseMode = ParseMode.LOOSE
    node_hint_budget: int = Field(500, ge=0)

    # Retrieval (flattened RetrievalConfig)
    k_seeds: int = 10
    k_chunks: int = 5
    m_hops: int = 2
    chunk_size: int = 600
    chunk_overlap: int = 100
    prompt_budget: int = 8000
    context_budget: int = 6000
    leaf_budget: int = 400
    parent_budget: int = 600
    leiden_resolution: float = 1.0

    # Evaluation
    rouge_stemming: bool = False

    # Environment variable configuration (KEO_CHAT_URL, KEO_EMBED_URL, ...)
    model_config = SettingsConfigDict(env_prefix="KEO_", extra="forbid")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        """CLI flags > environment > JSON config file > defaults."""
        sources: Tuple[PydanticBaseSettingsSource, ...] = (init_settings, env_settings)
        config_file = _config_file_ctx.get()
        if config_file is not None:
            sources += (JsonConfigSettingsSource(settings_cls, json_file=config_file),)
        return sources

    def retrieval(self) -> RetrievalConfig:
        """Build the validated RetrievalConfig view of these settings."""
        return RetrievalConfig(
            k_seeds=self.k_seeds,
            k_chunks=self.k_chunks,
            m_hops=self.m_hops,
            chunk_size=self.chunk_size,
            chunk_overlap=self.chunk_overlap,
            prompt_budget=self.prompt_budget,
            context_budget=self.context_budget,
            leaf_budget=self.leaf_budget,
            parent_budget=self.parent_budget,
            leiden_resolution=self.leiden_resolution,
            rng_seed=self.seed,
        )

    def snapshot(self) -> Dict[str, Any]:
        """Effective configuration for run manifests, secrets excluded."""
        data = self.model_dump(mode="json", exclude={"api_key"})
        data["api_key_set"] = self.api_key is not None
        return data


# Context variable to store the Settings instance
_settings_ctx: ContextVar[Optional[Settings]] = ContextVar("settings", default=None)


def init_settings(config_file: Optional[Path] = None, **overrides: Any) -> Settings:
    """
    Build the effective settings and make them the active ones.

    Args:
        config_file: Optional flat JSON document with setting names as keys.
        **overrides: Values given on the command line; ``None`` means "not given".

    Returns:
        The validated Settings instance
    """
    if config_file is not None and not Path(config_file).is_file():
        raise MissingArtifactError(str(config_file))

    flags = {key: value for key, value in overrides.items() if value is not None}
    token = _config_file_ctx.set(Path(config_file) if config_file else None)
    try:
        settings = Settings(**flags)
    finally:
        _config_file_ctx.reset(token)

    if config_file:
        logger.debug(f"Loaded configuration file {config_file}")
    _settings_ctx.set(settings)
    return settings


def get_settings() -> Settings:
    settings = _settings_ctx.get()
    if settings is None:
        raise RuntimeError("Settings have not been initialized.")
    return settings
