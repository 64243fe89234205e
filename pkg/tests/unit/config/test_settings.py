import json

import pytest
from pydantic import ValidationError

from src.config.config import (
    ChatMode,
    EmbedProvider,
    RetrievalConfig,
    get_settings,
    init_settings,
)
from src.errors import MissingArtifactError


class TestInitSettings:
    """Precedence: flags over environment over config file over defaults."""

    def test_defaults(self):
        """Test defaults apply when nothing is given."""
        settings = init_settings()
        assert settings.mode is ChatMode.LIVE
        assert settings.embed_provider is EmbedProvider.HASH
        assert settings.k_seeds == 10
        assert get_settings() is settings

    def test_precedence(self, tmp_path, monkeypatch):
        """Test each layer overrides the one below it."""
        config = tmp_path / "keo.json"
        config.write_text(json.dumps({"k_seeds": 3, "m_hops": 1, "chat_model": "from-file"}))
        monkeypatch.setenv("KEO_M_HOPS", "4")
        monkeypatch.setenv("KEO_CHAT_MODEL", "from-env")

        settings = init_settings(config_file=config, chat_model="from-flag", k_chunks=None)
        assert settings.k_seeds == 3
        assert settings.m_hops == 4
        assert settings.chat_model == "from-flag"
        assert settings.k_chunks == 5

    def test_missing_config_file(self, tmp_path):
        """Test a config path that does not exist is a missing artifact."""
        with pytest.raises(MissingArtifactError):
            init_settings(config_file=tmp_path / "absent.json")

    def test_unknown_key_rejected(self, tmp_path):
        """Test config files cannot carry unknown settings."""
        config = tmp_path / "keo.json"
        config.write_text(json.dumps({"k_seed": 3}))
        with pytest.raises(ValidationError):
            init_settings(config_file=config)

    def test_snapshot_hides_api_key(self):
        """Test the manifest snapshot reports only whether a key is set."""
        snapshot = init_settings(api_key="secret").snapshot()
        assert "api_key" not in snapshot
        assert snapshot["api_key_set"] is True
        assert "secret" not in json.dumps(snapshot)


class TestRetrievalConfig:
    def test_view_of_settings(self):
        """Test the retrieval view copies knobs and the seed."""
        cfg = init_settings(k_seeds=7, seed=11).retrieval()
        assert cfg.k_seeds == 7
        assert cfg.rng_seed == 11

    def test_overlap_must_be_smaller_than_chunk(self):
        """Test chunk overlap at or above the chunk size is invalid."""
        with pytest.raises(ValidationError, match="chunk_overlap \\(100\\) must be smaller"):
            RetrievalConfig(chunk_size=100, chunk_overlap=100)
        with pytest.raises(ValidationError, match="must be smaller"):
            init_settings(chunk_size=50, chunk_overlap=60).retrieval()

    def test_frozen(self):
        """Test a retrieval config cannot be mutated."""
        cfg = RetrievalConfig()
        with pytest.raises(ValidationError):
            cfg.k_seeds = 3
