"""Utility functions shared across the KEO engine."""

from .artifacts import atomic_write_text, dump_json, read_json, sha256_file, write_json

__all__ = ["atomic_write_text", "dump_json", "read_json", "sha256_file", "write_json"]
