"""
Run-time settings.

Later sources win: built-in defaults, ``[tool.splitmat]`` in ``pyproject.toml``,
a standalone ``splitmat.toml``, ``SPLITMAT_*`` environment variables, and
finally command-line flags.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Literal, Mapping, Optional

import pydantic
import toml
from pydantic import BaseModel, ConfigDict, Field

from splitmat.errors import InvalidParams
from splitmat.logging import logger

ENV_PREFIX = "SPLITMAT_"


class Settings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_vertices: int = Field(default=1000, ge=1)
    max_n: int = Field(default=9, ge=1)
    max_enumeration_subsets: int = Field(default=20, ge=1)
    jobs: int = Field(default=1, ge=1)
    strict: bool = True
    subset_order: Literal["lex", "revlex", "auto"] = "lex"


def _file_settings(directory: Path) -> dict[str, Any]:
    found: dict[str, Any] = {}
    pyproject = directory / "pyproject.toml"
    if pyproject.is_file():
        table = toml.load(pyproject).get("tool", {}).get("splitmat", {})
        if table:
            logger.debug("settings from %s: %s", pyproject, table)
        found.update(table)
    standalone = directory / "splitmat.toml"
    if standalone.is_file():
        table = toml.load(standalone)
        logger.debug("settings from %s: %s", standalone, table)
        found.update(table)
    return {key.replace("-", "_"): value for key, value in found.items()}


def _env_settings(environ: Mapping[str, str]) -> dict[str, str]:
    return {
        key[len(ENV_PREFIX) :].lower(): value
        for key, value in environ.items()
        if key.startswith(ENV_PREFIX) and key[len(ENV_PREFIX) :].lower() in Settings.model_fields
    }


def load_settings(
    directory: Optional[Path] = None,
    environ: Optional[Mapping[str, str]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> Settings:
    values: dict[str, Any] = {}
    try:
        values.update(_file_settings(directory or Path.cwd()))
    except toml.TomlDecodeError as err:
        raise InvalidParams(f"cannot read settings file: {err}") from err
    values.update(_env_settings(os.environ if environ is None else environ))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return Settings.model_validate(values)
    except pydantic.ValidationError as err:
        raise InvalidParams(f"invalid settings: {err}") from err
