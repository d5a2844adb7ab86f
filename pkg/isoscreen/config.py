from __future__ import annotations

import logging
import tomllib
import typing as t
from pathlib import Path

import tomli_w

from .config_schema import Model as RunConfig
from .errors import FormatError

logger = logging.getLogger("isoscreen")

KNOWN_KEYS = frozenset(RunConfig.__optional_keys__ | RunConfig.__required_keys__)

FIELD_TYPES: dict[str, t.Any] = t.get_type_hints(RunConfig)


def _type_matches(value: t.Any, hint: t.Any) -> bool:
    if t.get_origin(hint) is t.Literal:
        return value in t.get_args(hint)
    if isinstance(value, bool):
        return hint is bool
    if hint is float:
        return isinstance(value, (int, float))
    return isinstance(value, hint)


def _describe(hint: t.Any) -> str:
    if t.get_origin(hint) is t.Literal:
        return "one of " + ", ".join(map(repr, t.get_args(hint)))
    return hint.__name__


def write_config(path: Path | str, options: t.Mapping[str, t.Any]) -> None:
    """
    Write run options as TOML.

    Keys with a None value are skipped because TOML has no null.
    """
    clean = {key: value for key, value in options.items() if value is not None}
    Path(path).write_text(tomli_w.dumps(clean), encoding="utf-8")


def load_config(path: Path | str) -> RunConfig:
    """Read a TOML run configuration; unknown keys are dropped with a warning."""
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as err:
        raise FormatError(f"{path}: invalid TOML: {err}") from err

    config: dict[str, t.Any] = {}
    for key, value in data.items():
        if key not in KNOWN_KEYS:
            logger.warning("Ignoring unknown config key %r in %s", key, path)
            continue
        hint = FIELD_TYPES[key]
        if not _type_matches(value, hint):
            raise FormatError(f"{path}: config key {key!r} must be {_describe(hint)}, got {value!r}")
        config[key] = value
    return t.cast(RunConfig, config)
