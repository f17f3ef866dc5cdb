"""
Run Config Loader

Reads one YAML file into a RunConfig. Syntax and validation errors become
ConfigError carrying the dotted field path and the source line.
"""

import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import yaml
from pydantic import ValidationError

from app.api.models import RunConfig
from app.config import settings
from app.domain.exceptions import ConfigError

logger = logging.getLogger(__name__)

# Union member names pydantic inserts into error locations
_UNION_TAGS = {"str", "Bounds", "ConstraintSet", "WeightVector"}


def resolve_config_path(path: Union[str, Path]) -> Path:
    """A missing relative path is looked up in CYCLE_CONFIG_DIR"""
    candidate = Path(path)
    if candidate.exists() or candidate.is_absolute():
        return candidate
    fallback = Path(settings.CYCLE_CONFIG_DIR) / candidate
    if fallback.exists():
        return fallback
    return candidate


def _line_of(text: str, loc: Sequence) -> Optional[int]:
    """1-based line of the YAML node at a pydantic error location"""
    try:
        node = yaml.compose(text)
    except yaml.YAMLError:
        return None
    line = None
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            pair = next(((k, v) for k, v in node.value if k.value == str(key)), None)
            if pair is None:
                break
            # key line; nested mapping values start one line lower
            line = pair[0].start_mark.line + 1
            node = pair[1]
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
            line = node.start_mark.line + 1
        else:
            break
    return line


def parse_run_config(text: str, source: str = "<config>") -> RunConfig:
    """
    Parse YAML text into a RunConfig

    Raises:
        ConfigError: invalid YAML, a non-mapping document or a field failing validation
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ConfigError(f"invalid YAML in {source}: {getattr(e, 'problem', e)}",
                          line=mark.line + 1 if mark else None)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{source} must contain a mapping at the top level", line=1)

    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = [p for p in first["loc"] if p not in _UNION_TAGS]
        field = ".".join(str(p) for p in loc) or None
        raise ConfigError(first["msg"], field=field, line=_line_of(text, loc))


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Read and validate a config file"""
    resolved = resolve_config_path(path)
    try:
        text = resolved.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {resolved}: {e.strerror or e}")
    config = parse_run_config(text, source=str(resolved))
    logger.info(f"Loaded run config from {resolved}")

    if config.fuel_file is not None:
        fuel_path = Path(config.fuel_file)
        if not fuel_path.is_absolute():
            fuel_path = resolved.parent / fuel_path
        config = config.model_copy(update={"fuel_file": str(fuel_path)})
    return config


def default_fuel_file(config: RunConfig) -> Optional[Path]:
    """Explicit fuel_file, else fuels.yaml in CYCLE_CONFIG_DIR when present"""
    if config.fuel_file is not None:
        return Path(config.fuel_file)
    candidate = Path(settings.CYCLE_CONFIG_DIR) / "fuels.yaml"
    return candidate if candidate.exists() else None


def dump_run_config(config: RunConfig) -> str:
    """YAML text that parse_run_config reads back to an equal RunConfig"""
    return yaml.safe_dump(config.to_yaml_dict(), sort_keys=False, default_flow_style=False)
