"""
Flat key=value parameter files
"""
from pathlib import Path
from typing import Any, Dict, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError
import logging

from worldsys.utils.responses import (
    DataIOError,
    DataParseError,
    InputValidationError,
    error_response,
)

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def _coerce(text: str) -> Union[float, str]:
    try:
        return float(text)
    except ValueError:
        return text


def parse_params_text(text: str, source: str = "<text>") -> Dict[str, Any]:
    """One ``key = value`` per line; ``#`` starts a comment"""
    values: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise error_response(
                f"Expected key=value at {source}:{lineno}: {raw.strip()!r}",
                DataParseError,
                details={"source": source, "line": lineno}
            )
        if key in values:
            raise error_response(
                f"Duplicate key {key!r} at {source}:{lineno}",
                DataParseError,
                details={"source": source, "line": lineno, "key": key}
            )
        values[key] = _coerce(value)
    return values


def load_params_file(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise error_response(
            f"Cannot read parameter file {path}",
            DataIOError,
            details={"path": str(path), "reason": str(e)}
        )
    values = parse_params_text(text, source=str(path))
    logger.debug(f"Read {len(values)} parameters from {path}")
    return values


def build_params(model_cls: Type[ModelT], values: Dict[str, Any]) -> ModelT:
    """Validate raw values into ``model_cls``; errors name the fields"""
    unknown = sorted(set(values) - set(model_cls.model_fields))
    if unknown:
        raise error_response(
            f"Unknown parameters for {model_cls.__name__}: {', '.join(unknown)}",
            InputValidationError,
            details={"fields": unknown}
        )
    try:
        return model_cls(**values)
    except ValidationError as e:
        fields = [".".join(str(p) for p in err["loc"]) or "params" for err in e.errors()]
        messages = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'params'}: {err['msg']}" for err in e.errors()
        )
        raise error_response(
            f"Invalid {model_cls.__name__}: {messages}",
            InputValidationError,
            details={"fields": fields}
        )
