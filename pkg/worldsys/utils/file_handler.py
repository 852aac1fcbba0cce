"""
File handling utilities: atomic writes, checksums and temp-file tracking
"""
import os
import json
import math
import hashlib
from pathlib import Path
from typing import Any, Iterator, Optional, Union
from tempfile import NamedTemporaryFile
from contextlib import contextmanager
import logging

from worldsys.utils.responses import DataIOError, error_response

logger = logging.getLogger(__name__)

# Track temporary files for cleanup
_temp_files = set()

PathLike = Union[str, Path]


def create_temp_file(directory: Path, suffix: str = ".tmp") -> Path:
    """Create a temporary file next to its destination, tracked for cleanup"""
    temp = NamedTemporaryFile(dir=directory, suffix=suffix, delete=False)
    temp.close()
    path = Path(temp.name)
    _temp_files.add(path)
    return path


def cleanup_temp_file(path: Optional[Path]) -> None:
    """Safely cleanup a temporary file"""
    if path and path.exists():
        try:
            path.unlink()
            logger.debug(f"Cleaned up temp file: {path}")
        except OSError as e:
            logger.error(f"Error cleaning up temp file {path}: {e}")
    _temp_files.discard(path)


def cleanup_all() -> None:
    """Cleanup all tracked temporary files"""
    for file_path in list(_temp_files):
        cleanup_temp_file(file_path)


@contextmanager
def managed_temp_file(directory: Path, suffix: str = ".tmp") -> Iterator[Path]:
    """Context manager for temporary files with automatic cleanup"""
    temp_path = create_temp_file(directory, suffix=suffix)
    try:
        yield temp_path
    finally:
        cleanup_temp_file(temp_path)


def ensure_writable_dir(path: PathLike) -> Path:
    """Create ``path`` if needed and check it accepts new files"""
    directory = Path(path)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise error_response(
            f"Cannot create output directory: {directory}",
            DataIOError,
            details={"path": str(directory), "reason": str(e)}
        )
    if not os.access(directory, os.W_OK | os.X_OK):
        raise error_response(
            f"Output directory is not writable: {directory}",
            DataIOError,
            details={"path": str(directory)}
        )
    return directory


def write_atomic(path: PathLike, data: Union[str, bytes]) -> Path:
    """Write a file once: temp file in the same directory, then rename"""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    if not directory.is_dir():
        raise error_response(
            f"Output directory does not exist: {directory}",
            DataIOError,
            details={"path": str(target)}
        )
    payload = data.encode("utf-8") if isinstance(data, str) else data
    try:
        with managed_temp_file(directory, suffix=target.suffix + ".part") as temp_path:
            with open(temp_path, "wb") as f:
                f.write(payload)
            os.replace(temp_path, target)
    except OSError as e:
        raise error_response(
            f"Cannot write {target}",
            DataIOError,
            details={"path": str(target), "reason": str(e)}
        )
    logger.debug(f"Wrote {len(payload)} bytes to {target}")
    return target


def _finite(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value


def dumps_json(document: Any) -> str:
    """Keys in insertion (model declaration) order, full float precision; inf and NaN become null"""
    return json.dumps(_finite(document), indent=2, allow_nan=False) + "\n"


def write_json(path: PathLike, document: Any) -> Path:
    return write_atomic(path, dumps_json(document))


def file_checksum(path: PathLike, chunk_size: int = 1024 * 1024) -> str:
    """SHA-256 of a file, read in chunks"""
    digest = hashlib.sha256()
    try:
        with open(path, "rb") as f:
            while True:
                chunk = f.read(chunk_size)
                if not chunk:
                    break
                digest.update(chunk)
    except OSError as e:
        raise error_response(
            f"Cannot read {path}",
            DataIOError,
            details={"path": str(path), "reason": str(e)}
        )
    return digest.hexdigest()

