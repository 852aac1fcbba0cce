"""
Shared utilities
"""
from worldsys.utils.file_handler import (
    cleanup_all,
    cleanup_temp_file,
    create_temp_file,
    ensure_writable_dir,
    file_checksum,
    managed_temp_file,
    write_atomic,
    write_json,
)
from worldsys.utils.responses import (
    WorldSysError,
    DataIOError,
    DataParseError,
    InputValidationError,
    NumericalAbort,
    BlowUpError,
    error_response,
)

__all__ = [
    "cleanup_all",
    "cleanup_temp_file",
    "create_temp_file",
    "ensure_writable_dir",
    "file_checksum",
    "managed_temp_file",
    "write_atomic",
    "write_json",
    "WorldSysError",
    "DataIOError",
    "DataParseError",
    "InputValidationError",
    "NumericalAbort",
    "BlowUpError",
    "error_response",
]
