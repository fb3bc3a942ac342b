from pathlib import Path
from typing import Optional, Union

from combcache.shared.config import Config

TRANSCRIPTS_DIR = "transcripts"
TABLES_DIR = "tables"

PathT = Union[Path, str]


def output_base_dir() -> str:
    return Config.get_output_dir()


def _check_base(base: Optional[PathT]) -> Path:
    if base is None:
        # Not `if not base:`, an empty string means the current directory.
        base = output_base_dir()
    if not isinstance(base, Path):
        base = Path(base)
    return base


def _ensure_return_type(p: PathT, as_path: bool) -> PathT:
    if as_path and not isinstance(p, Path):
        return Path(p)
    elif not as_path and isinstance(p, Path):
        return str(p)

    return p


def _make_path(base: Optional[PathT], as_path: bool, directory: str) -> PathT:
    base = _check_base(base)
    return _ensure_return_type(base / directory, as_path)


def transcripts_dir(base: Optional[PathT] = None, as_path: bool = False) -> PathT:
    return _make_path(base, as_path, TRANSCRIPTS_DIR)


def tables_dir(base: Optional[PathT] = None, as_path: bool = False) -> PathT:
    return _make_path(base, as_path, TABLES_DIR)


def resolve_output(path: PathT, default_dir: PathT) -> str:
    """Relative paths land under `default_dir`; absolute paths are kept.
    The parent directory is created either way."""
    p = Path(path)
    if not p.is_absolute():
        p = Path(default_dir) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return str(p)
