import logging
from contextlib import contextmanager
from pathlib import Path
from typing import TypeVar
from urllib.parse import quote, unquote

from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from src.domain.exceptions import StorageError

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def quote_key(key: str) -> str:
    return quote(key, safe="")


def unquote_key(name: str) -> str:
    return unquote(name)


@contextmanager
def io_context(path: Path):
    """Re-raise OS errors as StorageError carrying the path."""
    try:
        yield
    except FileNotFoundError:
        raise StorageError("File not found", path=str(path)) from None
    except UnicodeDecodeError as e:
        raise StorageError(f"Not valid UTF-8: {e.reason}", path=str(path)) from None
    except OSError as e:
        raise StorageError(e.strerror or str(e), path=str(path)) from None


def read_text(path: Path) -> str:
    with io_context(path):
        return Path(path).read_text(encoding="utf-8")


def write_text(path: Path, text: str) -> Path:
    path = Path(path)
    with io_context(path):
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def read_bytes(path: Path) -> bytes:
    with io_context(path):
        return Path(path).read_bytes()


def write_bytes(path: Path, data: bytes) -> Path:
    path = Path(path)
    with io_context(path):
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    return path


def write_model_json(path: Path, document: BaseModel) -> Path:
    return write_text(path, document.model_dump_json(indent=2) + "\n")


def read_model_json(path: Path, model: type[M]) -> M:
    text = read_text(path)
    try:
        return model.model_validate_json(text)
    except PydanticValidationError as e:
        raise StorageError(f"Malformed {model.__name__}: {e.error_count()} error(s)", path=str(path)) from None


class FileRepositoryMixin:
    """Keys map to URL-quoted entries under one root directory."""

    suffix: str = ""

    def __init__(self, root: Path):
        self.root = Path(root)

    def path_for(self, key: str) -> Path:
        return self.root / f"{quote_key(key)}{self.suffix}"

    def keys(self) -> list[str]:
        if not self.root.is_dir():
            return []
        names = []
        for entry in sorted(self.root.iterdir()):
            if self.suffix and not entry.name.endswith(self.suffix):
                continue
            stem = entry.name[: len(entry.name) - len(self.suffix)] if self.suffix else entry.name
            names.append(unquote_key(stem))
        return names
