"""Versioned binary model format.

Layout: 4 magic bytes, uint16 format version, uint32 header length, UTF-8 JSON
header, then every parameter tensor as raw little-endian data in header order.
"""
import struct
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field
from pydantic import ValidationError as PydanticValidationError

from src.domain.estimation import HyperParams, Vocab
from src.domain.exceptions import IncompatibleModel, StorageError, ValidationError
from src.infra.nn import Seq2SeqModel
from .base import read_bytes, write_bytes

MAGIC = b"WPS2"
FORMAT_VERSION = 1
_PREFIX = struct.Struct("<4sHI")
_DTYPES = {"float32": "<f4", "float64": "<f8"}


class TensorSpec(BaseModel):
    name: str
    shape: list[int]
    dtype: str


class ModelHeader(BaseModel):
    hyperparams: dict
    source_vocab: list[str]
    target_vocab: list[str]
    tensors: list[TensorSpec] = Field(default_factory=list)


def encode_model(model: Seq2SeqModel) -> bytes:
    header = ModelHeader(
        hyperparams=model.hp.to_dict(),
        source_vocab=list(model.vocab.source),
        target_vocab=list(model.vocab.target),
        tensors=[
            TensorSpec(name=name, shape=list(value.shape), dtype=value.dtype.name)
            for name, value in model.params.items()
        ],
    )
    header_bytes = header.model_dump_json().encode("utf-8")
    chunks = [_PREFIX.pack(MAGIC, FORMAT_VERSION, len(header_bytes)), header_bytes]
    for spec in header.tensors:
        chunks.append(np.ascontiguousarray(model.params[spec.name], dtype=_DTYPES[spec.dtype]).tobytes())
    return b"".join(chunks)


def decode_model(data: bytes, origin: str = "<bytes>") -> Seq2SeqModel:
    if len(data) < _PREFIX.size:
        raise StorageError("Truncated model file", path=origin)
    magic, version, header_len = _PREFIX.unpack_from(data)
    if magic != MAGIC:
        raise StorageError(f"Not a model file (magic {magic!r})", path=origin)
    if version != FORMAT_VERSION:
        raise IncompatibleModel(f"Model format version {version}, expected {FORMAT_VERSION}", field="version")

    offset = _PREFIX.size
    try:
        header = ModelHeader.model_validate_json(data[offset:offset + header_len])
    except PydanticValidationError as e:
        raise StorageError(f"Malformed model header: {e.error_count()} error(s)", path=origin) from None
    offset += header_len

    params = {}
    for spec in header.tensors:
        if spec.dtype not in _DTYPES:
            raise IncompatibleModel(f"Unsupported tensor dtype {spec.dtype}", field=spec.name)
        dtype = np.dtype(_DTYPES[spec.dtype])
        count = int(np.prod(spec.shape, dtype=np.int64))
        end = offset + count * dtype.itemsize
        if end > len(data):
            raise StorageError(f"Truncated tensor {spec.name}", path=origin)
        params[spec.name] = (
            np.frombuffer(data, dtype=dtype, count=count, offset=offset)
            .reshape(spec.shape)
            .astype(dtype.newbyteorder("="), copy=True)
        )
        offset = end
    if offset != len(data):
        raise StorageError(f"{len(data) - offset} trailing bytes after the last tensor", path=origin)

    try:
        hp = HyperParams.from_dict(header.hyperparams)
        vocab = Vocab(source=tuple(header.source_vocab), target=tuple(header.target_vocab))
    except (TypeError, ValueError, ValidationError) as e:
        raise IncompatibleModel(f"Unreadable model header: {getattr(e, 'message', e)}", field="header") from None
    return Seq2SeqModel(hp, vocab, params)


def save_model(model: Seq2SeqModel, path: Path) -> Path:
    return write_bytes(path, encode_model(model))


def load_model(path: Path) -> Seq2SeqModel:
    return decode_model(read_bytes(path), origin=str(path))
