"""On-disk container for every warehouse structure.

Layout (all integers little-endian)::

    b"SMTX"  u16 version  u8 structure tag
    u64 objects  u64 intervals  u16 sigma  i64 epoch  u32 interval_len
    u16 label count, then per label: u32 byte length + UTF-8 bytes
    structure payload

Payloads are the concatenated ``to_bytes`` blocks of each component; rank
and occurrence directories are rebuilt on load.
"""

from __future__ import annotations

import mmap
import os
import struct

import numpy as np

from .baselines import BaselinePlus, NaiveMatrix
from .core import Semantrix, Warehouse, WarehouseMeta
from .fmindex import FMIndex
from .sat import DiffSAT, SummedAreaTable
from .succinct import BitVector

MAGIC = b"SMTX"
FORMAT_VERSION = 1
TAGS = {"naive": 0, "baseline+": 1, "semantrix-plain": 2, "semantrix-diff": 3}
_TAG_NAMES = {v: k for k, v in TAGS.items()}
_HEAD = struct.Struct("<4sHB")
_META = struct.Struct("<QQHqI")


class ContainerError(ValueError):
    pass


def _bytes_block(data: bytes) -> bytes:
    return struct.pack("<Q", len(data)) + data


def _read_block(buf, offset):
    (n,) = struct.unpack_from("<Q", buf, offset)
    offset += 8
    return bytes(buf[offset:offset + n]), offset + n


def _encode_meta(meta: WarehouseMeta) -> bytes:
    parts = [_META.pack(meta.num_objects, meta.num_intervals, meta.sigma, meta.epoch, meta.interval_len),
             struct.pack("<H", len(meta.labels))]
    for label in meta.labels:
        raw = label.encode("utf-8")
        parts.append(struct.pack("<I", len(raw)) + raw)
    return b"".join(parts)


def _decode_meta(buf, offset):
    r, I, sigma, epoch, interval_len = _META.unpack_from(buf, offset)
    offset += _META.size
    (nlabels,) = struct.unpack_from("<H", buf, offset)
    offset += 2
    labels = []
    for _ in range(nlabels):
        (n,) = struct.unpack_from("<I", buf, offset)
        offset += 4
        labels.append(bytes(buf[offset:offset + n]).decode("utf-8"))
        offset += n
    return WarehouseMeta(r, I, sigma, epoch, interval_len, tuple(labels)), offset


def dumps(structure: Warehouse) -> bytes:
    tag = structure.tag
    if tag not in TAGS:
        raise ContainerError(f"cannot serialize {type(structure).__name__}")
    parts = [_HEAD.pack(MAGIC, FORMAT_VERSION, TAGS[tag]), _encode_meta(structure.meta)]
    if isinstance(structure, NaiveMatrix):
        parts.append(structure.cells)
    elif isinstance(structure, BaselinePlus):
        parts.append(_bytes_block(structure.os))
        parts.append(structure.fm.to_bytes())
        parts.append(structure.C.astype("<u8").tobytes())
    else:
        parts.append(structure.B.to_bytes())
        parts.append(_bytes_block(structure.H.tobytes()))
        parts.append(structure.fm.to_bytes())
        parts.extend(table.to_bytes() for table in structure.S)
    return b"".join(parts)


def loads(buf) -> Warehouse:
    buf = memoryview(buf)
    if len(buf) < _HEAD.size:
        raise ContainerError("truncated container")
    magic, version, tag = _HEAD.unpack_from(buf, 0)
    if magic != MAGIC:
        raise ContainerError("not a semantrix container")
    if version != FORMAT_VERSION:
        raise ContainerError(f"unsupported container version {version}")
    if tag not in _TAG_NAMES:
        raise ContainerError(f"unknown structure tag {tag}")
    try:
        meta, offset = _decode_meta(buf, _HEAD.size)
        name = _TAG_NAMES[tag]
        n = meta.num_objects * meta.num_intervals
        if name == "naive":
            out = NaiveMatrix(meta, bytes(buf[offset:offset + n]))
            offset += n
        elif name == "baseline+":
            os_seq, offset = _read_block(buf, offset)
            fm, offset = FMIndex.from_buffer(buf, offset)
            count = meta.sigma * (n + 1)
            C = np.frombuffer(buf, dtype="<u8", count=count, offset=offset).astype(np.int64)
            offset += 8 * count
            out = BaselinePlus(meta, os_seq, fm, C.reshape(meta.sigma, n + 1))
        else:
            B, offset = BitVector.from_buffer(buf, offset)
            H, offset = _read_block(buf, offset)
            fm, offset = FMIndex.from_buffer(buf, offset)
            table_cls = DiffSAT if name == "semantrix-diff" else SummedAreaTable
            S = []
            for _ in range(meta.sigma):
                table, offset = table_cls.from_buffer(buf, offset)
                S.append(table)
            out = Semantrix(meta, B, np.frombuffer(H, dtype=np.uint8), fm, S)
    except (struct.error, ValueError) as exc:
        raise ContainerError(f"corrupt container: {exc}") from exc
    if offset != len(buf):
        raise ContainerError(f"{len(buf) - offset} trailing bytes after payload")
    return out


def save(structure: Warehouse, path) -> int:
    data = dumps(structure)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def load(path) -> Warehouse:
    """Load a container; mmap is used unless ``SEMANTRIX_NO_MMAP`` is set."""
    with open(path, "rb") as fh:
        if os.environ.get("SEMANTRIX_NO_MMAP") or os.fstat(fh.fileno()).st_size == 0:
            return loads(fh.read())
        with mmap.mmap(fh.fileno(), 0, access=mmap.ACCESS_READ) as mm:
            view = memoryview(mm)
            try:
                return loads(view)
            finally:
                view.release()
