"""Binary persistence for complexity tables (ICX1 format).

Layout, little-endian throughout:

    magic     4 bytes  b"ICX1"
    version   u32      1
    limit     u64      table size n = 1..limit
    flags     u32      bit 0: rank section present
                       bit 1: partial checkpoint; a u64 position field
                              follows the header and the payload covers
                              n = 1..position only
                       bits 2-3: builder tag (0 sieve, 1 dp, 2 oracle)
    position  u64      only when flags bit 1 is set
    payload   bytes    complexity values, then rank values when flagged
    checksum  u64      sum of payload bytes mod 2**64

Writes go to a temporary file in the target directory and are renamed
into place, so a torn write never leaves a half-written table behind.
"""

from __future__ import annotations

import os
import struct
import tempfile
from dataclasses import dataclass

import numpy as np

from .core import ComplexityTable

MAGIC = b"ICX1"
VERSION = 1
FLAG_RANKS = 1
FLAG_PARTIAL = 2
_TAG_SHIFT = 2
_TAG_CODES = {"sieve": 0, "dp": 1, "oracle": 2}
_TAG_NAMES = {v: k for k, v in _TAG_CODES.items()}

_HEADER = struct.Struct("<4sIQI")
_U64 = struct.Struct("<Q")


class IcxError(Exception):
    """Base class for table-file integrity problems."""


class BadMagicError(IcxError):
    pass


class UnsupportedVersionError(IcxError):
    pass


class TruncatedFileError(IcxError):
    pass


class ChecksumError(IcxError):
    pass


@dataclass(frozen=True)
class Checkpoint:
    """Resumable prefix of an interrupted build."""

    limit: int
    position: int
    complexity: bytes  # index 0 unused, valid through [1, position]

    def __post_init__(self) -> None:
        if not 1 <= self.position <= self.limit:
            raise ValueError("checkpoint position outside [1, limit]")
        if len(self.complexity) != self.position + 1:
            raise ValueError("checkpoint prefix length mismatch")


def _checksum(payload: bytes) -> int:
    return int(np.frombuffer(payload, dtype=np.uint8).sum(dtype=np.uint64)) % 2**64


def _atomic_write(path: str, blob: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".icx-", dir=directory)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(table: ComplexityTable, path: str) -> None:
    """Write a complete table; load(path) returns a bit-identical one."""
    flags = FLAG_RANKS if table.rank is not None else 0
    flags |= _TAG_CODES[table.algorithm_tag] << _TAG_SHIFT
    payload = table.complexity[1:]
    if table.rank is not None:
        payload += table.rank[1:]
    blob = (
        _HEADER.pack(MAGIC, VERSION, table.limit, flags)
        + payload
        + _U64.pack(_checksum(payload))
    )
    _atomic_write(path, blob)


def save_checkpoint(path: str, limit: int, position: int, prefix: bytes) -> None:
    """Write a partial table covering n = 1..position of a limit-sized build."""
    if not 1 <= position <= limit:
        raise ValueError("checkpoint position outside [1, limit]")
    if len(prefix) != position + 1:
        raise ValueError("checkpoint prefix length mismatch")
    payload = bytes(prefix[1:])
    blob = (
        _HEADER.pack(MAGIC, VERSION, limit, FLAG_PARTIAL)
        + _U64.pack(position)
        + payload
        + _U64.pack(_checksum(payload))
    )
    _atomic_write(path, blob)


def load(path: str) -> ComplexityTable | Checkpoint:
    """Read a table file; partial files come back as Checkpoint objects."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise TruncatedFileError(f"{path}: shorter than the fixed header")
    magic, version, limit, flags = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise BadMagicError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"{path}: unsupported version {version}")
    off = _HEADER.size
    partial = bool(flags & FLAG_PARTIAL)
    with_ranks = bool(flags & FLAG_RANKS)
    if partial and with_ranks:
        raise IcxError(f"{path}: partial files cannot carry a rank section")
    if limit < 1:
        raise IcxError(f"{path}: nonsensical limit {limit}")
    position = limit
    if partial:
        if len(blob) < off + 8:
            raise TruncatedFileError(f"{path}: missing position field")
        position = _U64.unpack_from(blob, off)[0]
        off += 8
        if not 1 <= position <= limit:
            raise IcxError(f"{path}: position {position} outside [1, {limit}]")
    section = position
    expected = off + section * (2 if with_ranks else 1) + 8
    if len(blob) != expected:
        raise TruncatedFileError(
            f"{path}: {len(blob)} bytes, expected {expected}"
        )
    payload = blob[off:-8]
    declared = _U64.unpack_from(blob, len(blob) - 8)[0]
    if _checksum(payload) != declared:
        raise ChecksumError(f"{path}: checksum mismatch")
    comp = b"\x00" + payload[:section]
    if partial:
        return Checkpoint(limit=limit, position=position, complexity=comp)
    rank = b"\x00" + payload[section:] if with_ranks else None
    tag = _TAG_NAMES.get((flags >> _TAG_SHIFT) & 0x3)
    if tag is None:
        raise IcxError(f"{path}: unknown builder tag in flags {flags:#x}")
    return ComplexityTable(limit=limit, complexity=comp, rank=rank, algorithm_tag=tag)


def load_table(path: str) -> ComplexityTable:
    """Like load(), but refuses partial checkpoints."""
    got = load(path)
    if isinstance(got, Checkpoint):
        raise IcxError(f"{path}: is a partial checkpoint (position {got.position})")
    return got
