"""Signature records and their one-line CSV form.

A record is ``path,file_length,c,n,digest_length,digest`` with no spaces
and no quoting. Lines starting with ``#`` and blank lines are ignored when
reading, so signature files can be concatenated freely.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .compressor import Params, compress, is_low_confidence, validate_params

log = logging.getLogger(__name__)

HEADER = "#filename,fileLength,C,N,digestLength,digest"

_UNSERIALIZABLE = re.compile(r"[,\n\r]|^#")
_UINT = re.compile(r"[0-9]+")


class PathNotSerializable(ValueError):
    pass


class SignatureParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None) -> None:
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class FieldCount(SignatureParseError):
    pass


class NonNumericField(SignatureParseError):
    pass


class LengthMismatch(SignatureParseError):
    pass


@dataclass(frozen=True)
class Signature:
    path: str
    file_length: int
    c: int
    n: int
    digest_length: int
    digest: bytes

    @property
    def low_confidence(self) -> bool:
        return is_low_confidence(self.file_length, self.digest_length, self.c, self.n)


def build(path: str, data: bytes, p: Params) -> Signature:
    if _UNSERIALIZABLE.search(path):
        raise PathNotSerializable(f"path {path!r} cannot be stored in a signature line")
    validate_params(p)
    digest = compress(data, p)
    sig = Signature(path, len(data), p.c, p.n, len(digest), digest)
    if sig.file_length < sig.digest_length:
        log.warning("%s: digest longer than input", path)
    return sig


def compatible(a: Signature, b: Signature) -> bool:
    return a.c == b.c and a.n == b.n


def serialize(sig: Signature) -> str:
    """Return the CSV record for ``sig``, newline-terminated."""
    if _UNSERIALIZABLE.search(sig.path):
        raise PathNotSerializable(f"path {sig.path!r} cannot be stored in a signature line")
    digest = sig.digest.decode("ascii")
    return (
        f"{sig.path},{sig.file_length},{sig.c},{sig.n},"
        f"{sig.digest_length},{digest}\n"
    )


def parse(line: str, lineno: int | None = None) -> Signature | None:
    """Parse one record; returns ``None`` for comment and blank lines."""
    line = line.rstrip("\r\n")
    if not line.strip() or line.startswith("#"):
        return None
    fields = line.split(",", 5)
    if len(fields) != 6:
        raise FieldCount(f"expected 6 fields, got {len(fields)}", lineno)
    path, *numbers, digest = fields
    for value in numbers:
        if not _UINT.fullmatch(value):
            raise NonNumericField(f"not a non-negative integer: {value!r}", lineno)
    file_length, c, n, digest_length = map(int, numbers)
    try:
        raw = digest.encode("ascii")
    except UnicodeEncodeError:
        raise SignatureParseError("digest is not ASCII", lineno) from None
    if digest_length != len(raw):
        raise LengthMismatch(
            f"declared digest length {digest_length}, actual {len(raw)}", lineno
        )
    return Signature(path, file_length, c, n, digest_length, raw)


def read_signatures(lines: Iterable[str]) -> Iterator[Signature]:
    for lineno, line in enumerate(lines, 1):
        sig = parse(line, lineno)
        if sig is not None:
            yield sig


def load(path: str) -> list[Signature]:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(read_signatures(fh))


def dump(signatures: Iterable[Signature], fh: IO[str], header: bool = True) -> None:
    if header:
        fh.write(HEADER + "\n")
    for sig in signatures:
        fh.write(serialize(sig))
