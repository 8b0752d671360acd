"""Monte-Carlo calibration of the expected overlap ratio R.

Two independent strings of a fixed length are drawn from an alphabet model
and ``1 - LD / length`` is averaged over several runs. The result measures
how much of an edit-distance budget unrelated text of that kind shares by
chance.
"""

from __future__ import annotations

import enum
import random
import string
from dataclasses import dataclass

from .core_ld import levenshtein

MIN_LENGTH = 1000

RANDOM_ELEMENTS = (
    string.ascii_letters + string.digits + "()[]+#_-!?%<>@.:;&/{}"
).encode("ascii")


class Kind(str, enum.Enum):
    RANDOM_CHARS = "random_chars"
    CHAR_FREQUENCY = "char_frequency"
    WORD_LIST = "word_list"


class CalibrationError(ValueError):
    pass


class EmptyModel(CalibrationError):
    pass


class EmptyCorpus(CalibrationError):
    pass


class CorpusUnreadable(CalibrationError):
    pass


@dataclass(frozen=True)
class AlphabetModel:
    kind: Kind
    elements: tuple[bytes, ...]  # repeated elements weigh more


def random_chars_model(symbols: bytes = RANDOM_ELEMENTS) -> AlphabetModel:
    return AlphabetModel(Kind.RANDOM_CHARS, tuple(bytes([b]) for b in symbols))


def model_from_text(kind: Kind | str, text: bytes) -> AlphabetModel:
    kind = Kind(kind)
    if kind is Kind.RANDOM_CHARS:
        return random_chars_model()
    if kind is Kind.CHAR_FREQUENCY:
        flat = text.replace(b"\r", b"").replace(b"\n", b"")
        elements = tuple(bytes([b]) for b in flat)
    else:
        elements = tuple(text.split())
    if not elements:
        raise EmptyCorpus(f"no {kind.value} units in corpus")
    return AlphabetModel(kind, elements)


def load_model(kind: Kind | str, corpus_path: str | None = None) -> AlphabetModel:
    kind = Kind(kind)
    if kind is Kind.RANDOM_CHARS:
        return random_chars_model()
    if corpus_path is None:
        raise CorpusUnreadable(f"{kind.value} needs a corpus file")
    try:
        with open(corpus_path, "rb") as fh:
            text = fh.read()
    except OSError as exc:
        raise CorpusUnreadable(f"{corpus_path}: {exc.strerror or exc}") from exc
    return model_from_text(kind, text)


def sample_string(model: AlphabetModel, length: int, rng: random.Random) -> bytes:
    """Draw units from ``model`` until ``length`` bytes, then truncate."""
    if not model.elements:
        raise EmptyModel("model has no elements")
    if model.kind is Kind.WORD_LIST:
        out = bytearray()
        while len(out) < length:
            for word in rng.choices(model.elements, k=max(16, length // 4)):
                out += word
                out += b" "
                if len(out) >= length:
                    break
        return bytes(out[:length])
    return b"".join(rng.choices(model.elements, k=length))


def expected_overlap(model: AlphabetModel, length: int = 30_000, runs: int = 10, seed: int = 0) -> float:
    if length < MIN_LENGTH:
        raise CalibrationError(f"length must be >= {MIN_LENGTH}, got {length}")
    if runs < 1:
        raise CalibrationError("runs must be >= 1")
    if not model.elements:
        raise EmptyModel("model has no elements")
    rng = random.Random(seed)
    total = 0.0
    for _ in range(runs):
        first = sample_string(model, length, rng)
        second = sample_string(model, length, rng)
        total += 1 - levenshtein(first, second) / length
    return total / runs
