"""Canonical fixed-width encodings shared by the off-chain layer, the
transaction calldata model, and contract event payloads.

Everything is 32-byte-word based: unsigned integers are big-endian
left-padded words, short byte strings are right-zero-padded words.
"""

from __future__ import annotations

WORD = 32
_WORD_MAX = 1 << 256


def int_word(value: int) -> bytes:
    """Unsigned integer as one big-endian 32-byte word."""
    if not 0 <= value < _WORD_MAX:
        raise ValueError(f"integer out of word range: {value}")
    return value.to_bytes(WORD, "big")


def bytes_word(value: bytes) -> bytes:
    """Short byte string right-zero-padded to one word."""
    if len(value) > WORD:
        raise ValueError(f"byte string longer than one word: {len(value)} bytes")
    return bytes(value) + b"\x00" * (WORD - len(value))


def str_word(value: str) -> bytes:
    return bytes_word(value.encode("utf-8"))


def fixed_bytes(value: int, width: int) -> bytes:
    """Unsigned integer at an explicit big-endian width (e.g. 256-byte moduli)."""
    return value.to_bytes(width, "big")


def pad_to_words(data: bytes) -> bytes:
    return bytes(data) + b"\x00" * (-len(data) % WORD)


def encode_calldata(args: tuple) -> bytes:
    """Generic deterministic argument encoding used for gas metering.

    ints become words; bytes/str become a length word plus word-padded
    payload; sequences become a length word plus their encoded elements.
    The encoding is injective over the supported types and monotone in
    content size, which is all the gas model needs.
    """
    parts = []
    for arg in args:
        if isinstance(arg, bool):
            parts.append(int_word(int(arg)))
        elif isinstance(arg, int):
            parts.append(int_word(arg))
        elif isinstance(arg, (bytes, bytearray)):
            parts.append(int_word(len(arg)))
            parts.append(pad_to_words(bytes(arg)))
        elif isinstance(arg, str):
            raw = arg.encode("utf-8")
            parts.append(int_word(len(raw)))
            parts.append(pad_to_words(raw))
        elif isinstance(arg, (tuple, list)):
            parts.append(int_word(len(arg)))
            parts.append(encode_calldata(tuple(arg)))
        else:
            raise TypeError(f"unsupported calldata argument type: {type(arg)!r}")
    return b"".join(parts)


def pack_fields(*fields: tuple[int, int]) -> bytes:
    """Pack (value, byte_width) pairs into a single zero-padded word."""
    raw = b"".join(value.to_bytes(width, "big") for value, width in fields)
    if len(raw) > WORD:
        raise ValueError("packed fields exceed one word")
    return raw + b"\x00" * (WORD - len(raw))


def unpack_fields(word: bytes, *widths: int) -> tuple[int, ...]:
    out = []
    off = 0
    for width in widths:
        out.append(int.from_bytes(word[off:off + width], "big"))
        off += width
    return tuple(out)
