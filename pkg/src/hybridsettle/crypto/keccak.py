"""Keccak-256 with the pre-standard padding used by EVM tooling.

Two interchangeable cores compute the keccak-f[1600] permutation: a
jit-compiled kernel (numba) used for bulk hashing, and an unrolled
pure-Python reference used as fallback and as a cross-check in tests.
Both are held to the published Keccak-256 test vectors bit-exactly.

Sponge parameters are fixed to the 256-bit variant: rate 136 bytes,
domain padding byte 0x01 (NIST SHA-3 uses 0x06 and yields different
digests by design).
"""

from __future__ import annotations

RATE = 136

_ROUND_CONSTANTS = (
    0x0000000000000001, 0x0000000000008082,
    0x800000000000808A, 0x8000000080008000,
    0x000000000000808B, 0x0000000080000001,
    0x8000000080008081, 0x8000000000008009,
    0x000000000000008A, 0x0000000000000088,
    0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B,
    0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080,
    0x000000000000800A, 0x800000008000000A,
    0x8000000080008081, 0x8000000000008080,
    0x0000000080000001, 0x8000000080008008,
)


def _keccak_f_pure(state: list[int]) -> list[int]:
    """Reference keccak-f[1600]; lanes a0..a24 indexed x + 5*y."""
    M = 0xFFFFFFFFFFFFFFFF
    a0, a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12, a13, a14, a15, a16, a17, a18, a19, a20, a21, a22, a23, a24 = state
    for rc in _ROUND_CONSTANTS:
        C0 = a0 ^ a5 ^ a10 ^ a15 ^ a20
        C1 = a1 ^ a6 ^ a11 ^ a16 ^ a21
        C2 = a2 ^ a7 ^ a12 ^ a17 ^ a22
        C3 = a3 ^ a8 ^ a13 ^ a18 ^ a23
        C4 = a4 ^ a9 ^ a14 ^ a19 ^ a24
        D = C4 ^ (((C1 << 1) | (C1 >> 63)) & M)
        a0 ^= D
        a5 ^= D
        a10 ^= D
        a15 ^= D
        a20 ^= D
        D = C0 ^ (((C2 << 1) | (C2 >> 63)) & M)
        a1 ^= D
        a6 ^= D
        a11 ^= D
        a16 ^= D
        a21 ^= D
        D = C1 ^ (((C3 << 1) | (C3 >> 63)) & M)
        a2 ^= D
        a7 ^= D
        a12 ^= D
        a17 ^= D
        a22 ^= D
        D = C2 ^ (((C4 << 1) | (C4 >> 63)) & M)
        a3 ^= D
        a8 ^= D
        a13 ^= D
        a18 ^= D
        a23 ^= D
        D = C3 ^ (((C0 << 1) | (C0 >> 63)) & M)
        a4 ^= D
        a9 ^= D
        a14 ^= D
        a19 ^= D
        a24 ^= D
        b0 = a0
        b16 = ((a5 << 36) | (a5 >> 28)) & M
        b7 = ((a10 << 3) | (a10 >> 61)) & M
        b23 = ((a15 << 41) | (a15 >> 23)) & M
        b14 = ((a20 << 18) | (a20 >> 46)) & M
        b10 = ((a1 << 1) | (a1 >> 63)) & M
        b1 = ((a6 << 44) | (a6 >> 20)) & M
        b17 = ((a11 << 10) | (a11 >> 54)) & M
        b8 = ((a16 << 45) | (a16 >> 19)) & M
        b24 = ((a21 << 2) | (a21 >> 62)) & M
        b20 = ((a2 << 62) | (a2 >> 2)) & M
        b11 = ((a7 << 6) | (a7 >> 58)) & M
        b2 = ((a12 << 43) | (a12 >> 21)) & M
        b18 = ((a17 << 15) | (a17 >> 49)) & M
        b9 = ((a22 << 61) | (a22 >> 3)) & M
        b5 = ((a3 << 28) | (a3 >> 36)) & M
        b21 = ((a8 << 55) | (a8 >> 9)) & M
        b12 = ((a13 << 25) | (a13 >> 39)) & M
        b3 = ((a18 << 21) | (a18 >> 43)) & M
        b19 = ((a23 << 56) | (a23 >> 8)) & M
        b15 = ((a4 << 27) | (a4 >> 37)) & M
        b6 = ((a9 << 20) | (a9 >> 44)) & M
        b22 = ((a14 << 39) | (a14 >> 25)) & M
        b13 = ((a19 << 8) | (a19 >> 56)) & M
        b4 = ((a24 << 14) | (a24 >> 50)) & M
        a0 = (b0 ^ (~b1 & b2)) & M
        a1 = (b1 ^ (~b2 & b3)) & M
        a2 = (b2 ^ (~b3 & b4)) & M
        a3 = (b3 ^ (~b4 & b0)) & M
        a4 = (b4 ^ (~b0 & b1)) & M
        a5 = (b5 ^ (~b6 & b7)) & M
        a6 = (b6 ^ (~b7 & b8)) & M
        a7 = (b7 ^ (~b8 & b9)) & M
        a8 = (b8 ^ (~b9 & b5)) & M
        a9 = (b9 ^ (~b5 & b6)) & M
        a10 = (b10 ^ (~b11 & b12)) & M
        a11 = (b11 ^ (~b12 & b13)) & M
        a12 = (b12 ^ (~b13 & b14)) & M
        a13 = (b13 ^ (~b14 & b10)) & M
        a14 = (b14 ^ (~b10 & b11)) & M
        a15 = (b15 ^ (~b16 & b17)) & M
        a16 = (b16 ^ (~b17 & b18)) & M
        a17 = (b17 ^ (~b18 & b19)) & M
        a18 = (b18 ^ (~b19 & b15)) & M
        a19 = (b19 ^ (~b15 & b16)) & M
        a20 = (b20 ^ (~b21 & b22)) & M
        a21 = (b21 ^ (~b22 & b23)) & M
        a22 = (b22 ^ (~b23 & b24)) & M
        a23 = (b23 ^ (~b24 & b20)) & M
        a24 = (b24 ^ (~b20 & b21)) & M
        a0 ^= rc
    return [a0, a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12, a13, a14, a15, a16, a17, a18, a19, a20, a21, a22, a23, a24]


def _pad(data: bytes) -> bytearray:
    padded = bytearray(data)
    padded.append(0x01)
    padded.extend(b"\x00" * (-len(padded) % RATE))
    padded[-1] ^= 0x80
    return padded


def keccak256_pure(data: bytes) -> bytes:
    """Keccak-256 on the pure-Python core."""
    state = [0] * 25
    padded = _pad(data)
    for off in range(0, len(padded), RATE):
        block = padded[off:off + RATE]
        for i in range(17):
            state[i] ^= int.from_bytes(block[8 * i:8 * i + 8], "little")
        state = _keccak_f_pure(state)
    return b"".join(state[i].to_bytes(8, "little") for i in range(4))


try:
    import numpy as _np
    from numba import njit as _njit, uint64 as _uint64

    _RC_ARR = _np.array(_ROUND_CONSTANTS, dtype=_np.uint64)

    # rho rotation and pi source index, flattened by destination lane
    _rho = [[0] * 5 for _ in range(5)]
    _x, _y = 1, 0
    for _t in range(24):
        _rho[_x][_y] = ((_t + 1) * (_t + 2) // 2) % 64
        _x, _y = _y, (2 * _x + 3 * _y) % 5
    _RHO_ARR = _np.zeros(25, dtype=_np.uint64)
    _PI_SRC = _np.zeros(25, dtype=_np.int64)
    for _xx in range(5):
        for _yy in range(5):
            _dst = _yy + 5 * ((2 * _xx + 3 * _yy) % 5)
            _PI_SRC[_dst] = _xx + 5 * _yy
            _RHO_ARR[_dst] = _rho[_xx][_yy]

    @_njit(cache=True)
    def _keccak_f_jit(A, rcs, rho_by_dst, pi_src):  # pragma: no cover - jitted
        B = _np.empty(25, dtype=_np.uint64)
        C = _np.empty(5, dtype=_np.uint64)
        for rnd in range(24):
            for i in range(5):
                C[i] = A[i] ^ A[i + 5] ^ A[i + 10] ^ A[i + 15] ^ A[i + 20]
            for i in range(5):
                c1 = C[(i + 1) % 5]
                D = C[(i + 4) % 5] ^ ((c1 << _uint64(1)) | (c1 >> _uint64(63)))
                for j in range(5):
                    A[i + 5 * j] ^= D
            for dst in range(25):
                v = A[pi_src[dst]]
                s = rho_by_dst[dst]
                if s == 0:
                    B[dst] = v
                else:
                    B[dst] = (v << s) | (v >> (_uint64(64) - s))
            for j in range(5):
                o = 5 * j
                for i in range(5):
                    A[o + i] = B[o + i] ^ ((~B[o + (i + 1) % 5]) & B[o + (i + 2) % 5])
            A[0] ^= rcs[rnd]

    _ZERO_TAIL = b"\x00" * 64

    def keccak256_jit(data: bytes) -> bytes:
        """Keccak-256 on the jit-compiled core."""
        state = _np.zeros(25, dtype=_np.uint64)
        padded = _pad(data)
        for off in range(0, len(padded), RATE):
            block = _np.frombuffer(bytes(padded[off:off + RATE]) + _ZERO_TAIL, dtype=_np.uint64)
            state[:17] ^= block[:17]
            _keccak_f_jit(state, _RC_ARR, _RHO_ARR, _PI_SRC)
        return state[:4].tobytes()

    # compile eagerly so the first metered hash is not a compilation stall
    _SELFCHECK = bytes.fromhex("c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470")
    if keccak256_jit(b"") != _SELFCHECK:  # pragma: no cover - defensive
        raise RuntimeError("jit keccak self-check failed")

    keccak256 = keccak256_jit
    BACKEND = "numba"
except Exception:  # pragma: no cover - exercised only without numba
    keccak256_jit = None
    keccak256 = keccak256_pure
    BACKEND = "pure"


def is_digest32(value: object) -> bool:
    return isinstance(value, (bytes, bytearray)) and len(value) == 32
