"""Truncated power series over GF(2) with bit-packed storage.

A series is a parity vector: bit n of :attr:`GF2Series.words` is the
coefficient of q^n reduced mod 2, stored little-endian within uint64 words
(degree n lives at word ``n >> 6``, bit ``n & 63``).  ``trunc`` is the highest
valid degree, inclusive; every operation returns the minimum truncation of
its inputs so precision loss is explicit.  Values are immutable and safe to
share between threads.

Multiplication drives the shift-XOR accumulation from whichever operand has
fewer set bits.  The pentagonal product expansions this package lives on
have O(sqrt(N)) set bits, so multiplying them into anything is cheap no
matter how dense the other side is.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import NotAUnitError

_U64 = np.uint64

# driver popcount above which staging all 64 sub-word shifts pays off
_DENSE_DRIVER_CUTOFF = 512

# below this coefficient count Newton iteration loses to the straight
# sequential recurrence (which then fits in one machine word)
_NEWTON_CUTOFF = 64

_SPREAD_MASKS = [
    (np.uint64(16), np.uint64(0x0000FFFF0000FFFF)),
    (np.uint64(8), np.uint64(0x00FF00FF00FF00FF)),
    (np.uint64(4), np.uint64(0x0F0F0F0F0F0F0F0F)),
    (np.uint64(2), np.uint64(0x3333333333333333)),
    (np.uint64(1), np.uint64(0x5555555555555555)),
]


def _nwords(nbits: int) -> int:
    return (nbits + 63) >> 6


def _mask_tail(words: np.ndarray, nbits: int) -> np.ndarray:
    """Clear bits at positions >= nbits in the final word, in place."""
    rem = nbits & 63
    if rem:
        words[-1] &= _U64((1 << rem) - 1)
    return words


class GF2Series:
    """Immutable truncated GF(2) power series.

    ``words`` must contain exactly ``ceil((trunc + 1) / 64)`` uint64 words
    with every bit above ``trunc`` zero.  The array is adopted, not copied,
    and frozen; hand over ownership or pass a copy.
    """

    __slots__ = ("trunc", "words")

    def __init__(self, trunc: int, words: np.ndarray):
        if trunc < 0:
            raise ValueError("trunc must be >= 0")
        words = np.ascontiguousarray(words, dtype=_U64)
        if words.shape != (_nwords(trunc + 1),):
            raise ValueError(
                f"expected {_nwords(trunc + 1)} words for trunc={trunc}, "
                f"got {words.shape}"
            )
        rem = (trunc + 1) & 63
        if rem and (int(words[-1]) >> rem):
            raise ValueError("set bits above trunc (padding must be zero)")
        words.flags.writeable = False
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "words", words)

    def __setattr__(self, name, value):
        raise AttributeError("GF2Series is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, trunc: int) -> "GF2Series":
        return cls(trunc, np.zeros(_nwords(trunc + 1), dtype=_U64))

    @classmethod
    def one(cls, trunc: int) -> "GF2Series":
        words = np.zeros(_nwords(trunc + 1), dtype=_U64)
        words[0] = 1
        return cls(trunc, words)

    @classmethod
    def from_degrees(cls, degrees, trunc: int) -> "GF2Series":
        """Series with coefficient 1 at exactly the given degrees."""
        words = np.zeros(_nwords(trunc + 1), dtype=_U64)
        for d in degrees:
            d = int(d)
            if not 0 <= d <= trunc:
                raise ValueError(f"degree {d} outside [0, {trunc}]")
            words[d >> 6] |= _U64(1 << (d & 63))
        return cls(trunc, words)

    @classmethod
    def from_bits(cls, bits, trunc: int | None = None) -> "GF2Series":
        """Series from a 0/1 coefficient vector (degree = index)."""
        bits = np.asarray(bits, dtype=np.uint8)
        if trunc is None:
            trunc = len(bits) - 1
        if trunc < 0 or len(bits) != trunc + 1:
            raise ValueError("bits must hold exactly trunc + 1 coefficients")
        packed = np.packbits(bits & 1, bitorder="little")
        buf = np.zeros(_nwords(trunc + 1) * 8, dtype=np.uint8)
        buf[: len(packed)] = packed
        return cls(trunc, buf.view(_U64))

    @classmethod
    def from_int(cls, value: int, trunc: int) -> "GF2Series":
        """Series whose coefficient of q^n is bit n of ``value``."""
        if value < 0:
            raise ValueError("value must be >= 0")
        nw = _nwords(trunc + 1)
        value &= (1 << (trunc + 1)) - 1
        raw = value.to_bytes(nw * 8, "little")
        return cls(trunc, np.frombuffer(raw, dtype=_U64).copy())

    # -- accessors ---------------------------------------------------------

    def coeff(self, n: int) -> int:
        """Coefficient of q^n (0 or 1); n must not exceed the truncation."""
        if not 0 <= n <= self.trunc:
            raise ValueError(f"degree {n} outside valid range [0, {self.trunc}]")
        return (int(self.words[n >> 6]) >> (n & 63)) & 1

    def popcount(self) -> int:
        """Number of odd coefficients."""
        return int(np.bitwise_count(self.words).sum(dtype=np.int64))

    def odd_degrees(self) -> np.ndarray:
        """Sorted array of degrees with odd coefficient."""
        bits = np.unpackbits(
            self.words.view(np.uint8), count=self.trunc + 1, bitorder="little"
        )
        return np.flatnonzero(bits)

    def bits(self) -> np.ndarray:
        """Dense uint8 coefficient vector of length trunc + 1."""
        return np.unpackbits(
            self.words.view(np.uint8), count=self.trunc + 1, bitorder="little"
        )

    def to_int(self) -> int:
        return int.from_bytes(self.words.tobytes(), "little")

    def is_zero(self) -> bool:
        return not self.words.any()

    def term_string(self) -> str:
        """Sparse rendering like ``1 + q^2 + q^5`` (stable for golden tests)."""
        degs = self.odd_degrees()
        if len(degs) == 0:
            return "0"
        parts = []
        for d in degs:
            if d == 0:
                parts.append("1")
            elif d == 1:
                parts.append("q")
            else:
                parts.append(f"q^{d}")
        return " + ".join(parts)

    def hex_words(self) -> str:
        """Hex dump of the packed words, lowest word first."""
        return " ".join(f"0x{int(w):016x}" for w in self.words)

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GF2Series):
            return NotImplemented
        return self.trunc == other.trunc and bool(
            np.array_equal(self.words, other.words)
        )

    __hash__ = None

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"GF2Series(trunc={self.trunc}, odd_count={self.popcount()})"

    def __add__(self, other):
        if not isinstance(other, GF2Series):
            return NotImplemented
        return add(self, other)

    def __mul__(self, other):
        if not isinstance(other, GF2Series):
            return NotImplemented
        return mul(self, other)

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        return power(self, e)


# -- word-level helpers (nbits = number of valid coefficients) --------------


def _clip(words: np.ndarray, nbits: int) -> np.ndarray:
    return words[: _nwords(nbits)]


def _mul_words(aw: np.ndarray, bw: np.ndarray, nbits: int) -> np.ndarray:
    """Product words truncated to nbits coefficients, tail already masked."""
    aw = _clip(aw, nbits)
    bw = _clip(bw, nbits)
    out = np.zeros(_nwords(nbits), dtype=_U64)
    pa = int(np.bitwise_count(aw).sum(dtype=np.int64))
    pb = int(np.bitwise_count(bw).sum(dtype=np.int64))
    if pa == 0 or pb == 0:
        return out
    sparse, dense = (aw, bw) if pa <= pb else (bw, aw)
    if min(pa, pb) >= _DENSE_DRIVER_CUTOFF:
        _kernels.xor_shift_mul_dense(sparse, dense, out)
    else:
        _kernels.xor_shift_mul(sparse, dense, out)
    return _mask_tail(out, nbits)


def _spread(x: np.ndarray) -> np.ndarray:
    """Interleave a zero bit above each of the low 32 bits of every word."""
    for shift, mask in _SPREAD_MASKS:
        x = (x | (x << shift)) & mask
    return x


def _square_words(words: np.ndarray, nbits: int) -> np.ndarray:
    """Words of f(q^2) truncated to nbits coefficients."""
    src = _clip(words, (nbits + 1) // 2).copy()
    _mask_tail(src, (nbits + 1) // 2)
    lo = _spread(src & _U64(0xFFFFFFFF))
    hi = _spread(src >> _U64(32))
    dilated = np.empty(2 * len(src), dtype=_U64)
    dilated[0::2] = lo
    dilated[1::2] = hi
    nw = _nwords(nbits)
    out = np.zeros(nw, dtype=_U64)
    k = min(nw, len(dilated))
    out[:k] = dilated[:k]
    return _mask_tail(out, nbits)


def _invert_word(f0: int, nbits: int) -> int:
    """Sequential inversion of the low nbits coefficients of one word."""
    mask = (1 << nbits) - 1
    f0 &= mask
    g = 1
    prod = f0  # f * g so far
    for n in range(1, nbits):
        if (prod >> n) & 1:
            g |= 1 << n
            prod ^= (f0 << n) & mask
    return g


# -- public operations -------------------------------------------------------


def add(f: GF2Series, g: GF2Series) -> GF2Series:
    """Coefficientwise sum mod 2 (XOR); truncation is the minimum of the two."""
    trunc = min(f.trunc, g.trunc)
    nbits = trunc + 1
    out = _clip(f.words, nbits) ^ _clip(g.words, nbits)
    return GF2Series(trunc, _mask_tail(out, nbits))


def mul(f: GF2Series, g: GF2Series) -> GF2Series:
    """Product mod 2, truncated to min(f.trunc, g.trunc).

    The operand with fewer set bits drives the shift-XOR accumulation, so
    cost is O(popcount(driver) * words(result)).
    """
    trunc = min(f.trunc, g.trunc)
    return GF2Series(trunc, _mul_words(f.words, g.words, trunc + 1))


def square(f: GF2Series) -> GF2Series:
    """f(q)^2 = f(q^2) in characteristic 2: a pure degree dilation."""
    return GF2Series(f.trunc, _square_words(f.words, f.trunc + 1))


def pow2d(f: GF2Series, d: int) -> GF2Series:
    """f to the power 2^d via d squarings (d linear passes, no products)."""
    if d < 0:
        raise ValueError("d must be >= 0")
    for _ in range(d):
        f = square(f)
    return f


def power(f: GF2Series, e: int) -> GF2Series:
    """f^e by binary exponentiation (squarings dilate, odd steps multiply)."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    result = f
    for bitpos in range(e.bit_length() - 2, -1, -1):
        result = square(result)
        if (e >> bitpos) & 1:
            result = mul(result, f)
    return result


def inverse(f: GF2Series) -> GF2Series:
    """Multiplicative inverse up to the truncation of f.

    Requires constant term 1.  Newton iteration g <- f * g^2 doubles the
    valid precision per step (the characteristic-2 correction term drops
    out); below 64 coefficients a sequential in-word recurrence is used
    directly.
    """
    if not int(f.words[0]) & 1:
        raise NotAUnitError("series has constant term 0")
    nbits = f.trunc + 1
    base = min(nbits, _NEWTON_CUTOFF)
    g0 = _invert_word(int(f.words[0]), base)
    gw = np.array([g0], dtype=_U64)
    cur = base
    while cur < nbits:
        cur = min(2 * cur, nbits)
        g2 = _square_words(gw, cur)
        gw = _mul_words(_clip(f.words, cur), g2, cur)
    out = np.zeros(_nwords(nbits), dtype=_U64)
    out[: len(gw)] = gw
    return GF2Series(f.trunc, _mask_tail(out, nbits))


def truncate(f: GF2Series, trunc: int) -> GF2Series:
    """Restriction of f to degrees <= trunc (trunc may not grow)."""
    if trunc > f.trunc:
        raise ValueError("cannot extend a series beyond its valid truncation")
    nbits = trunc + 1
    return GF2Series(trunc, _mask_tail(_clip(f.words, nbits).copy(), nbits))


def first_difference(f: GF2Series, g: GF2Series) -> int | None:
    """Smallest degree where f and g disagree, or None if they agree.

    Comparison runs over the common valid range min(f.trunc, g.trunc).
    """
    nbits = min(f.trunc, g.trunc) + 1
    nw = _nwords(nbits)
    diff = _clip(f.words, nbits) ^ _clip(g.words, nbits)
    _mask_tail(diff, nbits)
    nz = np.nonzero(diff)[0]
    if len(nz) == 0:
        return None
    w = int(nz[0])
    v = int(diff[w])
    return (w << 6) + ((v & -v).bit_length() - 1)


def pentagonal_series(a: int, trunc: int) -> GF2Series:
    """Parity of the product expansion of prod_{i>=1} (1 - q^{a i}).

    Generated directly from its support: the coefficient of q^n is odd
    exactly when n = a*k*(3k-1)/2 for some integer k (generalized
    pentagonal numbers scaled by a).
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    degrees = []
    k = 0
    while True:
        d = a * k * (3 * k - 1) // 2
        if d > trunc:
            break
        degrees.append(d)
        k += 1
    k = -1
    while True:
        d = a * k * (3 * k - 1) // 2
        if d > trunc:
            break
        degrees.append(d)
        k -= 1
    return GF2Series.from_degrees(degrees, trunc)


def geometric(a: int, b: int, trunc: int) -> GF2Series:
    """The progression comb q^b + q^{b+a} + q^{b+2a} + ... up to trunc."""
    if a < 1:
        raise ValueError("a must be >= 1")
    if b < 0:
        raise ValueError("b must be >= 0")
    if b > trunc:
        return GF2Series.zero(trunc)
    bits = np.zeros(trunc + 1, dtype=np.uint8)
    bits[b::a] = 1
    return GF2Series.from_bits(bits, trunc)
