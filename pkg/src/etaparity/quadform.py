"""Representation counts for the dyadic quadratic forms T_d.

For a parameter d >= 1 the form has 2^(d-1) integer variables, each
contributing 2^d * x^2 - (2i-1) * x.  Per variable the attained values are
nonnegative and pairwise distinct (2^d * (x + y) = 2i - 1 has no integer
solution for an odd right side), so each variable yields a 0/1 theta set
and the full count table is their convolution.

Exact counting uses 64-bit accumulators with mandatory overflow detection;
parity-only counting multiplies the theta sets as GF(2) series, sharing the
package's bit-packed kernel.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from . import etaq, gf2series, parity
from .errors import CountOverflowError
from .gf2series import GF2Series

# exact counts must stay below this to rule out int64 wraparound
_ACC_LIMIT = 1 << 63

_BITMAP_MAGIC = b"RDP1"


@dataclass(frozen=True)
class QuadFormSpec:
    """Shape of the form: variable count and coefficients derived from d."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")

    @property
    def num_vars(self) -> int:
        return 1 << (self.d - 1)

    @property
    def quad_coeff(self) -> int:
        return 1 << self.d

    def linear_coeff(self, i: int) -> int:
        if not 1 <= i <= self.num_vars:
            raise IndexError(f"variable index {i} outside 1..{self.num_vars}")
        return 2 * i - 1


@dataclass(frozen=True)
class RepCountTable:
    """Representation counts of T_d up to ``bound``.

    ``counts`` holds the exact values when the table was built in exact
    mode, otherwise None; ``parity`` always holds the counts mod 2.
    """

    d: int
    bound: int
    counts: np.ndarray | None
    parity: GF2Series

    def to_csv(self) -> str:
        lines = ["n,count,parity"]
        bits = self.parity.bits()
        if self.counts is None:
            for n in range(self.bound + 1):
                lines.append(f"{n},,{bits[n]}")
        else:
            for n in range(self.bound + 1):
                lines.append(f"{n},{self.counts[n]},{bits[n]}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> list:
        bits = self.parity.bits()
        rows = []
        for n in range(self.bound + 1):
            count = None if self.counts is None else int(self.counts[n])
            rows.append({"n": n, "count": count, "parity": int(bits[n])})
        return rows


def variable_theta(d: int, i: int, bound: int) -> np.ndarray:
    """Sorted values of 2^d * x^2 - (2i-1) * x within [0, bound].

    Each value is attained by exactly one integer x, so the set size equals
    the number of x tried.
    """
    spec = QuadFormSpec(d)
    m = spec.linear_coeff(i)
    c = spec.quad_coeff
    values = []
    x = 0
    while True:
        v = c * x * x - m * x
        if v > bound:
            break
        values.append(v)
        x += 1
    x = -1
    while True:
        v = c * x * x - m * x
        if v > bound:
            break
        values.append(v)
        x -= 1
    return np.array(sorted(values), dtype=np.int64)


def _convolve_exact(acc: np.ndarray, theta: np.ndarray, bound: int) -> np.ndarray:
    """One exact convolution stage with wraparound ruled out up front.

    If the pessimistic bound max(acc) * len(theta) cannot certify safety,
    the stage is redone in unbounded integers; a true count at or above the
    64-bit limit raises CountOverflowError naming the first such degree.
    """
    peak = int(acc.max()) if len(acc) else 0
    if peak * len(theta) < _ACC_LIMIT:
        new = np.zeros(bound + 1, dtype=np.int64)
        for v in theta:
            v = int(v)
            new[v:] += acc[: bound + 1 - v]
        return new
    wide = np.zeros(bound + 1, dtype=object)
    acc_wide = acc.astype(object)
    for v in theta:
        v = int(v)
        wide[v:] += acc_wide[: bound + 1 - v]
    for n in range(bound + 1):
        if wide[n] >= _ACC_LIMIT:
            raise CountOverflowError(n)
    return wide.astype(np.int64)


def rep_counts(d: int, bound: int, exact: bool = False) -> RepCountTable:
    """Count table of the d-th form up to ``bound``.

    exact=True convolves the per-variable theta sets over the integers;
    exact=False multiplies them as GF(2) series and fills only the parity.
    """
    spec = QuadFormSpec(d)
    if bound < 0:
        raise ValueError("bound must be >= 0")
    if exact:
        acc = np.zeros(bound + 1, dtype=np.int64)
        acc[0] = 1
        for i in range(1, spec.num_vars + 1):
            acc = _convolve_exact(acc, variable_theta(d, i, bound), bound)
        bits = (acc & 1).astype(np.uint8)
        return RepCountTable(
            d=d, bound=bound, counts=acc, parity=GF2Series.from_bits(bits, bound)
        )
    series = GF2Series.one(bound)
    for i in range(1, spec.num_vars + 1):
        theta = GF2Series.from_degrees(variable_theta(d, i, bound), bound)
        series = gf2series.mul(series, theta)
    return RepCountTable(d=d, bound=bound, counts=None, parity=series)


def odd_rep_count(
    d: int,
    bound: int,
    ap: tuple[int, int] | None = None,
    threads: int | None = None,
) -> int:
    """#{n <= bound : count of representations of n is odd}.

    With ap=(c, r) only degrees n = r (mod c) are counted.
    """
    table = rep_counts(d, bound, exact=False)
    if ap is None:
        c, r = 1, 0
    else:
        c, r = ap
        if not 0 <= r < c:
            raise ValueError("ap residue must satisfy 0 <= r < c")
    return parity.count_parity(table.parity, c, r, bound, threads=threads).odd_count


def probe_power_equivalence(d: int, bound: int) -> int | None:
    """Compare representation parity against the (2^(2d)-1)-th power.

    The left side is the parity of the count table; the right side is the
    coefficient parity of the pentagonal product expansion raised to
    2^(2d) - 1, computed by an entirely separate route.  Returns None when
    they agree through ``bound``, else the first disagreeing degree.  A
    mismatch is a reportable finding about the candidate identity, not an
    error.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    table = rep_counts(d, bound, exact=False)
    exponent = (1 << (2 * d)) - 1
    spec = etaq.EtaQuotientSpec(num=((1, exponent),))
    series = etaq.expand(spec, bound)
    return gf2series.first_difference(table.parity, series)


def write_parity_bitmap(table: RepCountTable, path) -> None:
    """Compact parity-only export: RDP1 magic, d (u32 LE), bound (u64 LE),
    then the parity bits packed little-endian within bytes."""
    nbytes = (table.bound + 1 + 7) // 8
    payload = table.parity.words.astype("<u8").tobytes()[:nbytes]
    with open(path, "wb") as fh:
        fh.write(_BITMAP_MAGIC)
        fh.write(struct.pack("<IQ", table.d, table.bound))
        fh.write(payload)


def read_parity_bitmap(path) -> RepCountTable:
    """Read a parity bitmap written by write_parity_bitmap."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[:4] != _BITMAP_MAGIC:
        raise ValueError("not a parity bitmap (bad magic)")
    d, bound = struct.unpack_from("<IQ", raw, 4)
    nbytes = (bound + 1 + 7) // 8
    payload = raw[16 : 16 + nbytes]
    if len(payload) != nbytes or len(raw) != 16 + nbytes:
        raise ValueError("parity bitmap length does not match its header")
    nwords = (bound + 64) // 64
    buf = payload.ljust(nwords * 8, b"\x00")
    words = np.frombuffer(buf, dtype="<u8").astype(np.uint64)
    return RepCountTable(
        d=d, bound=bound, counts=None, parity=GF2Series(bound, words)
    )
