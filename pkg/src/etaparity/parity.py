"""Parity counting over arithmetic progressions and the scan machinery.

Everything here is a pure function over immutable series.  Counting over
the full range uses word popcounts and may optionally fan out over a thread
pool; chunk boundaries are fixed, so the result never depends on the degree
of parallelism.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import etaq, gf2series
from .errors import BoundExceedsTruncationError
from .etaq import EtaQuotientSpec
from .gf2series import GF2Series

THREADS_ENV_VAR = "ETAPARITY_THREADS"

# words per popcount chunk; fixed so threaded and sequential sums agree
_CHUNK_WORDS = 1 << 14

_GATHER_CHUNK = 1 << 20


@dataclass(frozen=True)
class ParityCount:
    """Even/odd coefficient tallies in degrees n <= x with n = b (mod a)."""

    a: int
    b: int
    x: int
    even_count: int
    odd_count: int

    @property
    def total(self) -> int:
        return self.even_count + self.odd_count


@dataclass(frozen=True)
class ScanPoint:
    x: int
    count: int
    normalized: float


@dataclass(frozen=True)
class ScanReport:
    """Checkpoint table for a growth or density scan.

    ``kind`` is ``growth_sqrt`` (count / sqrt(x)) or ``density`` (count / x).
    Counts are exact; normalized values are presentation only and are
    emitted with 6 significant digits.
    """

    kind: str
    points: tuple[ScanPoint, ...]

    def __post_init__(self):
        if self.kind not in ("growth_sqrt", "density"):
            raise ValueError(f"unknown scan kind {self.kind!r}")
        xs = [p.x for p in self.points]
        if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
            raise ValueError("checkpoints must be strictly increasing")

    def to_csv(self) -> str:
        lines = ["kind,x,count,normalized"]
        for p in self.points:
            lines.append(f"{self.kind},{p.x},{p.count},{p.normalized:.6g}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> list:
        return [
            {
                "kind": self.kind,
                "x": p.x,
                "count": p.count,
                "normalized": float(f"{p.normalized:.6g}"),
            }
            for p in self.points
        ]


def resolve_threads(threads: int | None = None) -> int:
    """Effective worker count: the env override wins, then the hint."""
    env = os.environ.get(THREADS_ENV_VAR)
    if env is not None:
        try:
            threads = int(env)
        except ValueError:
            raise ValueError(f"{THREADS_ENV_VAR} must be an integer") from None
    if threads is None:
        threads = os.cpu_count() or 1
    return max(1, threads)


def _popcount_prefix(f: GF2Series, nbits: int, threads: int) -> int:
    """Number of set bits among coefficients 0 .. nbits-1."""
    full = nbits >> 6
    rem = nbits & 63
    words = f.words
    tail = 0
    if rem:
        tail = int(np.uint64(words[full]) & np.uint64((1 << rem) - 1)).bit_count()
    if full == 0:
        return tail
    chunks = range(0, full, _CHUNK_WORDS)
    if threads > 1 and len(chunks) > 1:
        def count(lo):
            return int(
                np.bitwise_count(words[lo : min(lo + _CHUNK_WORDS, full)]).sum(
                    dtype=np.int64
                )
            )

        with ThreadPoolExecutor(max_workers=threads) as pool:
            total = sum(pool.map(count, chunks))
    else:
        total = int(np.bitwise_count(words[:full]).sum(dtype=np.int64))
    return total + tail


def count_parity(
    f: GF2Series, a: int, b: int, x: int, threads: int | None = None
) -> ParityCount:
    """Tally even and odd coefficients of f over n = b (mod a), n <= x."""
    if a < 1:
        raise ValueError("modulus a must be >= 1")
    if not 0 <= b < a:
        raise ValueError("residue b must satisfy 0 <= b < a")
    if x < 0:
        raise ValueError("bound x must be >= 0")
    if x > f.trunc:
        raise BoundExceedsTruncationError(
            f"bound {x} exceeds series truncation {f.trunc}"
        )
    nworkers = resolve_threads(threads)
    if a == 1:
        odd = _popcount_prefix(f, x + 1, nworkers)
        total = x + 1
    else:
        if b > x:
            return ParityCount(a=a, b=b, x=x, even_count=0, odd_count=0)
        total = (x - b) // a + 1
        odd = 0
        words = f.words
        for lo in range(b, x + 1, a * _GATHER_CHUNK):
            idx = np.arange(lo, min(lo + a * _GATHER_CHUNK, x + 1), a, dtype=np.int64)
            bits = (words[idx >> 6] >> (idx & 63).astype(np.uint64)) & np.uint64(1)
            odd += int(bits.sum(dtype=np.int64))
    return ParityCount(a=a, b=b, x=x, even_count=total - odd, odd_count=odd)


def _validate_checkpoints(checkpoints) -> list[int]:
    xs = [int(x) for x in checkpoints]
    if any(x < 1 for x in xs):
        raise ValueError("checkpoints must be >= 1")
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
        raise ValueError("checkpoints must be strictly increasing")
    return xs


def growth_scan(
    spec: EtaQuotientSpec,
    a: int,
    b: int,
    checkpoints,
    threads: int | None = None,
) -> ScanReport:
    """Even-count trajectory g(x) / sqrt(x) over n = b (mod a).

    The quotient is expanded once at the largest checkpoint and every
    checkpoint is counted against that one expansion.
    """
    xs = _validate_checkpoints(checkpoints)
    if not xs:
        return ScanReport(kind="growth_sqrt", points=())
    f = etaq.expand(spec, xs[-1])
    points = []
    for x in xs:
        even = count_parity(f, a, b, x, threads=threads).even_count
        points.append(ScanPoint(x=x, count=even, normalized=even / math.sqrt(x)))
    return ScanReport(kind="growth_sqrt", points=tuple(points))


def density_scan(
    f: GF2Series, checkpoints, threads: int | None = None
) -> ScanReport:
    """Odd-coefficient density count(x) / x over all residues."""
    xs = _validate_checkpoints(checkpoints)
    if xs and xs[-1] > f.trunc:
        raise BoundExceedsTruncationError(
            f"checkpoint {xs[-1]} exceeds series truncation {f.trunc}"
        )
    points = []
    for x in xs:
        odd = count_parity(f, 1, 0, x, threads=threads).odd_count
        points.append(ScanPoint(x=x, count=odd, normalized=odd / x))
    return ScanReport(kind="density", points=tuple(points))


def product_identity_mismatch(
    spec: EtaQuotientSpec, a: int, b: int, d: int, trunc: int
) -> int | None:
    """Check the comb-splitting product identity; None means it holds.

    Both sides of

        (comb_{a,b} + F) * P = comb_{a,b} * P + P * F

    are assembled independently from primitive operations, where P is the
    2^d-th power of the dilated pentagonal expansion and comb_{a,b} is the
    progression indicator series.  The identity holds in the ring, so any
    disagreement (returned as its smallest degree) is an arithmetic bug.
    """
    if not 0 <= b < a:
        raise ValueError("residue b must satisfy 0 <= b < a")
    if d < 0:
        raise ValueError("d must be >= 0")
    comb = gf2series.geometric(a, b, trunc)
    quotient = etaq.expand(spec, trunc)
    theta = gf2series.pow2d(gf2series.pentagonal_series(a, trunc), d)
    lhs = gf2series.mul(gf2series.add(comb, quotient), theta)
    rhs = gf2series.add(
        gf2series.mul(comb, theta), gf2series.mul(theta, quotient)
    )
    return gf2series.first_difference(lhs, rhs)


def theta_odd_count(a: int, d: int, x: int) -> int:
    """#{k integer : 2^d * a * k(3k-1)/2 <= x}, by direct index iteration.

    This is the exact number of odd coefficients of the 2^d-th power of
    the dilated pentagonal expansion in degrees <= x; no series storage is
    involved, so x may be far beyond any practical truncation.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    if d < 0 or x < 0:
        raise ValueError("d and x must be >= 0")
    scale = a << d
    count = 0
    k = 0
    while scale * k * (3 * k - 1) // 2 <= x:
        count += 1
        k += 1
    k = -1
    while scale * k * (3 * k - 1) // 2 <= x:
        count += 1
        k -= 1
    return count


def theta_count_relative_error(a: int, d: int, x: int) -> float:
    """Relative error of theta_odd_count against c * sqrt(x) / 2^d.

    The reference normalization uses c = 2*sqrt(2)/(a*sqrt(3)).  Beware:
    the exact count grows like sqrt(x / (a * 2^d)), so this error tends to
    sqrt(a * 2^d) - 1 and is only small when a * 2^d == 1.
    """
    predicted = 2.0 * math.sqrt(2.0) * math.sqrt(x) / (a * math.sqrt(3.0) * (1 << d))
    return abs(theta_odd_count(a, d, x) - predicted) / predicted


def _toggle_model(trunc: int) -> GF2Series:
    """Parity of #{generalized pentagonal numbers <= n} for each n."""
    indicator = np.zeros(trunc + 1, dtype=np.uint8)
    for deg in gf2series.pentagonal_series(1, trunc).odd_degrees():
        indicator[deg] = 1
    runs = np.cumsum(indicator, dtype=np.int64) & 1
    return GF2Series.from_bits(runs.astype(np.uint8), trunc)


def check_run_structure(trunc: int) -> bool:
    """Verify the alternating-run shape of the pentagonal partial sums.

    The series expansion of the pentagonal product divided by (1 - q) is
    computed with ring operations; independently, the predicted pattern
    toggles parity exactly at each generalized pentagonal number, starting
    odd at degree 0.  Returns True when the two agree up to trunc.
    """
    series = gf2series.mul(
        gf2series.pentagonal_series(1, trunc), gf2series.geometric(1, 0, trunc)
    )
    return series == _toggle_model(trunc)
