"""Independent reference implementations used to pin expected values.

Everything here works on plain Python integers (as bit vectors) or lists,
never through the package's numpy/numba path, so a bug in the fast
arithmetic cannot hide in its own oracle.
"""

from math import isqrt


def int_mul_gf2(a: int, b: int, nbits: int) -> int:
    """Carryless product of two bit-vector ints, truncated to nbits."""
    acc = 0
    x = a
    while x:
        lsb = x & -x
        acc ^= b << (lsb.bit_length() - 1)
        x ^= lsb
    return acc & ((1 << nbits) - 1)


def euler_product_parity(n: int) -> int:
    """Naive expansion of prod_{i=1..n} (1 - q^i) mod 2, one factor at a time."""
    mask = (1 << (n + 1)) - 1
    p = 1
    for i in range(1, n + 1):
        p = (p ^ (p << i)) & mask
    return p


def scaled_euler_product_parity(scale: int, n: int) -> int:
    """Naive expansion of prod (1 - q^{scale*i}) mod 2 up to degree n."""
    mask = (1 << (n + 1)) - 1
    p = 1
    i = scale
    while i <= n:
        p = (p ^ (p << i)) & mask
        i += scale
    return p


def partition_counts(n: int) -> list[int]:
    """p(0..n) by the classical recurrence over generalized pentagonal numbers."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = 1 if k % 2 == 1 else -1
            if g1 <= m:
                total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p


def partition_parity(n: int) -> list[int]:
    return [v & 1 for v in partition_counts(n)]


def convolve_mod2(abits: list[int], bbits: list[int], n: int) -> list[int]:
    """Literal double-loop convolution parity up to degree n."""
    out = [0] * (n + 1)
    for i, ai in enumerate(abits):
        if not ai or i > n:
            continue
        for j, bj in enumerate(bbits):
            if bj and i + j <= n:
                out[i + j] ^= 1
    return out


def sequential_inverse_parity(f: int, n: int) -> int:
    """Inverse of a unit bit-vector series by the order-n^2 recurrence."""
    assert f & 1
    mask = (1 << (n + 1)) - 1
    f &= mask
    g = 1
    prod = f
    for m in range(1, n + 1):
        if (prod >> m) & 1:
            g |= 1 << m
            prod = (prod ^ (f << m)) & mask
    return g


def generalized_pentagonals(limit: int) -> list[int]:
    """Sorted k(3k-1)/2 for integer k, up to limit."""
    vals = set()
    k = 0
    while k * (3 * k - 1) // 2 <= limit:
        vals.add(k * (3 * k - 1) // 2)
        k += 1
    k = -1
    while k * (3 * k - 1) // 2 <= limit:
        vals.add(k * (3 * k - 1) // 2)
        k -= 1
    return sorted(vals)


def triangulars(limit: int) -> list[int]:
    """Sorted a(a+1)/2, a >= 0, up to limit."""
    vals = []
    a = 0
    while a * (a + 1) // 2 <= limit:
        vals.append(a * (a + 1) // 2)
        a += 1
    return vals


def pair_rep_parity_4ta_tb(n: int) -> list[int]:
    """Parity of #{(a, b) >= 0 : 4*T_a + T_b = m} for each m <= n."""
    out = [0] * (n + 1)
    ta = triangulars(n // 4)
    tb = triangulars(n)
    for x in ta:
        for y in tb:
            if 4 * x + y <= n:
                out[4 * x + y] ^= 1
    return out


def brute_force_rep_counts(d: int, n: int) -> list[int]:
    """Exact representation counts by nested loops over the variable box.

    Per variable the search box is |x| <= isqrt(n / 2^d) + 1, which covers
    every solution since each term is nonnegative and at least
    2^d x^2 - (2^d - 1)|x|.
    """
    nvars = 1 << (d - 1)
    c = 1 << d
    box = isqrt(n // c) + 2
    counts = [0] * (n + 1)

    def rec(i: int, acc: int):
        if acc > n:
            return
        if i > nvars:
            counts[acc] += 1
            return
        m = 2 * i - 1
        for x in range(-box, box + 1):
            rec(i + 1, acc + c * x * x - m * x)

    rec(1, 0)
    return counts
