"""Word-level kernels behind the GF(2) series arithmetic.

Series live in little-endian uint64 words (degree n at word n >> 6, bit
n & 63).  Multiplication walks the set bits of the sparser operand and
XOR-accumulates word-shifted copies of the denser one; with the pentagonal
factors that driver has O(sqrt(N)) set bits, which is what makes whole-repo
scans cheap.  The kernels are compiled with numba and cached on first use.
"""

import numba
import numpy as np

ONE = numba.uint64(1)


@numba.njit(cache=True)
def xor_shift_mul(sparse, dense, out):
    """XOR (dense << p) into out for every set bit p of sparse.

    out holds exactly the words of the product that the caller keeps; any
    contribution past its end is dropped.  Bits of the final word above the
    truncation are cleared by the caller.
    """
    nout = out.shape[0]
    ndense = dense.shape[0]
    for wi in range(sparse.shape[0]):
        w = sparse[wi]
        if w == 0:
            continue
        if wi >= nout:
            return
        for j in range(64):
            if (w >> j) & ONE:
                p = (wi << 6) + j
                wq = p >> 6
                br = p & 63
                hi = nout - wq
                if hi <= 0:
                    break
                if hi > ndense:
                    hi = ndense
                if br == 0:
                    for i in range(hi):
                        out[wq + i] ^= dense[i]
                else:
                    out[wq] ^= dense[0] << br
                    for i in range(1, hi):
                        out[wq + i] ^= (dense[i] << br) | (dense[i - 1] >> (64 - br))
                    if wq + ndense < nout:
                        out[wq + ndense] ^= dense[ndense - 1] >> (64 - br)


@numba.njit(cache=True)
def xor_shift_mul_dense(sparse, dense, out):
    """Same contract as xor_shift_mul, tuned for a dense driver.

    All 64 sub-word shifts of dense are materialized once so the inner
    loop is a pure word-aligned XOR.  Worth the 64x staging cost only when
    the driver has many set bits; the caller decides.
    """
    nout = out.shape[0]
    ndense = dense.shape[0]
    nrow = ndense + 1
    shifted = np.zeros((64, nrow), dtype=np.uint64)
    for i in range(ndense):
        shifted[0, i] = dense[i]
    for br in range(1, 64):
        shifted[br, 0] = dense[0] << br
        for i in range(1, ndense):
            shifted[br, i] = (dense[i] << br) | (dense[i - 1] >> (64 - br))
        shifted[br, ndense] = dense[ndense - 1] >> (64 - br)
    for wi in range(sparse.shape[0]):
        w = sparse[wi]
        if w == 0:
            continue
        if wi >= nout:
            return
        for j in range(64):
            if (w >> j) & ONE:
                p = (wi << 6) + j
                wq = p >> 6
                br = p & 63
                hi = nout - wq
                if hi <= 0:
                    break
                if hi > nrow:
                    hi = nrow
                row = shifted[br]
                for i in range(hi):
                    out[wq + i] ^= row[i]


def warm_up():
    """Trigger JIT compilation of every kernel (cached across processes)."""
    a = np.ones(2, dtype=np.uint64)
    out = np.zeros(2, dtype=np.uint64)
    xor_shift_mul(a, a, out)
    xor_shift_mul_dense(a, a, out.copy())
