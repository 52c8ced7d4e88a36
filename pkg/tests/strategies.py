"""Shared hypothesis strategies."""

import numpy as np
from hypothesis import strategies as st

from etaparity import EtaQuotientSpec, GF2Series


@st.composite
def gf2_series(draw, max_trunc=1 << 12, min_trunc=0):
    trunc = draw(st.integers(min_trunc, max_trunc))
    nbytes = (trunc + 1 + 7) // 8
    raw = draw(st.binary(min_size=nbytes, max_size=nbytes))
    value = int.from_bytes(raw, "little")
    return GF2Series.from_int(value, trunc)


@st.composite
def unit_series(draw, max_trunc=1 << 12):
    f = draw(gf2_series(max_trunc=max_trunc))
    words = f.words.copy()
    words[0] |= np.uint64(1)
    return GF2Series(f.trunc, words)


@st.composite
def eta_specs(draw, max_subscript=6, max_exponent=8):
    subscripts = draw(
        st.lists(
            st.integers(1, max_subscript), unique=True, min_size=0, max_size=4
        )
    )
    factors = []
    for s in subscripts:
        e = draw(st.integers(1, max_exponent))
        negate = draw(st.booleans())
        factors.append((s, -e if negate else e))
    return EtaQuotientSpec.from_signed_factors(factors)
