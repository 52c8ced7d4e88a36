"""Eta-quotient model: parsing, expansion to parity series, lacunarity test.

A quotient is a product of factors ``f_j = prod_{i>=1} (1 - q^{j i})`` with
positive exponents in the numerator and denominator.  The fractional-power
prefactor sometimes attached to these products is dropped throughout: it
never changes which coefficients are even.

The expression grammar (also the CLI contract):

    expr   := factor (('*' | '/') factor)* | '1'
    factor := 'f' INT ('^' SIGNED_INT)?

Whitespace is ignored.  A negative exponent is sugar for a denominator
factor, repeated subscripts merge by exponent addition, and subscripts
appearing on both sides cancel, so ``f1*f2/f1`` normalizes to ``f2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import gf2series
from .errors import EtaSyntaxError, ZeroSubscriptError
from .gf2series import GF2Series


@dataclass(frozen=True)
class EtaQuotientSpec:
    """Normalized factor lists: (subscript, exponent) pairs, exponents > 0.

    Subscripts are strictly increasing within each list and never shared
    between the two (common factors cancel during normalization).  Both
    lists empty means the constant quotient 1.
    """

    num: tuple[tuple[int, int], ...] = ()
    den: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for side in (self.num, self.den):
            last = 0
            for subscript, exponent in side:
                if subscript <= last:
                    raise ValueError("subscripts must be distinct and sorted")
                if exponent <= 0:
                    raise ValueError("exponents must be positive")
                last = subscript
        shared = {s for s, _ in self.num} & {s for s, _ in self.den}
        if shared:
            raise ValueError(f"subscript in both numerator and denominator: {shared}")

    @classmethod
    def from_signed_factors(cls, factors) -> "EtaQuotientSpec":
        """Normalize (subscript, signed exponent) pairs into a spec."""
        net: dict[int, int] = {}
        for subscript, exponent in factors:
            if subscript == 0:
                raise ZeroSubscriptError("f0 is meaningless")
            if subscript < 0:
                raise ValueError("subscripts must be positive")
            net[subscript] = net.get(subscript, 0) + exponent
        num = tuple((s, e) for s, e in sorted(net.items()) if e > 0)
        den = tuple((s, -e) for s, e in sorted(net.items()) if e < 0)
        return cls(num, den)

    def to_json_dict(self) -> dict:
        return {
            "num": [[s, e] for s, e in self.num],
            "den": [[s, e] for s, e in self.den],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "EtaQuotientSpec":
        try:
            num = [(int(s), int(e)) for s, e in data.get("num", [])]
            den = [(int(s), -int(e)) for s, e in data.get("den", [])]
        except (TypeError, ValueError) as exc:
            raise EtaSyntaxError(f"bad quotient JSON: {exc}") from None
        return cls.from_signed_factors(num + den)


@dataclass(frozen=True)
class LacunarityVerdict:
    """Outcome of the sparseness criterion, in exact rational arithmetic.

    ``satisfied`` certifies the quotient is odd with density zero; when it
    is False nothing follows (the criterion is one-directional).  ``deficit``
    is level_sum - weight_sum and is the interesting quantity when positive.
    """

    weight_sum: Fraction
    level_sum: int
    satisfied: bool
    deficit: Fraction


_FACTOR_RE = re.compile(r"f(\d+)(?:\^([+-]?\d+))?")


def parse(expr: str) -> EtaQuotientSpec:
    """Parse an eta-quotient expression into its normalized spec."""
    text = "".join(expr.split())
    if not text:
        raise EtaSyntaxError("empty expression")
    if text == "1":
        return EtaQuotientSpec()
    factors = []
    pos = 0
    sign = 1
    while True:
        m = _FACTOR_RE.match(text, pos)
        if m is None:
            raise EtaSyntaxError(f"expected factor at position {pos} in {expr!r}")
        subscript = int(m.group(1))
        if subscript == 0:
            raise ZeroSubscriptError("f0 is meaningless")
        exponent = int(m.group(2)) if m.group(2) is not None else 1
        factors.append((subscript, sign * exponent))
        pos = m.end()
        if pos == len(text):
            break
        op = text[pos]
        if op == "*":
            sign = 1
        elif op == "/":
            sign = -1
        else:
            raise EtaSyntaxError(f"expected '*' or '/' at position {pos} in {expr!r}")
        pos += 1
    return EtaQuotientSpec.from_signed_factors(factors)


def render(spec: EtaQuotientSpec) -> str:
    """Canonical expression for a spec; parse(render(s)) == s."""
    if not spec.num and not spec.den:
        return "1"
    if not spec.num:
        # pure denominator: explicit negative exponents
        return "*".join(f"f{s}^{-e}" for s, e in spec.den)
    text = "*".join(f"f{s}" if e == 1 else f"f{s}^{e}" for s, e in spec.num)
    for s, e in spec.den:
        text += f"/f{s}" if e == 1 else f"/f{s}^{e}"
    return text


def _pow_factored(f: GF2Series, e: int) -> GF2Series:
    """f^e with the 2-power part of e peeled off into squarings."""
    k = (e & -e).bit_length() - 1
    m = e >> k
    return gf2series.pow2d(gf2series.power(f, m), k)


def expand(spec: EtaQuotientSpec, trunc: int) -> GF2Series:
    """Coefficient parities of the quotient up to the given truncation."""
    result = GF2Series.one(trunc)
    for subscript, exponent in spec.num:
        factor = _pow_factored(gf2series.pentagonal_series(subscript, trunc), exponent)
        result = gf2series.mul(result, factor)
    for subscript, exponent in spec.den:
        factor = _pow_factored(gf2series.pentagonal_series(subscript, trunc), exponent)
        result = gf2series.mul(result, gf2series.inverse(factor))
    return result


def check_lacunarity(spec: EtaQuotientSpec) -> LacunarityVerdict:
    """Exact-rational sparseness criterion: sum r/alpha >= sum s*gamma."""
    weight_sum = sum(
        (Fraction(e, s) for s, e in spec.num), start=Fraction(0)
    )
    level_sum = sum(e * s for s, e in spec.den)
    deficit = level_sum - weight_sum
    return LacunarityVerdict(
        weight_sum=weight_sum,
        level_sum=level_sum,
        satisfied=weight_sum >= level_sum,
        deficit=deficit,
    )


def minimal_d(spec: EtaQuotientSpec, a: int) -> int:
    """Smallest d >= 0 with 2^d >= a * (level_sum - weight_sum), exactly.

    This is the number of squarings that makes the dilated pentagonal
    factor absorb the quotient's deficit, so their product passes the
    sparseness criterion.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    need = a * check_lacunarity(spec).deficit
    d = 0
    while (1 << d) < need:
        d += 1
    return d
