"""Power series carrying a uniformizer of the base into an upper floor.

The canonical object is a digit series: pi_base = sum_h lift(a_h) *
pi^(n+h) with Teichmuller digit coefficients, offset n the ramification
index of the floor over the series' base.  Digits are stored as residues
and lifted on demand; the leading digit a_0 is never zero.

A general series is the same shape with arbitrary ground-field scalars
as coefficients.  It shows up as the e-th root produced by tame twists,
as a formal composite of two digit series, and as a digit series plus a
multiple of the Eisenstein polynomial.
"""

from __future__ import annotations

import math

from .base import digit_expand_base
from .errors import BadTameDegree, NotOneUnit, PrecisionExhausted


class DigitSeries:
    __slots__ = ("offset", "digits", "ground")

    def __init__(self, offset, digits, ground):
        self.offset = offset
        self.digits = tuple(int(d) % ground.p for d in digits)
        self.ground = ground
        if self.digits and self.digits[0] == 0:
            raise ValueError("leading digit must be nonzero")

    @property
    def p(self):
        return self.ground.p

    @property
    def horizon(self):
        return len(self.digits)

    def support(self):
        return tuple(h for h, d in enumerate(self.digits) if d)

    def coeff_lifted(self, ring, h):
        return ring.teichmuller(self.digits[h])

    def coeff_scalar(self, h):
        return self.ground.teichmuller(self.digits[h])

    def __eq__(self, other):
        if not isinstance(other, DigitSeries):
            return NotImplemented
        return (self.offset, self.digits) == (other.offset, other.digits)

    __hash__ = None

    def __repr__(self):
        return "DigitSeries(offset=%d, digits=%r)" % (self.offset, list(self.digits))


class GeneralSeries:
    __slots__ = ("offset", "coeffs")

    def __init__(self, offset, coeffs):
        self.offset = offset
        self.coeffs = tuple(coeffs)

    @property
    def ground(self):
        return self.coeffs[0].field

    @property
    def horizon(self):
        return len(self.coeffs)

    def support(self):
        return tuple(
            h for h, c in enumerate(self.coeffs) if not c.is_zero_to_precision()
        )

    def coeff_lifted(self, ring, h):
        return ring.embed(self.coeffs[h])

    def coeff_scalar(self, h):
        return self.coeffs[h]

    def __repr__(self):
        return "GeneralSeries(offset=%d, horizon=%d)" % (self.offset, self.horizon)


def expand_digits(target, horizon):
    """Digit series of an element whose valuation is the ramification index.

    ``target`` is the embedded image of the base uniformizer in an upper
    floor; its exact valuation becomes the offset.
    """
    n = target.valuation()
    unit = target.udiv(n)
    digits = digit_expand_base(unit, horizon)
    return DigitSeries(n, digits, target.floor.ground)


def evaluate(series, x):
    """Horner evaluation of sum_h c_h * x^(offset+h) in x's ring."""
    ring = x.floor
    acc = ring.zero()
    for h in range(series.horizon - 1, -1, -1):
        acc = acc * x + series.coeff_lifted(ring, h)
    return acc * x ** series.offset


def normalize_leading_digit(series: DigitSeries) -> DigitSeries:
    """Scale so the leading digit becomes 1; Teichmuller lifts multiply."""
    d0 = series.digits[0]
    if d0 == 1:
        return series
    inv = series.ground.residue_inverse(d0)
    p = series.p
    return DigitSeries(
        series.offset, tuple(d * inv % p for d in series.digits), series.ground
    )


def alternate_series(series: DigitSeries, poly) -> GeneralSeries:
    """The series plus X^n * E(X); it evaluates to the same element at pi."""
    n = series.offset
    if poly.degree != n:
        raise ValueError("polynomial degree must match the series offset")
    ground = series.ground
    horizon = max(series.horizon, n + 1)
    coeffs = []
    for h in range(horizon):
        c = series.coeff_scalar(h) if h < series.horizon else ground.zero()
        if h < n:
            c = c + poly.coeffs[h]
        elif h == n:
            c = c + ground.one()
        coeffs.append(c)
    return GeneralSeries(n, coeffs)


# -- dense polynomial helpers over ground scalars ----------------------


def _poly_mul(a, b, out_len, zero):
    buf = [zero] * out_len
    for i, ai in enumerate(a):
        if i >= out_len:
            break
        if ai.is_zero_to_precision():
            continue
        for j, bj in enumerate(b):
            if i + j >= out_len:
                break
            if bj.is_zero_to_precision():
                continue
            buf[i + j] = buf[i + j] + ai * bj
    return buf


def _poly_pow(a, e, out_len, zero, one):
    out = [one]
    sq = list(a[:out_len])
    while e:
        if e & 1:
            out = _poly_mul(out, sq, out_len, zero)
        e >>= 1
        if e:
            sq = _poly_mul(sq, sq, out_len, zero)
    return out + [zero] * (out_len - len(out))


def _scalar_root(c0, e, ground):
    """The 1-unit y with y^e = c0, by Newton from y = 1."""
    if c0.residue() != 1:
        raise NotOneUnit("leading coefficient is not a 1-unit")
    y = ground.one()
    for _ in range(ground.prec.bit_length() + 3):
        err = y ** e - c0
        if err.is_zero_to_precision():
            return y
        deriv = (y ** (e - 1)) * e
        y = y - err * deriv.unit_inverse()
    if (y ** e - c0).is_zero_to_precision():
        return y
    raise PrecisionExhausted("e-th root did not converge")


def eth_root_substitute(series, e: int, out_horizon=None) -> GeneralSeries:
    """The series T with T(X)^e = S(X^e), for gcd(e, p*n) = 1.

    S = sum a_h X^(n+h) gives S(X^e) = X^(ne) * g(X) with g supported on
    multiples of e; T = X^n * g(X)^(1/e) keeps the offset n.
    """
    n = series.offset
    ground = series.ground
    p = ground.p
    if math.gcd(e, p * n) != 1:
        raise BadTameDegree("e = %d shares a factor with p*n = %d" % (e, p * n))
    if out_horizon is None:
        out_horizon = e * (series.horizon - 1) + 1
    zero = ground.zero()
    g = [zero] * out_horizon
    for h in range(series.horizon):
        if e * h < out_horizon:
            g[e * h] = series.coeff_scalar(h)
    t0 = _scalar_root(g[0], e, ground)
    one = ground.one()
    lead_inv = (t0 ** (e - 1) * e).unit_inverse()
    ts = [t0]
    for w in range(1, out_horizon):
        cur = _poly_pow(ts, e, w + 1, zero, one)
        ts.append((g[w] - cur[w]) * lead_inv)
    return GeneralSeries(n, ts)


def compose_series(outer, inner, out_horizon) -> GeneralSeries:
    """Formal coefficients of outer(inner(X)) through the given horizon.

    Both series have ground coefficients; the result has offset equal to
    the product of the offsets, matching a two-step tower where inner
    carries pi_M to pi_L and outer carries pi_L to pi_K.
    """
    ground = inner.ground
    zero = ground.zero()
    one = ground.one()
    total = outer.offset * inner.offset + out_horizon
    gp = [zero] * min(inner.offset + inner.horizon, total)
    for h in range(inner.horizon):
        k = inner.offset + h
        if k < len(gp):
            gp[k] = inner.coeff_scalar(h)
    acc = [zero]
    for h in range(outer.horizon - 1, -1, -1):
        acc = _poly_mul(acc, gp, total, zero)
        acc[0] = acc[0] + outer.coeff_scalar(h)
    gn = _poly_pow(gp, outer.offset, total, zero, one)
    res = _poly_mul(acc, gn, total, zero)
    off = outer.offset * inner.offset
    return GeneralSeries(off, res[off : off + out_horizon])
