"""Two-step towers M/L/K: composed indices, lower bounds, and tame lifts.

The composed indices come from expanding the ground uniformizer directly
in the M-floor; the formal composite of the two one-step series is also
built and spot-checked against that expansion by evaluation.  The bound
functions lambda^l are computed twice, once as envelopes of composed
and scaled break functions and once straight from the index lines, and
the two must agree.

The final lower-bound report is deliberately neutral about direction:
the proved inequality says the composed break function dominates the
bound, and a pair of wild quadratics already makes the domination
strict (composed index 3 against bound 2), so the report records
bound, index and the observed relation instead of asserting a
one-sided claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .base import INFINITY, vp
from .errors import NotEisenstein, NotSeparable, TheoremViolation
from .extension import (
    EisensteinFloor,
    EisensteinPoly,
    attach_eisenstein,
    different_exponent,
)
from .invariants import InsepProfile, inseparability_profile, phi
from .plfun import Line, PLFunction
from .series import (
    compose_series,
    eth_root_substitute,
    evaluate,
    expand_digits,
    normalize_leading_digit,
)


@dataclass(frozen=True)
class TowerProfile:
    p: int
    lower_floor: object
    upper_floor: object
    lower: InsepProfile
    upper: InsepProfile
    composed: InsepProfile
    lower_series: object
    upper_series: object
    composed_series: object

    @property
    def n(self):
        return self.lower.n

    @property
    def m(self):
        return self.upper.n


@dataclass(frozen=True)
class GeReport:
    l: int
    x: Fraction
    lam: Fraction
    phi: Fraction
    s_sets: dict
    hypothesis: bool
    in_T_l: bool
    equality: bool

    def as_dict(self):
        return {
            "l": self.l,
            "x": [self.x.numerator, self.x.denominator],
            "lambda": [self.lam.numerator, self.lam.denominator],
            "phi": [self.phi.numerator, self.phi.denominator],
            "S": {
                str(a): [[j, k] for j, k in pairs]
                for a, pairs in self.s_sets.items()
            },
            "hypothesis": self.hypothesis,
            "equality": self.equality,
            "in_T_l": self.in_T_l,
        }


@dataclass(frozen=True)
class CorollaryReport:
    l: int
    bound: int
    composed_index: int
    relation: str
    minimizing_pairs: tuple
    unique_pair: bool


@dataclass(frozen=True)
class TameLift:
    floor: object
    series: object
    e: int


def default_horizon(d_exp, offset, wild, p_val, room):
    """Heuristic digit horizon: the different exponent plus wild correction.

    Falls back on IndexUnresolved downstream if it undershoots; the
    clamp keeps the expansion inside the floor's precision ceiling.
    """
    if d_exp is INFINITY:
        raise NotSeparable(
            "derivative of the defining polynomial vanishes at the root; "
            "indices are undefined for inseparable steps"
        )
    h = d_exp - offset + 2
    if p_val is not INFINITY:
        h += wild * p_val
    h = max(h, 2)
    return min(h, room)


def _expand_profile(floor, target, horizon):
    series = expand_digits(floor.embed(target), horizon)
    profile = inseparability_profile(series, floor.p_valuation())
    return series, profile


def compose_tower(E1, E2, H=None, lower_horizon=None, upper_horizon=None,
                  check=True):
    """Attach both steps, expand all three digit series, profile them.

    E2's coefficients live on the lower floor, so that floor is reused;
    E1 must coincide with its defining polynomial.
    """
    if isinstance(E1, (list, tuple)):
        E1 = EisensteinPoly(E1)
    if isinstance(E2, (list, tuple)):
        E2 = EisensteinPoly(E2)
    L = E2.coeffs[0].floor
    if not isinstance(L, EisensteinFloor):
        raise NotEisenstein("upper coefficients must live on the lower floor")
    same = L.poly.degree == E1.degree and all(
        a == b for a, b in zip(L.poly.coeffs, E1.coeffs)
    )
    if not same:
        raise NotEisenstein(
            "lower polynomial does not define the upper coefficients' floor"
        )
    ground = L.base
    M = attach_eisenstein(L, E2)
    n, m = L.degree, M.degree
    p = ground.p
    nu, mu = vp(n, p), vp(m, p)

    d_L = different_exponent(L)
    d_M = different_exponent(M)
    if lower_horizon is None:
        lower_horizon = default_horizon(
            d_L, n, nu, L.p_valuation(), L.ceiling - n - 4
        )
    if upper_horizon is None:
        upper_horizon = default_horizon(
            d_M, m, mu, M.p_valuation(), M.ceiling - m - 4
        )
    if H is None:
        H = default_horizon(
            d_M + m * d_L, n * m, nu + mu, M.p_valuation(),
            M.ceiling - n * m - 4,
        )

    piK = ground.uniformizer()
    lower_series, lower = _expand_profile(L, piK, lower_horizon)
    upper_series, upper = _expand_profile(M, L.uniformizer(), upper_horizon)
    composed_series, composed = _expand_profile(M, piK, H)

    if check:
        _check_formal_composite(M, lower_series, upper_series, composed_series)

    return TowerProfile(
        p, L, M, lower, upper, composed,
        lower_series, upper_series, composed_series,
    )


def _check_formal_composite(M, F, G, H_digits):
    # F(G(X)) must agree with the direct expansion as deep as both reach.
    depth = min(G.horizon, F.horizon * G.offset, H_digits.horizon)
    formal = compose_series(F, G, depth)
    pi = M.uniformizer()
    diff = evaluate(formal, pi) - evaluate(H_digits, pi)
    if not diff.has_valuation_at_least(F.offset * G.offset + depth):
        raise TheoremViolation(
            "formal composite disagrees with the direct digit expansion"
        )


def _pair_lines(T: TowerProfile, l: int):
    """Index lines over all pairs j+k <= l: (m*i_j + p^j*i'_k, p^(j+k))."""
    p, m = T.p, T.m
    out = {}
    for j in range(min(l, T.lower.nu) + 1):
        for k in range(min(l - j, T.upper.nu) + 1):
            out[(j, k)] = Line(
                Fraction(m * T.lower.i[j] + p ** j * T.upper.i[k]),
                p ** (j + k),
            )
    return out


def lambda_l(T: TowerProfile, l: int) -> PLFunction:
    """Lower-bound envelope for the composed l-th break function."""
    if not 0 <= l <= T.lower.nu + T.upper.nu:
        raise ValueError("l out of range")
    env = None
    for j in range(min(l, T.lower.nu) + 1):
        k = l - j
        if k > T.upper.nu:
            continue
        f = phi(T.lower, j).scale(T.m).compose(phi(T.upper, k))
        env = f if env is None else env.min_with(f)
    flat = PLFunction(list(_pair_lines(T, l).values()))
    if env != flat:
        raise TheoremViolation("the two displayed forms of lambda disagree")
    return env


def s_sets(T: TowerProfile, l: int, x) -> dict:
    """Tie sets: which index lines with j+k = a attain lambda^l at x."""
    x = Fraction(x)
    lam = lambda_l(T, l)(x)
    lines = _pair_lines(T, l)
    out = {a: [] for a in range(l + 1)}
    for (j, k), ln in sorted(lines.items()):
        if ln.at(x) == lam:
            out[j + k].append((j, k))
    return out


def ge_report(T: TowerProfile, l: int, x) -> GeReport:
    x = Fraction(x)
    lam = lambda_l(T, l)(x)
    ph = phi(T.composed, l)(x)
    S = s_sets(T, l, x)
    hypothesis = any(len(S[a]) == 1 for a in range(l + 1))
    in_T = any(
        len(S[l0]) == 1 and all(len(S[a]) == 0 for a in range(l0))
        for l0 in range(l + 1)
    )
    if ph < lam:
        raise TheoremViolation(
            "composed break function %s below its bound %s at l=%d, x=%s"
            % (ph, lam, l, x)
        )
    equality = ph == lam
    if hypothesis and not equality:
        raise TheoremViolation(
            "unique tie at l=%d, x=%s but no equality (%s > %s)" % (l, x, ph, lam)
        )
    return GeReport(l, x, lam, ph, S, hypothesis, in_T, equality)


def corollary_report(T: TowerProfile, l: int) -> CorollaryReport:
    """The index bound at x = 0, reported with the observed relation."""
    lines = _pair_lines(T, l)
    bound = min(int(ln.intercept) for ln in lines.values())
    pairs = tuple(
        sorted(jk for jk, ln in lines.items() if ln.intercept == bound)
    )
    idx = T.composed.i[l]
    relation = "<" if idx < bound else ("=" if idx == bound else ">")
    return CorollaryReport(l, bound, idx, relation, pairs, len(pairs) == 1)


def tame_lift_tower(floor, e: int, horizon=None) -> TameLift:
    """Adjoin an e-th root of the uniformizer and lift the digit series.

    The lifted series relates the two new uniformizers; its break data
    is the original's scaled by e.
    """
    base = floor.base
    if horizon is None:
        horizon = default_horizon(
            different_exponent(floor), floor.degree, vp(floor.degree, floor.p),
            floor.p_valuation(), floor.ceiling - floor.degree - 4,
        )
    series = expand_digits(floor.embed(base.uniformizer()), horizon)
    series = normalize_leading_digit(series)
    lifted = eth_root_substitute(series, e)
    pi = floor.uniformizer()
    coeffs = [-pi] + [floor.zero()] * (e - 1)
    floor_e = attach_eisenstein(floor, EisensteinPoly(coeffs))
    return TameLift(floor_e, lifted, e)
