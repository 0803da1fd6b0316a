"""Lower envelopes of lines a + s*x on [0, oo), with exact rational values.

Every function here is a finite min of lines whose intercepts are
nonnegative rationals and whose slopes are positive integers, so the
envelope is concave, nondecreasing and piecewise linear.  The canonical
form keeps exactly the lines that realize the minimum on an interval of
positive length, ordered by decreasing slope; lines touching the
envelope at a single point are discarded.  Two envelopes are equal as
functions iff their canonical line tuples coincide.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple


class Line(NamedTuple):
    intercept: Fraction
    slope: int

    def at(self, x) -> Fraction:
        return Fraction(self.intercept) + self.slope * Fraction(x)


class PLFunction:
    """Canonical lower envelope of finitely many lines."""

    __slots__ = ("lines",)

    def __init__(self, lines):
        self.lines = _canonical(lines)

    @classmethod
    def from_lines(cls, lines: Iterable) -> "PLFunction":
        return cls([Line(Fraction(a), int(s)) for a, s in lines])

    @classmethod
    def single(cls, intercept, slope) -> "PLFunction":
        return cls.from_lines([(intercept, slope)])

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return min(ln.at(x) for ln in self.lines)

    def min_with(self, other: "PLFunction") -> "PLFunction":
        return PLFunction(self.lines + other.lines)

    def compose(self, inner: "PLFunction") -> "PLFunction":
        """self o inner, valid because both envelopes are concave increasing."""
        return PLFunction(
            [
                Line(a + s * b, s * r)
                for a, s in self.lines
                for b, r in inner.lines
            ]
        )

    def scale(self, m) -> "PLFunction":
        """x -> m * self(x / m) for a positive rational m; slopes are kept."""
        m = Fraction(m)
        if m <= 0:
            raise ValueError("scale factor must be positive")
        return PLFunction([Line(m * a, s) for a, s in self.lines])

    def vertices(self):
        """Breakpoints (x, y) where the active line changes, left to right."""
        out = []
        for k in range(len(self.lines) - 1):
            a, b = self.lines[k], self.lines[k + 1]
            x = Fraction(b.intercept - a.intercept, a.slope - b.slope)
            out.append((x, a.at(x)))
        return out

    @property
    def final_slope(self) -> int:
        return self.lines[-1].slope

    def value_at_zero(self) -> Fraction:
        return self.lines[0].intercept

    def dominates_line(self, intercept, slope) -> bool:
        """True if intercept + slope*x >= self(x) for every x >= 0."""
        probe = Line(Fraction(intercept), slope)
        if probe.at(0) < self(0):
            return False
        for x, y in self.vertices():
            if probe.at(x) < y:
                return False
        return probe.slope >= self.final_slope

    def as_dict(self):
        f0 = self(0)
        return {
            "f0": [f0.numerator, f0.denominator],
            "vertices": [
                [x.numerator, x.denominator, y.numerator, y.denominator]
                for x, y in self.vertices()
            ],
            "final_slope": self.final_slope,
        }

    def __eq__(self, other):
        if not isinstance(other, PLFunction):
            return NotImplemented
        return self.lines == other.lines

    def __hash__(self):
        return hash(self.lines)

    def __repr__(self):
        return "min{%s}" % ", ".join(
            "%s + %dx" % (a, s) for a, s in self.lines
        )


def _canonical(lines):
    cleaned = {}
    for ln in lines:
        a, s = Fraction(ln[0]), int(ln[1])
        if s <= 0:
            raise ValueError("slopes must be positive integers")
        if a < 0:
            raise ValueError("intercepts must be nonnegative")
        if s not in cleaned or a < cleaned[s]:
            cleaned[s] = a
    if not cleaned:
        raise ValueError("an envelope needs at least one line")
    # Sweep by decreasing slope; each kept line becomes active where it
    # first undercuts the current envelope.  A crossing at or before the
    # top line's own start means the top line never wins on an interval.
    order = sorted(cleaned.items(), key=lambda kv: -kv[0])
    hull = []
    starts = []
    for s, a in order:
        ln = Line(a, s)
        while hull:
            top = hull[-1]
            cross = Fraction(ln.intercept - top.intercept, top.slope - ln.slope)
            if cross <= starts[-1]:
                hull.pop()
                starts.pop()
            else:
                break
        if hull:
            top = hull[-1]
            start = Fraction(ln.intercept - top.intercept, top.slope - ln.slope)
        else:
            start = Fraction(0)
        hull.append(ln)
        starts.append(start)
    return tuple(hull)


def envelope_min(f: PLFunction, g: PLFunction) -> PLFunction:
    return f.min_with(g)


def identity_line() -> PLFunction:
    return PLFunction.single(0, 1)
