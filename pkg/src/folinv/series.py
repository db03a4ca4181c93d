"""Truncated univariate power series in t with certified precision.

A series stores only exponents below ``precision``; ``precision=None``
means the stored terms are the entire series (exact polynomial data).
Every order claim is certified: either a nonzero coefficient has been
seen, or exactness proves vanishing, or PrecisionExhausted is raised.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PrecisionExhausted
from .poly import Poly


class TruncSeries:
    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs, precision=None):
        clean = {}
        for e, c in coeffs.items():
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if c != 0 and (precision is None or e < precision):
                clean[e] = c
        self.coeffs = clean
        self.precision = precision

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, precision=None):
        return cls({}, precision)

    @classmethod
    def monomial(cls, e, c=1, precision=None):
        return cls({e: Fraction(c)}, precision)

    @classmethod
    def t(cls, precision=None):
        return cls.monomial(1, 1, precision)

    # -- queries -----------------------------------------------------------

    @property
    def is_exact(self):
        return self.precision is None

    @property
    def is_exact_zero(self):
        return self.precision is None and not self.coeffs

    def order_lower_bound(self):
        """A certified lower bound for the order (may be the precision)."""
        if self.coeffs:
            return min(self.coeffs)
        if self.precision is None:
            return None  # exact zero: order is infinite
        return self.precision

    def order(self):
        """Certified order; None for the exact zero series."""
        if self.coeffs:
            return min(self.coeffs)
        if self.precision is None:
            return None
        raise PrecisionExhausted(self.precision)

    def coeff(self, e):
        return self.coeffs.get(e, Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.coeffs == other.coeffs
            and self.precision == other.precision
        )

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(f"{c}*t^{e}" for e, c in sorted(self.coeffs.items()))
        tail = "" if self.precision is None else f" + O(t^{self.precision})"
        return body + tail

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _min_prec(pa, pb):
        if pa is None:
            return pb
        if pb is None:
            return pa
        return min(pa, pb)

    def truncate(self, precision):
        p = self._min_prec(self.precision, precision)
        return TruncSeries(self.coeffs, p)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries({0: Fraction(other)})
        p = self._min_prec(self.precision, other.precision)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return TruncSeries(out, p)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries({e: -c for e, c in self.coeffs.items()}, self.precision)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries({0: Fraction(other)})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return TruncSeries({}, self.precision)
            return TruncSeries({e: c * v for e, v in self.coeffs.items()}, self.precision)
        # precision of a product: the other factor's order shifts the noise
        pa, pb = self.precision, other.precision
        oa = self.order_lower_bound()
        ob = other.order_lower_bound()
        if pa is None and pb is None:
            p = None
        elif self.is_exact_zero or other.is_exact_zero:
            p = None
        else:
            cand = []
            if pa is not None:
                cand.append(pa + (ob if ob is not None else 0))
            if pb is not None:
                cand.append(pb + (oa if oa is not None else 0))
            p = min(cand)
        out = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                if p is not None and e >= p:
                    continue
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return TruncSeries(out, p)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = TruncSeries({0: Fraction(1)})
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, k):
        """Multiply by t^k."""
        p = None if self.precision is None else self.precision + k
        return TruncSeries({e + k: c for e, c in self.coeffs.items()}, p)

    def derivative(self):
        out = {e - 1: c * e for e, c in self.coeffs.items() if e}
        p = None if self.precision is None else self.precision - 1
        return TruncSeries(out, p)

    def inverse(self, precision):
        """Multiplicative inverse, requires a unit (nonzero constant term)."""
        c0 = self.coeff(0)
        if c0 == 0:
            raise ZeroDivisionError("series has no constant term")
        p = precision if self.precision is None else min(precision, self.precision)
        out = {0: 1 / c0}
        for k in range(1, p):
            s = Fraction(0)
            for j, aj in self.coeffs.items():
                if 0 < j <= k and (k - j) in out:
                    s += aj * out[k - j]
            if s:
                out[k] = -s / c0
        return TruncSeries(out, p)


def series_substitute(f, x_t, y_t):
    """Evaluate a bivariate polynomial on a series arc (f(x(t), y(t)))."""
    xi = f.vars.index("x")
    yi = f.vars.index("y")
    out = TruncSeries({}, None)
    xcache = {0: TruncSeries({0: Fraction(1)})}
    ycache = {0: TruncSeries({0: Fraction(1)})}

    def power(cache, base, k):
        if k not in cache:
            half = power(cache, base, k // 2)
            cache[k] = half * half * base if k & 1 else half * half
        return cache[k]

    for e, c in f.terms.items():
        term = power(xcache, x_t, e[xi]) * power(ycache, y_t, e[yi]) * c
        out = out + term
    return out


def poly_to_series(p, name="t"):
    """Interpret a univariate Poly as an exact TruncSeries."""
    i = p.vars.index(name)
    return TruncSeries({e[i]: c for e, c in p.terms.items()}, None)
