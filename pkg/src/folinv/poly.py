"""Sparse exact polynomials over the rationals.

Coefficients are `fractions.Fraction` throughout; nothing in this package
touches floating point. A polynomial is an immutable sparse map from
exponent tuples to nonzero coefficients, over an explicit variable tuple
such as ``("x", "y")`` or ``("x", "y", "z")``.

The module also provides the shared text grammar (variables x, y, z, t;
integer and a/b rational literals; operators + - * ^ with nonnegative
integer exponents; parentheses; whitespace insignificant) and the
classical resultant with respect to one variable, computed as the
Sylvester determinant via exact evaluation/interpolation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import NotDivisible, ParseError, ZeroPolynomial

Rat = Fraction  # coefficient field: arbitrary-precision rationals

VAR_NAMES = ("x", "y", "z", "t")

LOCAL_VARS = ("x", "y")
PROJ_VARS = ("x", "y", "z")


class Poly:
    """Immutable sparse polynomial with Fraction coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients. No zero coefficient is ever stored, so equality and
    hashing are structural.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms):
        object.__setattr__(self, "vars", tuple(vars))
        clean = {}
        for e, c in terms.items():
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if c != 0:
                clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def const(cls, vars, c):
        return cls(vars, {(0,) * len(vars): Fraction(c)})

    @classmethod
    def variable(cls, vars, name):
        e = [0] * len(vars)
        e[tuple(vars).index(name)] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, vars, exps, c=1):
        return cls(vars, {tuple(exps): Fraction(c)})

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_constant(self):
        return all(all(k == 0 for k in e) for e in self.terms)

    @property
    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def degree(self):
        """Maximal total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self):
        """Minimal total degree of a term (the local order at the origin)."""
        if not self.terms:
            raise ZeroPolynomial("order of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def order_in(self, name):
        if not self.terms:
            raise ZeroPolynomial("order of the zero polynomial")
        i = self.vars.index(name)
        return min(e[i] for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return Poly.zero(self.vars)
            return Poly(self.vars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- calculus and substitution --------------------------------------

    def diff(self, name):
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return Poly(self.vars, out)

    def eval(self, point):
        """Evaluate at a tuple of Fractions (exact)."""
        point = tuple(Fraction(p) for p in point)
        total = Fraction(0)
        powcache = [{0: Fraction(1)} for _ in point]
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                cache = powcache[i]
                if k not in cache:
                    cache[k] = point[i] ** k
                v *= cache[k]
            total += v
        return total

    def subs(self, mapping):
        """Substitute polynomials for variables (full composition).

        ``mapping`` maps variable names to Poly objects over the *target*
        variable tuple; unmapped variables must exist in the target.
        """
        targets = [m for m in mapping.values() if isinstance(m, Poly)]
        tvars = targets[0].vars if targets else self.vars
        images = []
        for name in self.vars:
            img = mapping.get(name)
            if img is None:
                img = Poly.variable(tvars, name)
            elif not isinstance(img, Poly):
                img = Poly.const(tvars, img)
            images.append(img)
        out = Poly.zero(tvars)
        powcache = [{0: Poly.const(tvars, 1)} for _ in images]

        def power(i, k):
            cache = powcache[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        for e, c in self.terms.items():
            term = Poly.const(tvars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def translate(self, offsets):
        """Shift variables: var -> var + offset, for each (name, offset)."""
        mapping = {}
        for name, off in offsets.items():
            if off:
                mapping[name] = Poly.variable(self.vars, name) + Poly.const(self.vars, off)
        if not mapping:
            return self
        return self.subs(mapping)

    def eliminate(self, name, value=1):
        """Substitute a constant for one variable and drop it."""
        i = self.vars.index(name)
        value = Fraction(value)
        nvars = self.vars[:i] + self.vars[i + 1 :]
        out = {}
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1 :]
            s = out.get(ne, Fraction(0)) + c * value ** e[i]
            if s:
                out[ne] = s
            elif ne in out:
                del out[ne]
        return Poly(nvars, out)

    def rename(self, new_vars):
        """Reinterpret over a same-length variable tuple."""
        if len(new_vars) != len(self.vars):
            raise ValueError("rename needs the same number of variables")
        return Poly(new_vars, self.terms)

    # -- division ------------------------------------------------------

    def _lead(self):
        # deglex leading term, used only by the division algorithm
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def divmod_by(self, d):
        """Single-divisor division: self = q*d + r with no term of r
        divisible by the deglex leading term of d."""
        if d.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        self._check(d)
        le, lc = d._lead()
        q = {}
        r = {}
        work = dict(self.terms)
        while work:
            e = max(work, key=lambda e: (sum(e), e))
            c = work.pop(e)
            if all(ei >= li for ei, li in zip(e, le)):
                qe = tuple(ei - li for ei, li in zip(e, le))
                qc = c / lc
                q[qe] = q.get(qe, Fraction(0)) + qc
                for de, dc in d.terms.items():
                    if de == le:
                        continue
                    we = tuple(qi + di for qi, di in zip(qe, de))
                    s = work.get(we, Fraction(0)) - qc * dc
                    if s:
                        work[we] = s
                    elif we in work:
                        del work[we]
            else:
                r[e] = c
        return Poly(self.vars, q), Poly(self.vars, r)

    def divides(self, other):
        """True iff self divides other exactly."""
        if self.is_zero:
            return other.is_zero
        _, r = other.divmod_by(self)
        return r.is_zero

    def exact_div(self, d):
        q, r = self.divmod_by(d)
        if not r.is_zero:
            raise NotDivisible(f"{d} does not divide {self}")
        return q

    # -- printing --------------------------------------------------------

    def sorted_terms(self):
        """Canonical graded-lex order: degree descending, then lex descending."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({','.join(self.vars)}: {self})"


def poly_order(f):
    """Minimal total degree among the terms of a nonzero polynomial."""
    return f.order()


# -- text grammar ------------------------------------------------------


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            tokens.append(("var", ch, i))
            i += 1
            continue
        if ch == "*" and i + 1 < n and text[i + 1] == "*":
            tokens.append(("^", "^", i))
            i += 2
            continue
        if ch in "+-*^/()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens, vars):
        self.tokens = tokens
        self.pos = 0
        self.vars = tuple(vars)

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        kind, _, _ = self.peek()
        sign = 1
        while kind in ("+", "-"):
            if kind == "-":
                sign = -sign
            self.take()
            kind, _, _ = self.peek()
        acc = self.term() * sign
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.take()
                acc = acc + self.term()
            elif kind == "-":
                self.take()
                acc = acc - self.term()
            else:
                return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return base ** val
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind in ("+", "-"):
            inner = self.factor()
            return inner if kind == "+" else -inner
        if kind == "num":
            if self.peek()[0] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num":
                    raise ParseError("rational literal needs an integer denominator", p2)
                if v2 == 0:
                    raise ParseError("zero denominator", p2)
                return Poly.const(self.vars, Fraction(val, v2))
            return Poly.const(self.vars, val)
        if kind == "var":
            if val not in self.vars:
                raise ParseError(f"variable {val!r} not allowed here (expected {'/'.join(self.vars)})", pos)
            return Poly.variable(self.vars, val)
        if kind == "(":
            inner = self.expr()
            k2, _, p2 = self.take()
            if k2 != ")":
                raise ParseError("missing closing parenthesis", p2)
            return inner
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_poly(text, vars=LOCAL_VARS):
    """Parse the shared polynomial grammar into a Poly over ``vars``."""
    parser = _Parser(_tokenize(text), vars)
    poly = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos)
    return poly


# -- resultant ----------------------------------------------------------


def _det_exact(rows):
    """Determinant of a square Fraction matrix, by integer Bareiss."""
    n = len(rows)
    scale = Fraction(1)
    m = []
    for row in rows:
        denlcm = 1
        for v in row:
            denlcm = denlcm * v.denominator // gcd(denlcm, v.denominator)
        scale /= denlcm
        m.append([int(v * denlcm) for v in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pk = m[k][k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            mk = m[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * pk - mik * mk[j]) // prev
            mi[k] = 0
        prev = pk
    return sign * scale * m[n - 1][n - 1]


def _interpolate(points, values, vars, var_index):
    """Newton interpolation; returns the polynomial as a Poly in one variable."""
    n = len(points)
    coeffs = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (points[i] - points[i - j])
    # expand the Newton form into monomial coefficients
    poly = [Fraction(0)] * n
    acc = [Fraction(1)]  # product (X - p0)...(X - p_{j-1})
    for j in range(n):
        for k, c in enumerate(acc):
            poly[k] += coeffs[j] * c
        if j < n - 1:
            nxt = [Fraction(0)] * (len(acc) + 1)
            for k, c in enumerate(acc):
                nxt[k] -= c * points[j]
                nxt[k + 1] += c
            acc = nxt
    terms = {}
    for k, c in enumerate(poly):
        if c:
            e = [0] * len(vars)
            e[var_index] = k
            terms[tuple(e)] = c
    return Poly(vars, terms)


def coeff_list(f, name):
    """Coefficients of f as a polynomial in ``name`` (degree ascending)."""
    i = f.vars.index(name)
    d = f.degree_in(name)
    out = [Poly.zero(f.vars) for _ in range(d + 1)]
    buckets = [{} for _ in range(d + 1)]
    for e, c in f.terms.items():
        ne = list(e)
        k = ne[i]
        ne[i] = 0
        buckets[k][tuple(ne)] = c
    for k, b in enumerate(buckets):
        out[k] = Poly(f.vars, b)
    return out


def resultant(f, g, name="y"):
    """Classical resultant of f and g with respect to one variable.

    Computed as the Sylvester determinant (rows of f first), evaluated at
    integer sample points of the surviving variable and interpolated
    exactly. For bivariate input the result is a polynomial in the other
    variable.
    """
    if f.is_zero or g.is_zero:
        raise ZeroPolynomial("resultant of the zero polynomial")
    f._check(g)
    m = f.degree_in(name)
    n = g.degree_in(name)
    vars = f.vars
    if m == 0 and n == 0:
        return Poly.const(vars, 1)
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    others = [v for v in vars if v != name and (f.degree_in(v) > 0 or g.degree_in(v) > 0)]
    if len(others) > 1:
        raise ValueError("resultant supports at most one surviving variable")
    fc = coeff_list(f, name)
    gc = coeff_list(g, name)
    if not others:
        rows = _sylvester([c.constant_term for c in fc], [c.constant_term for c in gc])
        return Poly.const(vars, _det_exact(rows))
    other = others[0]
    oi = vars.index(other)
    bound = f.degree_in(other) * n + g.degree_in(other) * m
    pts = [Fraction(k) for k in range(bound + 1)]
    vals = []
    for p in pts:
        fv = [c.eval(tuple(p if j == oi else 0 for j in range(len(vars)))) for c in fc]
        gv = [c.eval(tuple(p if j == oi else 0 for j in range(len(vars)))) for c in gc]
        vals.append(_det_exact(_sylvester(fv, gv)))
    return _interpolate(pts, vals, vars, oi)


def _sylvester(fc, gc):
    """Sylvester matrix rows from ascending coefficient lists."""
    m = len(fc) - 1
    n = len(gc) - 1
    size = m + n
    rows = []
    frow = list(reversed(fc))  # leading coefficient first
    grow = list(reversed(gc))
    for i in range(n):
        rows.append([Fraction(0)] * i + frow + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + grow + [Fraction(0)] * (size - n - 1 - i))
    return rows


# -- monomial indexing shared with the colength engine -------------------


def mono_index(a, b):
    """Index of x^a y^b in the degree-compatible local order."""
    d = a + b
    return d * (d + 1) // 2 + a


def mono_degree(idx):
    """Total degree of the monomial with the given index."""
    d = (isqrt(8 * idx + 1) - 1) // 2
    while d * (d + 1) // 2 > idx:
        d -= 1
    while (d + 1) * (d + 2) // 2 <= idx:
        d += 1
    return d
