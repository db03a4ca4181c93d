"""Branch decomposition of reduced curve germs over the rationals.

Newton-Puiseux in Duval's rational form: every substitution step
x -> alpha*x1^q, y -> x1^p*(beta + y1) keeps all coefficients rational by
choosing alpha = c0^u, beta = c0^v with v*q - u*p = 1 for the rational
characteristic root c0, so a branch whose characteristic roots are all
rational gets an exact parametrization x(t) = A*t^E, y(t) = series. An
irrational characteristic root of multiplicity one yields a conjugate
*bundle*: s analytic branches sharing one defining factor, whose
invariants are read off intersection numbers divided by s.

Also here: semigroups of values of a branch (from characteristic
exponents), value sets of differential forms along a branch, and the gap
count between the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .config import DEFAULT
from .errors import (
    BundleUnsupported,
    CrossCheckError,
    NotDivisible,
    NotReduced,
    PrecisionExhausted,
    UnitInput,
    UnsupportedSplitting,
    WindowTooSmall,
    ZeroPolynomial,
)
from .factorback import factor_rational, is_squarefree
from .localring import LocalIdeal, colength
from .poly import LOCAL_VARS, Poly
from .series import TruncSeries, series_substitute

# -- Newton polygon -------------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower-left convex hull of the support of a germ.

    Vertices run with strictly decreasing y-exponent and increasing
    x-exponent; every vertex is the exponent of an actual term.
    """

    vertices: tuple

    def segments(self):
        return list(zip(self.vertices, self.vertices[1:]))


def newton_polygon(f):
    """Newton polygon of a nonzero germ vanishing at the origin."""
    if f.is_zero:
        raise ZeroPolynomial("newton polygon of zero")
    if f.constant_term != 0:
        raise UnitInput("germ does not vanish at the origin")
    best = {}
    for (a, b) in f.terms:
        if a not in best or b < best[a]:
            best[a] = b
    pts = sorted(best.items())
    hull = []
    for a, b in pts:
        while len(hull) >= 2:
            (a1, b1), (a2, b2) = hull[-2], hull[-1]
            if (a2 - a1) * (b - b1) - (b2 - b1) * (a - a1) <= 0:
                hull.pop()
            else:
                break
        hull.append((a, b))
    trimmed = [hull[0]]
    for a, b in hull[1:]:
        if b < trimmed[-1][1]:
            trimmed.append((a, b))
        else:
            break
    return NewtonPolygon(tuple(trimmed))


# -- branch objects ---------------------------------------------------------


class Branch:
    """One analytic branch (s=1, explicit parametrization) or a bundle of
    s conjugate branches (no parametrization, invariants via the defining
    factor and intersection numbers)."""

    __slots__ = (
        "x_t",
        "y_t",
        "bundle_size",
        "defining_factor",
        "char_exponents",
        "ramification",
        "_stages",
        "_terminal",
        "_precision",
        "_siblings",
    )

    def __init__(self, x_t, y_t, bundle_size, defining_factor, char_exponents,
                 ramification, stages=None, terminal=None, precision=None):
        self.x_t = x_t
        self.y_t = y_t
        self.bundle_size = bundle_size
        self.defining_factor = defining_factor
        self.char_exponents = tuple(char_exponents)
        self.ramification = ramification
        self._stages = stages
        self._terminal = terminal
        self._precision = precision
        self._siblings = ()

    @property
    def is_bundle(self):
        return self.bundle_size > 1

    def multiplicity(self):
        """Algebraic multiplicity of each analytic branch of this item."""
        if self.is_bundle:
            total = self.defining_factor.order()
            total -= sum(sib.multiplicity() for sib in self._siblings)
            if total % self.bundle_size:
                raise NotDivisible("bundle multiplicity does not split evenly")
            return total // self.bundle_size
        orders = []
        for ser in (self.x_t, self.y_t):
            if not ser.is_exact_zero:
                orders.append(ser.order_lower_bound())
        return min(orders)

    def series(self, precision):
        """Parametrization certified to at least the given t-precision."""
        if self.is_bundle:
            raise BundleUnsupported("bundle has no explicit parametrization")
        if self._precision is None or precision <= self._precision:
            return self.x_t, self.y_t
        x_t, y_t = _compose(self._stages, self._terminal, precision)
        self.x_t, self.y_t, self._precision = x_t, y_t, precision
        return x_t, y_t

    def __repr__(self):
        if self.is_bundle:
            return f"Branch(bundle s={self.bundle_size} of {self.defining_factor})"
        return f"Branch(x={self.x_t!r}, y={self.y_t!r})"


# -- rational Newton-Puiseux ------------------------------------------------


def _fracpow(c, k):
    c = Fraction(c)
    return c ** k if k >= 0 else (Fraction(1) / c) ** (-k)


def _bezout_for(q, p):
    """(u, v) with v*q - u*p = 1, for coprime q, p."""
    if q == 1:
        return 0, 1
    old_r, r = q, p
    old_s, s = 1, 0
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
    v = old_s
    u = (v * q - 1) // p
    if v * q - u * p != 1:
        raise CrossCheckError("bezout failure")
    return u, v


class _Leaf:
    __slots__ = ("stages", "terminal", "char_factor_degree", "ram")

    def __init__(self, stages, terminal, char_factor_degree=1):
        self.stages = stages
        self.terminal = terminal  # Poly in the regular regime, None for y=0
        self.char_factor_degree = char_factor_degree
        self.ram = 1
        for q, _, _, _ in stages:
            self.ram *= q


def _char_poly(F, seg):
    """Characteristic polynomial of a polygon segment (variable y)."""
    (a0, b0), (a1, b1) = seg
    da, db = a1 - a0, b0 - b1
    g = gcd(da, db)
    p, q = da // g, db // g
    terms = {}
    for i in range(g + 1):
        c = F.coeff((a0 + i * p, b0 - i * q))
        if c:
            terms[(0, g - i)] = c
    return Poly(LOCAL_VARS, terms), p, q


def _transform(F, q, p, alpha, beta):
    """F(alpha*x^q, x^p*(beta + y)) divided by the maximal x power."""
    y = Poly.variable(LOCAL_VARS, "y")
    newx = Poly.monomial(LOCAL_VARS, (q, 0), alpha)
    newy = Poly.monomial(LOCAL_VARS, (p, 0)) * (y + Poly.const(LOCAL_VARS, beta))
    G = F.subs({"x": newx, "y": newy})
    k = G.order_in("x")
    return Poly(LOCAL_VARS, {(a - k, b): c for (a, b), c in G.terms.items()})


def _y_order_on_axis(F):
    return min(b for (a, b) in F.terms if a == 0)


def _expand_leaves(F, stages, depth=0):
    """Recursive rational Newton-Puiseux; yields _Leaf records."""
    if depth > 64:
        raise CrossCheckError("newton-puiseux recursion too deep")
    leaves = []
    if all(b > 0 for (_, b) in F.terms):
        # exact solution y = 0 at this level
        leaves.append(_Leaf(stages, None))
        F = Poly(LOCAL_VARS, {(a, b - 1): c for (a, b), c in F.terms.items()})
        if F.constant_term != 0:
            return leaves
        if all(b > 0 for (_, b) in F.terms):
            raise NotReduced("repeated branch met in expansion")
    if not any(a == 0 for (a, _) in F.terms):
        raise CrossCheckError("unexpected x factor in expansion")
    if _y_order_on_axis(F) == 1:
        leaves.append(_Leaf(stages, F))
        return leaves
    for seg in newton_polygon(F).segments():
        chi, p, q = _char_poly(F, seg)
        for fac, mult in factor_rational(chi):
            d = fac.degree_in("y")
            if d == 0:
                continue
            if d > 1:
                if mult > 1:
                    raise UnsupportedSplitting(
                        f"irrational characteristic root of multiplicity {mult}"
                    )
                leaves.append(
                    _Leaf(stages + ((q, p, None, None),), None, char_factor_degree=d)
                )
                continue
            c0 = -fac.coeff((0, 0)) / fac.coeff((0, 1))
            u, v = _bezout_for(q, p)
            alpha = _fracpow(c0, u)
            beta = _fracpow(c0, v)
            F1 = _transform(F, q, p, alpha, beta)
            if _y_order_on_axis(F1) != mult:
                raise CrossCheckError("characteristic multiplicity mismatch")
            stage = (q, p, alpha, beta)
            if mult == 1:
                leaves.append(_Leaf(stages + (stage,), F1))
            else:
                leaves.extend(_expand_leaves(F1, stages + (stage,), depth + 1))
    return leaves


def _solve_regular(F, x_prec):
    """Unique series solution y(x) with y(0)=0 when F_y(0,0) != 0."""
    Fy = F.diff("y")
    t = TruncSeries.t()
    y = TruncSeries.zero(1)
    prec = 1
    while prec < x_prec:
        prec = min(2 * prec, x_prec)
        yt = TruncSeries(y.coeffs, prec)
        val = series_substitute(F, t, yt)
        dval = series_substitute(Fy, t, yt)
        y = (yt - val * dval.inverse(prec)).truncate(prec)
    check = series_substitute(F, t, y)
    if check.coeffs:
        raise CrossCheckError("regular solve did not annihilate the equation")
    return y


def _compose(stages, terminal, t_prec):
    """Build (x(t), y(t)) from stage records and the terminal solution."""
    if terminal is None:
        y = TruncSeries.zero(None)
    else:
        y = _solve_regular(terminal, t_prec)
    x = TruncSeries.t()
    for (q, p, alpha, beta) in reversed(stages):
        nx = (x ** q) * alpha
        ny = (x ** p) * (y + beta)
        x, y = nx, ny
    return x, y


def _char_exponents_from(y_t, ram):
    """Characteristic exponents via the gcd chain over the y-support."""
    if ram == 1:
        return (1,)
    betas = [ram]
    d = ram
    for j in sorted(y_t.coeffs):
        if gcd(d, j) < d:
            betas.append(j)
            d = gcd(d, j)
            if d == 1:
                break
    if d != 1:
        raise PrecisionExhausted(y_t.precision or 0)
    return tuple(betas)


def _decompose_factor(h, precision, config):
    """Branches/bundles of one Q-irreducible factor through the origin."""
    xvar = Poly.variable(LOCAL_VARS, "x")
    if h == xvar or h == -xvar:
        return [Branch(TruncSeries.zero(None), TruncSeries.t(), 1, h, (1,), 1)]
    leaves = _expand_leaves(h, ())
    branches = []
    for leaf in leaves:
        if leaf.char_factor_degree > 1:
            branches.append(
                Branch(None, None, leaf.char_factor_degree, h, (), leaf.ram)
            )
            continue
        prec = precision
        while True:
            x_t, y_t = _compose(leaf.stages, leaf.terminal, prec)
            try:
                chars = _char_exponents_from(y_t, leaf.ram)
                break
            except PrecisionExhausted:
                prec *= 2
                if prec > config.precision_cap:
                    raise
        if series_substitute(h, x_t, y_t).coeffs:
            raise CrossCheckError("parametrization does not annihilate its factor")
        branches.append(
            Branch(x_t, y_t, 1, h, chars, leaf.ram,
                   stages=leaf.stages, terminal=leaf.terminal, precision=prec)
        )
    total = sum(b.bundle_size * b.ramification for b in branches)
    if total != _y_order_on_axis(h):
        raise CrossCheckError(f"branch bookkeeping mismatch for {h}")
    rational = tuple(b for b in branches if not b.is_bundle)
    for b in branches:
        if b.is_bundle:
            b._siblings = rational
    return branches


def branch_decompose(f, precision=None, config=DEFAULT):
    """Complete branch decomposition of a reduced germ at the origin.

    Rational branches carry certified parametrizations; conjugate systems
    over an irrational characteristic root come as bundles with
    bundle_size > 1. Factors not passing through the origin contribute
    nothing.
    """
    if f.is_zero:
        raise ZeroPolynomial("zero curve equation")
    if f.constant_term != 0:
        raise UnitInput("curve does not pass through the origin")
    if not is_squarefree(f):
        raise NotReduced(f"{f} has a repeated factor")
    out = []
    for h, mult in factor_rational(f):
        if mult != 1:
            raise NotReduced(f"{f} has a repeated factor {h}")
        if h.is_constant or h.constant_term != 0:
            continue
        prec = precision
        if prec is None:
            d = h.degree()
            prec = max(16, 2 * d * d)
        out.extend(_decompose_factor(h, prec, config))
    return tuple(out)


def branch_count(f, config=DEFAULT):
    """Number of analytic branches of a reduced germ at the origin."""
    return sum(b.bundle_size for b in branch_decompose(f, config=config))


# -- orders along branches ----------------------------------------------------


def order_along(branch, g, config=DEFAULT):
    """Order of a polynomial along (each conjugate of) a branch.

    Explicit parametrization: certified t-order of g(x(t), y(t)).
    Bundle: intersection number with the defining factor, minus the
    rational siblings' orders, divided by the bundle size (exact division
    required). None encodes the infinite order (g vanishes on the branch).
    """
    if g.is_zero:
        raise ZeroPolynomial("order of zero along a branch")
    h = branch.defining_factor
    if branch.is_bundle:
        if h.divides(g):
            return None
        pair = colength(LocalIdeal((h, g)), config=config)
        if not pair.is_finite:
            return None
        total = pair.value
        for sib in branch._siblings:
            total -= order_along(sib, g, config=config)
        if total % branch.bundle_size:
            raise NotDivisible(
                f"bundle order {total} not divisible by s={branch.bundle_size}"
            )
        return total // branch.bundle_size
    prec = branch._precision or 16
    while True:
        x_t, y_t = branch.series(prec)
        val = series_substitute(g, x_t, y_t)
        if val.coeffs:
            return min(val.coeffs)
        if val.precision is None:
            return None
        if h.divides(g):
            return None
        prec *= 2
        if prec > config.precision_cap:
            raise PrecisionExhausted(prec // 2)


# -- semigroup of values -------------------------------------------------------


@dataclass(frozen=True)
class ValueSet:
    """Finite set of naturals plus a conductor: every integer at or past
    the conductor belongs."""

    elements: tuple
    conductor: int
    generators: tuple = ()

    def __post_init__(self):
        elems = sorted(e for e in set(self.elements) if e < self.conductor)
        down = self.conductor
        tail = set(elems)
        while down - 1 in tail:
            down -= 1
        object.__setattr__(self, "elements", tuple(e for e in elems if e < down))
        object.__setattr__(self, "conductor", down)

    def contains(self, n):
        return n >= self.conductor or n in self.elements

    def upto(self, bound):
        for e in self.elements:
            if e < bound:
                yield e
        yield from range(self.conductor, max(bound, self.conductor))

    def gaps(self):
        return [n for n in range(self.conductor) if not self.contains(n)]


def semigroup_generators(char_exponents):
    """Minimal semigroup generators from characteristic exponents."""
    betas = list(char_exponents)
    if len(betas) == 1:
        return (betas[0],)
    e = [betas[0]]
    for b in betas[1:]:
        e.append(gcd(e[-1], b))
    v = [betas[0], betas[1]]
    for i in range(2, len(betas)):
        v.append((e[i - 2] // e[i - 1]) * v[i - 1] + betas[i] - betas[i - 1])
    return tuple(v)


def _conductor_formula(char_exponents):
    betas = list(char_exponents)
    if len(betas) == 1:
        return 0
    e = [betas[0]]
    for b in betas[1:]:
        e.append(gcd(e[-1], b))
    v = semigroup_generators(char_exponents)
    c = 1 - betas[0]
    for i in range(1, len(betas)):
        c += (e[i - 1] // e[i] - 1) * v[i]
    return c


def semigroup(branch):
    """Semigroup of values of an explicitly parametrized branch.

    Generators come from the characteristic exponents by the classical
    recursion; the conductor is cross-checked against direct enumeration.
    """
    if branch.is_bundle:
        raise BundleUnsupported("semigroup needs an explicit parametrization")
    chars = branch.char_exponents
    if chars[0] != branch.multiplicity():
        chars = _normalized_chars(branch)
    gens = semigroup_generators(chars)
    c = _conductor_formula(chars)
    bound = c + max(gens) + 2
    member = [False] * (bound + 1)
    member[0] = True
    for n in range(bound + 1):
        if member[n]:
            for g in gens:
                if n + g <= bound:
                    member[n + g] = True
    gapless_from = 0
    for n in range(bound, -1, -1):
        if not member[n]:
            gapless_from = n + 1
            break
    if gapless_from != c:
        raise CrossCheckError(
            f"conductor mismatch: formula {c}, enumeration {gapless_from}"
        )
    return ValueSet(tuple(n for n in range(c) if member[n]), c, gens)


def _normalized_chars(branch):
    """Characteristic exponents in generic orientation.

    Needed when the branch is tangent to the y-axis (ord y < ord x): the
    swapped factor h(y, x) carries the same branch with coordinates
    exchanged.
    """
    h = branch.defining_factor
    hs = Poly(h.vars, {(b, a): c for (a, b), c in h.terms.items()})
    cands = [b for b in branch_decompose(hs) if not b.is_bundle]
    if len(cands) != 1:
        raise BundleUnsupported("ambiguous orientation swap for a y-tangent branch")
    return cands[0].char_exponents


# -- differential values --------------------------------------------------------


def differential_values(branch, f=None, degree_window=None, config=DEFAULT):
    """Value set of forms A dx + B dy along one branch.

    Realizable t-orders are closed under linear combination by exact row
    reduction of the coefficient staircase; every integer from the
    certified conductor (semigroup conductor plus the smallest coordinate
    order) onward belongs, since n = value(h) gives value(h d(coord)) =
    n + ord(coord).
    """
    if branch.is_bundle:
        raise BundleUnsupported("differential values need a parametrization")
    if f is not None and f != branch.defining_factor and (-f) != branch.defining_factor:
        raise ValueError("f must be the defining factor of the branch")
    S = semigroup(branch)
    shifts = [
        ser.order_lower_bound()
        for ser in (branch.x_t, branch.y_t)
        if not ser.is_exact_zero
    ]
    certified = S.conductor + min(shifts)
    cap = certified + 2
    auto = degree_window is None
    window = degree_window if not auto else max(3 * S.conductor, cap + 1)
    pivots = _diff_staircase(branch, window, cap, config)
    if not auto and window < cap + 1:
        again = _diff_staircase(branch, window + 2, cap, config)
        if again != pivots:
            raise WindowTooSmall(f"monomial window {window} too small")
    return ValueSet(tuple(p for p in pivots if p < certified), certified)


def _diff_staircase(branch, window, cap, config):
    need = cap + 4
    x_t, y_t = branch.series(need)
    dx = x_t.derivative()
    dy = y_t.derivative()
    ox = None if x_t.is_exact_zero else x_t.order_lower_bound()
    oy = None if y_t.is_exact_zero else y_t.order_lower_bound()
    xpow = {0: TruncSeries({0: Fraction(1)})}
    ypow = {0: TruncSeries({0: Fraction(1)})}

    def power(cache, base, k):
        if k not in cache:
            cache[k] = power(cache, base, k - 1) * base
        return cache[k]

    echelon = {}
    pivots = set()
    for a in range(window + 1):
        if ox is None and a > 0:
            break
        if ox is not None and a * ox > cap:
            break
        xa = power(xpow, x_t, a)
        for b in range(window + 1 - a):
            if oy is None and b > 0:
                break
            low = (a * ox if ox else 0) + (b * oy if oy else 0)
            if low > cap:
                break
            mono = xa * power(ypow, y_t, b)
            for d in (dx, dy):
                if d.is_exact_zero:
                    continue
                val = (mono * d).shift(1)
                row = {e: c for e, c in val.coeffs.items() if e < cap}
                row = _frac_row_reduce(row, echelon)
                if row:
                    lead = min(row)
                    echelon[lead] = row
                    pivots.add(lead)
    return frozenset(pivots)


def _frac_row_reduce(row, echelon):
    while row:
        lead = min(row)
        p = echelon.get(lead)
        if p is None:
            return row
        factor = row[lead] / p[lead]
        out = dict(row)
        for k, v in p.items():
            s = out.get(k, Fraction(0)) - factor * v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        row = out
    return row


def gap_count(branch, f=None, config=DEFAULT):
    """Number of differential values not in the value semigroup."""
    S = semigroup(branch)
    L = differential_values(branch, f, config=config)
    bound = max(S.conductor, L.conductor)
    lbar = {0} | set(L.upto(bound))
    return sum(1 for n in lbar if not S.contains(n))
