"""Colength engine for ideals in the formal local ring at the origin.

Everything dimension-like is evaluated here: intersection multiplicity,
Milnor and Tjurina numbers of curves and of foliations. The core is an
online row echelon over an increasing Macaulay-style matrix in a
degree-compatible local order: products (monomial * generator) are fed
by leading degree, so the staircase below degree N is final as soon as
all products of leading degree < N have been processed. The finiteness
certificate at degree N is "every degree-N monomial is a pivot", which
is exactly the containment of the N-th power of the maximal ideal in
I + m^(N+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .config import DEFAULT, generic_shears
from .errors import (
    CommonComponent,
    CrossCheckError,
    DegreeCapExceeded,
    NonIsolated,
    NotReduced,
    NotSaturated,
    ZeroPolynomial,
)
from .factorback import is_squarefree, poly_gcd
from .poly import Poly, mono_degree, mono_index, resultant


class _Infinite:
    """Singleton marker for infinite colength."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


@dataclass(frozen=True)
class LocalIdeal:
    """Ideal of the formal local ring given by polynomial generators."""

    generators: tuple

    def __init__(self, generators):
        gens = tuple(generators)
        if not gens:
            raise ValueError("LocalIdeal needs at least one generator")
        for g in gens:
            if g.is_zero:
                raise ZeroPolynomial("zero generator in LocalIdeal")
        object.__setattr__(self, "generators", gens)

    @property
    def is_unit(self):
        return any(g.constant_term != 0 for g in self.generators)


@dataclass(frozen=True)
class Colength:
    """A certified colength value.

    ``value`` is a nonnegative integer or INFINITE; finite values carry
    the degree N at which m^N was certified inside the ideal, plus the
    witness common factor in the infinite case.
    """

    value: object
    certificate_degree: int = 0
    witness: object = None

    @property
    def is_finite(self):
        return self.value is not INFINITE


def _int_rows(g):
    """Generator as an integer row over local-order monomial indices."""
    denlcm = 1
    for c in g.terms.values():
        denlcm = denlcm * c.denominator // gcd(denlcm, c.denominator)
    return {mono_index(e[0], e[1]): int(c * denlcm) for e, c in g.terms.items()}


def _row_normalize(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for k in row:
            row[k] //= g
    return row


class _Echelon:
    """Online integer row echelon with smallest-column pivoting."""

    __slots__ = ("pivots", "per_degree")

    def __init__(self):
        self.pivots = {}
        self.per_degree = {}

    def insert(self, row):
        pivots = self.pivots
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                _row_normalize(row)
                pivots[lead] = row
                d = mono_degree(lead)
                self.per_degree[d] = self.per_degree.get(d, 0) + 1
                return lead
            a = row.pop(lead)
            b = p[lead]
            out = {}
            for k, v in row.items():
                out[k] = b * v
            for k, v in p.items():
                if k == lead:
                    continue
                s = out.get(k, 0) - a * v
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
            row = _row_normalize(out)
        return None

    def reduce_only(self, row):
        """Reduce without inserting; returns the remainder row."""
        pivots = self.pivots
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                return row
            a = row.pop(lead)
            b = p[lead]
            out = {}
            for k, v in row.items():
                out[k] = b * v
            for k, v in p.items():
                if k == lead:
                    continue
                s = out.get(k, 0) - a * v
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
            row = _row_normalize(out)
        return row


_COLENGTH_CACHE = {}


def colength(ideal, degree_cap=None, config=DEFAULT):
    """Dimension of the quotient of the formal local ring by the ideal.

    Certified by truncated exact row reduction; returns INFINITE with a
    witness common factor when the generators share a component through
    the origin. Raises DegreeCapExceeded(N) when no certificate exists
    by the cap.
    """
    if isinstance(ideal, (list, tuple)):
        ideal = LocalIdeal(ideal)
    cap = degree_cap if degree_cap is not None else config.degree_cap
    key = (frozenset(ideal.generators), cap)
    hit = _COLENGTH_CACHE.get(key)
    if hit is not None:
        return hit
    out = _colength_uncached(ideal, cap)
    _COLENGTH_CACHE[key] = out
    return out


def _colength_uncached(ideal, cap):
    if ideal.is_unit:
        return Colength(0, 0)
    g = poly_gcd(*ideal.generators)
    if g is not None and not g.is_constant and g.constant_term == 0:
        return Colength(INFINITE, 0, witness=g)
    gens = [(_int_rows(p), p.order()) for p in ideal.generators]
    ech = _Echelon()
    for level in range(cap + 1):
        for base, o in gens:
            d = level - o
            if d < 0:
                continue
            for a in range(d + 1):
                ech.insert(_multiply_row(base, a, d - a))
        # certificate: every monomial of degree `level` is a pivot
        start = level * (level + 1) // 2
        if all(start + i in ech.pivots for i in range(level + 1)):
            value = 0
            for d in range(level):
                value += (d + 1) - ech.per_degree.get(d, 0)
            return Colength(value, level)
    raise DegreeCapExceeded(cap)


def _multiply_row(base, a, b):
    """Row of (x^a y^b * generator) in monomial-index coordinates."""
    out = {}
    for idx, v in base.items():
        d = mono_degree(idx)
        xa = idx - d * (d + 1) // 2
        out[mono_index(xa + a, d - xa + b)] = v
    return out


def ideal_member_below(ideal, poly, level, config=DEFAULT):
    """True iff poly lies in ideal + m^level (truncated membership)."""
    gens = [(_int_rows(p), p.order()) for p in ideal.generators]
    ech = _Echelon()
    for lvl in range(level):
        for base, o in gens:
            d = lvl - o
            if d < 0:
                continue
            for a in range(d + 1):
                ech.insert(_multiply_row(base, a, d - a))
    row = {k: v for k, v in _int_rows(poly).items() if mono_degree(k) < level}
    rem = ech.reduce_only(row)
    return all(mono_degree(k) >= level for k in rem)


# -- named invariants ---------------------------------------------------


def intersection_multiplicity(f, g, config=DEFAULT, cross_check=True):
    """Local intersection number at the origin, i.e. colength of (f, g).

    When finite and cross_check is set, the value is re-derived as the
    vanishing order of the resultant after a recorded generic linear
    change of coordinates; the two routes must agree.
    """
    if f.is_zero or g.is_zero:
        raise ZeroPolynomial("intersection with the zero curve")
    if f.constant_term != 0 or g.constant_term != 0:
        return 0
    common = poly_gcd(f, g)
    if common is not None and not common.is_constant and common.constant_term == 0:
        raise CommonComponent(f"common factor {common}")
    value = colength(LocalIdeal((f, g)), config=config).value
    if cross_check:
        order, shear = _resultant_order(f, g, config)
        if order != value:
            raise CrossCheckError(
                f"intersection mismatch: colength {value}, resultant order {order} "
                f"(shear {shear})"
            )
    return value


def _resultant_order(f, g, config):
    """Vanishing order of Res_y after a generic shear; None on failure."""
    best = None
    best_shear = None
    stream = generic_shears(config.seed)
    for _ in range(5):
        a11, a12, a21, a22 = next(stream)
        sub = {
            "x": Poly(f.vars, {(1, 0): Fraction(a11), (0, 1): Fraction(a12)}),
            "y": Poly(f.vars, {(1, 0): Fraction(a21), (0, 1): Fraction(a22)}),
        }
        ft = f.subs(sub)
        gt = g.subs(sub)
        # validity: the pure y-power at top total degree must survive
        if ft.coeff((0, ft.degree())) == 0 or gt.coeff((0, gt.degree())) == 0:
            continue
        res = resultant(ft, gt, "y")
        if res.is_zero:
            continue
        order = res.order_in("x")
        if best is None or order < best:
            best = order
            best_shear = (a11, a12, a21, a22)
    return best, best_shear


def multiplicity_curve(f):
    """Algebraic multiplicity of a curve germ (order at the origin)."""
    return f.order()


def milnor_curve(f, config=DEFAULT):
    """Milnor number: colength of the gradient ideal (f_x, f_y)."""
    _require_reduced(f)
    fx = f.diff("x")
    fy = f.diff("y")
    if fx.is_zero and fy.is_zero:
        raise ZeroPolynomial("constant curve equation")
    if fx.is_zero or fy.is_zero:
        # gradient ideal is principal: finite only if the curve is smooth
        h = fy if fx.is_zero else fx
        if h.constant_term != 0:
            return 0
        raise NonIsolated("positive-dimensional critical locus")
    out = colength(LocalIdeal((fx, fy)), config=config)
    if not out.is_finite:
        raise NonIsolated(f"critical locus contains {out.witness}")
    return out.value


def tjurina_curve(f, config=DEFAULT):
    """Tjurina number: colength of (f, f_x, f_y)."""
    _require_reduced(f)
    gens = [p for p in (f, f.diff("x"), f.diff("y")) if not p.is_zero]
    out = colength(LocalIdeal(tuple(gens)), config=config)
    if not out.is_finite:
        raise NonIsolated(f"singular locus contains {out.witness}")
    return out.value


def _require_reduced(f):
    if f.is_zero:
        raise ZeroPolynomial("zero curve equation")
    if not is_squarefree(f):
        raise NotReduced(f"{f} has a repeated factor")


def saturation_gcd(P, Q):
    """Common factor of the 1-form coefficients, None when locally unit."""
    g = poly_gcd(P, Q)
    if g is None or g.is_constant or g.constant_term != 0:
        return None
    return g


def milnor_foliation(P, Q, config=DEFAULT):
    """Milnor number of a 1-form P dx + Q dy: colength of (P, Q)."""
    if P.is_zero or Q.is_zero:
        raise ZeroPolynomial("zero 1-form coefficient")
    bad = saturation_gcd(P, Q)
    if bad is not None:
        raise NotSaturated(f"coefficients share the factor {bad}")
    return colength(LocalIdeal((P, Q)), config=config).value


def tjurina_foliation_ideal(P, Q, f, config=DEFAULT):
    """Colength of (P, Q, f); invariance of f is the caller's contract."""
    gens = tuple(g for g in (P, Q, f) if not g.is_zero)
    if not gens:
        raise ZeroPolynomial("zero 1-form and curve")
    out = colength(LocalIdeal(gens), config=config)
    if not out.is_finite:
        raise NonIsolated(f"one-dimensional component {out.witness}")
    return out.value
