"""Rational gcd / factorization backend.

Multivariate gcd and factorization over Q are mature library territory;
everything else (arithmetic, division, resultants, linear algebra) is
implemented in this package. Conversions are cached on the immutable
Poly objects' hashes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy

from .poly import Poly

_SYMBOLS = {name: sympy.Symbol(name) for name in ("x", "y", "z", "t")}


def to_sympy(p):
    gens = [_SYMBOLS[v] for v in p.vars]
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for g, k in zip(gens, e):
            if k:
                term *= g ** k
        expr += term
    return sympy.Poly(expr, *gens, domain="QQ")


def from_sympy(sp, vars):
    terms = {}
    for e, c in sp.as_poly(*[_SYMBOLS[v] for v in vars], domain="QQ").terms():
        terms[tuple(int(k) for k in e)] = Fraction(c.p, c.q)
    return Poly(vars, terms)


@lru_cache(maxsize=4096)
def _gcd2(a, b):
    return from_sympy(sympy.gcd(to_sympy(a), to_sympy(b)), a.vars)


def poly_gcd(*polys):
    polys = [p for p in polys if not p.is_zero]
    if not polys:
        return None
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant:
            break
        g = _gcd2(g, p)
    return g


@lru_cache(maxsize=1024)
def factor_rational(p):
    """Irreducible factorization over Q: list of (factor, multiplicity).

    The constant content is dropped; factors are normalized by sympy's
    primitive convention.
    """
    _, factors = to_sympy(p).factor_list()
    return tuple((from_sympy(f, p.vars), int(m)) for f, m in factors)


def is_squarefree(p):
    for _, m in factor_rational(p):
        if m > 1:
            return False
    return True


@lru_cache(maxsize=1024)
def is_irreducible(p):
    factors = factor_rational(p)
    return len(factors) == 1 and factors[0][1] == 1


@lru_cache(maxsize=4096)
def factor_univariate(p, name):
    """Irreducible factorization over Q of a univariate Poly."""
    return factor_rational(p)
