"""Seeded random corpus: branch catalog and invariant 1-form builders.

Every identity checker needs a population beyond the worked examples.
Curves are composed from a fixed catalog of germs (smooth, cusps of
several types with deformation terms, rational and irrational node
pairs); 1-forms are built so the curve is invariant by construction,
either unit * df + f * eta ("hamiltonian style") or as logarithmic
combinations with positive rational residues. All draws come from a
seeded generator, and rejected draws stay part of the stream, so the
corpus is reproducible byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .config import DEFAULT
from .factorback import poly_gcd
from .foliation import LocalFoliation
from .poly import LOCAL_VARS, Poly, parse_poly

# name, equation, rough size cost (keeps composite colengths desk-sized)
CATALOG = (
    ("line_x", "x", 1),
    ("line_y", "y", 1),
    ("line_diag", "y - x", 1),
    ("line_skew", "y + 2*x", 1),
    ("parabola", "y - x^2", 1),
    ("cusp_2_3", "y^2 - x^3", 3),
    ("cusp_2_3_deformed", "y^2 - x^3 + x^4", 3),
    ("cusp_2_5", "y^2 - x^5", 5),
    ("cusp_3_4", "y^3 - x^4", 7),
    ("cusp_3_7", "y^3 - x^7", 13),
    ("cusp_3_7_deformed", "y^3 - x^7 + x^5*y", 13),
    ("node_rational", "y^2 - x^2 - x^3", 2),
    ("node_conjugate", "y^2 - 2*x^2 - x^3", 2),
    ("tacnode_conjugate", "y^2 + x^4 - x^5", 4),
)

_PARSED = None


def catalog():
    global _PARSED
    if _PARSED is None:
        _PARSED = tuple(
            (name, parse_poly(text), cost) for name, text, cost in CATALOG
        )
    return _PARSED


def random_curve(rng, max_units=3, budget=14, min_order=2):
    """Reduced curve as a product of distinct catalog germs."""
    items = list(catalog())
    while True:
        k = rng.choice([1, 1, 1, 2, 2, 3][: 2 * max_units])
        rng.shuffle(items)
        picked = []
        cost = 0
        for name, poly, c in items:
            if len(picked) == k:
                break
            if cost + c > budget:
                continue
            picked.append(poly)
            cost += c
        if len(picked) != k:
            continue
        f = Poly.const(LOCAL_VARS, 1)
        for p in picked:
            f = f * p
        if f.order() >= min_order:
            return f, tuple(picked)


def _random_small_poly(rng, max_terms, max_degree, min_order, zero_ok=True):
    n = rng.randrange(0 if zero_ok else 1, max_terms + 1)
    terms = {}
    for _ in range(n):
        d = rng.randrange(min_order, max_degree + 1)
        a = rng.randrange(0, d + 1)
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[(a, d - a)] = terms.get((a, d - a), 0) + c
    return Poly(LOCAL_VARS, {e: Fraction(c) for e, c in terms.items()})


def hamiltonian_form(f, unit, eta1, eta2):
    """P dx + Q dy = unit * df + f * eta, invariant along f by design."""
    P = unit * f.diff("x") + f * eta1
    Q = unit * f.diff("y") + f * eta2
    return P, Q


def logarithmic_form(factors, residues):
    """Positive-residue logarithmic combination of the given factors."""
    P = Poly.zero(LOCAL_VARS)
    Q = Poly.zero(LOCAL_VARS)
    for i, (fi, lam) in enumerate(zip(factors, residues)):
        rest = Poly.const(LOCAL_VARS, 1)
        for j, fj in enumerate(factors):
            if j != i:
                rest = rest * fj
        P = P + lam * rest * fi.diff("x")
        Q = Q + lam * rest * fi.diff("y")
    return P, Q


def random_invariant_pair(rng, config=DEFAULT):
    """(foliation, invariant curve, kind) with the curve singular at 0."""
    for _ in range(200):
        f, factors = random_curve(rng)
        if rng.random() < 0.5 and len(factors) >= 2:
            kind = "logarithmic"
            residues = [
                Fraction(rng.randrange(1, 4), rng.randrange(1, 3))
                for _ in factors
            ]
            P, Q = logarithmic_form(factors, residues)
        else:
            kind = "hamiltonian"
            unit = Poly.const(LOCAL_VARS, rng.choice([1, 1, 1, 2, -1]))
            unit = unit + _random_small_poly(rng, 2, 2, 1)
            if unit.constant_term == 0:
                continue
            eta1 = _random_small_poly(rng, 2, 2, 1)
            eta2 = _random_small_poly(rng, 2, 2, 1)
            P, Q = hamiltonian_form(f, unit, eta1, eta2)
        if P.is_zero or Q.is_zero:
            continue
        g = poly_gcd(P, Q)
        if g is not None and not g.is_constant:
            continue
        F = LocalFoliation(P, Q, validate=False)
        if not F.singular:
            continue
        return F, f, kind
    raise RuntimeError("random generator failed to produce a valid pair")


def random_coprime_pair(rng, config=DEFAULT):
    """(f, g) coprime, both of local order <= 6, f catalog-decomposable."""
    while True:
        f, _ = random_curve(rng, max_units=2, budget=10, min_order=1)
        if f.order() > 6:
            continue
        g = _random_small_poly(rng, 4, 4, 1, zero_ok=False)
        if g.is_zero or g.order() > 6:
            continue
        common = poly_gcd(f, g)
        if common is not None and not common.is_constant:
            continue
        return f, g
