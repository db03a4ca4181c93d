"""Local foliation invariants and identity checkers.

A foliation germ is given by the 1-form P dx + Q dy with coprime
coefficients. This module computes invariance cofactors, multiplicities
along branches and divisors of separatrices, the GSV index, the
chi-number against a user-supplied balanced divisor, and evaluates every
local identity and inequality exactly.

Multiplicities along branches are always computed twice: from the
certified order of the pulled-back vector field, and from intersection
numbers with the defining factor; the two routes must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT
from .errors import (
    CrossCheckError,
    NotInvariant,
    NotReduced,
    NotSaturated,
    ZeroPolynomial,
)
from .factorback import factor_rational, is_squarefree
from .localring import (
    LocalIdeal,
    colength,
    milnor_curve,
    milnor_foliation,
    saturation_gcd,
    tjurina_curve,
    tjurina_foliation_ideal,
)
from .poly import LOCAL_VARS, Poly
from .puiseux import branch_decompose, order_along


class LocalFoliation:
    """Foliation germ at the origin given by omega = P dx + Q dy."""

    __slots__ = ("P", "Q")

    def __init__(self, P, Q, validate=True):
        if P.is_zero and Q.is_zero:
            raise ZeroPolynomial("zero 1-form")
        if validate:
            bad = saturation_gcd(P if not P.is_zero else Q,
                                 Q if not Q.is_zero else P)
            if bad is not None:
                raise NotSaturated(f"coefficients share the factor {bad}")
        self.P = P
        self.Q = Q

    @property
    def singular(self):
        return self.P.constant_term == 0 and self.Q.constant_term == 0

    def multiplicity(self):
        """Algebraic multiplicity: minimum coefficient order."""
        orders = [c.order() for c in (self.P, self.Q) if not c.is_zero]
        return min(orders)

    def milnor(self, config=DEFAULT):
        if self.P.is_zero or self.Q.is_zero:
            unit = self.P if self.Q.is_zero else self.Q
            if unit.constant_term != 0:
                return 0
            raise NotSaturated("1-form with a single vanishing coefficient")
        return milnor_foliation(self.P, self.Q, config=config)

    def __repr__(self):
        return f"LocalFoliation(({self.P}) dx + ({self.Q}) dy)"


def is_invariant(F, f):
    """Invariance test; returns (flag, cofactor).

    f is invariant iff P*f_y - Q*f_x is divisible by f; the exact
    quotient is the cofactor of the wedge with df.
    """
    if f.is_zero:
        raise ZeroPolynomial("invariance of the zero curve")
    wedge = F.P * f.diff("y") - F.Q * f.diff("x")
    if wedge.is_zero:
        return True, Poly.zero(f.vars)
    if f.divides(wedge):
        return True, wedge.exact_div(f)
    return False, None


# -- curve-side data shared by the checkers ---------------------------------


@dataclass(frozen=True)
class CurveUnit:
    """One Q-irreducible factor through the origin with its branches."""

    factor: object
    branches: tuple

    @property
    def branch_number(self):
        return sum(b.bundle_size for b in self.branches)


_CURVE_CACHE = {}


def curve_units(f, config=DEFAULT):
    """Defining factors of f through the origin, with branch groups."""
    key = f
    hit = _CURVE_CACHE.get(key)
    if hit is not None:
        return hit
    branches = branch_decompose(f, config=config)
    groups = {}
    order = []
    for b in branches:
        if b.defining_factor not in groups:
            groups[b.defining_factor] = []
            order.append(b.defining_factor)
        groups[b.defining_factor].append(b)
    units = tuple(CurveUnit(h, tuple(groups[h])) for h in order)
    _CURVE_CACHE[key] = units
    return units


def _pair_intersection(f, g, config=DEFAULT):
    return colength(LocalIdeal((f, g)), config=config).value


def unit_pair_sum(units, config=DEFAULT):
    """Sum of pairwise intersection numbers between distinct units."""
    total = 0
    for i in range(len(units)):
        for j in range(i + 1, len(units)):
            total += _pair_intersection(units[i].factor, units[j].factor, config)
    return total


# -- multiplicities along branches and divisors ------------------------------


def mult_along_branch(F, branch, config=DEFAULT, cross_check=True):
    """Multiplicity of the foliation along one separatrix branch.

    Order of the vector field pulled back through the parametrization,
    read in whichever chart is nondegenerate; charts are cross-checked
    against each other and against the intersection-number identity
    (coefficient order minus coordinate order plus one).
    """
    h = branch.defining_factor
    flag, _ = is_invariant(F, h)
    if not flag:
        raise NotInvariant(f"{h} is not invariant")
    xpoly = Poly.variable(LOCAL_VARS, "x")
    ypoly = Poly.variable(LOCAL_VARS, "y")
    vals = []
    for coeff, coord in ((F.Q, xpoly), (F.P, ypoly)):
        if coeff.is_zero:
            continue
        o_coord = order_along(branch, coord, config=config)
        if o_coord is None:
            continue  # branch lies on the coordinate axis: chart degenerate
        o_coeff = order_along(branch, coeff, config=config)
        if o_coeff is None:
            continue  # coefficient vanishes on the branch: use other chart
        vals.append(o_coeff - o_coord + 1)
    if not vals:
        raise CrossCheckError("no chart computes the pullback order")
    if len(vals) == 2 and vals[0] != vals[1]:
        raise CrossCheckError(f"chart mismatch: {vals}")
    value = vals[0]
    if cross_check and not branch.is_bundle and len(curve_units(h, config)) == 1 \
            and len(curve_units(h, config)[0].branches) == 1:
        # single-branch factor: the identity route is exactly I-numbers
        if h.divides(F.Q) or xpoly.divides(h):
            coeff, coord = F.P, ypoly
        else:
            coeff, coord = F.Q, xpoly
        ic = _pair_intersection(h, coeff, config)
        io = _pair_intersection(h, coord, config)
        ident = ic - io + 1
        if ident != value:
            raise CrossCheckError(
                f"pullback order {value} disagrees with intersection route {ident}"
            )
    return value


class SepDivisor:
    """Formal integer combination of separatrix branches.

    Built from factor-level data: every branch of a listed factor gets
    that factor's coefficient. The positive and negative parts are cached
    as (factor, coefficient, branches) triples.
    """

    __slots__ = ("foliation", "parts")

    def __init__(self, foliation, parts):
        self.foliation = foliation
        self.parts = tuple(parts)

    @classmethod
    def from_factors(cls, F, factor_coeffs, config=DEFAULT):
        parts = []
        for f, coeff in factor_coeffs:
            if coeff == 0:
                continue
            for unit in curve_units(f, config):
                flag, _ = is_invariant(F, unit.factor)
                if not flag:
                    raise NotInvariant(f"{unit.factor} is not invariant")
                parts.append((unit.factor, coeff, unit.branches))
        return cls(F, parts)

    @property
    def is_empty(self):
        return not self.parts

    @property
    def is_effective(self):
        return all(c > 0 for _, c, _ in self.parts)

    @property
    def is_primitive(self):
        return all(abs(c) == 1 for _, c, _ in self.parts)

    def degree(self):
        return sum(
            c * sum(b.bundle_size for b in branches) for _, c, branches in self.parts
        )

    def positive_part(self):
        return SepDivisor(self.foliation,
                          [(f, c, bs) for f, c, bs in self.parts if c > 0])

    def negative_part(self):
        """B_infinity as an effective divisor."""
        return SepDivisor(self.foliation,
                          [(f, -c, bs) for f, c, bs in self.parts if c < 0])

    def polynomial(self):
        """Reduced product of the factors (coefficients must be +-1)."""
        if not all(abs(c) == 1 for _, c, _ in self.parts):
            raise NotReduced("divisor polynomial needs a primitive divisor")
        out = Poly.const(LOCAL_VARS, 1)
        for f, _, _ in self.parts:
            out = out * f
        return out

    def branch_items(self):
        for _, c, branches in self.parts:
            for b in branches:
                yield b, c


def mult_along_divisor(F, divisor, config=DEFAULT):
    """Multiplicity of the foliation along a divisor of separatrices.

    Signed sum of branch multiplicities minus the divisor degree plus
    one; the empty divisor has multiplicity one by convention.
    """
    if divisor.is_empty:
        return 1
    total = 0
    for b, c in divisor.branch_items():
        total += c * b.bundle_size * mult_along_branch(F, b, config=config)
    return total - divisor.degree() + 1


def effective_divisor(F, f, config=DEFAULT):
    """The effective primitive divisor of all branches of f."""
    units = curve_units(f, config)
    parts = []
    for unit in units:
        flag, _ = is_invariant(F, unit.factor)
        if not flag:
            raise NotInvariant(f"{unit.factor} is not invariant")
        parts.append((unit.factor, 1, unit.branches))
    return SepDivisor(F, parts)


def mult_along_curve(F, f, config=DEFAULT):
    """Multiplicity of the foliation along the reduced invariant curve f."""
    return mult_along_divisor(F, effective_divisor(F, f, config), config)


def tjurina_foliation(F, f, config=DEFAULT):
    """Tjurina number of the foliation with respect to an invariant curve."""
    if not is_squarefree(f):
        raise NotReduced(f"{f} has a repeated factor")
    flag, _ = is_invariant(F, f)
    if not flag:
        raise NotInvariant(f"{f} is not invariant")
    return tjurina_foliation_ideal(F.P, F.Q, f, config=config)


def gsv(F, f, config=DEFAULT):
    """GSV index with respect to a reduced invariant curve.

    Multiplicity of the foliation along the effective divisor of all
    branches of f, minus the Milnor number of f.
    """
    return mult_along_curve(F, f, config) - milnor_curve(f, config=config)


def chi(F, balanced, config=DEFAULT):
    """chi-number against a user-asserted balanced divisor."""
    value = F.milnor(config) - mult_along_divisor(F, balanced, config)
    return value


def chi_checked(F, balanced, config=DEFAULT):
    """chi with the nonnegativity warning from the balanced-divisor theory."""
    value = chi(F, balanced, config)
    warning = None
    if value < 0:
        warning = (
            "chi is negative: the supplied divisor of separatrices is not balanced"
        )
    return value, warning


def theta_residual(f, config=DEFAULT):
    """Residual term of the curve Tjurina adjunction formula.

    tau(C) minus the unit Tjurina numbers minus the pairwise intersection
    numbers; bundle-valued units enter at the level of their defining
    factors.
    """
    units = curve_units(f, config)
    if not units:
        raise ZeroPolynomial("curve has no branch at the origin")
    total = tjurina_curve(f, config=config)
    for u in units:
        total -= tjurina_curve(u.factor, config=config)
    total -= unit_pair_sum(units, config)
    return total


# -- identity verdicts ---------------------------------------------------------


@dataclass(frozen=True)
class IdentityVerdict:
    """Outcome of one exact identity or inequality evaluation."""

    name: str
    lhs: object
    rhs: object
    relation: str = "eq"  # "eq" | "lt" | "le"
    status: str = "holds"
    note: str = ""

    @property
    def holds(self):
        return self.status == "holds"


def _verdict(name, lhs, rhs, relation="eq", note=""):
    if relation == "eq":
        ok = lhs == rhs
    elif relation == "lt":
        ok = lhs < rhs
    elif relation == "le":
        ok = lhs <= rhs
    else:
        raise ValueError(f"unknown relation {relation}")
    return IdentityVerdict(name, lhs, rhs, relation, "holds" if ok else "fails", note)


def _not_applicable(name, lhs, rhs, relation, note):
    return IdentityVerdict(name, lhs, rhs, relation, "not-applicable", note)


def check_index_transfer(F, f, config=DEFAULT):
    """GSV difference identity and the mu - tau transfer, both exact.

    The GSV verdict compares the pullback-order route against the
    intersection-number route; the transfer verdict states that
    mu(F,C) - tau(F,C) equals mu(C) - tau(C).
    """
    mu_C = milnor_curve(f, config=config)
    tau_C = tjurina_curve(f, config=config)
    mu_FC = mult_along_curve(F, f, config)
    tau_FC = tjurina_foliation(F, f, config)
    ident = _mult_curve_by_intersections(F, f, config)
    v1 = _verdict("gsv-difference", gsv(F, f, config), ident - mu_C)
    v2 = _verdict("mu-tau-transfer", mu_FC - tau_FC, mu_C - tau_C)
    return v1, v2


def _mult_curve_by_intersections(F, f, config):
    """mu(F, C) through intersection numbers only (independent route)."""
    units = curve_units(f, config)
    xpoly = Poly.variable(LOCAL_VARS, "x")
    ypoly = Poly.variable(LOCAL_VARS, "y")
    total = 0
    for u in units:
        h = u.factor
        if xpoly.divides(h) or h.divides(F.Q):
            coeff, coord = F.P, ypoly
        else:
            coeff, coord = F.Q, xpoly
        total += (
            _pair_intersection(h, coeff, config)
            - _pair_intersection(h, coord, config)
            + 1
        )
    return total - len(units) + 1


def check_gsv_tjurina_bound(F, f, config=DEFAULT):
    """Strict bound GSV < 4*tau(F,C) - 3*mu(F,C), for singular curves."""
    mu_C = milnor_curve(f, config=config)
    lhs = gsv(F, f, config)
    tau_FC = tjurina_foliation(F, f, config)
    mu_FC = mult_along_curve(F, f, config)
    rhs = 4 * tau_FC - 3 * mu_FC
    if mu_C == 0:
        return _not_applicable(
            "gsv-upper-bound", lhs, rhs, "lt", "curve smooth at the origin"
        )
    return _verdict("gsv-upper-bound", lhs, rhs, "lt")


def adjunction_suite(F, f, config=DEFAULT):
    """All adjunction formulas for a reduced invariant curve, exactly.

    Units are the Q-irreducible defining factors through the origin; the
    identities telescope exactly under this grouping.
    """
    units = curve_units(f, config)
    U = len(units)
    pair_sum = unit_pair_sum(units, config)
    mu_C = milnor_curve(f, config=config)
    tau_C = tjurina_curve(f, config=config)
    mu_FC = mult_along_curve(F, f, config)
    tau_FC = tjurina_foliation(F, f, config)
    mu_u = [milnor_curve(u.factor, config=config) for u in units]
    tau_u = [tjurina_curve(u.factor, config=config) for u in units]
    mu_Fu = [mult_along_curve(F, u.factor, config) for u in units]
    tau_Fu = [tjurina_foliation(F, u.factor, config) for u in units]
    theta = theta_residual(f, config)
    out = [
        _verdict("milnor-adjunction", mu_C, sum(mu_u) + 2 * pair_sum - U + 1),
        _verdict(
            "tjurina-adjunction",
            tau_C,
            sum(tau_u) + pair_sum + theta,
            note="theta is the residual of this identity",
        ),
        _verdict("foliation-mult-adjunction", mu_FC, sum(mu_Fu) - U + 1),
        _verdict(
            "gsv-adjunction",
            gsv(F, f, config),
            sum(mf - m for mf, m in zip(mu_Fu, mu_u)) - 2 * pair_sum,
        ),
        _verdict("foliation-tjurina-adjunction", tau_FC, sum(tau_Fu) - pair_sum + theta),
    ]
    return out


def check_branch_sum_inequality(F, f, config=DEFAULT):
    """Unitwise mu(F,.) - tau(F,.) sums are bounded by the total."""
    units = curve_units(f, config)
    lhs = 0
    for u in units:
        lhs += mult_along_curve(F, u.factor, config) - tjurina_foliation(
            F, u.factor, config
        )
    rhs = mult_along_curve(F, f, config) - tjurina_foliation(F, f, config)
    return _verdict("branch-sum", lhs, rhs, "le")


def check_balance_identity(F, divisor, config=DEFAULT):
    """Balance identity linking mu(F), tau(F,B0), mu/tau of B0, chi.

    Returns the identity verdict and, for effective divisors, the
    equivalence verdict 'mu(F) = tau(F,B0) iff mu(B0) = tau(B0) and
    chi = 0'.
    """
    b0 = divisor.positive_part()
    binf = divisor.negative_part()
    b0_poly = b0.polynomial()
    mu_F = F.milnor(config)
    tau_FB0 = tjurina_foliation(F, b0_poly, config)
    mu_B0 = milnor_curve(b0_poly, config=config)
    tau_B0 = tjurina_curve(b0_poly, config=config)
    mu_Finf = 1 if binf.is_empty else mult_along_divisor(F, binf, config)
    ch = chi(F, divisor, config)
    v = _verdict(
        "balance-identity",
        mu_F - tau_FB0,
        mu_B0 - tau_B0 - mu_Finf + ch + 1,
    )
    if not binf.is_empty:
        return v, None
    equal_lhs = int(mu_F == tau_FB0)
    equal_rhs = int(mu_B0 == tau_B0 and ch == 0)
    v2 = _verdict(
        "balance-equivalence",
        equal_lhs,
        equal_rhs,
        note="quasi-homogeneity certificate is the numerical mu = tau test",
    )
    return v, v2


def check_ratio_bound(F, divisor, config=DEFAULT):
    """Sharp 4/3 bound on mu(F) over the corrected Tjurina denominator.

    Effective primitive divisors get the plain ratio
    mu / (tau(F,B) + chi); divisors with a nonempty negative part get the
    corrected denominator and the hypothesis mu(B0) <= mu(F), reported
    NOT-APPLICABLE when the hypothesis fails.
    """
    mu_F = F.milnor(config)
    ch = chi(F, divisor, config)
    b0 = divisor.positive_part()
    b0_poly = b0.polynomial()
    tau_FB0 = tjurina_foliation(F, b0_poly, config)
    binf = divisor.negative_part()
    four_thirds = Fraction(4, 3)
    if binf.is_empty:
        if not divisor.is_primitive:
            raise NotReduced("ratio bound needs a primitive divisor")
        denom = tau_FB0 + ch
        ratio = Fraction(mu_F, denom)
        note = "second type (chi = 0): ratio equals mu/tau(F,B)" if ch == 0 else ""
        return ratio, _verdict("ratio-bound", ratio, four_thirds, "lt", note)
    mu_Finf = mult_along_divisor(F, binf, config)
    denom = tau_FB0 + ch - mu_Finf + 1
    mu_B0 = milnor_curve(b0_poly, config=config)
    if denom <= 0:
        return None, _not_applicable(
            "ratio-bound", None, four_thirds, "lt", "nonpositive denominator"
        )
    ratio = Fraction(mu_F, denom)
    if mu_B0 > mu_F:
        return ratio, _not_applicable(
            "ratio-bound",
            ratio,
            four_thirds,
            "lt",
            f"hypothesis mu(B0) <= mu(F) fails ({mu_B0} > {mu_F})",
        )
    return ratio, _verdict("ratio-bound", ratio, four_thirds, "lt")


def check_tjurina_positive(F, f, config=DEFAULT):
    """tau(F,C) >= 1 whenever the origin is singular for F and lies on C."""
    tau_FC = tjurina_foliation(F, f, config)
    if not (F.singular and f.constant_term == 0):
        return _not_applicable(
            "tjurina-positive", tau_FC, 1, "le", "origin not singular on the curve"
        )
    return _verdict("tjurina-positive", 1, tau_FC, "le")


def check_multiplicity_bound(f, config=DEFAULT):
    """mu(C) >= (nu(C) - 1)^2 for every curve germ."""
    mu = milnor_curve(f, config=config)
    nu = f.order()
    return _verdict("multiplicity-bound", (nu - 1) ** 2, mu, "le")


def check_mu_tau_quarter(f, config=DEFAULT):
    """Strict bound mu - tau < mu/4 for singular curves."""
    mu = milnor_curve(f, config=config)
    tau = tjurina_curve(f, config=config)
    if mu == 0:
        return _not_applicable(
            "mu-tau-quarter", 0, 0, "lt", "curve smooth at the origin"
        )
    return _verdict("mu-tau-quarter", Fraction(mu - tau), Fraction(mu, 4), "lt")
