import random
from fractions import Fraction

import pytest

from folinv.errors import (
    BundleUnsupported,
    NotReduced,
    UnitInput,
    UnsupportedSplitting,
    WindowTooSmall,
)
from folinv.localring import intersection_multiplicity, milnor_curve, tjurina_curve
from folinv.poly import LOCAL_VARS, parse_poly
from folinv.puiseux import (
    branch_count,
    branch_decompose,
    differential_values,
    gap_count,
    newton_polygon,
    order_along,
    semigroup,
    semigroup_generators,
)
from folinv.series import series_substitute

from oracles import semigroup_by_enumeration, sympy_series_order
import sympy


def P(text):
    return parse_poly(text, LOCAL_VARS)


# -- newton polygon -------------------------------------------------------------


def test_newton_polygon_examples():
    assert newton_polygon(P("y^2 - x^3")).vertices == ((0, 2), (3, 0))
    assert newton_polygon(P("y*(y^2 - x^3)")).vertices == ((0, 3), (3, 1))
    # hull of the support: every vertex is an actual term of f
    assert newton_polygon(P("x*y")).vertices == ((1, 1),)


def test_newton_polygon_vertex_invariants():
    f = P("y^4 + x*y^2 + x^3*y + x^7 + x^2*y^3")
    np = newton_polygon(f)
    bs = [b for _, b in np.vertices]
    assert bs == sorted(bs, reverse=True)
    for v in np.vertices:
        assert v in f.terms


def test_newton_polygon_unit_input():
    with pytest.raises(UnitInput):
        newton_polygon(P("1 + x"))


# -- branch decomposition ----------------------------------------------------------


def test_rational_node_splits():
    bs = branch_decompose(P("y^2 - x^2 - x^3"))
    assert len(bs) == 2
    assert all(b.bundle_size == 1 for b in bs)
    leads = sorted(b.y_t.coeff(1) for b in bs)
    assert leads == [Fraction(-1), Fraction(1)]


def test_conjugate_node_is_a_bundle():
    bs = branch_decompose(P("y^2 - 2*x^2 - x^3"))
    assert len(bs) == 1
    assert bs[0].bundle_size == 2
    assert bs[0].x_t is None


def test_suzuki_positive_divisor_branches():
    f = P("x*(y^2 - x^3)*(y^2 - x^2 - x^3)")
    bs = branch_decompose(f)
    assert len(bs) == 4
    assert branch_count(f) == 4


def test_branch_annihilates_factor():
    for text in ("y^2 - x^3", "y^3 - x^7 + x^5*y", "y^2 - x^2 - x^3"):
        for b in branch_decompose(P(text)):
            if b.is_bundle:
                continue
            val = series_substitute(b.defining_factor, b.x_t, b.y_t)
            assert not val.coeffs


def test_parametrization_is_primitive():
    from math import gcd

    for text in ("y^2 - x^3", "y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7"):
        b = branch_decompose(P(text))[0]
        g = b.ramification
        for e in b.y_t.coeffs:
            g = gcd(g, e)
        assert g == 1


def test_not_reduced_rejected():
    with pytest.raises(NotReduced):
        branch_decompose(P("x^2*y"))


def test_unit_input_rejected():
    with pytest.raises(UnitInput):
        branch_decompose(P("1 + x + y"))


def test_nested_irrational_splitting_reported():
    # char root c^2 = 2 with multiplicity two: needs an extension tower
    f = P("(y^2 - 2*x^2)^2 - x^7")
    with pytest.raises(UnsupportedSplitting):
        branch_decompose(f)


def test_doubled_precision_agrees_on_prefix():
    f = P("y^2 - x^2 - x^3")
    coarse = branch_decompose(f, precision=12)
    fine = branch_decompose(f, precision=24)
    for bc in coarse:
        match = [
            bf
            for bf in fine
            if bf.y_t.coeff(1) == bc.y_t.coeff(1)
        ]
        assert len(match) == 1
        bf = match[0]
        for e, c in bc.y_t.coeffs.items():
            assert bf.y_t.coeff(e) == c


# -- orders along branches -----------------------------------------------------------


def test_order_along_examples():
    cusp = branch_decompose(P("y^2 - x^3"))[0]
    assert order_along(cusp, P("x")) == 2
    assert order_along(cusp, P("2*y^2 + x^3")) == 6
    bundle = branch_decompose(P("y^2 - 2*x^2 - x^3"))[0]
    assert order_along(bundle, P("-2*x*y")) == 2


def test_order_along_infinite_on_own_factor():
    cusp = branch_decompose(P("y^2 - x^3"))[0]
    assert order_along(cusp, P("y^2 - x^3")) is None
    assert order_along(cusp, P("(y^2 - x^3)*(y + x)")) is None


def test_order_along_matches_sympy_substitution():
    t = sympy.Symbol("t")
    cusp = branch_decompose(P("y^2 - x^3"))[0]
    for g in (P("y - x^2"), P("x*y"), P("y^3 - x^4"), P("x + y")):
        want = sympy_series_order(g, t ** 2, t ** 3)
        assert order_along(cusp, g) == want


def test_branch_orders_sum_to_intersection_number():
    rng = random.Random(17)
    from folinv.generators import random_coprime_pair

    for _ in range(20):
        f, g = random_coprime_pair(rng)
        total = sum(
            b.bundle_size * order_along(b, g) for b in branch_decompose(f)
        )
        assert total == intersection_multiplicity(f, g)


# -- semigroups --------------------------------------------------------------------


def test_semigroup_cusp():
    S = semigroup(branch_decompose(P("y^2 - x^3"))[0])
    assert S.generators == (2, 3)
    assert S.conductor == 2
    assert S.elements == (0,)


def test_semigroup_smooth_branch():
    S = semigroup(branch_decompose(P("x"))[0])
    assert S.generators == (1,)
    assert S.conductor == 0
    assert S.contains(0) and S.contains(1)


def test_semigroup_3_7():
    S = semigroup(branch_decompose(P("y^3 - x^7"))[0])
    assert S.generators == (3, 7)
    assert S.conductor == 12  # (3-1)(7-1) = 12
    assert len(S.gaps()) == 6


def test_semigroup_4_6_13_from_implicitization():
    # minimal polynomial of (t^4, t^6 + t^7), computed by the resultant oracle
    f = P("y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7")
    b = branch_decompose(f)[0]
    assert b.char_exponents == (4, 6, 7)
    S = semigroup(b)
    assert S.generators == (4, 6, 13)
    assert S.conductor == 16
    member = semigroup_by_enumeration((4, 6, 13), 20)
    for n in range(20):
        assert S.contains(n) == member[n]


def test_semigroup_tangent_branch_uses_generic_orientation():
    b = branch_decompose(P("x - y^2"))[0]
    S = semigroup(b)
    assert S.generators == (1,)
    assert S.conductor == 0


def test_semigroup_bundle_unsupported():
    bundle = branch_decompose(P("y^2 - 2*x^2 - x^3"))[0]
    with pytest.raises(BundleUnsupported):
        semigroup(bundle)


def test_semigroup_smallest_values_are_coordinate_orders():
    for text in ("y^2 - x^3", "y^3 - x^7", "y^3 - x^4"):
        b = branch_decompose(P(text))[0]
        S = semigroup(b)
        nonzero = [n for n in S.upto(S.conductor + 5) if n > 0]
        assert nonzero[0] == order_along(b, P("x"))
        assert nonzero[1] == order_along(b, P("y"))


def test_semigroup_generator_recursion():
    assert semigroup_generators((2, 3)) == (2, 3)
    assert semigroup_generators((4, 6, 7)) == (4, 6, 13)
    assert semigroup_generators((1,)) == (1,)


# -- differential values ---------------------------------------------------------------


def test_differential_values_cusp_no_extra_gaps():
    b = branch_decompose(P("y^2 - x^3"))[0]
    L = differential_values(b)
    lbar = {0} | set(L.upto(6))
    assert lbar == {0, 2, 3, 4, 5}
    assert gap_count(b) == 0


def test_differential_values_smooth():
    b = branch_decompose(P("x"))[0]
    assert gap_count(b) == 0


def test_gap_count_equals_mu_minus_tau():
    for text in (
        "y^2 - x^3",
        "y^3 - x^7",
        "y^3 - x^7 + x^5*y",
        "y^2 - x^3 + x^4",
        "y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7",
    ):
        f = P(text)
        b = branch_decompose(f)[0]
        assert gap_count(b, f) == milnor_curve(f) - tjurina_curve(f), text


def test_window_too_small_detected():
    b = branch_decompose(P("y^2 - x^3"))[0]
    with pytest.raises(WindowTooSmall):
        differential_values(b, degree_window=0)


def test_branch_multiplicities():
    assert branch_decompose(P("y^2 - x^3"))[0].multiplicity() == 2
    assert branch_decompose(P("y^2 - 2*x^2 - x^3"))[0].multiplicity() == 1
    assert branch_decompose(P("x"))[0].multiplicity() == 1
