import random
from fractions import Fraction

import pytest

from folinv.config import Config
from folinv.errors import (
    CommonComponent,
    DegreeCapExceeded,
    NotReduced,
    NotSaturated,
)
from folinv.localring import (
    INFINITE,
    LocalIdeal,
    colength,
    intersection_multiplicity,
    milnor_curve,
    milnor_foliation,
    multiplicity_curve,
    tjurina_curve,
)
from folinv.poly import LOCAL_VARS, Poly, parse_poly

from oracles import brute_colength_stable


def P(text):
    return parse_poly(text, LOCAL_VARS)


SUZUKI_P = "2*y^2 + x^3"
SUZUKI_Q = "-2*x*y"
B0 = "x*(y^2 - x^3)*(y^2 - x^2 - x^3)"


# -- colength ---------------------------------------------------------------


def test_colength_maximal_ideal():
    out = colength(LocalIdeal((P("x"), P("y"))))
    assert out.value == 1
    assert out.certificate_degree >= 1


def test_colength_monomial_staircase():
    for k in (1, 2, 3, 5, 9):
        assert colength([P("x"), P(f"y^{k}")]).value == k


def test_colength_suzuki_milnor():
    assert colength([P(SUZUKI_P), P(SUZUKI_Q)]).value == 5


def test_colength_unit_ideal():
    assert colength([P("1 + x"), P("y")]).value == 0


def test_colength_generator_permutation_invariance():
    gens = [P("2*y^2 + x^3"), P("-2*x*y"), P("x^4")]
    vals = {
        colength(LocalIdeal(tuple(perm))).value
        for perm in [
            (gens[0], gens[1], gens[2]),
            (gens[2], gens[0], gens[1]),
            (gens[1], gens[2], gens[0]),
        ]
    }
    assert len(vals) == 1


def test_colength_infinite_detection():
    out = colength([P("x*y"), P("x*y^2")])
    assert out.value is INFINITE
    assert out.witness is not None


def test_colength_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        colength([P("x"), P("y^50")], degree_cap=10)


def test_colength_matches_brute_force_oracle():
    cases = [
        [P("x"), P("y")],
        [P(SUZUKI_P), P(SUZUKI_Q)],
        [P("y^2 - x^3"), P("y^2 - x^2 - x^3")],
        [P("y^3 - x^4"), P("x^2 - y^3")],
        [P("x^2"), P("y^3"), P("x*y")],
    ]
    for gens in cases:
        assert colength(gens).value == brute_colength_stable(gens)


# -- intersection multiplicity -------------------------------------------------


def test_intersection_examples():
    assert intersection_multiplicity(P("x"), P("y")) == 1
    assert intersection_multiplicity(P("x"), P("y^2 - x^3")) == 2
    # frozen by the brute-force oracle (see test_colength_matches_brute_force_oracle)
    assert intersection_multiplicity(P("y^2 - x^3"), P("y^2 - x^2 - x^3")) == 4


def test_intersection_symmetry_and_additivity():
    f, g, h = P("y^2 - x^3"), P("y - x^2"), P("x + y")
    assert intersection_multiplicity(f, g) == intersection_multiplicity(g, f)
    lhs = intersection_multiplicity(f * h, g)
    assert lhs == intersection_multiplicity(f, g) + intersection_multiplicity(h, g)


def test_intersection_common_component():
    with pytest.raises(CommonComponent):
        intersection_multiplicity(P("x*y"), P("x*(y - x)"))


def test_intersection_no_common_zero():
    assert intersection_multiplicity(P("x + 1"), P("y")) == 0


# -- curve invariants ------------------------------------------------------------


def test_milnor_curve_examples():
    assert milnor_curve(P("y^2 - x^3")) == 2
    assert milnor_curve(P(B0)) == 17
    # frozen by the brute-force oracle: gradient colength of y*(y^2 - x^3)
    assert milnor_curve(P("y*(y^2 - x^3)")) == 7


def test_tjurina_curve_examples():
    assert tjurina_curve(P("y^2 - x^3")) == 2
    assert tjurina_curve(P(B0)) == 15  # frozen by the brute-force oracle
    assert tjurina_curve(P("x*y")) == 1


def test_milnor_smooth_curve_is_zero():
    assert milnor_curve(P("y - x^2")) == 0
    assert tjurina_curve(P("x")) == 0


def test_not_reduced_rejected():
    with pytest.raises(NotReduced):
        milnor_curve(P("x^2*y"))
    with pytest.raises(NotReduced):
        tjurina_curve(P("(y^2 - x^3)*(y^2 - x^3)"))


def test_mu_tau_ordering_on_catalog():
    from folinv.generators import catalog

    for name, f, _ in catalog():
        mu = milnor_curve(f)
        tau = tjurina_curve(f)
        assert mu >= tau, name
        if mu >= 1:
            assert tau >= 1, name
            # strict quarter bound for singular germs
            assert Fraction(mu - tau) < Fraction(mu, 4), name
        nu = f.order()
        assert mu >= (nu - 1) ** 2, name


# -- foliation numbers -----------------------------------------------------------


def test_milnor_foliation_examples():
    assert milnor_foliation(P("x"), P("y")) == 1  # omega = x dx + y dy
    assert milnor_foliation(P(SUZUKI_P), P(SUZUKI_Q)) == 5


def test_milnor_foliation_fk3():
    Pk = P("y*(2*x^4 + 4*x^2*y - y^2)")
    Qk = P("x*(y^2 - 2*x^2*y - x^4)")
    assert milnor_foliation(Pk, Qk) == 15


def test_milnor_foliation_not_saturated():
    with pytest.raises(NotSaturated):
        milnor_foliation(P("x*y"), P("x*(y + x)"))


def test_multiplicity():
    assert multiplicity_curve(P("y^2 - x^3")) == 2
    assert min(P(SUZUKI_P).order(), P(SUZUKI_Q).order()) == 2
    assert multiplicity_curve(P("x*y*(1 + x)")) == 2


# -- coordinate invariance property ------------------------------------------------


def test_colength_invariant_under_linear_coordinate_changes():
    rng = random.Random(31)
    gens = [P(SUZUKI_P), P(SUZUKI_Q)]
    base = colength(gens).value
    for _ in range(6):
        while True:
            a, b, c, d = (rng.randrange(-3, 4) for _ in range(4))
            if a * d - b * c != 0:
                break
        sub = {
            "x": Poly(LOCAL_VARS, {(1, 0): Fraction(a), (0, 1): Fraction(b)}),
            "y": Poly(LOCAL_VARS, {(1, 0): Fraction(c), (0, 1): Fraction(d)}),
        }
        moved = [g.subs(sub) for g in gens]
        assert colength(moved).value == base


def test_certificate_degree_is_recorded():
    out = colength([P("x"), P("y^4")])
    assert out.is_finite and out.certificate_degree >= 4
