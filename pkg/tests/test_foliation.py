import random
from fractions import Fraction

import pytest

from folinv.errors import NotInvariant, NotSaturated
from folinv.foliation import (
    LocalFoliation,
    SepDivisor,
    adjunction_suite,
    check_balance_identity,
    check_branch_sum_inequality,
    check_gsv_tjurina_bound,
    check_index_transfer,
    check_mu_tau_quarter,
    check_multiplicity_bound,
    check_ratio_bound,
    check_tjurina_positive,
    chi,
    chi_checked,
    effective_divisor,
    gsv,
    is_invariant,
    mult_along_branch,
    mult_along_curve,
    mult_along_divisor,
    theta_residual,
    tjurina_foliation,
)
from folinv.generators import (
    hamiltonian_form,
    logarithmic_form,
    random_invariant_pair,
)
from folinv.localring import milnor_curve, tjurina_curve
from folinv.poly import LOCAL_VARS, Poly, parse_poly
from folinv.puiseux import branch_decompose


def P(text):
    return parse_poly(text, LOCAL_VARS)


def suzuki():
    return LocalFoliation(P("2*y^2 + x^3"), P("-2*x*y"))


def fk(k, lam=1):
    lam = Fraction(lam)
    x = Poly.variable(LOCAL_VARS, "x")
    y = Poly.variable(LOCAL_VARS, "y")
    Pc = y * (2 * x ** (2 * k - 2) + 2 * (lam + 1) * x ** 2 * y ** (k - 2) - y ** (k - 1))
    Qc = x * (y ** (k - 1) - (lam + 1) * x ** 2 * y ** (k - 2) - x ** (2 * k - 2))
    return LocalFoliation(Pc, Qc)


B0 = "x*(y^2 - x^3)*(y^2 - x^2 - x^3)"


def suzuki_balanced(F):
    return SepDivisor.from_factors(
        F,
        [(P("x"), 1), (P("y^2 - x^3"), 1), (P("y^2 - x^2 - x^3"), 1),
         (P("y^2 - 2*x^2 - x^3"), -1)],
    )


# -- invariance -----------------------------------------------------------------


def test_is_invariant_suzuki():
    F = suzuki()
    flag, h = is_invariant(F, P("x"))
    assert flag and h == P("2*y")
    flag, _ = is_invariant(F, P("y"))
    assert not flag
    for text in ("y^2 - x^3", "y^2 - x^2 - x^3", "y^2 - 2*x^2 - x^3"):
        assert is_invariant(F, P(text))[0]


def test_is_invariant_fk_divisor():
    assert is_invariant(fk(3), P("x*y"))[0]


def test_hamiltonian_always_invariant():
    f = P("(y^2 - x^3)*(y - x)")
    unit = P("1 + x")
    Pc, Qc = hamiltonian_form(f, unit, P("x"), P("y^2"))
    F = LocalFoliation(Pc, Qc)
    assert is_invariant(F, f)[0]
    assert is_invariant(F, P("y^2 - x^3"))[0]
    assert is_invariant(F, P("y - x"))[0]


def test_unsaturated_rejected():
    with pytest.raises(NotSaturated):
        LocalFoliation(P("x*y"), P("x*(y + x)"))


# -- multiplicities ---------------------------------------------------------------


def test_mult_along_branches_suzuki():
    F = suzuki()
    line = branch_decompose(P("x"))[0]
    cusp = branch_decompose(P("y^2 - x^3"))[0]
    assert mult_along_branch(F, line) == 2
    assert mult_along_branch(F, cusp) == 4
    for b in branch_decompose(P("y^2 - x^2 - x^3")):
        assert mult_along_branch(F, b) == 2
    bundle = branch_decompose(P("y^2 - 2*x^2 - x^3"))[0]
    assert mult_along_branch(F, bundle) == 2


def test_mult_along_branch_requires_invariance():
    with pytest.raises(NotInvariant):
        mult_along_branch(suzuki(), branch_decompose(P("y"))[0])


def test_mult_along_divisor_suzuki():
    F = suzuki()
    D0 = effective_divisor(F, P(B0))
    assert D0.degree() == 4
    assert mult_along_divisor(F, D0) == 7
    Dinf = SepDivisor.from_factors(F, [(P("y^2 - 2*x^2 - x^3"), 1)])
    assert Dinf.degree() == 2
    assert mult_along_divisor(F, Dinf) == 3
    bal = suzuki_balanced(F)
    assert mult_along_divisor(F, bal) == 5
    # the split consistency: mu(B) = mu(B0) - mu(Binf) + 1
    assert 5 == 7 - 3 + 1


def test_mult_along_divisor_empty_and_permutation():
    F = suzuki()
    assert mult_along_divisor(F, SepDivisor(F, ())) == 1
    parts = [(P("x"), 1), (P("y^2 - x^3"), 1), (P("y^2 - x^2 - x^3"), 1)]
    a = mult_along_divisor(F, SepDivisor.from_factors(F, parts))
    b = mult_along_divisor(F, SepDivisor.from_factors(F, list(reversed(parts))))
    assert a == b == 7


def test_gsv_examples():
    F = suzuki()
    assert gsv(F, P("x")) == 2
    assert gsv(F, P(B0)) == -10
    assert gsv(fk(3), P("x*y")) == 6


def test_tjurina_foliation_requires_invariance():
    with pytest.raises(NotInvariant):
        tjurina_foliation(suzuki(), P("y"))


def test_chi_examples():
    F = suzuki()
    assert chi(F, suzuki_balanced(F)) == 0
    Fk = fk(3)
    bal = SepDivisor.from_factors(Fk, [(P("x"), 1), (P("y"), 1)])
    assert chi(Fk, bal) == 8


def test_chi_rejects_non_invariant_divisor():
    radial = LocalFoliation(P("x"), P("y"))
    with pytest.raises(NotInvariant):
        SepDivisor.from_factors(radial, [(P("x"), 1), (P("y"), 1)])


def test_chi_warning_on_unbalanced_divisor():
    F = suzuki()
    not_balanced = effective_divisor(F, P(B0))
    value, warning = chi_checked(F, not_balanced)
    assert value == -2
    assert warning is not None


def test_theta_residual_examples():
    assert theta_residual(P("x*y")) == 0
    assert theta_residual(P(B0)) == 4  # frozen: 15 - (0+2+1) - (2+2+4)
    f37 = P("y^3 - x^7 + x^5*y")
    assert theta_residual(f37) == 0  # single branch


# -- identity checkers ---------------------------------------------------------------


def test_index_transfer_suzuki():
    F = suzuki()
    v1, v2 = check_index_transfer(F, P("x"))
    assert v1.holds and v2.holds
    assert (v2.lhs, v2.rhs) == (0, 0)
    v1, v2 = check_index_transfer(F, P(B0))
    assert v1.holds and v2.holds
    assert (v2.lhs, v2.rhs) == (2, 2)  # (7-5) = (17-15)


def test_index_transfer_fk():
    v1, v2 = check_index_transfer(fk(3), P("x*y"))
    assert v1.holds and v2.holds
    assert (v2.lhs, v2.rhs) == (0, 0)


def test_gsv_bound_examples():
    v = check_gsv_tjurina_bound(fk(3), P("x*y"))
    assert v.holds and (v.lhs, v.rhs) == (6, 7)
    # smooth separatrix: outside the bound's singular-curve hypothesis
    v = check_gsv_tjurina_bound(suzuki(), P("x"))
    assert v.status == "not-applicable"
    v = check_gsv_tjurina_bound(suzuki(), P("y^2 - x^3"))
    assert v.holds and (v.lhs, v.rhs) == (2, 4)


def test_adjunction_suite_examples():
    for v in adjunction_suite(suzuki(), P(B0)):
        assert v.holds, v
    suite = {v.name: v for v in adjunction_suite(fk(3), P("x*y"))}
    assert suite["foliation-tjurina-adjunction"].lhs == 7
    assert suite["foliation-tjurina-adjunction"].rhs == 3 + 5 - 1 + 0
    assert suite["milnor-adjunction"].holds


def test_branch_sum_examples():
    assert check_branch_sum_inequality(suzuki(), P(B0)).holds
    v = check_branch_sum_inequality(fk(3), P("x*y"))
    assert v.holds and (v.lhs, v.rhs) == (0, 0)
    node = LocalFoliation(P("y"), P("-x"))
    v = check_branch_sum_inequality(node, P("x*y"))
    assert v.holds and (v.lhs, v.rhs) == (0, 0)


def test_balance_identity_examples():
    F = suzuki()
    v, v2 = check_balance_identity(F, suzuki_balanced(F))
    assert v.holds and (v.lhs, v.rhs) == (0, 0)
    assert v2 is None  # divisor not effective
    Fk = fk(3)
    v, v2 = check_balance_identity(
        Fk, SepDivisor.from_factors(Fk, [(P("x"), 1), (P("y"), 1)])
    )
    assert v.holds and (v.lhs, v.rhs) == (8, 8)
    assert v2 is not None and v2.holds
    # trivial smooth case omega = dy with B0: y = 0
    triv = LocalFoliation(Poly.zero(LOCAL_VARS), P("1"))
    v, v2 = check_balance_identity(
        triv, SepDivisor.from_factors(triv, [(P("y"), 1)])
    )
    assert v.holds and (v.lhs, v.rhs) == (0, 0)
    assert v2.holds


def test_ratio_bound_examples():
    Fk = fk(3)
    ratio, v = check_ratio_bound(
        Fk, SepDivisor.from_factors(Fk, [(P("x"), 1), (P("y"), 1)])
    )
    assert ratio == 1 and v.holds
    F = suzuki()
    ratio, v = check_ratio_bound(F, suzuki_balanced(F))
    assert ratio == Fraction(5, 3)
    assert v.status == "not-applicable"


def test_small_seeded_identity_sweep():
    rng = random.Random(99)
    for _ in range(12):
        F, f, kind = random_invariant_pair(rng)
        assert is_invariant(F, f)[0]
        v1, v2 = check_index_transfer(F, f)
        assert v1.holds and v2.holds
        for v in adjunction_suite(F, f):
            assert v.holds, (f, v)
        assert check_branch_sum_inequality(F, f).holds
        assert check_tjurina_positive(F, f).holds
        assert check_multiplicity_bound(f).holds
        assert check_mu_tau_quarter(f).status in ("holds", "not-applicable")
        if kind == "logarithmic":
            div = effective_divisor(F, f)
            assert chi(F, div) == 0
            ratio, v = check_ratio_bound(F, div)
            assert v.holds and ratio < Fraction(4, 3)


def test_logarithmic_form_invariance_and_chi_zero():
    factors = [P("y^2 - x^3"), P("y - x")]
    Pc, Qc = logarithmic_form(factors, [Fraction(1), Fraction(2, 3)])
    F = LocalFoliation(Pc, Qc)
    for f in factors:
        assert is_invariant(F, f)[0]
    f = factors[0] * factors[1]
    assert chi(F, effective_divisor(F, f)) == 0
