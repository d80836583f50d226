from fractions import Fraction as F

import pytest

from shimura4.families import (
    ArakelovReport,
    DivideStep,
    OmegaLocalData,
    ReductionPlan,
    SubstStep,
    VerificationError,
    apply_reduction,
    arakelov_check,
    c7_discriminant,
    c7_family,
    c9_family,
    c9_family_flat_form,
    c9_fiber_components_t1,
    export_family_polynomials,
    family_checksums,
    is_smooth_fiber_c7,
    j_invariant_depressed,
    match_hyperelliptic_up_to_twist,
    match_proportional,
    omega_contribution,
    omega_table,
    omega_weight,
    quadratic_twist_factor,
    reduction_plans,
    restrict_vars,
    specialize_c7,
    t1_fiber_split_c7,
)
from shimura4.multipoly import MultiPoly, MultiPolyError, discriminant


def P(*names):
    return MultiPoly.generators(*names)


# ----------------------------------------------------------------------
# family definitions


def test_c7_family_shape():
    f = c7_family()
    assert f.variables == ("x", "t")
    assert f.degree("x") == 10
    assert f.degree("t") == 5
    x10 = f.coefficient("x", 10)
    t = MultiPoly.variable("t", x10.variables)
    assert x10 == t * t - F(27, 16) * t
    # odd curve: no constant term in x
    assert f.coefficient("x", 0).is_zero()


def test_c7_family_spot_value():
    # f(1, 2) computed by hand from the defining coefficients
    f = c7_family()
    v = f.evaluate({"x": F(1), "t": F(2)})
    expect = 2 * (F(2 - F(27, 16)) - F(567, 64) - F(189, 4) * 2
                  + (-84 * 4 - F(189, 4) * 2) - 189 * 4 - F(189, 2) * 4
                  + 84 * 8 + 108 * 8 - 28 * 16)
    assert v == expect


def test_c9_family_two_transcriptions_agree():
    assert c9_family() == c9_family_flat_form()


def test_c9_family_shape():
    f = c9_family()
    assert f.variables == ("Y", "W", "t")
    assert f.degree("W") == 3
    assert f.degree("Y") == 6
    assert f.degree("t") == 5
    w3 = f.coefficient("W", 3)
    assert w3.is_constant() and w3.constant_value() == 3


def test_restrict_vars_guard():
    x, t = P("x", "t")
    with pytest.raises(MultiPolyError):
        restrict_vars(x * t, ("x",))
    q = restrict_vars(x * x + 1, ("x",))
    assert q.variables == ("x",)
    assert q.degree("x") == 2


# ----------------------------------------------------------------------
# discriminant


def test_c7_discriminant_valuations_and_constant():
    rep = c7_discriminant()
    assert rep.t_valuation == 54
    assert rep.t1_valuation == 12
    assert rep.constant_factors == {2: 20, 3: 36, 7: 10}
    assert rep.constant == F(2) ** 20 * F(3) ** 36 * F(7) ** 10
    assert rep.curve_constant_factors == {2: 36, 3: 36, 7: 10}
    assert rep.residual_is_constant


def test_smoothness_predicate():
    assert not is_smooth_fiber_c7(0)
    assert not is_smooth_fiber_c7(1)
    assert is_smooth_fiber_c7(2)
    assert is_smooth_fiber_c7(F(1, 2))
    assert is_smooth_fiber_c7(-1)


def test_specialization_commutes_with_discriminant():
    rep = c7_discriminant()
    t0 = F(2)
    fib = specialize_c7(t0)
    d_direct = discriminant(fib, "x").constant_value()
    d_family = rep.constant * t0 ** 54 * (t0 - 1) ** 12
    assert d_direct == d_family


# ----------------------------------------------------------------------
# matchers


def test_twist_matcher_recovers_scaling():
    x, = P("x")
    target = x ** 3 - 2 * x + 5
    lhs = 2 * (27 * x ** 3 - 6 * x + 5)  # c = 2, lambda = 3
    got = match_hyperelliptic_up_to_twist(lhs, target, "x")
    assert got == (F(2), F(3))


def test_twist_matcher_prefers_positive_lambda():
    x, = P("x")
    target = x ** 4 + x ** 2 + 1  # even support: both signs fit
    lhs = 16 * x ** 4 + 4 * x ** 2 + 1
    got = match_hyperelliptic_up_to_twist(lhs, target, "x")
    assert got == (F(1), F(2))


def test_twist_matcher_rejects():
    x, = P("x")
    target = x ** 3 + x
    assert match_hyperelliptic_up_to_twist(x ** 3 + 1, target, "x") is None
    assert match_hyperelliptic_up_to_twist(x ** 3 + 2 * x + 1, target, "x") is None


def test_proportional_matcher():
    y, w = P("Y", "W")
    t = 3 * w ** 3 + 16 * y
    assert match_proportional(-2 * t, t) == F(-2)
    assert match_proportional(t + y, t) is None


# ----------------------------------------------------------------------
# reduction plans, family 7


def test_reduction_7_at_0():
    plan = reduction_plans(7)[0]
    rep = apply_reduction(plan)
    x, = P("x")
    assert rep.reduced == (-F(567, 64) * x ** 9 - F(189, 4) * x ** 7
                           - F(189, 2) * x ** 5 + 108 * x ** 3 - 28 * x)
    assert rep.match == ("twist", F(-567, 64), F(1))
    assert rep.flags == []


def test_reduction_7_at_1():
    plan = reduction_plans(7)[1]
    rep = apply_reduction(plan)
    x, = P("x")
    assert rep.reduced == -1152 * x ** 7 + 3456
    assert rep.match == ("twist", F(-1152), F(1))


def test_reduction_7_at_infinity():
    plan = reduction_plans(7)[2]
    rep = apply_reduction(plan)
    x, = P("x")
    assert rep.reduced == x ** 10 - 84 * x ** 7 + 84 * x ** 4 - 28 * x
    assert rep.match == ("twist", F(1), F(1))


# ----------------------------------------------------------------------
# reduction plans, family 9


def test_reduction_9_at_0():
    plan = reduction_plans(9)[0]
    rep = apply_reduction(plan)
    assert rep.square_scalar == F(-9)
    y, = P("Y")
    assert rep.reduced == (-F(1, 3) * y ** 9 + F(4, 3) * y ** 7 - 2 * y ** 5
                           + F(44, 81) * y ** 3 - F(1, 3) * y)
    assert rep.match == ("twist", F(-1, 3), F(1))


def test_reduction_9_at_1_first_component_flagged():
    plan = reduction_plans(9)[1]
    rep = apply_reduction(plan)
    Y, W = P("Y", "W")
    assert restrict_vars(rep.reduced, ("Y", "W")) == \
        3 * W ** 3 + 7 * Y ** 6 - 20 * Y ** 5 + 16 * Y ** 4
    assert rep.match == ("display-gap", F(7), F(3))
    assert len(rep.flags) == 1
    assert "no rational cube root" in rep.flags[0]


def test_reduction_9_at_1_second_component():
    plan = reduction_plans(9)[2]
    rep = apply_reduction(plan)
    Y, W = P("Y", "W")
    assert restrict_vars(rep.reduced, ("Y", "W")) == \
        3 * W ** 3 + 16 * Y ** 4 + 16 * Y
    assert rep.match == ("proportional", F(1))


def test_reduction_9_at_infinity():
    plan = reduction_plans(9)[3]
    rep = apply_reduction(plan)
    assert rep.match == ("proportional", F(1))


def test_c9_fiber_components_helper():
    a, b = c9_fiber_components_t1()
    assert a.flags and not b.flags
    assert b.match == ("proportional", F(1))


# ----------------------------------------------------------------------
# engine honesty: corrupted plans must fail loudly


def test_engine_rejects_wrong_division():
    good = reduction_plans(9)[3]
    bad = ReductionPlan(
        name=good.name, family=good.family, base_point=good.base_point,
        uniformizer=good.uniformizer,
        steps=(good.steps[0], DivideStep("u", 22)),
        expected=good.expected, match_kind=good.match_kind)
    with pytest.raises(VerificationError):
        apply_reduction(bad)


def test_engine_rejects_under_division():
    good = reduction_plans(9)[3]
    bad = ReductionPlan(
        name=good.name, family=good.family, base_point=good.base_point,
        uniformizer=good.uniformizer,
        steps=(good.steps[0], DivideStep("u", 20)),
        expected=good.expected, match_kind=good.match_kind)
    with pytest.raises(VerificationError):
        apply_reduction(bad)


def test_engine_rejects_wrong_expected():
    good = reduction_plans(7)[2]
    x, = P("x")
    bad = ReductionPlan(
        name=good.name, family=good.family, base_point=good.base_point,
        uniformizer=good.uniformizer, steps=good.steps,
        expected=x ** 10 - 83 * x ** 7 + 84 * x ** 4 - 28 * x,
        match_kind="twist")
    with pytest.raises(VerificationError):
        apply_reduction(bad)


# ----------------------------------------------------------------------
# omega weights and the degree identity


def test_omega_weight_formulas():
    assert omega_weight(OmegaLocalData("hyperelliptic-g4", i=2, j=11)) == -24
    assert omega_weight(OmegaLocalData("hyperelliptic-g3", i=2, j=7)) == -9
    assert omega_weight(OmegaLocalData("plane-g4", i=2, j=6, k=16)) == -20
    with pytest.raises(VerificationError):
        omega_weight(OmegaLocalData("nope", i=0, j=0))


def test_omega_contributions_7():
    vals = [omega_contribution(d) for _, d in omega_table(7)]
    assert vals == [F(-6), F(-9, 7), F(22, 3)]


def test_omega_contributions_9():
    vals = [omega_contribution(d) for _, d in omega_table(9)]
    assert vals == [F(-6), F(-29, 9), F(28, 3)]


def test_arakelov_identity_7():
    rep = arakelov_check(7)
    assert isinstance(rep, ArakelovReport)
    assert rep.total == F(1, 21)
    assert rep.degree == F(1, 42)
    assert rep.stack_degree == F(1, 84)
    assert rep.lhs == rep.rhs == F(1, 21)
    assert rep.equal


def test_arakelov_identity_9():
    rep = arakelov_check(9)
    assert rep.total == F(1, 9)
    assert rep.degree == F(1, 18)
    assert rep.stack_degree == F(1, 36)
    assert rep.equal


def test_arakelov_mutation_breaks_equality():
    # perturbing any single local weight must destroy the identity
    for n in (7, 9):
        base = arakelov_check(n)
        for idx in range(len(base.contributions)):
            total = sum((c for i, (_, c) in enumerate(base.contributions)
                         if i != idx), F(0))
            total += base.contributions[idx][1] + F(1, 5)
            assert 2 * (total / 2) != 4 * base.stack_degree


# ----------------------------------------------------------------------
# the t = 1 fiber of the hyperelliptic family


def test_t1_split_structure():
    split = t1_fiber_split_c7()
    mults = sorted(m for _, m in split.multiplicities)
    assert mults == [1, 7]
    x, = P("x")
    assert split.elliptic.quartic == (-F(11, 16) * x ** 4 - F(39, 64) * x ** 3
                                      + F(21, 16) * x ** 2 - F(7, 16) * x)


def test_t1_elliptic_invariants():
    e = t1_fiber_split_c7().elliptic
    assert e.cubic_p == F(-315, 1024)
    assert e.cubic_q == F(-1323, 16384)
    assert e.j == F(-3375)
    assert e.target_j == F(-3375)
    assert e.twist == F(-7, 16)
    # twist really transports the target onto the piece
    assert e.cubic_p == e.twist ** 2 * e.target_p
    assert e.cubic_q == e.twist ** 3 * e.target_q


def test_j_invariant_formula():
    assert j_invariant_depressed(F(0), F(1)) == 0
    assert j_invariant_depressed(F(1), F(0)) == 1728
    with pytest.raises(VerificationError):
        j_invariant_depressed(F(-3), F(2))  # 4p^3 + 27q^2 = 0


def test_quadratic_twist_factor():
    assert quadratic_twist_factor(F(-315, 1024), F(-1323, 16384),
                                  F(-45, 28), F(27, 28)) == F(-7, 16)
    assert quadratic_twist_factor(F(1), F(1), F(1), F(2)) is None


# ----------------------------------------------------------------------
# export


def test_export_and_checksums(tmp_path):
    paths = export_family_polynomials(str(tmp_path))
    assert len(paths) == 2
    for p in paths:
        with open(p, encoding="utf-8") as fh:
            head = fh.readline()
            body = fh.readline().strip()
        assert head.startswith("# variables: ")
        assert body
    sums = family_checksums()
    assert set(sums) == {"hyperelliptic", "plane"}
    assert all(len(v) == 64 for v in sums.values())
