"""Two one-parameter families of genus-4 curves and their degenerations.

The first family is hyperelliptic, y^2 = f(x, t); the second is cut out by a
conic and a cubic in P^3 and is handled through its affine plane model
F(Y, W, t) = 0 (conic parametrized by Y, so X = Y^2, Z = 1).

This module recomputes, from scratch and exactly:

- the t-discriminant of the hyperelliptic family, with its full integer
  factorization and the valuations at t = 0 and t = 1;
- the semistable-reduction charts at t = 0, 1, infinity for both families,
  as explicit substitution plans executed by a small engine that verifies
  every declared division and valuation, then matches the reduced equation
  against the expected curve (up to the allowed twist/scaling);
- the splitting of the t = 1 hyperelliptic fiber into an elliptic piece
  (j-invariant and the exact quadratic twist constant) and a genus-3 piece;
- the local weights of the canonical section of the Hodge bundle and the
  resulting degree identity against the triangle-stack degree.

Plans carry expected values that were derived independently and frozen; the
engine never invents an expected value at run time.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .intfactor import factor_integer
from .multipoly import (
    MultiPoly,
    MultiPolyError,
    discriminant,
    squarefree_decomposition,
)
from .trianglestacks import canonical_degree

F = Fraction


class VerificationError(ValueError):
    """A declared reduction/matching step failed to verify."""


# ----------------------------------------------------------------------
# the two families


@lru_cache(maxsize=None)
def c7_family() -> MultiPoly:
    """y^2 = c7_family(x, t): the hyperelliptic family on variables (x, t).

    The right-hand side includes the outer factor t, so the x^10 coefficient
    is t^2 - (27/16) t.
    """
    x, t = MultiPoly.generators("x", "t")
    inner = ((t - F(27, 16)) * x ** 10
             - F(567, 64) * x ** 9
             - F(189, 4) * t * x ** 8
             + (-84 * t ** 2 - F(189, 4) * t) * x ** 7
             - 189 * t ** 2 * x ** 6
             - F(189, 2) * t ** 2 * x ** 5
             + 84 * t ** 3 * x ** 4
             + 108 * t ** 3 * x ** 3
             - 28 * t ** 4 * x)
    return t * inner


@lru_cache(maxsize=None)
def c9_family() -> MultiPoly:
    """F(Y, W, t) = 0: affine plane model of the second family.

    Expansion of the projective pair {XZ = Y^2, cubic} on the affine chart
    Z = 1 with the conic parametrized by X = Y^2.
    """
    Y, W, t = MultiPoly.generators("Y", "W", "t")
    X = Y ** 2
    cubic_w = (5 * X ** 2 + 6 * X * Y + 2 * t * Y + 3 * t) * (3 * W)
    cubic_rest = ((-2 * t + 9) * X ** 3 + 22 * t * X ** 2 * Y + 21 * t * X ** 2
                  + (-14 * t ** 2 + 18 * t) * X * Y + t ** 2 * X
                  + 6 * t ** 2 * Y + (-3 * t ** 3 + 6 * t ** 2))
    return 3 * W ** 3 + t * (t - 1) * (cubic_w + cubic_rest)


def c9_family_flat_form() -> MultiPoly:
    """The same plane model written out monomial by monomial.

    Kept as an independent transcription; a test asserts it equals
    c9_family() so a typo in either form cannot survive.
    """
    Y, W, t = MultiPoly.generators("Y", "W", "t")
    return (-3 * t ** 5 - 14 * t ** 4 * Y ** 3 + t ** 4 * Y ** 2
            + 6 * t ** 4 * Y + 9 * t ** 4 - 2 * t ** 3 * Y ** 6
            + 22 * t ** 3 * Y ** 5 + 21 * t ** 3 * Y ** 4
            + 32 * t ** 3 * Y ** 3 - t ** 3 * Y ** 2
            + 6 * t ** 3 * Y * W - 6 * t ** 3 * Y + 9 * t ** 3 * W
            - 6 * t ** 3 + 11 * t ** 2 * Y ** 6 - 22 * t ** 2 * Y ** 5
            + 15 * t ** 2 * Y ** 4 * W - 21 * t ** 2 * Y ** 4
            + 18 * t ** 2 * Y ** 3 * W - 18 * t ** 2 * Y ** 3
            - 6 * t ** 2 * Y * W - 9 * t ** 2 * W - 9 * t * Y ** 6
            - 15 * t * Y ** 4 * W - 18 * t * Y ** 3 * W + 3 * W ** 3)


def restrict_vars(p: MultiPoly, variables: Sequence[str]) -> MultiPoly:
    """Re-express p on a smaller variable tuple (dropped vars must not occur)."""
    vt = tuple(variables)
    keep = [p.variables.index(v) for v in vt]
    dropped = [i for i, v in enumerate(p.variables) if v not in vt]
    out = {}
    for e, c in p.terms.items():
        if any(e[i] for i in dropped):
            raise MultiPolyError(f"variable {p.variables[dropped[0]]!r} still occurs")
        out[tuple(e[i] for i in keep)] = c
    return MultiPoly(vt, out)


# ----------------------------------------------------------------------
# discriminant of the hyperelliptic family


@dataclass(frozen=True)
class DiscriminantReport:
    t_valuation: int
    t1_valuation: int
    constant: Fraction              # polynomial-level constant
    constant_factors: dict          # prime -> exponent
    curve_constant: Fraction        # constant * 2^(4g), g = 4
    curve_constant_factors: dict
    residual_is_constant: bool


@lru_cache(maxsize=None)
def c7_discriminant() -> DiscriminantReport:
    """disc_x of the family polynomial, peeled as c * t^a * (t-1)^b.

    The degree-16 power of 2 separating `constant` from `curve_constant` is
    the usual normalization between the discriminant of the right-hand side
    and the discriminant of the hyperelliptic model (2^(4g) with g = 4).
    """
    f = c7_family()
    d = discriminant(f, "x")
    dt = restrict_vars(d, ("t",))
    a = dt.valuation("t")
    dt_shift = dt.shift_down("t", a)
    b = dt_shift.valuation_at("t", 1)
    tpoly = MultiPoly.variable("t", ("t",))
    rest = dt_shift
    for _ in range(b):
        rest = rest.exact_div(tpoly - 1)
    ok = rest.is_constant()
    if not ok:
        raise VerificationError("discriminant does not factor as c*t^a*(t-1)^b")
    c = rest.constant_value()
    if c.denominator != 1:
        raise VerificationError("discriminant constant is not an integer")
    fac, certified = factor_integer(abs(c.numerator))
    if not certified:
        raise VerificationError("discriminant constant factorization uncertified")
    curve_c = c * 2 ** 16
    fac_curve = dict(fac)
    fac_curve[2] = fac_curve.get(2, 0) + 16
    return DiscriminantReport(a, b, c, fac, curve_c, dict(sorted(fac_curve.items())), ok)


def specialize_c7(t0) -> MultiPoly:
    """The fiber polynomial f(x, t0) as a univariate polynomial in x."""
    f = c7_family().evaluate({"t": F(t0)})
    if isinstance(f, F):
        raise VerificationError(f"fiber at t = {t0} degenerates to a constant")
    return restrict_vars(f, ("x",))


def is_smooth_fiber_c7(t0) -> bool:
    """Whether the fiber at t0 is smooth: nonvanishing family discriminant."""
    rep = c7_discriminant()
    t0 = F(t0)
    return rep.constant * t0 ** rep.t_valuation * (t0 - 1) ** rep.t1_valuation != 0


# ----------------------------------------------------------------------
# reduction engine


@dataclass(frozen=True)
class SubstStep:
    """One change of variables.

    `assignments` maps each current variable to (numerator, denominator)
    polynomials on `out_vars` (denominator None for a polynomial image).
    For hyperelliptic plans `y_scale = (y_num, y_den)` declares
    y_old = (y_num / y_den) * y_new.
    """
    out_vars: tuple
    assignments: tuple  # ((var, num, den|None), ...)
    y_scale: Optional[tuple] = None  # (y_num, y_den)


@dataclass(frozen=True)
class DivideStep:
    """Declared exact division of the equation by var**power."""
    var: str
    power: int


@dataclass(frozen=True)
class SquareCheck:
    """Assert the fiber at var = 0 is const * root**2; record const."""
    var: str
    root: MultiPoly


@dataclass(frozen=True)
class ReductionPlan:
    name: str
    family: str          # "hyperelliptic" | "plane"
    base_point: str      # "0" | "1" | "inf"
    uniformizer: str
    steps: tuple
    # expected reduced equation and how to compare against it:
    #   "twist":         hyperelliptic g(x) matched as g = c * target(lambda x)
    #   "proportional":  plane equation matched as lhs = r * target
    #   "display-gap":   known deviation; structured comparison, flagged
    expected: Optional[MultiPoly]
    match_kind: str
    # for plans ending in a y^2 = g(x) extraction from a plane equation
    solve_square_var: Optional[str] = None


@dataclass
class ReductionReport:
    plan_name: str
    base_point: str
    reduced: MultiPoly
    match: Optional[tuple]          # ("twist", c, lam) | ("proportional", r)
    square_scalar: Optional[Fraction]
    flags: list
    log: list


def _subst_pairs(step: SubstStep) -> dict:
    out = {}
    for name, num, den in step.assignments:
        out[name] = (num, den)
    return out


def apply_reduction(plan: ReductionPlan) -> ReductionReport:
    """Execute a reduction plan and verify it against its expected data.

    Raises VerificationError when a declared division is not exact, the
    uniformizer does not fully cancel, or a non-flagged match fails.
    """
    if plan.family == "hyperelliptic":
        num = c7_family()
        den = MultiPoly.constant(1, num.variables)
    elif plan.family == "plane":
        num = c9_family()
        den = None
    else:
        raise VerificationError(f"unknown family {plan.family!r}")
    u = plan.uniformizer
    log = []
    flags = []
    square_scalar = None

    for step in plan.steps:
        if isinstance(step, SubstStep):
            pairs = _subst_pairs(step)
            new_num, clr_num = num.substitute(pairs)
            if plan.family == "hyperelliptic":
                new_den, clr_den = den.substitute(pairs)
                y_num, y_den = step.y_scale if step.y_scale else (None, None)
                one = MultiPoly.constant(1, step.out_vars)
                y_num = y_num if y_num is not None else one
                y_den = y_den if y_den is not None else one
                num = new_num * clr_den * y_den ** 2
                den = new_den * clr_num * y_num ** 2
                log.append(f"substitution -> vars {step.out_vars}")
            else:
                # plane model: the equation is only defined up to the
                # invertible clearing factor, which is dropped
                num = new_num
                log.append(f"substitution -> vars {step.out_vars} "
                           f"(clearing {clr_num})")
        elif isinstance(step, DivideStep):
            if plan.family == "hyperelliptic":
                raise VerificationError("explicit divisions are a plane-plan step")
            val = num.valuation(step.var)
            if val < step.power:
                raise VerificationError(
                    f"{plan.name}: declared division by {step.var}^{step.power} "
                    f"but valuation is {val}")
            num = num.shift_down(step.var, step.power)
            log.append(f"divide by {step.var}^{step.power} (valuation was {val})")
        elif isinstance(step, SquareCheck):
            fiber = num.evaluate({step.var: F(0)})
            if isinstance(fiber, F):
                raise VerificationError(f"{plan.name}: fiber degenerated to a constant")
            sq = step.root * step.root
            ratio = fiber.exact_div(sq)
            if not ratio.is_constant():
                raise VerificationError(f"{plan.name}: fiber is not a scalar "
                                        f"multiple of the declared square")
            square_scalar = ratio.constant_value()
            log.append(f"fiber at {step.var}=0 is ({square_scalar}) * ({step.root})^2")
        else:
            raise VerificationError(f"unknown step {step!r}")

    if plan.family == "hyperelliptic":
        num = num.exact_div(den)
    val = num.valuation(u)
    if val != 0:
        raise VerificationError(
            f"{plan.name}: plan does not reduce, leftover {u}^{val}")
    reduced = num.evaluate({u: F(0)})
    if isinstance(reduced, F):
        raise VerificationError(f"{plan.name}: reduction degenerated to a constant")
    reduced = restrict_vars(reduced, tuple(v for v in reduced.variables if v != u))
    log.append(f"reduced equation: {reduced}")

    if plan.solve_square_var:
        reduced = _solve_for_square(reduced, plan.solve_square_var)
        log.append(f"as y^2 = g: g = {reduced}")

    match = _match_reduced(plan, reduced, flags)
    return ReductionReport(plan.name, plan.base_point, reduced, match,
                           square_scalar, flags, log)


def _solve_for_square(p: MultiPoly, yvar: str) -> MultiPoly:
    """From A*y^2 + B(rest) = 0 (A constant) to g = -B/A with y^2 = g."""
    if p.degree(yvar) != 2:
        raise VerificationError(f"expected degree 2 in {yvar}")
    A = p.coefficient(yvar, 2)
    if not A.is_constant():
        raise VerificationError(f"{yvar}^2 coefficient is not constant")
    if not p.coefficient(yvar, 1).is_zero():
        raise VerificationError(f"unexpected linear {yvar} term")
    B = p.coefficient(yvar, 0)
    g = B / (-A.constant_value())
    return restrict_vars(g, tuple(v for v in g.variables if v != yvar))


def _match_reduced(plan: ReductionPlan, reduced: MultiPoly, flags: list):
    if plan.expected is None:
        return None
    if plan.match_kind == "twist":
        lhs = restrict_vars(reduced, plan.expected.variables)
        var = plan.expected.variables_used()[0]
        m = match_hyperelliptic_up_to_twist(lhs, plan.expected, var)
        if m is None:
            raise VerificationError(f"{plan.name}: reduced equation does not "
                                    f"match the expected curve up to twist")
        return ("twist",) + m
    if plan.match_kind == "proportional":
        lhs = restrict_vars(reduced, plan.expected.variables)
        r = match_proportional(lhs, plan.expected)
        if r is None:
            raise VerificationError(f"{plan.name}: reduced equation is not "
                                    f"proportional to the expected one")
        return ("proportional", r)
    if plan.match_kind == "display-gap":
        return _match_display_gap(plan, reduced, flags)
    raise VerificationError(f"unknown match kind {plan.match_kind!r}")


def _match_display_gap(plan: ReductionPlan, reduced: MultiPoly, flags: list):
    """Structured comparison for the one chart whose published display does
    not equal the computed equation under any rational rescaling.

    The part of the expected equation not involving W matches exactly after
    a forced normalization; the W^3 coefficients then disagree by a factor
    whose cube root is irrational, which is reported as a flag rather than
    a failure (the underlying curve is the same over the algebraic closure).
    """
    lhs = restrict_vars(reduced, plan.expected.variables)
    target = plan.expected
    lw = lhs.coefficient("W", 0)
    tw = target.coefficient("W", 0)
    var = "Y"
    scale = None
    for k in range(max(lw.degree(var), tw.degree(var)) + 1):
        lc = lw.coefficient(var, k)
        tc = tw.coefficient(var, k)
        if tc.is_zero() != lc.is_zero():
            raise VerificationError(f"{plan.name}: W-free parts have different support")
        if not tc.is_zero():
            r = lc.constant_value() / tc.constant_value()
            if scale is None:
                scale = r
            elif scale != r:
                raise VerificationError(f"{plan.name}: W-free parts not proportional")
    l3 = lhs.coefficient("W", 3).constant_value()
    t3 = target.coefficient("W", 3).constant_value()
    w_ratio = l3 / t3
    if w_ratio == scale:
        # would be a clean proportional match after all
        return ("proportional", scale)
    flags.append(
        f"{plan.name}: computed equation is {lhs}; the published display "
        f"matches the W-free part exactly (scale {scale}) but its W^3 "
        f"coefficient differs by {w_ratio}/{scale} = {w_ratio / scale}, "
        f"which has no rational cube root; same curve over the closure")
    return ("display-gap", scale, w_ratio)


# ----------------------------------------------------------------------
# matching helpers


def _fraction_nth_root(x: Fraction, n: int) -> Optional[Fraction]:
    """Exact rational n-th root, or None. For even n the positive root."""
    if n <= 0:
        raise ValueError("n must be positive")
    if x < 0 and n % 2 == 0:
        return None
    sign = -1 if x < 0 else 1
    ax = abs(x)

    def iroot(m: int) -> Optional[int]:
        if m == 0:
            return 0
        lo, hi = 1, 1 << ((m.bit_length() + n - 1) // n + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** n < m:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo ** n == m else None

    a = iroot(ax.numerator)
    b = iroot(ax.denominator)
    if a is None or b is None:
        return None
    return sign * F(a, b)


def match_hyperelliptic_up_to_twist(lhs: MultiPoly, target: MultiPoly,
                                    var: str) -> Optional[tuple]:
    """Solve lhs(x) = c * target(lambda x) for rational c, lambda.

    Returns (c, lambda) or None. When both (c, lambda) and the mirrored
    solution fit, the one with lambda > 0 is returned.
    """
    if lhs.variables != target.variables:
        raise MultiPolyError("matcher operands must share a variable tuple")
    dl, dt = lhs.degree(var), target.degree(var)
    if dl != dt or dl < 1:
        return None
    lc = {k: lhs.coefficient(var, k) for k in range(dl + 1)}
    tc = {k: target.coefficient(var, k) for k in range(dt + 1)}
    for k in range(dl + 1):
        if lc[k].is_zero() != tc[k].is_zero():
            return None
        if not lc[k].is_constant() or not tc[k].is_constant():
            return None
    support = [k for k in range(dl + 1) if not lc[k].is_zero()]
    if not support:
        return None
    k0 = support[0]

    def check(lam: Fraction) -> Optional[tuple]:
        if lam == 0:
            return None
        c = lc[k0].constant_value() / (tc[k0].constant_value() * lam ** k0)
        for k in support:
            if lc[k].constant_value() != c * tc[k].constant_value() * lam ** k:
                return None
        return (c, lam)

    if len(support) == 1:
        got = check(F(1))
        return got if got else None
    k1 = support[1]
    ratio = (lc[k1].constant_value() / tc[k1].constant_value()) / \
            (lc[k0].constant_value() / tc[k0].constant_value())
    root = _fraction_nth_root(ratio, k1 - k0)
    if root is None:
        return None
    candidates = [root, -root] if (k1 - k0) % 2 == 0 else [root]
    sols = [s for lam in candidates if (s := check(lam))]
    if not sols:
        return None
    sols.sort(key=lambda s: s[1] < 0)  # prefer positive lambda
    return sols[0]


def match_proportional(lhs: MultiPoly, target: MultiPoly) -> Optional[Fraction]:
    """The rational r with lhs = r * target, or None."""
    if lhs.variables != target.variables:
        raise MultiPolyError("matcher operands must share a variable tuple")
    if lhs.is_zero() or target.is_zero():
        return None
    if set(lhs.terms) != set(target.terms):
        return None
    r = None
    for e, c in lhs.terms.items():
        q = c / target.terms[e]
        if r is None:
            r = q
        elif r != q:
            return None
    return r


# ----------------------------------------------------------------------
# differential weights


@dataclass(frozen=True)
class OmegaLocalData:
    """Local data for the canonical section at one degenerate fiber.

    kind selects the weight formula; (i, j, k) are the monomial rescaling
    exponents of the chart, m its ramification degree, sign +1 for charts at
    finite points and -1 at infinity. `pre` corrections enter the numerator
    before dividing by m; `post` corrections add on afterwards.
    """
    kind: str   # "hyperelliptic-g4" | "hyperelliptic-g3" | "plane-g4"
    i: int
    j: int
    k: int = 0
    m: int = 1
    sign: int = 1
    pre: tuple = ()
    post: tuple = ()


def omega_weight(d: OmegaLocalData) -> int:
    """The monomial-rescaling weight for the given model kind.

    Genus-4 hyperelliptic: 10 i - 4 j (from g(g+1)/2 = 10 and g = 4);
    genus-3 hyperelliptic: 6 i - 3 j; plane genus-4 model: 7 i + 5 j - 4 k
    (the equation rescaling k enters opposite to the coordinate weights).
    Additive in (i, j, k) by construction.
    """
    if d.kind == "hyperelliptic-g4":
        return 10 * d.i - 4 * d.j
    if d.kind == "hyperelliptic-g3":
        return 6 * d.i - 3 * d.j
    if d.kind == "plane-g4":
        return 7 * d.i + 5 * d.j - 4 * d.k
    raise VerificationError(f"unknown omega kind {d.kind!r}")


def omega_contribution(d: OmegaLocalData) -> Fraction:
    w = F(omega_weight(d))
    for p in d.pre:
        w += F(p)
    out = F(d.sign) * w / d.m
    for p in d.post:
        out += F(p)
    return out


# ----------------------------------------------------------------------
# the six reduction plans


@lru_cache(maxsize=None)
def reduction_plans(n: int) -> tuple:
    """The three frozen reduction plans for the family labeled by n (7 or 9)."""
    if n == 7:
        xu = ("x", "u")
        x, u = MultiPoly.generators(*xu)
        one_xu = MultiPoly.constant(1, xu)
        xt2 = ("x", "t2")
        x2, t2 = MultiPoly.generators(*xt2)
        xs = ("x", "s")
        xs_x, s = MultiPoly.generators(*xs)
        tx, = MultiPoly.generators("x")

        plan0 = ReductionPlan(
            name="hyperelliptic-at-0",
            family="hyperelliptic", base_point="0", uniformizer="u",
            steps=(
                SubstStep(out_vars=xu,
                          assignments=(("x", u ** 2 * x, None),
                                       ("t", u ** 4, None)),
                          y_scale=(u ** 11, one_xu)),
            ),
            expected=(tx ** 9 + F(16, 3) * tx ** 7 + F(32, 3) * tx ** 5
                      - F(256, 21) * tx ** 3 + F(256, 81) * tx),
            match_kind="twist",
        )
        plan1 = ReductionPlan(
            name="hyperelliptic-at-1",
            family="hyperelliptic", base_point="1", uniformizer="s",
            steps=(
                SubstStep(out_vars=xt2,
                          assignments=(("x", MultiPoly.constant(2, xt2), x2 - 1),
                                       ("t", t2 + 1, None)),
                          y_scale=(MultiPoly.constant(1, xt2), (x2 - 1) ** 5)),
                SubstStep(out_vars=xs,
                          assignments=(("x", s ** 2 * xs_x, None),
                                       ("t2", s ** 7, None)),
                          y_scale=(s ** 7, MultiPoly.constant(1, xs))),
            ),
            expected=tx ** 7 - 3,
            match_kind="twist",
        )
        plan_inf = ReductionPlan(
            name="hyperelliptic-at-infinity",
            family="hyperelliptic", base_point="inf", uniformizer="u",
            steps=(
                SubstStep(out_vars=xu,
                          assignments=(("x", x, u),
                                       ("t", one_xu, u ** 3)),
                          y_scale=(one_xu, u ** 8)),
            ),
            expected=tx ** 10 - 84 * tx ** 7 + 84 * tx ** 4 - 28 * tx,
            match_kind="twist",
        )
        return plan0, plan1, plan_inf

    if n == 9:
        yws = ("Y", "W", "s")
        Y1, W1, s1 = MultiPoly.generators(*yws)
        yyv = ("Y", "y", "v")
        Y2, y2, v2 = MultiPoly.generators(*yyv)
        ywv = ("Y", "W", "v")
        Y3, W3, v3 = MultiPoly.generators(*ywv)
        ywu = ("Y", "W", "u")
        Y4, W4, u4 = MultiPoly.generators(*ywu)
        tY, = MultiPoly.generators("Y")
        dY, dW = MultiPoly.generators("Y", "W")

        plan0 = ReductionPlan(
            name="plane-at-0",
            family="plane", base_point="0", uniformizer="v",
            steps=(
                SubstStep(out_vars=yws,
                          assignments=(("t", s1 ** 2, None),
                                       ("Y", s1 * Y1, None),
                                       ("W", s1 ** 3 * (-W1 - Y1 / 3) - s1 ** 2, None))),
                DivideStep("s", 8),
                SquareCheck(var="s", root=Y1 ** 3 - W1),
                SubstStep(out_vars=yyv,
                          assignments=(("s", v2 ** 2, None),
                                       ("Y", Y2, None),
                                       ("W", Y2 ** 3 - v2 * y2, None))),
                DivideStep("v", 2),
            ),
            expected=(tY ** 9 - 4 * tY ** 7 + 6 * tY ** 5
                      - F(44, 27) * tY ** 3 + tY),
            match_kind="twist",
            solve_square_var="y",
        )
        plan1a = ReductionPlan(
            name="plane-at-1-first-component",
            family="plane", base_point="1", uniformizer="s",
            steps=(
                SubstStep(out_vars=yws,
                          assignments=(("t", s1 ** 3 + 1, None),
                                       ("Y", Y1 - 1, None),
                                       ("W", s1 * W1, None))),
                DivideStep("s", 3),
            ),
            expected=(dY ** 6 - F(20, 7) * dY ** 5 + F(16, 7) * dY ** 4
                      + dW ** 3),
            match_kind="display-gap",
        )
        plan1b = ReductionPlan(
            name="plane-at-1-second-component",
            family="plane", base_point="1", uniformizer="v",
            steps=(
                SubstStep(out_vars=yws,
                          assignments=(("t", s1 ** 3 + 1, None),
                                       ("Y", Y1 - 1, None),
                                       ("W", s1 * W1, None))),
                DivideStep("s", 3),
                SubstStep(out_vars=ywv,
                          assignments=(("s", v3 ** 3, None),
                                       ("Y", v3 ** 3 * Y3, None),
                                       ("W", v3 ** 4 * W3, None))),
                DivideStep("v", 12),
            ),
            expected=16 * dY ** 4 + 16 * dY + 3 * dW ** 3,
            match_kind="proportional",
        )
        plan_inf = ReductionPlan(
            name="plane-at-infinity",
            family="plane", base_point="inf", uniformizer="u",
            steps=(
                SubstStep(out_vars=ywu,
                          assignments=(("t", MultiPoly.constant(1, ywu), u4 ** 3),
                                       ("Y", Y4, u4),
                                       ("W", W4, u4 ** 5))),
                DivideStep("u", 21),
            ),
            expected=(-2 * dY ** 6 + 15 * dY ** 4 * dW - 14 * dY ** 3
                      + 6 * dY * dW + 3 * dW ** 3 - 3),
            match_kind="proportional",
        )
        return plan0, plan1a, plan1b, plan_inf

    raise VerificationError("plans are defined for n = 7 and n = 9")


def omega_table(n: int) -> tuple:
    """(plan-name, OmegaLocalData) for the degenerate fibers of family n.

    The t = 1 fiber of the second family carries its correction terms as
    min(0, .)-type contributions already evaluated to (-5/9, -1/9, -2/9, 0).
    """
    if n == 7:
        return (
            ("hyperelliptic-at-0",
             OmegaLocalData("hyperelliptic-g4", i=2, j=11, m=4, sign=1)),
            ("hyperelliptic-at-1",
             OmegaLocalData("hyperelliptic-g3", i=2, j=7, m=7, sign=1)),
            ("hyperelliptic-at-infinity",
             OmegaLocalData("hyperelliptic-g4", i=1, j=8, m=3, sign=-1)),
        )
    if n == 9:
        return (
            ("plane-at-0",
             OmegaLocalData("plane-g4", i=2, j=6, k=16, m=4, sign=1,
                            pre=(F(-4),))),
            ("plane-at-1",
             OmegaLocalData("plane-g4", i=0, j=1, k=3, m=3, sign=1,
                            post=(F(-5, 9), F(-1, 9), F(-2, 9), F(0)))),
            ("plane-at-infinity",
             OmegaLocalData("plane-g4", i=1, j=5, k=15, m=3, sign=-1)),
        )
    raise VerificationError("omega table is defined for n = 7 and n = 9")


@dataclass(frozen=True)
class ArakelovReport:
    n: int
    contributions: tuple        # ((name, Fraction), ...)
    total: Fraction
    degree: Fraction            # total / 2
    stack_degree: Fraction      # canonical degree of the (2,3,n) stack
    lhs: Fraction               # 2 * degree
    rhs: Fraction               # 4 * stack_degree
    equal: bool


def arakelov_check(n: int) -> ArakelovReport:
    """Compare twice the computed Hodge-bundle degree with four times the
    triangle-stack canonical degree; equality is the expected identity."""
    contribs = tuple((name, omega_contribution(d)) for name, d in omega_table(n))
    total = sum((c for _, c in contribs), F(0))
    degree = total / 2
    stack = canonical_degree(2, 3, n)
    lhs = 2 * degree
    rhs = 4 * stack
    return ArakelovReport(n, contribs, total, degree, stack, lhs, rhs, lhs == rhs)


# ----------------------------------------------------------------------
# the t = 1 fiber of the hyperelliptic family


@dataclass(frozen=True)
class EllipticPiece:
    quartic: MultiPoly          # y^2 = quartic(x), root at x = 0
    cubic_p: Fraction           # depressed cubic y^2 = x^3 + p x + q
    cubic_q: Fraction
    j: Fraction
    target_p: Fraction
    target_q: Fraction
    target_j: Fraction
    twist: Fraction             # d with p = d^2 target_p, q = d^3 target_q


@dataclass(frozen=True)
class T1Split:
    multiplicities: tuple       # ((factor-string, multiplicity), ...)
    elliptic: EllipticPiece


def j_invariant_depressed(p: Fraction, q: Fraction) -> Fraction:
    """j of y^2 = x^3 + p x + q (must be nonsingular)."""
    disc = 4 * p ** 3 + 27 * q ** 2
    if disc == 0:
        raise VerificationError("singular cubic has no j-invariant")
    return 6912 * p ** 3 / disc


def _cubic_to_depressed(a3: Fraction, a2: Fraction, a1: Fraction,
                        a0: Fraction) -> tuple:
    """y^2 = a3 x^3 + a2 x^2 + a1 x + a0 -> (p, q) of the depressed form."""
    if a3 == 0:
        raise VerificationError("not a cubic")
    b2, b1, b0 = a2, a1 * a3, a0 * a3 * a3
    p = b1 - b2 ** 2 / 3
    q = 2 * b2 ** 3 / 27 - b2 * b1 / 3 + b0
    return p, q


def quadratic_twist_factor(p: Fraction, q: Fraction, pt: Fraction,
                           qt: Fraction) -> Optional[Fraction]:
    """d with (p, q) = (d^2 pt, d^3 qt), if a rational one exists."""
    if pt == 0 or qt == 0 or p == 0 or q == 0:
        # not needed for curves with extra automorphisms here
        return None
    d = (q * pt) / (qt * p)
    if p == d * d * pt and q == d ** 3 * qt:
        return d
    return None


T1_TARGET_P = F(-45, 28)
T1_TARGET_Q = F(27, 28)


def t1_fiber_split_c7() -> T1Split:
    """Split the t = 1 fiber into its square part and an elliptic quartic.

    The fiber polynomial factors with one multiplicity-7 linear factor; the
    odd-multiplicity kernel is a quartic with a root at x = 0, which after
    inverting x and depressing gives an elliptic curve. Its j-invariant and
    the exact quadratic-twist constant against y^2 = x^3 - (45/28) x + 27/28
    are verified here.
    """
    f1 = specialize_c7(1)
    dec = squarefree_decomposition(f1, "x")
    mults = tuple((str(pp), m) for pp, m in dec)
    # divide out the largest square: S = prod p^(m//2)
    S = MultiPoly.constant(1, f1.variables)
    for pp, m in dec:
        S = S * pp ** (m // 2)
    quartic = f1.exact_div(S * S)
    if quartic.degree("x") != 4:
        raise VerificationError("odd-multiplicity kernel is not a quartic")
    if not quartic.coefficient("x", 0).is_zero():
        raise VerificationError("quartic has no root at x = 0")
    # x -> 1/x turns y^2 = q4 x^4 + ... + q1 x into y^2 = cubic
    coeffs = [quartic.coefficient("x", k).constant_value() for k in range(5)]
    a3, a2, a1, a0 = coeffs[1], coeffs[2], coeffs[3], coeffs[4]
    p, q = _cubic_to_depressed(a3, a2, a1, a0)
    j = j_invariant_depressed(p, q)
    tj = j_invariant_depressed(T1_TARGET_P, T1_TARGET_Q)
    if j != tj:
        raise VerificationError(f"elliptic piece has j = {j}, expected {tj}")
    d = quadratic_twist_factor(p, q, T1_TARGET_P, T1_TARGET_Q)
    if d is None:
        raise VerificationError("no rational quadratic twist relates the "
                                "elliptic piece to its expected model")
    piece = EllipticPiece(quartic, p, q, j, T1_TARGET_P, T1_TARGET_Q, tj, d)
    return T1Split(mults, piece)


def c9_fiber_components_t1() -> tuple:
    """Reduction reports for both components of the second family at t = 1."""
    plans = reduction_plans(9)
    a = apply_reduction(plans[1])
    b = apply_reduction(plans[2])
    return a, b


# ----------------------------------------------------------------------
# canonical text export


def export_family_polynomials(directory: str) -> list:
    """Write both family polynomials as canonical plain text; returns paths."""
    os.makedirs(directory, exist_ok=True)
    out = []
    for name, poly in (("hyperelliptic_family.txt", c7_family()),
                       ("plane_family.txt", c9_family())):
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# variables: {' '.join(poly.variables)}\n")
            fh.write(str(poly) + "\n")
        out.append(path)
    return out


def family_checksums() -> dict:
    """SHA-256 of the canonical string forms (stability anchors for tests)."""
    return {
        "hyperelliptic": hashlib.sha256(str(c7_family()).encode()).hexdigest(),
        "plane": hashlib.sha256(str(c9_family()).encode()).hexdigest(),
    }
