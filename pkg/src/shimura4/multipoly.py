"""Sparse multivariate polynomials over the rationals.

Everything here is exact: coefficients are `fractions.Fraction`, terms are
kept in a dict mapping exponent tuples to nonzero coefficients, and the
variable order is fixed per polynomial. This is deliberately a small core --
just what the verification pipeline needs: ring arithmetic, exact division,
resultants by subresultant remainder sequences, discriminants, gcd /
squarefree parts, rational substitution with denominator clearing, and
valuation bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class MultiPolyError(ValueError):
    pass


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise MultiPolyError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class MultiPoly:
    """A polynomial in named variables with Fraction coefficients.

    `variables` is a tuple of names fixing the exponent-vector order;
    `terms` maps exponent tuples to nonzero Fractions. Zero coefficients
    are never stored. Instances are treated as immutable.

    Examples
    --------
    >>> x, t = MultiPoly.generators("x", "t")
    >>> f = x**2 * t - 2 * x + 1
    >>> f.degree("x"), f.degree("t")
    (2, 1)
    >>> f.evaluate({"x": Fraction(1), "t": Fraction(3)})
    Fraction(2, 1)
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar]):
        vt = tuple(variables)
        if len(set(vt)) != len(vt):
            raise MultiPolyError(f"duplicate variable in {vt}")
        clean = {}
        for expo, c in terms.items():
            e = tuple(expo)
            if len(e) != len(vt):
                raise MultiPolyError(f"exponent tuple {e} does not match variables {vt}")
            if any((not isinstance(k, int)) or k < 0 for k in e):
                raise MultiPolyError(f"bad exponent tuple {e}")
            fc = _as_fraction(c)
            if fc != 0:
                # do not store zero coefficients
                clean[e] = fc
        object.__setattr__(self, "variables", vt)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise MultiPolyError("MultiPoly is immutable")

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero(variables: Sequence[str]) -> "MultiPoly":
        return MultiPoly(variables, {})

    @staticmethod
    def constant(c: Scalar, variables: Sequence[str]) -> "MultiPoly":
        vt = tuple(variables)
        return MultiPoly(vt, {(0,) * len(vt): c})

    @staticmethod
    def variable(name: str, variables: Sequence[str]) -> "MultiPoly":
        vt = tuple(variables)
        if name not in vt:
            raise MultiPolyError(f"{name!r} not among variables {vt}")
        e = tuple(1 if v == name else 0 for v in vt)
        return MultiPoly(vt, {e: 1})

    @staticmethod
    def generators(*names: str) -> tuple:
        """Return the generator polynomials of Q[names], one per name."""
        return tuple(MultiPoly.variable(n, names) for n in names)

    # ------------------------------------------------------------------
    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(k == 0 for k in e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise MultiPolyError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def _vidx(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise MultiPolyError(f"{var!r} not among variables {self.variables}") from None

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self._vidx(var)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient(self, var: str, power: int) -> "MultiPoly":
        """The coefficient of var**power, as a polynomial in the same ring
        (the variable still present with exponent 0)."""
        i = self._vidx(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                e2 = e[:i] + (0,) + e[i + 1:]
                out[e2] = out.get(e2, Fraction(0)) + c
        return MultiPoly(self.variables, out)

    def leading_coefficient(self, var: str) -> "MultiPoly":
        d = self.degree(var)
        if d < 0:
            raise MultiPolyError("zero polynomial has no leading coefficient")
        return self.coefficient(var, d)

    def as_univariate(self, var: str) -> list:
        """Dense coefficient list [c0, c1, ...] in var, entries MultiPoly."""
        d = self.degree(var)
        return [self.coefficient(var, k) for k in range(d + 1)] if d >= 0 else []

    def variables_used(self) -> tuple:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.variables[i])
        return tuple(v for v in self.variables if v in used)

    # ------------------------------------------------------------------
    # ring structure

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise MultiPolyError(
                    f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(other, self.variables)

    def __add__(self, other) -> "MultiPoly":
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = _as_fraction(other)
            if c == 0:
                return MultiPoly.zero(self.variables)
            return MultiPoly(self.variables, {e: c * v for e, v in self.terms.items()})
        o = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise MultiPolyError("exponent must be a non-negative int")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other) -> "MultiPoly":
        # scalar division only; polynomial division is exact_div
        c = _as_fraction(other)
        if c == 0:
            raise ZeroDivisionError("division by zero scalar")
        return self * (Fraction(1) / c)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # ------------------------------------------------------------------
    # printing: graded lex, highest first, deterministic

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.variables, e) if k)
            if not mono:
                piece = str(c)
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = "-" + mono
            else:
                piece = f"{c}*{mono}"
            parts.append(piece)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.variables}, {str(self)})"

    # ------------------------------------------------------------------
    # calculus / evaluation

    def derivative(self, var: str) -> "MultiPoly":
        i = self._vidx(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = out.get(e2, Fraction(0)) + c * e[i]
        return MultiPoly(self.variables, out)

    def evaluate(self, values: Mapping[str, Scalar]) -> Union["MultiPoly", Fraction]:
        """Plug in rational values for some or all variables.

        Returns a Fraction when every variable that actually occurs is
        assigned, else a MultiPoly on the same variable tuple.
        """
        vals = {k: _as_fraction(v) for k, v in values.items()}
        for k in vals:
            self._vidx(k)
        out = {}
        for e, c in self.terms.items():
            factor = c
            e2 = list(e)
            for name, val in vals.items():
                i = self.variables.index(name)
                if e[i]:
                    factor *= val ** e[i]
                e2[i] = 0
            key = tuple(e2)
            out[key] = out.get(key, Fraction(0)) + factor
        res = MultiPoly(self.variables, out)
        if set(self.variables_used()) <= set(vals):
            return res.constant_value()
        return res

    # ------------------------------------------------------------------
    # substitution with denominator clearing

    def substitute(self, assignments: Mapping[str, tuple]) -> tuple:
        """Apply a rational map var -> num/den to some variables.

        Each assignment value is a pair (num, den) of MultiPoly on one common
        output variable tuple; den may be omitted by passing a bare MultiPoly.
        Unassigned variables must exist in the output ring and are mapped to
        themselves.

        Returns (numerator, clearing) with

            f(sigma(vars)) == numerator / clearing

        identically, where clearing = prod den_v ** degree_v(f). Only the
        declared denominators are cleared; no gcd cancellation happens here.
        """
        if not assignments:
            raise MultiPolyError("empty substitution")
        pairs = {}
        out_vars = None
        for name, val in assignments.items():
            self._vidx(name)
            if isinstance(val, MultiPoly):
                num, den = val, None
            else:
                num, den = val
            if out_vars is None:
                out_vars = num.variables
            if num.variables != out_vars:
                raise MultiPolyError("substitution images disagree on variables")
            if den is None:
                den = MultiPoly.constant(1, out_vars)
            elif den.variables != out_vars:
                raise MultiPolyError("substitution images disagree on variables")
            if den.is_zero():
                raise MultiPolyError(f"zero denominator in image of {name!r}")
            pairs[name] = (num, den)
        for v in self.variables:
            if v not in pairs:
                # untouched variable: identity, needs to live in the output ring
                pairs[v] = (MultiPoly.variable(v, out_vars),
                            MultiPoly.constant(1, out_vars))
        degs = {v: max(0, self.degree(v)) for v in self.variables}
        clearing = MultiPoly.constant(1, out_vars)
        for v in self.variables:
            den = pairs[v][1]
            if not (den.is_constant() and den.constant_value() == 1):
                clearing = clearing * den ** degs[v]
        num_pows = {}
        den_pows = {}
        for v in self.variables:
            n, d = pairs[v]
            num_pows[v] = [MultiPoly.constant(1, out_vars)]
            den_pows[v] = [MultiPoly.constant(1, out_vars)]
            for _ in range(degs[v]):
                num_pows[v].append(num_pows[v][-1] * n)
                den_pows[v].append(den_pows[v][-1] * d)
        result = MultiPoly.zero(out_vars)
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, out_vars)
            for i, v in enumerate(self.variables):
                k = e[i]
                term = term * num_pows[v][k] * den_pows[v][degs[v] - k]
            result = result + term
        return result, clearing

    # ------------------------------------------------------------------
    # exact division (lex order)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact polynomial division; raises MultiPolyError if not exact.

        Works by repeatedly cancelling the lex-leading term. Sound as an
        exactness certificate: when f = q*g the lex-leading monomial of f is
        the product of those of q and g, so each step strictly decreases the
        leading monomial and terminates with remainder 0 exactly when the
        division is exact.
        """
        g = self._coerce(divisor)
        if g.is_zero():
            raise MultiPolyError("division by zero polynomial")
        if g.is_constant():
            return self / g.constant_value()
        lead_g = max(g.terms)  # lex order on exponent tuples
        cg = g.terms[lead_g]
        rem = dict(self.terms)
        quo = {}
        while rem:
            lead_r = max(rem)
            diff = tuple(a - b for a, b in zip(lead_r, lead_g))
            if any(d < 0 for d in diff):
                raise MultiPolyError("division is not exact")
            c = rem[lead_r] / cg
            quo[diff] = quo.get(diff, Fraction(0)) + c
            for e, cc in g.terms.items():
                key = tuple(a + b for a, b in zip(diff, e))
                val = rem.get(key, Fraction(0)) - c * cc
                if val == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = val
        return MultiPoly(self.variables, quo)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except MultiPolyError:
            return False

    # ------------------------------------------------------------------
    # valuations

    def valuation(self, var: str) -> int:
        """Largest k with var**k dividing self; raises on the zero polynomial."""
        if not self.terms:
            raise MultiPolyError("valuation of the zero polynomial")
        i = self._vidx(var)
        return min(e[i] for e in self.terms)

    def valuation_at(self, var: str, point: Scalar) -> int:
        """Order of vanishing at var = point (shift then valuation)."""
        p = _as_fraction(point)
        if p == 0:
            return self.valuation(var)
        xv = MultiPoly.variable(var, self.variables)
        shifted, _ = self.substitute({var: (xv + p, None)})
        return shifted.valuation(var)

    def reduce_at_zero(self, var: str) -> tuple:
        """Divide out the full var-power and set var = 0.

        Returns (value, k) where self = var**k * g with g(var=0) != 0 and
        value = g(var=0) as a MultiPoly in the same ring.
        """
        k = self.valuation(var)
        i = self._vidx(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return MultiPoly(self.variables, out), k

    def shift_down(self, var: str, k: int) -> "MultiPoly":
        """Exact division by var**k (valuation must be >= k)."""
        if k == 0:
            return self
        if self.valuation(var) < k:
            raise MultiPolyError(
                f"cannot divide by {var}^{k}: valuation is {self.valuation(var)}")
        i = self._vidx(var)
        return MultiPoly(self.variables,
                         {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in self.terms.items()})

    # ------------------------------------------------------------------
    # content / primitive part (recursive, over Q then Z)

    def content(self) -> Fraction:
        """gcd of the coefficients as positive rational (0 for the zero poly).

        Sign convention: content is positive; the primitive part keeps the
        sign of the original leading (lex) coefficient.
        """
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = _int_gcd(num, abs(c.numerator))
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_part(self) -> "MultiPoly":
        c = self.content()
        if c == 0:
            return self
        return self / c


# ----------------------------------------------------------------------
# univariate views and the subresultant machinery


def _uni_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    vt = (a[0] if a else b[0]).variables
    out = [MultiPoly.zero(vt) for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            if cb.is_zero():
                continue
            out[i + j] = out[i + j] + ca * cb
    return _uni_trim(out)


def _uni_trim(a: list) -> list:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _uni_scale(a: list, s: MultiPoly) -> list:
    return _uni_trim([c * s for c in a])


def _uni_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    vt = (a[0] if a else b[0]).variables
    z = MultiPoly.zero(vt)
    out = [(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z) for i in range(n)]
    return _uni_trim(out)


def _uni_pseudo_rem(f: list, g: list) -> list:
    """Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g.

    When a subtraction kills more than one leading term the loop runs fewer
    times than deg f - deg g + 1; the remainder is then scaled by the
    leftover power of lc(g) so the exact subresultant divisions stay valid.
    """
    r = list(f)
    dg = len(g) - 1
    lg = g[-1]
    n_left = (len(r) - 1) - dg + 1
    while r and len(r) - 1 >= dg:
        dr = len(r) - 1
        lead = r[-1]
        r = _uni_scale(r, lg)
        shift = [MultiPoly.zero(lg.variables)] * (dr - dg) + [c * lead for c in g]
        r = _uni_sub(r, shift)
        n_left -= 1
    if r and n_left > 0:
        r = _uni_scale(r, lg ** n_left)
    return r


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Resultant of f and g with respect to var.

    Subresultant polynomial remainder sequence (Brown's beta divisions, all
    exact over the coefficient ring), so intermediate coefficient swell stays
    polynomial. The result is a MultiPoly in the same ring with var-degree 0.

    Follows the classical algorithm: at each step the pseudo-remainder is
    divided exactly by g_prev * h**delta, with h updated through
    h <- lc**delta / h**(delta-1).
    """
    if f.variables != g.variables:
        raise MultiPolyError("resultant operands must share a variable tuple")
    vt = f.variables
    if f.is_zero() or g.is_zero():
        return MultiPoly.zero(vt)
    A = _uni_trim(f.as_univariate(var))
    B = _uni_trim(g.as_univariate(var))
    m, n = len(A) - 1, len(B) - 1
    sign = 1
    if m < n:
        A, B = B, A
        m, n = n, m
        if (m & 1) and (n & 1):
            sign = -sign
    if n == 0:
        return sign * B[0] ** m
    one = MultiPoly.constant(1, vt)
    gprev = one
    h = one
    while True:
        m, n = len(A) - 1, len(B) - 1
        delta = m - n
        if (m & 1) and (n & 1):
            sign = -sign
        R = _uni_pseudo_rem(A, B)
        if not R:
            # common factor of positive degree
            return MultiPoly.zero(vt)
        denom = gprev * (h ** delta)
        R = [c.exact_div(denom) for c in R]
        A, B = B, R
        gprev = A[-1]
        if delta == 0:
            # h unchanged... careful: h <- h^(1-delta) g^delta = h
            pass
        elif delta == 1:
            h = gprev
        else:
            # h <- g^delta / h^(delta-1), exact in the subresultant theory
            h = (gprev ** delta).exact_div(h ** (delta - 1))
        if len(B) - 1 == 0:
            m = len(A) - 1
            lb = B[0]
            if m == 0:
                raise MultiPolyError("internal: PRS collapsed")  # pragma: no cover
            # final correction: res = sign * lb^m / h^(m-1)
            if m == 1:
                return sign * lb
            return sign * (lb ** m).exact_div(h ** (m - 1))


def discriminant(f: MultiPoly, var: str) -> MultiPoly:
    """disc(f) = (-1)^(n(n-1)/2) * res(f, f') / lc(f), n = deg(f, var).

    The division by the leading coefficient is checked exact.
    """
    n = f.degree(var)
    if n < 2:
        raise MultiPolyError(f"discriminant needs degree >= 2 in {var!r}, got {n}")
    res = resultant(f, f.derivative(var), var)
    lc = f.leading_coefficient(var)
    d = res.exact_div(lc)
    if (n * (n - 1) // 2) % 2:
        d = -d
    return d


def gcd_poly(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """gcd of f and g taken as univariate in var.

    Primitive polynomial remainder sequence: each pseudo-remainder is
    stripped of its coefficient content before the next step, which keeps
    sizes tame without the subresultant division bookkeeping. Univariate
    input gives a monic result; with parameters in the coefficients the
    result is primitive (content recursion through the remaining variables).
    """
    if f.variables != g.variables:
        raise MultiPolyError("gcd operands must share a variable tuple")
    if f.is_zero():
        return _normalize_gcd(g, var)
    if g.is_zero():
        return _normalize_gcd(f, var)
    A, B = f, g
    if A.degree(var) < B.degree(var):
        A, B = B, A
    A = _strip_var_content(A, var)
    B = _strip_var_content(B, var)
    vt = f.variables
    xv = MultiPoly.variable(var, vt)
    while B.degree(var) > 0:
        a = _uni_trim(A.as_univariate(var))
        b = _uni_trim(B.as_univariate(var))
        R = _uni_pseudo_rem(a, b)
        if not R:
            return _normalize_gcd(B, var)
        Rp = MultiPoly.zero(vt)
        for k, c in enumerate(R):
            Rp = Rp + c * xv ** k
        A, B = B, _strip_var_content(Rp, var)
    if B.is_zero():
        return _normalize_gcd(A, var)
    return MultiPoly.constant(1, vt)


def _strip_var_content(f: MultiPoly, var: str) -> MultiPoly:
    """Divide f by the gcd of its coefficients w.r.t. var (recursive)."""
    coeffs = [c for c in f.as_univariate(var) if not c.is_zero()]
    if not coeffs:
        return f
    if all(c.is_constant() for c in coeffs):
        return f.primitive_part()
    rest = [v for v in f.variables_used() if v != var]
    if not rest:
        return f.primitive_part()
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = gcd_poly(cont, c, rest[0])
        if cont.is_constant():
            return f.primitive_part()
    return f.exact_div(cont).primitive_part()


def _normalize_gcd(f: MultiPoly, var: str) -> MultiPoly:
    if f.is_zero():
        return f
    f = _strip_var_content(f, var)
    lc = f.leading_coefficient(var)
    if lc.is_constant():
        f = f / lc.constant_value()  # monic
    return f


def squarefree_part(f: MultiPoly, var: str) -> MultiPoly:
    """f / gcd(f, df/dvar), normalized primitive. Same roots, multiplicity 1."""
    if f.degree(var) < 1:
        raise MultiPolyError("squarefree part needs positive degree")
    g = gcd_poly(f, f.derivative(var), var)
    return _normalize_gcd(f.exact_div(g), var)


def squarefree_decomposition(f: MultiPoly, var: str) -> list:
    """Yun's algorithm: f = c * prod p_i^i with p_i squarefree coprime.

    Returns a list of (p_i, i) with deg(p_i) >= 1, in increasing i. Intended
    for univariate f (coefficients constant in the other variables); the gcd
    steps tolerate parameters but the use sites are univariate.
    """
    if f.degree(var) < 1:
        raise MultiPolyError("squarefree decomposition needs positive degree")
    out = []
    fp = f.derivative(var)
    a = gcd_poly(f, fp, var)
    b = f.exact_div(a)
    c = fp.exact_div(a)
    d = c - b.derivative(var)
    i = 1
    while b.degree(var) > 0:
        a = gcd_poly(b, d, var)
        if a.degree(var) > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative(var)
        i += 1
    return out
