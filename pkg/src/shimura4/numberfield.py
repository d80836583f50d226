"""Totally real number fields with exact real-embedding arithmetic.

A field is Q[x]/(m) for a monic irreducible m with all roots real. Real
embeddings are identified with the real roots of m, ordered increasingly and
represented by exact isolating intervals from a Sturm chain. Element signs
under an embedding are decided exactly by interval refinement -- no floating
point is involved anywhere in a sign decision.

Dense univariate polynomials over Fraction are used internally as plain
lists [c0, c1, ...]; the public surface speaks MultiPoly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .multipoly import MultiPoly, MultiPolyError


class NumberFieldError(ValueError):
    pass


# ----------------------------------------------------------------------
# dense univariate helpers (coefficients ascending)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deriv(p: Sequence[Fraction]) -> list:
    return [c * k for k, c in enumerate(p)][1:]


def _neg(p):
    return [-c for c in p]


def _rem(a: list, b: list) -> list:
    """Euclidean remainder over Q."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        _trim(a)
    return a


def _mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out)


def _divmod_exact(a: list, b: list) -> tuple:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [Fraction(0)] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] / lb
        shift = len(a) - 1 - db
        q[shift] = c
        for i, cc in enumerate(b):
            a[shift + i] -= c * cc
        _trim(a)
    return _trim(q), a


def poly_to_dense(f: MultiPoly, var: str) -> list:
    """MultiPoly univariate in var -> dense Fraction list."""
    coeffs = []
    for k in range(f.degree(var) + 1):
        c = f.coefficient(var, k)
        if not c.is_constant():
            raise NumberFieldError(f"{f} is not univariate in {var!r}")
        coeffs.append(c.constant_value())
    return _trim(coeffs)


def dense_to_poly(p: Sequence[Fraction], var: str = "x") -> MultiPoly:
    x = MultiPoly.variable(var, (var,))
    out = MultiPoly.zero((var,))
    for k, c in enumerate(p):
        out = out + MultiPoly.constant(c, (var,)) * x ** k
    return out


# ----------------------------------------------------------------------
# Sturm chains


def sturm_chain(p: Sequence[Fraction]) -> list:
    """Sturm sequence p, p', -rem(...), ... for a squarefree p."""
    chain = [_trim(list(p)), _deriv(list(p))]
    while chain[-1]:
        r = _neg(_rem(chain[-2], chain[-1]))
        if not r:
            break
        chain.append(r)
    return chain


def _sign_variations(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of squarefree p in (lo, hi]."""
    chain = sturm_chain(p)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def cauchy_bound(p: Sequence[Fraction]) -> Fraction:
    lead = abs(p[-1])
    return 1 + max(abs(c) for c in p) / lead


def isolate_real_roots(p: Sequence[Fraction]) -> list:
    """Disjoint exact isolating intervals for the real roots of squarefree p.

    Returns a list of (lo, hi) Fractions, sorted increasingly, one interval
    per real root with lo < root <= hi; a root found exactly is returned as
    the degenerate interval (r, r).
    """
    p = _trim(list(p))
    if len(p) <= 1:
        raise NumberFieldError("cannot isolate roots of a constant")
    chain = sturm_chain(p)
    bound = cauchy_bound(p)

    def var(x):
        return _sign_variations(chain, x)

    out = []

    def split(lo, hi, vlo, vhi):
        n = vlo - vhi
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if _eval(p, mid) == 0:
            # exact root at the split point: shrink a symmetric gap around it
            # until it contains no other root and has nonroot endpoints
            eps = (hi - lo) / 4
            while (_eval(p, mid + eps) == 0 or _eval(p, mid - eps) == 0
                   or count_real_roots(p, mid - eps, mid + eps) != 1):
                eps /= 2
            out.append((mid, mid))
            vl = var(mid - eps)
            vr = var(mid + eps)
            split(lo, mid - eps, vlo, vl)
            split(mid + eps, hi, vr, vhi)
            return
        vm = var(mid)
        split(lo, mid, vlo, vm)
        split(mid, hi, vm, vhi)

    split(-bound, bound, var(-bound), var(bound))
    out.sort(key=lambda iv: iv[0])
    return out


def refine_interval(p: Sequence[Fraction], lo: Fraction, hi: Fraction,
                    width: Fraction) -> tuple:
    """Bisect an isolating interval of squarefree p down to the given width."""
    if lo == hi:
        return lo, hi
    slo = _eval(p, lo)
    if slo == 0:
        return lo, lo
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = _eval(p, mid)
        if v == 0:
            return mid, mid
        if (v > 0) == (slo > 0):
            lo = mid
        else:
            hi = mid
    return lo, hi


# ----------------------------------------------------------------------
# fields and elements


@dataclass(frozen=True)
class NumberField:
    """Q[x]/(m) for m monic irreducible, all roots real.

    `min_poly` is the monic minimal polynomial as a univariate MultiPoly;
    `name` is a display name for the generator. Real embeddings are indexed
    0, 1, ... by increasing root.
    """
    min_poly: MultiPoly
    name: str = "a"

    def __post_init__(self):
        var = self.min_poly.variables_used()
        if len(var) != 1:
            raise NumberFieldError("minimal polynomial must be univariate")
        dense = poly_to_dense(self.min_poly, var[0])
        if dense[-1] != 1:
            raise NumberFieldError("minimal polynomial must be monic")
        if len(dense) < 2:
            raise NumberFieldError("minimal polynomial must be non-constant")
        object.__setattr__(self, "_dense", dense)
        roots = isolate_real_roots(dense)
        if len(roots) != len(dense) - 1:
            raise NumberFieldError("minimal polynomial is not totally real")
        object.__setattr__(self, "_roots", roots)

    @property
    def degree(self) -> int:
        return len(self._dense) - 1

    @property
    def real_embeddings(self) -> list:
        """Isolating intervals of the generator's images, increasing order."""
        return list(self._roots)

    def refine_embedding(self, index: int, width: Fraction) -> tuple:
        lo, hi = self._roots[index]
        lo, hi = refine_interval(self._dense, lo, hi, width)
        object.__setattr__(self, "_roots",
                           [(lo, hi) if i == index else iv
                            for i, iv in enumerate(self._roots)])
        return lo, hi

    def gen(self) -> "NumberFieldElem":
        coords = [Fraction(0)] * self.degree
        if self.degree == 1:
            # x - c: generator is the rational c
            coords[0] = -self._dense[0]
        else:
            coords[1] = Fraction(1)
        return NumberFieldElem(self, tuple(coords))

    def element(self, coords) -> "NumberFieldElem":
        cs = [Fraction(c) for c in coords]
        if len(cs) > self.degree:
            raise NumberFieldError("too many coordinates")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return NumberFieldElem(self, tuple(cs))

    def zero(self) -> "NumberFieldElem":
        return self.element([])

    def one(self) -> "NumberFieldElem":
        return self.element([1])

    def __repr__(self):
        return f"NumberField({self.name}: {self.min_poly})"


class NumberFieldElem:
    """Element of a NumberField in power-basis coordinates.

    Supports field arithmetic and exact sign / approximation queries at any
    real embedding.
    """

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = tuple(coords)
        if len(self.coords) != field.degree:
            raise NumberFieldError("coordinate length mismatch")

    def _coerce(self, other):
        if isinstance(other, NumberFieldElem):
            if other.field is not self.field and other.field != self.field:
                raise NumberFieldError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([Fraction(other)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElem(self.field,
                               tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _mul(list(self.coords), list(o.coords))
        _, rem = _divmod_exact(prod, self.field._dense)
        rem += [Fraction(0)] * (self.field.degree - len(rem))
        return NumberFieldElem(self.field, tuple(rem))

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElem":
        """Extended Euclid against the minimal polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # invariants: r0 = s0*m + t0*self_poly (mod juggling implicit)
        r0, r1 = list(self.field._dense), _trim(list(self.coords))
        t0, t1 = [], [Fraction(1)]
        while len(r1) - 1 > 0:
            q, r = _divmod_exact(r0, r1)
            qt1 = _mul(q, t1)
            n = max(len(qt1), len(t0))
            t_next = _trim([(t0[i] if i < len(t0) else Fraction(0)) -
                            (qt1[i] if i < len(qt1) else Fraction(0))
                            for i in range(n)])
            r0, r1 = r1, r
            t0, t1 = t1, t_next
        if not r1:
            raise NumberFieldError("element not invertible (reducible modulus?)")
        c = r1[0]
        inv = [t / c for t in t1]
        inv += [Fraction(0)] * (self.field.degree - len(inv))
        return NumberFieldElem(self.field, tuple(inv[:self.field.degree]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((self.field.min_poly, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise NumberFieldError("element is not rational")
        return self.coords[0]

    def __repr__(self):
        name = self.field.name
        parts = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*{name}" if c != 1 else name)
            else:
                parts.append(f"{c}*{name}^{k}" if c != 1 else f"{name}^{k}")
        return " + ".join(parts) if parts else "0"

    # ------------------------------------------------------------------
    # real-embedding queries

    def _interval_eval(self, lo: Fraction, hi: Fraction) -> tuple:
        """Interval Horner: encloses p(alpha) for alpha in [lo, hi]."""
        plo, phi = Fraction(0), Fraction(0)
        for c in reversed(self.coords):
            cands = (plo * lo, plo * hi, phi * lo, phi * hi)
            plo, phi = min(cands) + c, max(cands) + c
        return plo, phi

    def embedding_interval(self, index: int, width: Fraction) -> tuple:
        """Exact enclosure of the image at one real embedding, <= width wide."""
        lo, hi = self.field._roots[index]
        while True:
            vlo, vhi = self._interval_eval(lo, hi)
            if vhi - vlo <= width:
                return vlo, vhi
            lo, hi = self.field.refine_embedding(index, (hi - lo) / 2 if hi > lo
                                                 else Fraction(1))
            if lo == hi:
                v = _eval(list(self.coords), lo)
                return v, v

    def sign_at_embedding(self, index: int) -> int:
        """Sign (-1, 0, +1) of the image under the index-th real embedding.

        Terminates: a nonzero element has p(alpha) != 0 (deg p < deg m and m
        irreducible), so interval refinement eventually separates the
        enclosure from 0; the zero element short-circuits.
        """
        if self.is_zero():
            return 0
        if self.is_rational():
            v = self.coords[0]
            return 1 if v > 0 else -1
        lo, hi = self.field._roots[index]
        if lo == hi:
            raise NumberFieldError("rational root of an irreducible modulus?")
        while True:
            vlo, vhi = self._interval_eval(lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            lo, hi = self.field.refine_embedding(index, (hi - lo) / 2)

    def float_at_embedding(self, index: int) -> float:
        lo, hi = self.embedding_interval(index, Fraction(1, 10 ** 20))
        return float((lo + hi) / 2)


# ----------------------------------------------------------------------
# minimal polynomials of 2*cos(2*pi/n)


def _chebyshev_like(n: int) -> list:
    """V_n with V_n(2 cos h) = 2 cos(n h): V_0 = 2, V_1 = x."""
    v0, v1 = [Fraction(2)], [Fraction(0), Fraction(1)]
    if n == 0:
        return v0
    for _ in range(n - 1):
        v0, v1 = v1, _trim([a - b for a, b in
                            zip([Fraction(0)] + list(v1),
                                list(v0) + [Fraction(0)] * (len(v1) + 1 - len(v0)))])
    return v1


def minpoly_2cos(n: int, var: str = "x") -> MultiPoly:
    """Monic minimal polynomial of 2*cos(2*pi/n) over Q.

    Built from the recursion V_{k+1} = x V_k - V_{k-1} (V_k(2 cos h) =
    2 cos k h): 2 cos(2 pi/n) is a root of V_n - 2, and the minimal
    polynomial is the factor left after removing the squarefree parts
    belonging to proper divisors. Degree phi(n)/2 for n >= 3.

    Examples
    --------
    >>> str(minpoly_2cos(7))
    'x^3 + x^2 - 2*x - 1'
    >>> str(minpoly_2cos(3))
    'x + 1'
    """
    if n < 1:
        raise NumberFieldError("n must be positive")
    if n == 1:
        return dense_to_poly([Fraction(-2), Fraction(1)], var)  # 2cos(2pi) = 2
    if n == 2:
        return dense_to_poly([Fraction(2), Fraction(1)], var)   # 2cos(pi) = -2
    from .multipoly import squarefree_part
    vn = _chebyshev_like(n)
    vn2 = list(vn)
    vn2[0] -= 2
    f = squarefree_part(dense_to_poly(vn2, var), var)
    # remove the roots 2cos(2 pi k/n) with gcd(k, n) > 1: they belong to
    # minpoly_2cos(d) for the proper divisors d of n
    f = f.exact_div(dense_to_poly([Fraction(-2), Fraction(1)], var))  # d = 1
    if n % 2 == 0:
        f = f.exact_div(dense_to_poly([Fraction(2), Fraction(1)], var))  # d = 2
    for d in range(3, n):
        if n % d == 0:
            f = f.exact_div(minpoly_2cos(d, var))
    lc = f.leading_coefficient(var).constant_value()
    return f / lc


def field_2cos(n: int, name: str = "v") -> NumberField:
    """The real cyclotomic field generated by 2*cos(2*pi/n)."""
    return NumberField(minpoly_2cos(n, name), name)
