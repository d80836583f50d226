"""Triangle group data and hyperbolic disk tessellations.

The exact part: curvature classification of a triple (p, q, r), the degree
of the log-canonical bundle on the associated quotient stack, and the
Bezout-type weight pairs used in the local cyclic-quotient bookkeeping.

The numerical part: the standard geodesic triangle in the Poincare disk,
rotation generators in SU(1,1) around its vertices, a breadth-first
tessellation of the disk with exact-enough dedup (tolerance 1e-9), and an
SVG rendering with true geodesic arcs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

INFINITY = math.inf

Entry = Union[int, float]


class TriangleError(ValueError):
    pass


def _is_inf(e: Entry) -> bool:
    return isinstance(e, float) and math.isinf(e) and e > 0


def _check_entry(e: Entry) -> None:
    if _is_inf(e):
        return
    if not isinstance(e, int) or e < 2:
        raise TriangleError(f"triangle entry must be an integer >= 2 or infinity, got {e!r}")


def _inv(e: Entry) -> Fraction:
    return Fraction(0) if _is_inf(e) else Fraction(1, e)


@dataclass(frozen=True)
class TriangleType:
    p: Entry
    q: Entry
    r: Entry
    kind: str            # "spherical" | "euclidean" | "hyperbolic"
    excess: Fraction     # 1 - 1/p - 1/q - 1/r


def classify(p: Entry, q: Entry, r: Entry) -> TriangleType:
    """Curvature type of the (p, q, r) triangle group.

    excess < 0: spherical, = 0: euclidean, > 0: hyperbolic.

    >>> classify(2, 3, 7).kind
    'hyperbolic'
    >>> classify(2, 3, 6).kind
    'euclidean'
    >>> classify(2, 3, 5).kind
    'spherical'
    """
    for e in (p, q, r):
        _check_entry(e)
    excess = 1 - _inv(p) - _inv(q) - _inv(r)
    if excess < 0:
        kind = "spherical"
    elif excess == 0:
        kind = "euclidean"
    else:
        kind = "hyperbolic"
    return TriangleType(p, q, r, kind, excess)


def canonical_degree(p: Entry, q: Entry, r: Entry) -> Fraction:
    """deg of the log-canonical bundle: (1/2)(1 - 1/p - 1/q - 1/r).

    Only meaningful (positive) in the hyperbolic case, which is enforced.

    >>> canonical_degree(2, 3, 7)
    Fraction(1, 84)
    >>> canonical_degree(2, 3, 9)
    Fraction(1, 36)
    """
    t = classify(p, q, r)
    if t.kind != "hyperbolic":
        raise TriangleError(f"({p},{q},{r}) is {t.kind}, not hyperbolic")
    return t.excess / 2


def bezout_weights(p: int, q: int, a_even: bool = False) -> tuple:
    """The weight pair (a, b) with a*p = 1 (mod q) normalized to 1 <= a <= q,
    and b = (a*p - 1) / q.

    With a_even=True the pair is shifted to (a + q, b + p) so that a is even;
    this requires q odd (otherwise a keeps its parity and the request fails).
    gcd(p, q) = 1 is required.
    """
    if not (isinstance(p, int) and isinstance(q, int)) or p < 1 or q < 1:
        raise TriangleError("bezout_weights needs positive integers")
    if math.gcd(p, q) != 1:
        raise TriangleError(f"gcd({p},{q}) != 1")
    a = pow(p, -1, q) if q > 1 else 1
    b = (a * p - 1) // q
    if a_even and a % 2 == 1:
        if q % 2 == 0:
            raise TriangleError("cannot make a even: q is even")
        a, b = a + q, b + p
    if a_even and a % 2 == 1:
        raise TriangleError("cannot make a even")
    return a, b


# ----------------------------------------------------------------------
# geometry: SU(1,1) as 2x2 complex tuples ((a, b), (c, d))

Mat = tuple


def mat_mul(A: Mat, B: Mat) -> Mat:
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def mat_inv(M: Mat) -> Mat:
    # det = 1 for SU(1,1)
    return ((M[1][1], -M[0][1]), (-M[1][0], M[0][0]))


def mat_apply(M: Mat, z: complex) -> complex:
    return (M[0][0] * z + M[0][1]) / (M[1][0] * z + M[1][1])


def mat_dist(A: Mat, B: Mat) -> float:
    """min over sign of the max-entry distance; SU(1,1) acts through +-I."""
    d1 = max(abs(A[i][j] - B[i][j]) for i in range(2) for j in range(2))
    d2 = max(abs(A[i][j] + B[i][j]) for i in range(2) for j in range(2))
    return min(d1, d2)


IDENTITY: Mat = ((1 + 0j, 0j), (0j, 1 + 0j))


def _rotation_at_origin(theta: float) -> Mat:
    w = cmath.exp(1j * theta / 2)
    return ((w, 0j), (0j, w.conjugate()))


def _translation(w: complex) -> Mat:
    s = 1.0 / math.sqrt(1 - abs(w) ** 2)
    return ((s + 0j, s * w), (s * w.conjugate(), s + 0j))


def rotation_about(w: complex, theta: float) -> Mat:
    """Disk rotation by theta around the point w."""
    if w == 0:
        return _rotation_at_origin(theta)
    return mat_mul(mat_mul(_translation(w), _rotation_at_origin(theta)),
                   _translation(-w))


def triangle_vertices(p: int, q: int, r: int) -> tuple:
    """Vertices (A, B, C) of the base geodesic triangle in the unit disk.

    Angle pi/p at A = 0, angle pi/q at B on the positive real axis, angle
    pi/r at C in the upper half of the disk. Hyperbolic side lengths come
    from the angle law of cosines; Poincare radius is tanh(d/2).
    """
    t = classify(p, q, r)
    if t.kind != "hyperbolic":
        raise TriangleError("tessellation needs a hyperbolic triple")
    al, be, ga = math.pi / p, math.pi / q, math.pi / r
    cosh_ab = (math.cos(al) * math.cos(be) + math.cos(ga)) / (math.sin(al) * math.sin(be))
    cosh_ac = (math.cos(al) * math.cos(ga) + math.cos(be)) / (math.sin(al) * math.sin(ga))
    A = 0j
    B = complex(math.tanh(math.acosh(cosh_ab) / 2), 0)
    C = math.tanh(math.acosh(cosh_ac) / 2) * cmath.exp(1j * al)
    return A, B, C


def rotation_generators(p: int, q: int, r: int) -> tuple:
    """Clockwise rotations by 2 pi/k around the three vertices.

    The uniform clockwise choice makes g_r g_q g_p = +-I hold (checked to
    1e-9 at construction).
    """
    A, B, C = triangle_vertices(p, q, r)
    gp = rotation_about(A, -2 * math.pi / p)
    gq = rotation_about(B, -2 * math.pi / q)
    gr = rotation_about(C, -2 * math.pi / r)
    prod = mat_mul(mat_mul(gr, gq), gp)
    if mat_dist(prod, IDENTITY) > 1e-9:
        raise TriangleError("generator relation g_r g_q g_p = +-I failed")
    return gp, gq, gr


def _word_matrices(p: int, q: int, r: int, max_len: int) -> list:
    """All distinct matrices of words up to max_len over the generators and
    their inverses, as (matrix, word_length) with BFS word length."""
    gp, gq, gr = rotation_generators(p, q, r)
    gens = [gp, mat_inv(gp), gq, mat_inv(gq), gr, mat_inv(gr)]
    seen = [(IDENTITY, 0)]
    frontier = [IDENTITY]
    for depth in range(1, max_len + 1):
        new_frontier = []
        for M in frontier:
            for g in gens:
                Y = mat_mul(g, M)
                if not any(mat_dist(Y, S) < 1e-9 for S, _ in seen):
                    seen.append((Y, depth))
                    new_frontier.append(Y)
        frontier = new_frontier
    return seen


MAX_DEPTH = 8  # tile count and float error both grow fast past this


def tessellate(p: int, q: int, r: int, depth: int = 4,
               svg_path: Optional[str] = None) -> int:
    """Number of distinct triangle tiles within BFS depth of the base tile.

    Tiles are images of the base triangle under words in the rotation
    generators; two words give the same tile exactly when their matrices
    agree up to sign, decided with tolerance 1e-9. Optionally renders the
    tiling to an SVG file with geodesic edges, two-colored by word-length
    parity (a rendering choice: neighboring depths alternate shade).
    """
    if not isinstance(depth, int) or depth < 0:
        raise TriangleError("depth must be a non-negative integer")
    if depth > MAX_DEPTH:
        raise TriangleError(f"depth capped at {MAX_DEPTH}")
    mats = _word_matrices(p, q, r, depth)
    if svg_path is not None:
        verts = triangle_vertices(p, q, r)
        _render_svg(svg_path, mats, verts)
    return len(mats)


# ----------------------------------------------------------------------
# SVG rendering


def _geodesic_arc(z1: complex, z2: complex) -> str:
    """SVG path segment from z1 to z2 along the disk geodesic.

    The geodesic through z1, z2 is the circle orthogonal to the unit circle:
    center c with 2 Re(conj(c) z_i) = |z_i|^2 + 1. Near-diametral pairs fall
    back to a straight line.
    """
    x1, y1 = z1.real, z1.imag
    x2, y2 = z2.real, z2.imag
    det = 2 * (x1 * y2 - x2 * y1)
    if abs(det) < 1e-12:
        return f"L {x2:.6f} {y2:.6f}"
    r1 = abs(z1) ** 2 + 1
    r2 = abs(z2) ** 2 + 1
    cx = (r1 * y2 - r2 * y1) / det
    cy = (r2 * x1 - r1 * x2) / det
    rad = math.sqrt(max(cx * cx + cy * cy - 1, 0.0))
    if rad < 1e-6 or rad > 1e4:
        return f"L {x2:.6f} {y2:.6f}"
    # sweep flag: with large-arc 0 and sweep 1 the center sits at
    # midpoint + k*((y1-y2)/2, -(x1-x2)/2), k >= 0; match it to our center
    mx, my = (x1 + x2) / 2, (y1 + y2) / 2
    vx, vy = (y1 - y2) / 2, -(x1 - x2) / 2
    sweep = 1 if (cx - mx) * vx + (cy - my) * vy > 0 else 0
    return f"A {rad:.6f} {rad:.6f} 0 0 {sweep} {x2:.6f} {y2:.6f}"


def _render_svg(path: str, mats: Sequence, verts: tuple) -> None:
    A, B, C = verts
    tiles = []
    for M, depth in mats:
        za, zb, zc = (mat_apply(M, z) for z in (A, B, C))
        fill = "#355f8d" if depth % 2 == 0 else "#9fc5e8"
        d = (f"M {za.real:.6f} {za.imag:.6f} "
             + _geodesic_arc(za, zb) + " "
             + _geodesic_arc(zb, zc) + " "
             + _geodesic_arc(zc, za) + " Z")
        tiles.append(f'<path d="{d}" fill="{fill}" stroke="#1a2a3a" stroke-width="0.004"/>')
    body = "\n".join(tiles)
    svg = (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.05 -1.05 2.1 2.1">\n'
        '<circle cx="0" cy="0" r="1" fill="#f4f6f8" stroke="#444" stroke-width="0.006"/>\n'
        f"{body}\n</svg>\n"
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)


# ----------------------------------------------------------------------
# trace spectra (for comparing with the quaternionic picture)


def words_over(generators: Sequence, max_len: int) -> list:
    """Products of all nonempty words of length <= max_len, with the word."""
    out = []
    frontier = [((), IDENTITY)]
    for _ in range(max_len):
        nxt = []
        for word, M in frontier:
            for gi, g in enumerate(generators):
                nw = word + (gi,)
                nm = mat_mul(M, g)
                nxt.append((nw, nm))
        out.extend(nxt)
        frontier = nxt
    return out


def trace_spectrum(generators: Sequence, max_len: int) -> list:
    """Sorted |trace| multiset over nonempty words of length <= max_len."""
    return sorted(abs(complex(M[0][0] + M[1][1]).real)
                  for _, M in words_over(generators, max_len))
