"""Triangle classification, degrees, weights, and disk tessellation."""

import math
import os
from fractions import Fraction

import pytest

from shimura4.trianglestacks import (
    IDENTITY,
    INFINITY,
    TriangleError,
    bezout_weights,
    canonical_degree,
    classify,
    mat_dist,
    mat_inv,
    mat_mul,
    rotation_generators,
    tessellate,
    trace_spectrum,
    triangle_vertices,
)

F = Fraction


def test_classify_kinds():
    assert classify(2, 3, 5).kind == "spherical"
    assert classify(2, 3, 6).kind == "euclidean"
    assert classify(2, 3, 7).kind == "hyperbolic"
    assert classify(2, 2, 2).kind == "spherical"
    assert classify(3, 3, 3).kind == "euclidean"
    assert classify(2, 3, INFINITY).kind == "hyperbolic"
    assert classify(2, 3, float("inf")).kind == "hyperbolic"


def test_classify_excess_values():
    assert classify(2, 3, 7).excess == F(1, 42)
    assert classify(2, 3, 9).excess == F(1, 18)
    assert classify(2, 3, 11).excess == F(5, 66)


def test_classify_rejects_bad_entries():
    with pytest.raises(TriangleError):
        classify(1, 3, 7)
    with pytest.raises(TriangleError):
        classify(2, 3, 7.5)
    with pytest.raises(TriangleError):
        classify(2, 3, -float("inf"))


def test_canonical_degree_values():
    assert canonical_degree(2, 3, 7) == F(1, 84)
    assert canonical_degree(2, 3, 9) == F(1, 36)
    assert canonical_degree(2, 3, 11) == F(5, 132)


def test_canonical_degree_needs_hyperbolic():
    with pytest.raises(TriangleError):
        canonical_degree(2, 3, 5)
    with pytest.raises(TriangleError):
        canonical_degree(2, 3, 6)


def test_canonical_degree_with_infinity():
    assert canonical_degree(2, 3, INFINITY) == F(1, 12)


def test_bezout_weights_basic():
    a, b = bezout_weights(3, 7)
    assert (a * 3 - 1) % 7 == 0 and 1 <= a <= 7
    assert b == (a * 3 - 1) // 7
    a, b = bezout_weights(7, 3)
    assert (a * 7 - 1) % 3 == 0 and 1 <= a <= 3


def test_bezout_weights_even_shift():
    a, b = bezout_weights(4, 7, a_even=True)
    assert a % 2 == 0
    assert (a * 4 - 1) % 7 == 0
    with pytest.raises(TriangleError):
        bezout_weights(3, 4, a_even=True)  # q even, parity cannot change


def test_bezout_weights_requires_coprime():
    with pytest.raises(TriangleError):
        bezout_weights(6, 9)


def test_bezout_parity_theorem_even_p():
    # for even p the second weight is odd and coprime to p
    for p in range(2, 21, 2):
        for q in range(3, 30, 2):
            if math.gcd(p, q) != 1:
                continue
            a, b = bezout_weights(p, q)
            assert math.gcd(b, 2 * p) == 1 or b == 0
            if b:
                assert b % 2 == 1


def test_vertices_inside_disk():
    for pqr in [(2, 3, 7), (2, 3, 9), (2, 3, 11), (3, 4, 5)]:
        A, B, C = triangle_vertices(*pqr)
        assert abs(A) < 1 and abs(B) < 1 and abs(C) < 1
        assert B.real > 0 and abs(B.imag) < 1e-15
        assert C.imag > 0


def test_rotation_generators_relation_and_orders():
    for (p, q, r) in [(2, 3, 7), (2, 3, 9), (2, 3, 11)]:
        gp, gq, gr = rotation_generators(p, q, r)
        prod = mat_mul(mat_mul(gr, gq), gp)
        assert mat_dist(prod, IDENTITY) < 1e-9
        for g, k in ((gp, p), (gq, q), (gr, r)):
            acc = IDENTITY
            for _ in range(k):
                acc = mat_mul(acc, g)
            assert mat_dist(acc, IDENTITY) < 1e-9


def test_generator_traces():
    gp, gq, gr = rotation_generators(2, 3, 7)
    assert abs(abs((gp[0][0] + gp[1][1]).real) - 0.0) < 1e-12
    assert abs(abs((gq[0][0] + gq[1][1]).real) - 1.0) < 1e-12
    assert abs(abs((gr[0][0] + gr[1][1]).real) - 2 * math.cos(math.pi / 7)) < 1e-12


def test_tessellate_depth0_and_1():
    assert tessellate(2, 3, 7, depth=0) == 1
    # depth 1: the 6 words g, g^-1 over three generators, minus identifications;
    # for (2,3,7) all six are distinct from the identity and from each other
    # except gp = gp^-1 (order 2), giving 5 new tiles + base = 6
    assert tessellate(2, 3, 7, depth=1) == 6
    assert tessellate(2, 3, 9, depth=1) == 6


def test_depth1_count_independent_dedup():
    gp, gq, gr = rotation_generators(2, 3, 7)
    cands = [IDENTITY, gp, mat_inv(gp), gq, mat_inv(gq), gr, mat_inv(gr)]
    distinct = []
    for M in cands:
        if not any(mat_dist(M, S) < 1e-9 for S in distinct):
            distinct.append(M)
    assert len(distinct) == tessellate(2, 3, 7, depth=1)


def test_tessellate_growth_regression():
    assert [tessellate(2, 3, 7, depth=d) for d in range(5)] == [1, 6, 15, 31, 55]
    assert tessellate(2, 3, 9, depth=4) == 59


def test_tessellate_depth_guard():
    with pytest.raises(TriangleError):
        tessellate(2, 3, 7, depth=-1)
    with pytest.raises(TriangleError):
        tessellate(2, 3, 7, depth=99)


def test_tessellate_needs_hyperbolic():
    with pytest.raises(TriangleError):
        tessellate(2, 3, 5, depth=2)


def test_svg_output(tmp_path):
    out = tmp_path / "tiling.svg"
    n = tessellate(2, 3, 7, depth=2, svg_path=str(out))
    assert n == 15
    text = out.read_text()
    assert text.startswith("<svg")
    assert text.count("<path") == n
    assert 'viewBox="-1.05 -1.05 2.1 2.1"' in text
    assert "A " in text  # at least one geodesic arc


def test_trace_spectrum_word_counts():
    gens = rotation_generators(2, 3, 7)
    spec = trace_spectrum(list(gens), 2)
    assert len(spec) == 3 + 9
    assert spec == sorted(spec)
