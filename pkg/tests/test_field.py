import random
from fractions import Fraction

import pytest

from daecontrol.field import (
    NEG_INF,
    RatFun,
    RealRoot,
    UniPoly,
    count_roots_between,
    isolate_real_roots,
    merge_singular_points,
    pole_zero_set,
    simplest_between,
    sturm_chain,
)


def P(*coeffs):
    return UniPoly(coeffs)


def rand_poly(rng, max_deg=5, max_c=9):
    deg = rng.randint(0, max_deg)
    return UniPoly([Fraction(rng.randint(-max_c, max_c), rng.randint(1, 4)) for _ in range(deg + 1)])


# --- UniPoly ----------------------------------------------------------------


def test_zero_polynomial_degree_is_ordered_below_all_ints():
    assert UniPoly.zero().degree == NEG_INF
    assert UniPoly.zero().degree < -(10**9)
    assert P(3).degree == 0
    assert P(0, 0, 1).degree == 2


def test_divmod_reconstruction_random():
    rng = random.Random(11)
    for _ in range(300):
        a = rand_poly(rng)
        b = rand_poly(rng)
        if b.is_zero:
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree


def naive_gcd(a, b):
    # independent oracle: plain monic Euclid over Q
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def test_gcd_matches_naive_euclid_oracle():
    rng = random.Random(7)
    for _ in range(200):
        a, b = rand_poly(rng, 6), rand_poly(rng, 6)
        if a.is_zero and b.is_zero:
            continue
        assert UniPoly.gcd(a, b) == naive_gcd(a, b)


def test_gcd_detects_common_factor():
    c = P(-1, 1) * P(2, 1)  # (t-1)(t+2)
    a = c * P(1, 0, 1)
    b = c * P(3, 1)
    assert UniPoly.gcd(a, b) == c.monic()


def test_squarefree_decomposition():
    # (t-1)^2 (t+2)
    p = P(-1, 1) * P(-1, 1) * P(2, 1)
    dec = p.squarefree_decomposition()
    assert dec == [(P(2, 1), 1), (P(-1, 1), 2)]


def test_root_multiplicity():
    p = P(-1, 1) ** 3 * P(5, 1)
    assert p.root_multiplicity(1) == 3
    assert p.root_multiplicity(-5) == 1
    assert p.root_multiplicity(2) == 0


# --- RatFun -----------------------------------------------------------------


def test_ratfun_subtraction_golden():
    # (t^2+1)/(t-1) - 2t/(t-1) = t - 1, derived by cross-multiplication
    # and an independent reduce below
    a = RatFun(P(1, 0, 1), P(-1, 1))
    b = RatFun(P(0, 2), P(-1, 1))
    num = P(1, 0, 1) * P(-1, 1) - P(0, 2) * P(-1, 1)
    den = P(-1, 1) * P(-1, 1)
    g = naive_gcd(num, den)
    expected = RatFun(num.exact_div(g), den.exact_div(g))
    got = a - b
    assert got == expected
    assert got == RatFun(P(-1, 1))


def test_ratfun_canonical_form():
    f = RatFun(P(-1, 0, 1), P(-1, 1))  # (t^2-1)/(t-1) = t+1
    assert f.num == P(1, 1)
    assert f.den == UniPoly.one()
    g = RatFun(P(0, 2), P(0, 0, 4))  # 2t/4t^2 = (1/2)/t
    assert g.den.lc == 1
    assert g == RatFun(P(Fraction(1, 2)), P(0, 1))


def test_ratfun_derivative_quotient_rule_oracle():
    rng = random.Random(3)
    for _ in range(150):
        n, d = rand_poly(rng, 4), rand_poly(rng, 4)
        if d.is_zero:
            continue
        f = RatFun(n, d)
        # oracle: (n'd - nd')/d^2 on the unreduced pair
        oracle = RatFun(n.derivative() * d - n * d.derivative(), d * d)
        assert f.derivative() == oracle


def test_ratfun_field_axioms_random():
    rng = random.Random(5)
    for _ in range(100):
        fs = []
        while len(fs) < 3:
            n, d = rand_poly(rng, 3), rand_poly(rng, 3)
            if not d.is_zero:
                fs.append(RatFun(n, d))
        a, b, c = fs
        assert (a + b) * c == a * c + b * c
        assert a + (b + c) == (a + b) + c
        assert a * (b * c) == (a * b) * c
        if not a.is_zero:
            assert a * a.inverse() == RatFun.one()


def test_ratfun_order_at():
    f = RatFun(P(0, 0, 1), P(-1, 1))  # t^2/(t-1)
    assert f.order_at(0) == 2
    assert f.order_at(1) == -1
    assert f.order_at(2) == 0
    assert f.unit_value_at(2) == Fraction(4)
    assert f.unit_value_at(0) == Fraction(-1)  # t^2/(t-1) ~ -t^2 at 0


# --- Sturm / isolation -------------------------------------------------------


def sign_scan_roots(p, lo, hi, steps=2000):
    # oracle: count sign changes of p on a fine grid (catches simple roots
    # of the square-free part)
    found = 0
    prev = None
    for i in range(steps + 1):
        x = Fraction(lo) + (Fraction(hi) - Fraction(lo)) * i / steps
        v = p.eval(x)
        s = 0 if v == 0 else (1 if v > 0 else -1)
        if s == 0:
            found += 1
            prev = None
            continue
        if prev is not None and s != prev:
            found += 1
        prev = s
    return found


def test_sturm_count_against_sign_scan():
    p = P(0, -2, 0, 1)  # t^3 - 2t: roots -sqrt2, 0, sqrt2
    chain = sturm_chain(p.squarefree_part())
    assert count_roots_between(chain, Fraction(-3), Fraction(3)) == 3
    assert sign_scan_roots(p, -3, 3) == 3
    assert count_roots_between(chain, Fraction(1), Fraction(3)) == 1


def test_isolate_cubic_snaps_rational_root():
    roots = isolate_real_roots(P(0, -2, 0, 1))
    assert len(roots) == 3
    mid = roots[1]
    assert mid.is_rational and mid.lo == 0
    assert not roots[0].is_rational and not roots[2].is_rational
    # disjoint and sorted
    assert roots[0].hi < mid.lo < roots[2].lo
    # sqrt(2) isolated: interval brackets it
    r2 = roots[2]
    assert r2.poly.eval(r2.lo) * r2.poly.eval(r2.hi) < 0


def test_isolate_snaps_non_dyadic_rational():
    p = P(Fraction(-1, 3), 1) * P(-2, 1) * P(7, 1)  # roots 1/3, 2, -7
    roots = isolate_real_roots(p)
    assert [r.lo for r in roots] == [Fraction(-7), Fraction(1, 3), Fraction(2)]
    assert all(r.is_rational for r in roots)


def test_isolate_handles_multiple_roots_via_squarefree_part():
    p = P(-1, 1) ** 4 * P(0, 1) ** 2
    roots = isolate_real_roots(p)
    assert [(r.lo, r.hi) for r in roots] == [(0, 0), (1, 1)]


def test_isolate_count_matches_sign_scan_random():
    rng = random.Random(13)
    for _ in range(40):
        # build polys with known rational roots plus an irreducible factor
        roots = sorted(set(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))))
        p = UniPoly.one()
        for r in roots:
            p = p * UniPoly.linear_root(r)
        got = isolate_real_roots(p)
        assert [g.lo for g in got] == roots
        assert all(g.is_rational for g in got)


def test_refine_and_split():
    roots = isolate_real_roots(P(-2, 0, 1))  # +-sqrt2
    pos = roots[1]
    tight = pos.refine(Fraction(1, 10**12))
    assert tight.width <= Fraction(1, 10**12)
    assert tight.lo < Fraction(141421356237, 10**11) + Fraction(1, 10**6)
    assert pos.compare_to_point(Fraction(1)) == 1
    assert pos.compare_to_point(Fraction(2)) == -1
    assert isolate_real_roots(P(-1, 1))[0].compare_to_point(Fraction(1)) == 0


def test_simplest_between():
    assert simplest_between(Fraction(1, 4), Fraction(1, 2)) == Fraction(1, 3)
    assert simplest_between(Fraction(1, 4), Fraction(3, 10)) == Fraction(2, 7)
    assert simplest_between(Fraction(-1, 2), Fraction(1, 7)) == 0
    assert simplest_between(Fraction(3), Fraction(4)) == Fraction(7, 2)
    assert simplest_between(Fraction(5, 2), Fraction(9, 2)) == 3


# --- singular sets -----------------------------------------------------------


def test_pole_zero_set_golden():
    f = RatFun(UniPoly.one(), P(0, 1))  # 1/t
    pts = list(pole_zero_set(f))
    assert len(pts) == 1
    assert pts[0].kind == "pole" and pts[0].order == 1
    assert pts[0].root.is_rational and pts[0].lo == 0

    g = RatFun(P(0, 0, 1))  # t^2
    pts = list(pole_zero_set(g))
    assert len(pts) == 1
    assert pts[0].kind == "zero" and pts[0].order == 2 and pts[0].lo == 0


def test_pole_zero_set_reduces_first():
    f = RatFun(P(-1, 1), P(-1, 0, 1))  # (t-1)/(t^2-1) = 1/(t+1)
    pts = list(pole_zero_set(f))
    assert len(pts) == 1
    assert pts[0].kind == "pole" and pts[0].lo == -1


def test_merge_same_algebraic_point():
    a = isolate_real_roots(P(0, 1))[0]
    b = isolate_real_roots(P(0, -2, 0, 1))[1]  # the root 0 of t^3-2t
    from daecontrol.field import SingularPoint

    merged = merge_singular_points(
        [SingularPoint(a, 1, "pole"), SingularPoint(b, 2, "zero")]
    )
    assert len(merged) == 1
    pt = merged.points[0]
    assert pt.order == 2 and pt.kind == "pole"


def test_merge_separates_distinct_points():
    from daecontrol.field import SingularPoint

    # sqrt(2) from two certificates and a nearby rational
    r2 = isolate_real_roots(P(-2, 0, 1))[1]
    near = isolate_real_roots(P(Fraction(-141, 100), 1))[0]
    merged = merge_singular_points(
        [SingularPoint(r2, 1, "pole"), SingularPoint(near, 1, "pole")]
    )
    assert len(merged) == 2
    a, b = merged.points
    assert a.hi < b.lo


def test_clear_on_half_open():
    f = RatFun(UniPoly.one(), P(0, 1))
    s = pole_zero_set(f)
    assert s.clear_on_half_open(Fraction(0), Fraction(1))  # (0,1] misses the pole at 0
    assert not s.clear_on_half_open(Fraction(-1), Fraction(0))  # (-1,0] hits it
    assert s.clear_on_half_open(Fraction(1, 2), Fraction(2))
