"""Skew polynomials in D over the rational functions Q(t), where D acts as
d/dt and multiplication obeys the commutation rule D*f = f*D + f'.

An ``OrePoly`` is kept in left-coefficient normal form: sum of a_i(t) * D^i
with ``RatFun`` coefficients low-to-high and no trailing zero.  Degrees obey
deg(p*q) = deg p + deg q (the coefficient field has no zero divisors and the
leading coefficient of a product is the product of leading coefficients);
deg 0 = NEG_INF.  The units are exactly the nonzero elements of degree 0.
"""

from __future__ import annotations

import math
from typing import Iterable

from .field import NEG_INF, SCALAR_TYPES, RatFun, UniPoly


class OrePoly:
    """A differential operator with rational-function coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, SCALAR_TYPES):
                c = RatFun.constant(c)
            elif isinstance(c, UniPoly):
                c = RatFun(c)
            cs.append(c)
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("OrePoly is immutable")

    # -- constructors

    @classmethod
    def zero(cls) -> "OrePoly":
        return cls(())

    @classmethod
    def one(cls) -> "OrePoly":
        return cls((RatFun.one(),))

    @classmethod
    def d(cls, power: int = 1) -> "OrePoly":
        return cls([RatFun.zero()] * power + [RatFun.one()])

    @classmethod
    def from_ratfun(cls, f: RatFun) -> "OrePoly":
        return cls((f,))

    @classmethod
    def monomial(cls, coeff: RatFun, power: int) -> "OrePoly":
        return cls([RatFun.zero()] * power + [coeff])

    # -- queries

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    @property
    def lc(self) -> RatFun:
        if not self.coeffs:
            return RatFun.zero()
        return self.coeffs[-1]

    def coeff(self, i: int) -> RatFun:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RatFun.zero()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, OrePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("OrePoly", self.coeffs))

    # -- additive structure

    def __add__(self, other: "OrePoly") -> "OrePoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return OrePoly(out)

    def __neg__(self) -> "OrePoly":
        return OrePoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "OrePoly") -> "OrePoly":
        return self + (-other)

    def scale_left(self, c: RatFun) -> "OrePoly":
        """Left multiplication by a function: c * sum a_i D^i = sum (c a_i) D^i."""
        if isinstance(c, SCALAR_TYPES):
            c = RatFun.constant(c)
        return OrePoly(tuple(c * a for a in self.coeffs))

    # -- multiplication: D^i * f = sum_k C(i,k) f^(k) D^(i-k)

    def __mul__(self, other: "OrePoly") -> "OrePoly":
        if isinstance(other, (RatFun, *SCALAR_TYPES)):
            return self * OrePoly.from_ratfun(
                other if isinstance(other, RatFun) else RatFun.constant(other)
            )
        if self.is_zero or other.is_zero:
            return OrePoly.zero()
        parts = _ff_product_parts(self, other)
        if parts is not None:
            nums, den = parts
            return OrePoly([RatFun(n, den) for n in nums])
        max_i = len(self.coeffs) - 1
        # derivative towers of the right factor's coefficients
        towers = []
        for b in other.coeffs:
            tower = [b]
            for _ in range(max_i):
                tower.append(tower[-1].derivative())
            towers.append(tower)
        out = [RatFun.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, tower in enumerate(towers):
                if other.coeffs[j].is_zero:
                    continue
                for k in range(i + 1):
                    term = a * tower[k]
                    if not term.is_zero:
                        out[i + j - k] = out[i + j - k] + term * math.comb(i, k)
        return OrePoly(out)

    def __rmul__(self, other) -> "OrePoly":
        if isinstance(other, (RatFun, *SCALAR_TYPES)):
            c = other if isinstance(other, RatFun) else RatFun.constant(other)
            return self.scale_left(c)
        return NotImplemented

    def monic(self) -> "OrePoly":
        if self.is_zero or self.lc == RatFun.one():
            return self
        return self.scale_left(self.lc.inverse())

    # -- printing (grammar-compatible)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            parts.append(_term_str(c, i, first=not parts))
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"OrePoly({self})"


def _term_str(c: RatFun, i: int, first: bool) -> str:
    neg = False
    if c.is_constant and c.constant_value() < 0:
        neg = True
        c = -c
    dpow = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
    if i == 0:
        body = _coeff_str(c)
    elif c == RatFun.one():
        body = dpow
    else:
        body = f"{_coeff_str(c)}*{dpow}"
    if first:
        return f"-{body}" if neg else body
    return f"- {body}" if neg else f"+ {body}"


def _coeff_str(c: RatFun) -> str:
    s = str(c)
    bare = s.replace("/", "").replace("^", "").replace("-", "")
    if bare.isalnum() and not s.startswith("-") and "+" not in s and " " not in s:
        return s
    return f"({s})"


# ---------------------------------------------------------------------------
# fraction-free product assembly
#
# Products and linear combinations dominate the matrix algorithms, and the
# naive route normalizes every intermediate term.  Splitting each operator
# into numerators over one common denominator defers all gcd work to a single
# normalization per output coefficient.

_FF_DEGREE_CAP = 800


def _common_den(op: OrePoly):
    """Numerators of op's coefficients over their common (monic) denominator."""
    d = UniPoly.one()
    for c in op.coeffs:
        if not c.den.is_constant:
            g = UniPoly.gcd(d, c.den)
            d = d * c.den.exact_div(g)
    if d.is_constant:
        return [c.num for c in op.coeffs], d
    return [c.num * d.exact_div(c.den) for c in op.coeffs], d


def _ff_product_parts(a: OrePoly, b: OrePoly):
    """Numerators and common denominator of a*b, or None when the shared
    denominator would grow past the point where it helps.

    With a = sum (A_i/da) D^i and b = sum (B_j/db) D^j, the k-th derivative
    of B_j/db is W_{j,k}/db^(k+1) where W_{j,0} = B_j and
    W_{j,k+1} = W'_{j,k}*db - (k+1)*W_{j,k}*db', so every coefficient of the
    product sits over da*db^(K+1) with K = deg a.
    """
    A, da = _common_den(a)
    B, db = _common_den(b)
    K = len(A) - 1
    ddb = db.degree
    if da.degree + (K + 1) * ddb > _FF_DEGREE_CAP:
        return None
    rows = [B]
    if ddb == 0:
        for _ in range(K):
            rows.append([w.derivative() for w in rows[-1]])
    else:
        dbp = db.derivative()
        for k in range(K):
            rows.append(
                [
                    w.derivative() * db - w.scale(k + 1) * dbp if not w.is_zero else w
                    for w in rows[-1]
                ]
            )
    n_out = len(A) + len(B) - 1
    zero = UniPoly.zero()
    levels = []
    for k in range(K + 1):
        row = rows[k]
        acc = [zero] * n_out
        for i in range(k, K + 1):
            na = A[i]
            if na.is_zero:
                continue
            c = math.comb(i, k)
            base = i - k
            for j, w in enumerate(row):
                if w.is_zero:
                    continue
                t = na * w
                if c != 1:
                    t = t.scale(c)
                acc[base + j] = acc[base + j] + t
        levels.append(acc)
    if ddb == 0:
        out = levels[0]
        for lv in levels[1:]:
            out = [x + y for x, y in zip(out, lv)]
        return out, da
    # Horner over db: sum_k levels[k] * db^(K-k)
    out = levels[0]
    for lv in levels[1:]:
        out = [x * db + y for x, y in zip(out, lv)]
    den = da
    for _ in range(K + 1):
        den = den * db
    return out, den


def _ff_combine(parts):
    """Add ``(nums, den)`` parts over one common denominator."""
    nums, den = parts[0]
    nums = list(nums)
    for n2, d2 in parts[1:]:
        if den == d2:
            s1, s2 = nums, n2
        else:
            g = UniPoly.gcd(den, d2)
            c1 = d2.exact_div(g)
            c2 = den.exact_div(g)
            s1 = nums if c1.is_constant else [v * c1 for v in nums]
            s2 = n2 if c2.is_constant else [v * c2 for v in n2]
            den = den * c1
        if len(s1) < len(s2):
            s1, s2 = s2, s1
        out = list(s1)
        for i, v in enumerate(s2):
            out[i] = out[i] + v
        nums = out
    return nums, den


def skew_sum_products(pairs):
    """Exact ``sum(p*q for p, q in pairs)`` with deferred normalization.

    Every product and the final sum are assembled over common denominators,
    so each output coefficient is normalized exactly once.  Pairs whose
    shared denominator would swell are multiplied the plain way instead.
    """
    parts = []
    rest = OrePoly.zero()
    for p, q in pairs:
        if p.is_zero or q.is_zero:
            continue
        pp = _ff_product_parts(p, q)
        if pp is None:
            rest = rest + p * q
        else:
            parts.append(pp)
    if not parts:
        return rest
    nums, den = _ff_combine(parts)
    out = OrePoly([RatFun(n, den) for n in nums])
    return out + rest if not rest.is_zero else out


# ---------------------------------------------------------------------------
# Euclidean structure


def right_divrem(a: OrePoly, b: OrePoly):
    """Quotient and remainder with a = q*b + r and deg r < deg b."""
    if b.is_zero:
        raise ZeroDivisionError("right division by the zero operator")
    q = OrePoly.zero()
    r = a
    while not r.is_zero and r.degree >= b.degree:
        d = r.degree - b.degree
        c = r.lc * b.lc.inverse()
        mono = OrePoly.monomial(c, d)
        q = q + mono
        r = r - mono * b
    return q, r


def left_divrem(a: OrePoly, b: OrePoly):
    """Quotient and remainder with a = b*q + r and deg r < deg b."""
    if b.is_zero:
        raise ZeroDivisionError("left division by the zero operator")
    q = OrePoly.zero()
    r = a
    while not r.is_zero and r.degree >= b.degree:
        d = r.degree - b.degree
        # leading coefficient of b * (c D^d) is lc(b) * c
        c = b.lc.inverse() * r.lc
        mono = OrePoly.monomial(c, d)
        q = q + mono
        r = r - b * mono
    return q, r


def right_divides(b: OrePoly, a: OrePoly) -> bool:
    """True when a = q*b for some q (b is a right factor of a)."""
    if b.is_zero:
        return a.is_zero
    return right_divrem(a, b)[1].is_zero


def _euclid_chain(a: OrePoly, b: OrePoly):
    """Extended right-Euclid: rows (r, u, v) with r = u*a + v*b throughout."""
    rows = [
        (a, OrePoly.one(), OrePoly.zero()),
        (b, OrePoly.zero(), OrePoly.one()),
    ]
    while not rows[-1][0].is_zero:
        r0, u0, v0 = rows[-2]
        r1, u1, v1 = rows[-1]
        q, r2 = right_divrem(r0, r1)
        u2, v2 = u0 - q * u1, v0 - q * v1
        if not r2.is_zero:
            # monic-normalize each remainder; a left unit scale keeps the
            # Bezout rows consistent and tames coefficient growth
            c = r2.lc.inverse()
            r2, u2, v2 = r2.scale_left(c), u2.scale_left(c), v2.scale_left(c)
        rows.append((r2, u2, v2))
    return rows


def gcrd_extended(a: OrePoly, b: OrePoly):
    """Monic greatest common right divisor g with g = u*a + v*b."""
    if a.is_zero and b.is_zero:
        return OrePoly.zero(), OrePoly.zero(), OrePoly.zero()
    if a.is_zero:
        c = b.lc.inverse()
        return b.monic(), OrePoly.zero(), OrePoly.from_ratfun(c)
    if b.is_zero:
        c = a.lc.inverse()
        return a.monic(), OrePoly.from_ratfun(c), OrePoly.zero()
    rows = _euclid_chain(a, b)
    g, u, v = rows[-2]
    c = g.lc.inverse()
    return g.scale_left(c), u.scale_left(c), v.scale_left(c)


def gcrd(a: OrePoly, b: OrePoly) -> OrePoly:
    return gcrd_extended(a, b)[0]


def lclm(a: OrePoly, b: OrePoly) -> OrePoly:
    """Monic least common left multiple; deg = deg a + deg b - deg gcrd."""
    if a.is_zero or b.is_zero:
        return OrePoly.zero()
    rows = _euclid_chain(a, b)
    _, u, _ = rows[-1]
    m = u * a
    return m.scale_left(m.lc.inverse())


def ore_apply(p: OrePoly, e):
    """Apply the operator to an expression: sum a_i(t) * (d/dt)^i e.

    The result is an expression (see the expression module); when e embeds a
    rational function the result stays rational and simplification is exact.
    """
    from . import expressions as ex

    if p.is_zero:
        return ex.ratfun_expr(RatFun.zero())
    terms = []
    de = e
    for i, c in enumerate(p.coeffs):
        if i > 0:
            de = ex.diff(de)
        if not c.is_zero:
            terms.append(ex.mul(ex.ratfun_expr(c), de))
    return ex.add(*terms)
