"""Exact scalar arithmetic over Q: univariate polynomials, rational
functions, Sturm-sequence real root isolation, and singular-point sets.

Representation invariants:

* Scalars are arbitrary-precision rationals in lowest terms (GMP-backed
  ``mpq``; ``fractions.Fraction`` and ``int`` inputs are accepted
  everywhere and coerced).
* ``UniPoly`` stores coefficients low-to-high with no trailing zero.  The
  zero polynomial is the empty tuple and has degree ``NEG_INF`` (ordered
  below every integer).
* ``RatFun`` keeps ``num/den`` with ``den`` monic, ``gcd(num, den) = 1``,
  and ``den = 1`` when ``num = 0``.  Equality is structural and, because the
  form is canonical, coincides with equality as functions.
* Root isolation returns intervals with rational non-root endpoints, each
  certified to contain exactly one real root of its square-free certificate
  polynomial by a Sturm variation count of 1.  Rational roots are snapped to
  degenerate ``[q, q]`` intervals by exact evaluation at simplest-rational
  candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as _np
from gmpy2 import gcd as _igcd
from gmpy2 import mpq, mpz

NEG_INF = float("-inf")
INF = float("inf")

Rational = mpq

SCALAR_TYPES = (int, mpq, Fraction, mpz)

_Q0 = mpq(0)
_Q1 = mpq(1)


def as_fraction(x) -> mpq:
    """Coerce exact rational inputs to mpq; reject floats (exactness)."""
    if isinstance(x, SCALAR_TYPES):
        return mpq(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# univariate polynomials over Q

_GCD_CACHE: dict = {}


class UniPoly:
    """A univariate polynomial over Q, coefficients low-to-high."""

    __slots__ = ("coeffs", "_prim", "_h")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_prim", None)
        object.__setattr__(self, "_h", None)

    # -- constructors

    @classmethod
    def _trim(cls, cs: list) -> "UniPoly":
        """Trusted constructor: coefficients already mpq, strip and wrap."""
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        object.__setattr__(obj, "_prim", None)
        object.__setattr__(obj, "_h", None)
        return obj

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((1,))

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((as_fraction(c),))

    @classmethod
    def t(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def linear_root(cls, b) -> "UniPoly":
        """The monic linear polynomial t - b."""
        return cls((-as_fraction(b), 1))

    # -- basic queries

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> mpq:
        if not self.coeffs:
            return _Q0
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        # sampled hash: O(1) regardless of degree, equality stays exact
        h = self._h
        if h is None:
            cs = self.coeffs
            n = len(cs)
            if n <= 4:
                h = hash(("UniPoly", cs))
            else:
                h = hash(("UniPoly", n, cs[0], cs[1], cs[n // 2], cs[-1]))
            object.__setattr__(self, "_h", h)
        return h

    # -- arithmetic

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._trim(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly._trim([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(())
        if len(a) * len(b) >= 16:
            # integer convolution skips per-term fraction normalization
            ca, ia = self._int_primitive()
            cb, ib = other._int_primitive()
            s = ca * cb
            if len(ia) * len(ib) >= 256:
                return UniPoly._trim([s * v for v in _int_mul_kronecker(ia, ib)])
            out = [0] * (len(ia) + len(ib) - 1)
            for i, va in enumerate(ia):
                if va:
                    for j, vb in enumerate(ib):
                        if vb:
                            out[i + j] += va * vb
            return UniPoly._trim([s * v for v in out])
        out = [_Q0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return UniPoly._trim(out)

    def scale(self, c) -> "UniPoly":
        c = as_fraction(c)
        if not c:
            return UniPoly(())
        return UniPoly._trim([c * x for x in self.coeffs])

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = UniPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        q = [_Q0] * max(0, len(rem) - d)
        inv_lc = 1 / other.lc
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] * inv_lc
            if c:
                q[i - d] = c
                for j, oc in enumerate(other.coeffs):
                    rem[i - d + j] -= c * oc
        return UniPoly._trim(q), UniPoly._trim(rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        if other.is_constant:
            if other.is_zero:
                raise ZeroDivisionError("polynomial division by zero")
            return self.scale(1 / other.lc)
        if len(self.coeffs) >= 8:
            # primitive parts divide exactly over Z (Gauss), so the
            # quotient comes from one integer division plus a rescale
            ca, ia = self._int_primitive()
            cb, ib = other._int_primitive()
            q = _int_divides(ib, ia)
            if q is not None:
                s = ca / cb
                return UniPoly._trim([s * v for v in q])
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    # -- calculus / evaluation

    def derivative(self) -> "UniPoly":
        return UniPoly._trim([i * c for i, c in enumerate(self.coeffs) if i])

    def eval(self, x) -> mpq:
        x = as_fraction(x)
        acc = _Q0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mp(self, x, ctx):
        """Evaluate at an mpmath float under context ``ctx``."""
        acc = ctx.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + ctx.mpf(int(c.numerator)) / ctx.mpf(int(c.denominator))
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero or self.lc == 1:
            return self
        return self.scale(1 / self.lc)

    # -- gcd and square-free machinery

    def _int_primitive(self):
        """Return (content, integer coefficient tuple) with positive lc."""
        hit = self._prim
        if hit is not None:
            return hit
        if self.is_zero:
            out = (_Q0, ())
        else:
            den_lcm = mpz(1)
            for c in self.coeffs:
                den_lcm = den_lcm * c.denominator // _igcd(den_lcm, c.denominator)
            ints = [mpz(c * den_lcm) for c in self.coeffs]
            g = mpz(0)
            for v in ints:
                g = _igcd(g, v)
            sign = 1 if ints[-1] > 0 else -1
            out = (mpq(sign * g, den_lcm), tuple(sign * v // g for v in ints))
        object.__setattr__(self, "_prim", out)
        return out

    @staticmethod
    def gcd(a: "UniPoly", b: "UniPoly") -> "UniPoly":
        """Monic gcd over Q.

        A mod-p gcd image bounds the degree of the answer from above and,
        lifted to the integers, supplies a candidate; a verified common
        divisor meeting the bound is the gcd.  The subresultant PRS covers
        the cases the modular stage cannot certify.
        """
        if a.is_zero:
            return b.monic()
        if b.is_zero:
            return a.monic()
        if a.is_constant or b.is_constant:
            return UniPoly.one()
        if len(a.coeffs) <= 9 and len(b.coeffs) <= 9:
            # direct monic Euclid; cheaper than any certificate at this size
            x, y = a, b
            while not y.is_zero:
                if y.is_constant:
                    return UniPoly.one()
                x, y = y, (x % y)
            return x.monic()
        key = (a, b) if len(a.coeffs) >= len(b.coeffs) else (b, a)
        hit = _GCD_CACHE.get(key)
        if hit is not None:
            return hit
        g = UniPoly._gcd_big(a, b)
        if len(_GCD_CACHE) >= 20000:
            _GCD_CACHE.clear()
        _GCD_CACHE[key] = g
        return g

    @staticmethod
    def _gcd_big(a: "UniPoly", b: "UniPoly") -> "UniPoly":
        _, fa = a._int_primitive()
        _, fb = b._int_primitive()
        if len(fa) < len(fb):
            fa, fb = fb, fa
        g = _int_modular_gcd(fa, fb)
        if g is not None:
            return UniPoly(g).monic()
        return UniPoly(_int_subresultant_gcd(fa, fb)).monic()

    def squarefree_part(self) -> "UniPoly":
        if self.degree <= 0:
            return UniPoly.one() if self.coeffs else UniPoly.zero()
        g = UniPoly.gcd(self, self.derivative())
        return self.exact_div(g).monic()

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (monic square-free factor, multiplicity)."""
        if self.degree <= 0:
            return []
        p = self.monic()
        dp = p.derivative()
        g = UniPoly.gcd(p, dp)
        if g.degree <= 0:
            return [(p, 1)]
        out = []
        w = p.exact_div(g)
        y = dp.exact_div(g)
        z = y - w.derivative()
        i = 1
        while w.degree > 0:
            gi = UniPoly.gcd(w, z)
            if gi.degree > 0:
                out.append((gi.monic(), i))
            w = w.exact_div(gi)
            y = z.exact_div(gi)
            z = y - w.derivative()
            i += 1
        return out

    def root_multiplicity(self, b) -> int:
        """Multiplicity of the rational point b as a root."""
        b = as_fraction(b)
        if self.is_zero:
            raise ValueError("every point is a root of the zero polynomial")
        lin = UniPoly.linear_root(b)
        m = 0
        p = self
        while not p.is_zero and p.eval(b) == 0:
            p = p.exact_div(lin)
            m += 1
        return m

    # -- printing (grammar-compatible: see the shared expression grammar)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                mono = _frac_str(abs(c))
            else:
                tpow = "t" if i == 1 else f"t^{i}"
                mono = tpow if abs(c) == 1 else f"{_frac_str(abs(c))}*{tpow}"
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"+ {mono}" if c > 0 else f"- {mono}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({self})"


def _frac_str(c) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _int_mul_kronecker(ia, ib) -> list:
    """Integer-polynomial product as one big-integer multiplication.

    Coefficients are packed at a stride wide enough that no convolution
    coefficient can reach half the stride, so the balanced base-2^w digits
    of the product recover them exactly, signs included.
    """
    w = (
        max(abs(v) for v in ia).bit_length()
        + max(abs(v) for v in ib).bit_length()
        + min(len(ia), len(ib)).bit_length()
        + 2
    )
    w = ((w + 7) >> 3) << 3  # byte-aligned stride so packing can slice bytes
    bw = w >> 3
    prod = _kron_pack(ia, bw) * _kron_pack(ib, bw)
    n_out = len(ia) + len(ib) - 1
    data = int(prod & ((mpz(1) << (w * n_out)) - 1)).to_bytes(bw * n_out, "little")
    base = 1 << w
    half = base >> 1
    out = []
    carry = 0
    pos = 0
    for _ in range(n_out):
        val = int.from_bytes(data[pos : pos + bw], "little") + carry
        if val >= half:
            out.append(mpz(val - base))
            carry = 1
        else:
            out.append(mpz(val))
            carry = 0
        pos += bw
    return out


def _kron_pack(ints, bw: int):
    """Pack signed coefficients into one integer at a byte-aligned stride.

    Positive and negative parts are laid out as byte strings separately so
    the whole packing is linear in the output size.
    """
    pos = bytearray(len(ints) * bw)
    neg = bytearray(len(ints) * bw)
    at = 0
    for v in ints:
        if v > 0:
            pos[at : at + bw] = int(v).to_bytes(bw, "little")
        elif v:
            neg[at : at + bw] = int(-v).to_bytes(bw, "little")
        at += bw
    return mpz(int.from_bytes(pos, "little")) - mpz(int.from_bytes(neg, "little"))


def _int_divides(d: list, a: list):
    """Exact quotient a/d over Z, or None when the division fails."""
    if len(d) > len(a):
        return None
    qlen = len(a) - len(d) + 1
    if qlen >= 8 and len(d) >= 8:
        return _int_divides_packed(d, a, qlen)
    rem = list(a)
    dd, ld = len(d) - 1, d[-1]
    q = [0] * (len(a) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c % ld:
            return None
        c //= ld
        if c:
            q[i - dd] = c
            for j, dc in enumerate(d):
                rem[i - dd + j] -= c * dc
    return q if all(v == 0 for v in rem) else None


def _int_divides_packed(d: list, a: list, qlen: int):
    """Exact quotient via packed integers.

    Packing at stride w evaluates at 2^w, so exact polynomial division
    forces exact integer division of the packed values.  The stride covers
    the factor coefficient bound for the quotient, hence its balanced
    digits recover the candidate, and one multiplication checks it (which
    also rejects accidental integer divisibility without a polynomial one).
    """
    w = max(abs(v) for v in a).bit_length() + qlen + len(a).bit_length() + 4
    w = max(w, max(abs(v) for v in d).bit_length() + 2)
    w = ((w + 7) >> 3) << 3
    bw = w >> 3
    q, r = divmod(_kron_pack(a, bw), _kron_pack(d, bw))
    if r:
        return None
    data = int(q & ((mpz(1) << (w * qlen)) - 1)).to_bytes(bw * qlen, "little")
    base = 1 << w
    half = base >> 1
    out = []
    carry = 0
    pos = 0
    for _ in range(qlen):
        val = int.from_bytes(data[pos : pos + bw], "little") + carry
        if val >= half:
            out.append(mpz(val - base))
            carry = 1
        else:
            out.append(mpz(val))
            carry = 0
        pos += bw
    if not out[-1]:
        return None
    got = _int_mul_kronecker(d, out)
    return out if all(x == y for x, y in zip(got, a)) else None


# word-size primes for the modular certificates
_CERT_PRIMES = (2147483629, 2147483587, 2147483563)


def _int_modular_gcd(fa: list, fb: list):
    """Gcd of primitive integer polynomials, certified, or None for PRS.

    One mod-p image (p dividing neither leading coefficient) bounds the
    gcd degree from above: a constant image certifies coprimality, and any
    verified common divisor meeting the bound is the gcd.  Candidates come
    from the image itself, lifted to balanced residues at the leading
    coefficient gcd (exact whenever the true coefficients fit the prime),
    and otherwise from an evaluation gcd that adapts to any coefficient
    size.
    """
    dcap = image = prime = None
    for p in _CERT_PRIMES:
        img = _modp_gcd_image(fa, fb, p)
        if img is not None:
            dcap, image, prime = len(img) - 1, img, p
            break
    if dcap is None:
        return None
    if dcap == 0:
        return [mpz(1)]
    if dcap == len(fb) - 1 and _int_divides(fb, fa) is not None:
        # the bound allows the smaller input itself and it does divide
        return list(fb)
    lp = int(_igcd(fa[-1], fb[-1]) % prime)
    half = prime >> 1
    lifted = []
    for v in image:
        r = v * lp % prime
        lifted.append(mpz(r - prime) if r > half else mpz(r))
    cand = _int_make_primitive(lifted)
    if (
        len(cand) - 1 == dcap
        and _int_divides(cand, fa) is not None
        and _int_divides(cand, fb) is not None
    ):
        return cand
    g = _int_heugcd(fa, fb)
    if g is not None and len(g) - 1 == dcap:
        return g
    return None


def _int_heugcd(fa: list, fb: list):
    """Heuristic gcd of primitive integer polynomials (verified, or None).

    Evaluate at a large point z, take the integer gcd, reinterpret it in
    balanced base z, and check by exact trial division.  The result is a
    verified common divisor; the caller certifies maximality against a
    mod-p degree bound.
    """
    bound = 2 * min(max(abs(c) for c in fa), max(abs(c) for c in fb)) + 29
    z = max(bound, 32)
    for _ in range(6):
        va, vb = _int_eval(fa, z), _int_eval(fb, z)
        if va == 0 or vb == 0:
            z = z * 3 + 1
            continue
        h = _igcd(va, vb)
        # balanced base-z digits
        digits = []
        while h:
            r = h % z
            if 2 * r > z:
                r -= z
            digits.append(r)
            h = (h - r) // z
        cand = _int_make_primitive(digits)
        if (
            len(cand) > 1
            and _int_divides(cand, fa) is not None
            and _int_divides(cand, fb) is not None
        ):
            return cand
        z = z * 3 + 1
    return None


def _int_eval(a: list, z) -> int:
    acc = mpz(0)
    for c in reversed(a):
        acc = acc * z + c
    return acc


def _modp_gcd_image(fa, fb, p):
    """Monic gcd image mod p as an int list, or None when p divides a
    leading coefficient (which would let the image degree drop below the
    rational gcd degree and break the bound)."""
    if fa[-1] % p == 0 or fb[-1] % p == 0:
        return None
    if max(len(fa), len(fb)) > 64:
        return _modp_gcd_image_big(fa, fb, p)
    a = [int(c % p) for c in fa]
    b = [int(c % p) for c in fb]
    if len(a) < len(b):
        a, b = b, a
    while True:
        db = len(b) - 1
        if db == 0:
            return [1]
        inv = pow(b[-1], -1, p)
        b = [v * inv % p for v in b]
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c:
                for j in range(db):
                    a[i - db + j] = (a[i - db + j] - c * b[j]) % p
        del a[db:]
        while a and not a[-1]:
            a.pop()
        if not a:
            return b
        a, b = b, a


def _modp_gcd_image_big(fa, fb, p):
    """Vectorized mod-p Euclid for large degrees (same contract as above)."""
    a = _np.array([int(c % p) for c in fa], dtype=_np.int64)
    b = _np.array([int(c % p) for c in fb], dtype=_np.int64)
    if a.size < b.size:
        a, b = b, a
    while True:
        db = b.size - 1
        if db == 0:
            return [1]
        inv = pow(int(b[-1]), -1, p)
        b = (b * inv) % p
        da = a.size - 1
        while da >= db:
            c = int(a[da])
            if c:
                a[da - db : da + 1] = (a[da - db : da + 1] - c * b) % p
            da -= 1
        a = a[:db]
        while a.size and not a[-1]:
            a = a[:-1]
        if not a.size:
            return [int(v) for v in b]
        a, b = b, a


def _int_subresultant_gcd(fa: list, fb: list) -> list:
    """Collins' subresultant PRS gcd of primitive integer polynomials."""
    if len(fa) < len(fb):
        fa, fb = fb, fa
    g, h = 1, 1
    while True:
        delta = len(fa) - len(fb)
        r = _int_prem(fa, fb)
        if not r:
            return _int_make_primitive(fb)
        divisor = g * h**delta
        fa, fb = fb, [c // divisor for c in r]
        g = fa[-1]
        if delta:
            h = g**delta // h ** (delta - 1)
        if len(fb) == 1:
            return [1]


def _int_prem(a: list, b: list) -> list:
    """Proper pseudo-remainder: lb^(deg a - deg b + 1) * a mod b over Z."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    n = len(a) - db  # number of scalings lb^(delta+1)
    while a and len(a) - 1 >= db:
        da = len(a) - 1
        ca = a[-1]
        a = [v * lb for v in a]
        n -= 1
        shift = da - db
        for j, cb in enumerate(b):
            a[shift + j] -= ca * cb
        while a and a[-1] == 0:
            a.pop()
    if n > 0 and a:
        m = lb**n
        a = [v * m for v in a]
    return a


def _int_make_primitive(a: list) -> list:
    if not a:
        return a
    g = mpz(0)
    for v in a:
        g = _igcd(g, v)
    if a[-1] < 0:
        g = -g
    return [v // g for v in a]


# ---------------------------------------------------------------------------
# rational functions

_DERIV_CACHE: dict = {}


class RatFun:
    """A rational function num/den over Q in canonical reduced form."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num, den=None):
        if isinstance(num, SCALAR_TYPES):
            num = UniPoly.constant(num)
        if den is None:
            den = UniPoly.one()
        elif isinstance(den, SCALAR_TYPES):
            den = UniPoly.constant(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = UniPoly.zero(), UniPoly.one()
        elif den.is_constant:
            if den.lc != 1:
                num, den = num.scale(1 / den.lc), UniPoly.one()
        else:
            if not num.is_constant:
                g = UniPoly.gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            if den.lc != 1:
                c = 1 / den.lc
                num, den = num.scale(c), den.scale(c)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_h", None)

    def __setattr__(self, *a):
        raise AttributeError("RatFun is immutable")

    # -- constructors

    @classmethod
    def _raw(cls, num: UniPoly, den: UniPoly) -> "RatFun":
        # trusted path: caller guarantees the pair is already canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        object.__setattr__(obj, "_h", None)
        return obj

    @classmethod
    def constant(cls, c) -> "RatFun":
        return cls(UniPoly.constant(c))

    @classmethod
    def zero(cls) -> "RatFun":
        return cls(UniPoly.zero())

    @classmethod
    def one(cls) -> "RatFun":
        return cls(UniPoly.one())

    @classmethod
    def t(cls) -> "RatFun":
        return cls(UniPoly.t())

    # -- queries

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.coeffs == (_Q1,) and self.den.coeffs == (_Q1,)

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def constant_value(self) -> mpq:
        if not self.is_constant:
            raise ValueError("not a constant")
        return self.num.lc if self.num.coeffs else _Q0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, SCALAR_TYPES):
            other = RatFun.constant(other)
        return (
            isinstance(other, RatFun)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        h = self._h
        if h is None:
            h = hash(("RatFun", hash(self.num), hash(self.den)))
            object.__setattr__(self, "_h", h)
        return h

    # -- arithmetic

    def __add__(self, other: "RatFun") -> "RatFun":
        if isinstance(other, SCALAR_TYPES):
            other = RatFun.constant(other)
        if self.den.is_constant and other.den.is_constant:
            return RatFun(self.num + other.num)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        g = UniPoly.gcd(self.den, other.den)
        if g.degree > 0:
            da = self.den.exact_div(g)
            db = other.den.exact_div(g)
            num = self.num * db + other.num * da
            return RatFun(num, da * other.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __sub__(self, other) -> "RatFun":
        if isinstance(other, SCALAR_TYPES):
            other = RatFun.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFun":
        return (-self) + other

    def __mul__(self, other) -> "RatFun":
        if isinstance(other, SCALAR_TYPES):
            return RatFun(self.num.scale(other), self.den)
        if self.is_zero or other.is_zero:
            return RatFun.zero()
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        # cross-cancel; afterwards the four parts are pairwise coprime
        if not d2.is_constant and not n1.is_constant:
            g = UniPoly.gcd(n1, d2)
            if g.degree > 0:
                n1, d2 = n1.exact_div(g), d2.exact_div(g)
        if not d1.is_constant and not n2.is_constant:
            g = UniPoly.gcd(n2, d1)
            if g.degree > 0:
                n2, d1 = n2.exact_div(g), d1.exact_div(g)
        return RatFun._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other) -> "RatFun":
        if isinstance(other, SCALAR_TYPES):
            other = RatFun.constant(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.num**n, self.den**n)

    def derivative(self) -> "RatFun":
        n, d = self.num, self.den
        if n.is_zero:
            return RatFun.zero()
        if d.is_constant:
            return RatFun(n.derivative())
        key = self
        hit = _DERIV_CACHE.get(key)
        if hit is not None:
            return hit
        # quotient rule with the exact cancellation gcd(d, d'): each
        # irreducible factor of order e in d has order e + 1 in the
        # derivative's denominator, so the result below is canonical
        dp = d.derivative()
        g = UniPoly.gcd(d, dp)
        num = n.derivative() * d - n * dp
        if g.degree > 0:
            num = num.exact_div(g)
            den = d * d.exact_div(g)
        else:
            den = d * d
        out = RatFun._raw(num, den)
        if len(_DERIV_CACHE) >= 20000:
            _DERIV_CACHE.clear()
        _DERIV_CACHE[key] = out
        return out

    def eval(self, x) -> mpq:
        x = as_fraction(x)
        dv = self.den.eval(x)
        if dv == 0:
            raise ZeroDivisionError(f"pole at t = {x}")
        return self.num.eval(x) / dv

    def eval_mp(self, x, ctx):
        return self.num.eval_mp(x, ctx) / self.den.eval_mp(x, ctx)

    def order_at(self, b) -> int:
        """Valuation at t = b: multiplicity in num minus multiplicity in den.

        Positive means a zero, negative a pole, 0 a finite nonzero value.
        Raises on the zero function (its order is +infinity everywhere).
        """
        if self.is_zero:
            raise ValueError("order of the zero function is undefined")
        b = as_fraction(b)
        if self.den.eval(b) == 0:
            return -self.den.root_multiplicity(b)
        return self.num.root_multiplicity(b) if self.num.eval(b) == 0 else 0

    def unit_value_at(self, b) -> mpq:
        """Value of self / (t-b)^order_at(b) at b (finite and nonzero)."""
        b = as_fraction(b)
        v = self.order_at(b)
        lin = UniPoly.linear_root(b)
        num, den = self.num, self.den
        if v > 0:
            num = num.exact_div(lin**v)
        elif v < 0:
            den = den.exact_div(lin ** (-v))
        return num.eval(b) / den.eval(b)

    def __str__(self) -> str:
        if self.den == UniPoly.one():
            return str(self.num)
        num_s = _paren_poly(self.num)
        den_s = _paren_poly(self.den, force=True)
        if self.num == UniPoly.one():
            return f"{den_s}^-1"
        return f"{num_s}*{den_s}^-1"

    def __repr__(self) -> str:
        return f"RatFun({self})"


def _paren_poly(p: UniPoly, force: bool = False) -> str:
    s = str(p)
    atomic = s.replace("-", "").replace(" ", "")
    simple = atomic.isalnum() and not s.startswith("-")
    if force or not simple or ("+" in s or " - " in s or "*" in s):
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation


def sturm_chain(p: UniPoly) -> list:
    """Sturm chain of a square-free polynomial (monic-normalized steps)."""
    chain = [p, p.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        if r.is_zero:
            break
        # scaling by a positive constant preserves signs
        chain.append(r.scale(1 / abs(r.lc)))
    return [q for q in chain if not q.is_zero]


def _variations(chain: Sequence[UniPoly], x) -> int:
    signs = []
    for q in chain:
        v = q.eval(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_between(chain: Sequence[UniPoly], a, b) -> int:
    """Number of distinct real roots in the open interval (a, b).

    Endpoints must not be roots of chain[0].
    """
    return _variations(chain, a) - _variations(chain, b)


def simplest_between(a, b) -> mpq:
    """Smallest-denominator rational strictly between a and b (a < b)."""
    if not a < b:
        raise ValueError("empty interval")
    if a < 0 < b:
        return _Q0
    if b <= 0:
        return -simplest_between(-b, -a)
    # 0 <= a < b
    n = a.numerator // a.denominator
    if n + 1 < b:
        return mpq(n + 1)
    fa, fb = a - n, b - n
    if fa == 0:
        # simplest in (0, fb) is 1/k for the smallest k with 1/k < fb
        inv = 1 / fb
        k = inv.numerator // inv.denominator + 1
        return n + mpq(1, k)
    return n + 1 / simplest_between(1 / fb, 1 / fa)


_SNAP_WIDTH = mpq(1, 2**50)


@dataclass(frozen=True)
class RealRoot:
    """An isolated real root of ``poly`` (monic, square-free).

    ``lo == hi`` exactly when the root is the rational number ``lo``.
    Otherwise ``poly`` has Sturm count 1 on (lo, hi) and lo, hi are not
    roots.
    """

    lo: mpq
    hi: mpq
    poly: UniPoly

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> mpq:
        return self.hi - self.lo

    def refine(self, width) -> "RealRoot":
        """Shrink the isolating interval to at most ``width``."""
        if self.is_rational:
            return self
        chain = sturm_chain(self.poly)
        lo, hi = self.lo, self.hi
        vlo = _variations(chain, lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            if self.poly.eval(mid) == 0:
                return RealRoot(mid, mid, self.poly)
            vm = _variations(chain, mid)
            if vlo - vm == 1:
                hi = mid
            else:
                lo, vlo = mid, vm
        return RealRoot(lo, hi, self.poly)

    def split_at(self, x) -> "RealRoot":
        """Refine until the interval is strictly on one side of x (or pinned
        to x when the root equals x)."""
        x = as_fraction(x)
        if self.is_rational or x <= self.lo or x >= self.hi:
            return self
        if self.poly.eval(x) == 0:
            return RealRoot(x, x, self.poly)
        chain = sturm_chain(self.poly)
        if count_roots_between(chain, self.lo, x) == 1:
            return RealRoot(self.lo, x, self.poly)
        return RealRoot(x, self.hi, self.poly)

    def compare_to_point(self, x) -> int:
        """-1, 0, +1: the root is below, equal to, or above the rational x."""
        r = self.split_at(x)
        if r.is_rational and r.lo == x:
            return 0
        return -1 if r.hi <= x else 1


def isolate_real_roots(p: UniPoly) -> list:
    """Isolate the distinct real roots of p as a sorted list of RealRoot."""
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    sf = p.squarefree_part()
    if sf.degree <= 0:
        return []
    bound = _Q1 + max(abs(c) for c in sf.coeffs[:-1]) / abs(sf.lc) if sf.degree > 0 else _Q1
    lo = -bound - 1
    hi = bound + 1
    out: list[RealRoot] = []
    _isolate_rec(sf, sturm_chain(sf), lo, hi, out)
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def _isolate_rec(sf, chain, lo, hi, out, vlo=None, vhi=None):
    if vlo is None:
        vlo = _variations(chain, lo)
    if vhi is None:
        vhi = _variations(chain, hi)
    n = vlo - vhi
    if n == 0:
        return
    if n == 1:
        out.append(_tighten(sf, chain, lo, hi, vlo))
        return
    mid = (lo + hi) / 2
    if sf.eval(mid) == 0:
        out.append(RealRoot(mid, mid, sf))
        # choose a guard width so [mid-w, mid+w] contains only this root
        w = (hi - lo) / 4
        while True:
            a, b = mid - w, mid + w
            if sf.eval(a) != 0 and sf.eval(b) != 0 and count_roots_between(chain, a, b) == 1:
                break
            w /= 2
        _isolate_rec(sf, chain, lo, a, out, vlo, None)
        _isolate_rec(sf, chain, b, hi, out, None, vhi)
        return
    vm = _variations(chain, mid)
    _isolate_rec(sf, chain, lo, mid, out, vlo, vm)
    _isolate_rec(sf, chain, mid, hi, out, vm, vhi)


def _tighten(sf, chain, lo, hi, vlo):
    """Shrink a count-1 interval, snapping rational roots exactly.

    Alternates simplest-rational candidates (which hit any rational root of
    moderate denominator exactly) with dyadic bisection (which guarantees
    geometric shrinkage for irrational roots).
    """
    use_simplest = True
    while hi - lo > _SNAP_WIDTH:
        cand = simplest_between(lo, hi) if use_simplest else (lo + hi) / 2
        use_simplest = not use_simplest
        if sf.eval(cand) == 0:
            return RealRoot(cand, cand, sf)
        vc = _variations(chain, cand)
        if vlo - vc == 1:
            hi = cand
        else:
            lo, vlo = cand, vc
    return RealRoot(lo, hi, sf)


# ---------------------------------------------------------------------------
# singular points of rational functions / systems


KIND_POLE = "pole"
KIND_ZERO = "zero"
KIND_LC_ZERO = "zero-of-leading-coefficient"


@dataclass(frozen=True)
class SingularPoint:
    """One real singular point: an isolated algebraic number with metadata."""

    root: RealRoot
    order: int
    kind: str

    @property
    def lo(self) -> mpq:
        return self.root.lo

    @property
    def hi(self) -> mpq:
        return self.root.hi

    def describe(self) -> str:
        if self.root.is_rational:
            where = f"[{self.lo}, {self.lo}]"
        else:
            where = f"[{self.lo}, {self.hi}]"
        return f"{self.kind} at {where} order {self.order}"


@dataclass(frozen=True)
class SingularSet:
    """A finite set of singular points with disjoint isolating intervals."""

    points: tuple

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def is_empty(self) -> bool:
        return not self.points

    def clear_on_half_open(self, u, v) -> bool:
        """True when no singular point lies in the half-open interval (u, v]."""
        for pt in self.points:
            root = pt.root.split_at(u).split_at(v)
            if root.is_rational:
                if u < root.lo <= v:
                    return False
            else:
                # interval now lies strictly on one side of both u and v
                if root.lo >= u and root.hi <= v:
                    return False
                if root.lo > u and root.lo < v:
                    return False
        return True

    def describe(self) -> str:
        if not self.points:
            return "(empty)"
        return "; ".join(pt.describe() for pt in self.points)


def merge_singular_points(entries: Iterable[SingularPoint]) -> SingularSet:
    """Merge entries into a set with pairwise disjoint isolating intervals.

    Entries from different certificate polynomials may describe the same
    algebraic number; those are detected through a gcd certificate and
    merged (max order wins, pole beats zero).  Distinct roots get refined
    until their intervals separate.
    """
    pts = sorted(entries, key=lambda p: (p.lo, p.hi))
    out: list[SingularPoint] = []
    for pt in pts:
        placed = False
        for i, prev in enumerate(out):
            a, b = prev, pt
            if a.hi < b.lo or b.hi < a.lo:
                continue
            if _same_root(a.root, b.root):
                kind = a.kind if a.kind == KIND_POLE or b.kind != KIND_POLE else b.kind
                root = a.root if a.root.width <= b.root.width else b.root
                out[i] = SingularPoint(root, max(a.order, b.order), kind)
                placed = True
                break
            # distinct roots: refine both until disjoint
            ra, rb = a.root, b.root
            while not (ra.hi < rb.lo or rb.hi < ra.lo):
                ra = ra.refine(ra.width / 4) if not ra.is_rational else ra
                rb = rb.refine(rb.width / 4) if not rb.is_rational else rb
                if ra.is_rational and rb.is_rational and ra.lo == rb.lo:
                    raise AssertionError("identical rational roots escaped the gcd test")
                if ra.is_rational and rb.is_rational:
                    break
            out[i] = SingularPoint(ra, a.order, a.kind)
            pt = SingularPoint(rb, b.order, b.kind)
        if not placed:
            out.append(pt)
    out.sort(key=lambda p: (p.lo, p.hi))
    return SingularSet(tuple(out))


def _same_root(a: RealRoot, b: RealRoot) -> bool:
    if a.is_rational and b.is_rational:
        return a.lo == b.lo
    if a.is_rational:
        return b.split_at(a.lo).is_rational and b.split_at(a.lo).lo == a.lo
    if b.is_rational:
        return a.split_at(b.lo).is_rational and a.split_at(b.lo).lo == b.lo
    g = UniPoly.gcd(a.poly, b.poly)
    if g.degree <= 0:
        return False
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo >= hi:
        return False
    chain = sturm_chain(g)
    if g.eval(lo) == 0 or g.eval(hi) == 0:
        # perturb inside the overlap; the overlap endpoints are not roots of
        # both certificates simultaneously, so a small shrink fixes it
        span = hi - lo
        lo2, hi2 = lo + span / 8, hi - span / 8
        return count_roots_between(chain, lo2, hi2) >= 1
    return count_roots_between(chain, lo, hi) >= 1


def pole_zero_set(f: RatFun) -> SingularSet:
    """Real poles and zeros of a rational function with multiplicities."""
    entries = []
    for kind, poly in ((KIND_POLE, f.den), (KIND_ZERO, f.num)):
        if poly.degree is NEG_INF or poly.degree <= 0:
            continue
        for factor, mult in poly.squarefree_decomposition():
            if factor.degree <= 0:
                continue
            for root in isolate_real_roots(factor):
                entries.append(SingularPoint(root, mult, kind))
    return merge_singular_points(entries)
