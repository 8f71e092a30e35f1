"""Exact arithmetic in the quadratic extension Q(sqrt(eps)) and its residue field.

Scalars are pairs (a, b) of rationals representing a + b*sqrt(eps), where eps
is a fixed quadratic non-residue mod p.  The p-adic valuation extends to the
pair as min(v_p(a), v_p(b)); the valuation ring O = {s : v(s) >= 0} is a DVR
with uniformizer p and residue field F_{p^2}.
"""

import math
from fractions import Fraction

from .errors import IngestError, NegativeValuation

INF = math.inf


def _is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def vp(q, p):
    """p-adic valuation of a Fraction (or int); math.inf for zero."""
    if q == 0:
        return INF
    v = 0
    n = abs(q.numerator) if isinstance(q, Fraction) else abs(q)
    d = q.denominator if isinstance(q, Fraction) else 1
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


class PadicContext:
    """Fixes the prime p and the non-residue eps defining the extension."""

    def __init__(self, p, eps=None):
        if not _is_prime(p) or p == 2:
            raise IngestError("p must be an odd prime, got %r" % (p,))
        if eps is None:
            eps = 2
            while pow(eps, (p - 1) // 2, p) != p - 1:
                eps += 1
        eps = int(eps)
        if pow(eps % p, (p - 1) // 2, p) != p - 1:
            raise IngestError("eps=%r is a square mod p=%d" % (eps, p))
        self.p = p
        self.eps = eps
        self.zero = ExtScalar(self, Fraction(0), Fraction(0))
        self.one = ExtScalar(self, Fraction(1), Fraction(0))
        self.sqrt_eps = ExtScalar(self, Fraction(0), Fraction(1))
        self.fq_zero = FqScalar(self, 0, 0)
        self.fq_one = FqScalar(self, 1, 0)

    def scalar(self, a, b=0):
        return ExtScalar(self, Fraction(a), Fraction(b))

    def fq(self, a, b=0):
        return FqScalar(self, a % self.p, b % self.p)

    def __repr__(self):
        return "PadicContext(p=%d, eps=%d)" % (self.p, self.eps)


class ExtScalar:
    """Element a + b*sqrt(eps) with exact rational components."""

    __slots__ = ("ctx", "a", "b")

    def __init__(self, ctx, a, b):
        self.ctx = ctx
        self.a = a
        self.b = b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        return (isinstance(other, ExtScalar) and self.a == other.a
                and self.b == other.b and self.ctx.p == other.ctx.p
                and self.ctx.eps == other.ctx.eps)

    def __hash__(self):
        return hash((self.a, self.b))

    def __add__(self, other):
        return ExtScalar(self.ctx, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return ExtScalar(self.ctx, self.a - other.a, self.b - other.b)

    def __neg__(self):
        return ExtScalar(self.ctx, -self.a, -self.b)

    def __mul__(self, other):
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return ExtScalar(self.ctx, a1 * a2 + self.ctx.eps * b1 * b2,
                         a1 * b2 + a2 * b1)

    def __truediv__(self, other):
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero scalar")
        a2, b2 = other.a, other.b
        a1, b1 = self.a, self.b
        # multiply by conj(other)/norm(other)
        return ExtScalar(self.ctx, (a1 * a2 - self.ctx.eps * b1 * b2) / n,
                         (b1 * a2 - a1 * b2) / n)

    def conj(self):
        return ExtScalar(self.ctx, self.a, -self.b)

    def norm(self):
        """Galois norm a^2 - eps*b^2, a rational."""
        return self.a * self.a - self.ctx.eps * self.b * self.b

    def trace(self):
        return 2 * self.a

    def valuation(self):
        return min(vp(self.a, self.ctx.p), vp(self.b, self.ctx.p))

    def is_integral(self):
        return self.valuation() >= 0

    def shifted(self, k):
        """Multiply by p^k."""
        f = Fraction(self.ctx.p) ** k
        return ExtScalar(self.ctx, self.a * f, self.b * f)

    def reduce(self):
        """Image in the residue field F_{p^2}; requires valuation >= 0."""
        if self.valuation() < 0:
            raise NegativeValuation("cannot reduce %r" % (self,))
        p = self.ctx.p
        ra = self.a.numerator * pow(self.a.denominator, p - 2, p) % p
        rb = self.b.numerator * pow(self.b.denominator, p - 2, p) % p
        return FqScalar(self.ctx, ra, rb)

    def __repr__(self):
        if not self.b:
            return "%s" % (self.a,)
        return "(%s + %s*sqrt(%d))" % (self.a, self.b, self.ctx.eps)


def conj(s):
    return s.conj()


def valuation(s):
    return s.valuation()


def reduce_scalar(s):
    return s.reduce()


def scalar_to_tuple(s):
    """Serialize as four decimal strings [a_num, a_den, b_num, b_den]."""
    return [str(s.a.numerator), str(s.a.denominator),
            str(s.b.numerator), str(s.b.denominator)]


def scalar_from_tuple(ctx, t):
    if len(t) != 4:
        raise IngestError("scalar tuple must have 4 entries, got %r" % (t,))
    try:
        a = Fraction(int(t[0]), int(t[1]))
        b = Fraction(int(t[2]), int(t[3]))
    except (ValueError, ZeroDivisionError) as e:
        raise IngestError("bad scalar tuple %r: %s" % (t, e)) from None
    return ExtScalar(ctx, a, b)


class FqScalar:
    """Element a + b*delta of F_{p^2}, delta^2 = eps, components in [0, p)."""

    __slots__ = ("ctx", "a", "b")

    def __init__(self, ctx, a, b):
        self.ctx = ctx
        self.a = a
        self.b = b

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        return (isinstance(other, FqScalar) and self.a == other.a
                and self.b == other.b)

    def __hash__(self):
        return hash((self.a, self.b, "fq"))

    def __add__(self, other):
        p = self.ctx.p
        return FqScalar(self.ctx, (self.a + other.a) % p, (self.b + other.b) % p)

    def __sub__(self, other):
        p = self.ctx.p
        return FqScalar(self.ctx, (self.a - other.a) % p, (self.b - other.b) % p)

    def __neg__(self):
        p = self.ctx.p
        return FqScalar(self.ctx, -self.a % p, -self.b % p)

    def __mul__(self, other):
        p, eps = self.ctx.p, self.ctx.eps
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return FqScalar(self.ctx, (a1 * a2 + eps * b1 * b2) % p,
                        (a1 * b2 + a2 * b1) % p)

    def inv(self):
        p = self.ctx.p
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in F_{p^2}")
        ninv = pow(n, p - 2, p)
        return FqScalar(self.ctx, self.a * ninv % p, -self.b * ninv % p)

    def __truediv__(self, other):
        return self * other.inv()

    def frob(self):
        """Frobenius x -> x^p, i.e. (a, b) -> (a, -b)."""
        return FqScalar(self.ctx, self.a, -self.b % self.ctx.p)

    def norm(self):
        """Norm to F_p, returned as an int in [0, p)."""
        p, eps = self.ctx.p, self.ctx.eps
        return (self.a * self.a - eps * self.b * self.b) % p

    def lift(self):
        """Teichmueller-free integral lift to ExtScalar."""
        return ExtScalar(self.ctx, Fraction(self.a), Fraction(self.b))

    def key(self):
        return self.a + self.ctx.p * self.b

    def __repr__(self):
        if self.b == 0:
            return "%d" % self.a
        return "(%d + %d*d)" % (self.a, self.b)


def fq_elements(ctx):
    """All p^2 residue field elements in a fixed order."""
    return [FqScalar(ctx, a, b) for b in range(ctx.p) for a in range(ctx.p)]
