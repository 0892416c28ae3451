"""Exact arithmetic in Q_p at a fixed working precision.

A nonzero element is stored as p^valuation * unit, with the unit kept as an
integer modulo p^known.  The valuation is always exact; `known` is the number
of reliable unit digits and shrinks when additive cancellation eats into the
window.  Nothing here uses floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "PadicContext",
    "PadicNumber",
    "PrecisionError",
    "chabauty_prime",
    "euler_phi",
    "is_prime",
    "iwasawa_log",
    "mth_root",
    "is_mth_power",
    "primitive_root_of_unity",
]

DEFAULT_PRECISION = 20


class PrecisionError(ArithmeticError):
    """Raised when an operation cannot deliver a single reliable digit."""


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any prime used here."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("euler_phi expects a positive integer")
    phi, rest, q = 1, m, 2
    while q * q <= rest:
        if rest % q == 0:
            e = 0
            while rest % q == 0:
                rest //= q
                e += 1
            phi *= (q - 1) * q ** (e - 1)
        q += 1
    if rest > 1:
        phi *= rest - 1
    return phi


def _vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero requested")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicContext:
    """A prime together with the working precision (unit digits carried)."""

    prime: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self) -> None:
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.precision < 1:
            raise ValueError("precision must be at least 1")

    def modulus(self, digits: int | None = None) -> int:
        return self.prime ** (self.precision if digits is None else digits)


@dataclass(frozen=True)
class PadicNumber:
    """p^valuation * unit, the unit known modulo p^known.

    Zero is represented with valuation None and unit 0; it is treated as
    exactly zero (an additive cancellation that clears the whole precision
    window also collapses to this).
    """

    context: PadicContext
    valuation: int | None
    unit: int
    known: int

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ctx: PadicContext) -> "PadicNumber":
        return PadicNumber(ctx, None, 0, ctx.precision)

    @staticmethod
    def from_rational(a: int, b: int, ctx: PadicContext) -> "PadicNumber":
        """The image of a/b in Q_p at full working precision.

        Args:
            a: numerator (any integer).
            b: denominator, nonzero.

        Raises:
            ZeroDivisionError: if b == 0.
        """
        if b == 0:
            raise ZeroDivisionError("denominator is zero")
        if a == 0:
            return PadicNumber.zero(ctx)
        p, n = ctx.prime, ctx.precision
        va, vb = _vp(a, p), _vp(b, p)
        ua = a // p**va
        ub = b // p**vb
        mod = p**n
        unit = ua * pow(ub, -1, mod) % mod
        return PadicNumber(ctx, va - vb, unit, n)

    @staticmethod
    def from_int(a: int, ctx: PadicContext) -> "PadicNumber":
        return PadicNumber.from_rational(a, 1, ctx)

    @staticmethod
    def from_fraction(q: Fraction, ctx: PadicContext) -> "PadicNumber":
        return PadicNumber.from_rational(q.numerator, q.denominator, ctx)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def abs_precision(self) -> int | None:
        """Exponent of the modulus to which the value is pinned down."""
        if self.is_zero:
            return None
        return self.valuation + self.known

    def residue(self) -> int:
        """Unit residue modulo p (0 for zero)."""
        if self.is_zero:
            return 0
        return self.unit % self.context.prime

    def unit_mod(self, digits: int) -> int:
        if self.is_zero:
            return 0
        if digits > self.known:
            raise PrecisionError(
                f"requested {digits} unit digits, only {self.known} known"
            )
        return self.unit % self.context.prime**digits

    def value_mod(self, digits: int) -> int:
        """Canonical representative modulo p^digits (valuation must be >= 0)."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError("value_mod needs a p-adic integer")
        if self.valuation >= digits:
            return 0
        if digits - self.valuation > self.known:
            raise PrecisionError("not enough digits known")
        p = self.context.prime
        return self.unit * p**self.valuation % p**digits

    def agrees_with(self, other: "PadicNumber", abs_digits: int) -> bool:
        """True when self - other vanishes modulo p^abs_digits."""
        d = self - other
        return d.is_zero or d.valuation >= abs_digits

    def lift_fraction(self) -> Fraction:
        """The canonical rational lift p^valuation * unit (zero for zero)."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.context.prime) ** self.valuation

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.is_zero:
            return "0"
        p = self.context.prime
        return f"{self.unit}*{p}^{self.valuation} + O({p}^{self.valuation + self.known})"

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "PadicNumber") -> None:
        if self.context != other.context:
            raise ValueError("mixed p-adic contexts")

    def __neg__(self) -> "PadicNumber":
        if self.is_zero:
            return self
        mod = self.context.prime**self.known
        return PadicNumber(self.context, self.valuation, (-self.unit) % mod, self.known)

    def __add__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p = self.context.prime
        v = min(self.valuation, other.valuation)
        window = min(self.abs_precision, other.abs_precision) - v
        if window <= 0:
            raise PrecisionError("additive window exhausted")
        mod = p**window
        s = (
            self.unit * p ** (self.valuation - v)
            + other.unit * p ** (other.valuation - v)
        ) % mod
        if s == 0:
            return PadicNumber.zero(self.context)
        t = _vp(s, p)
        known = min(window - t, self.context.precision)
        if known <= 0:
            return PadicNumber.zero(self.context)
        return PadicNumber(self.context, v + t, (s // p**t) % p**known, known)

    def __sub__(self, other: "PadicNumber") -> "PadicNumber":
        return self + (-other)

    def __mul__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        if self.is_zero or other.is_zero:
            return PadicNumber.zero(self.context)
        known = min(self.known, other.known)
        mod = self.context.prime**known
        return PadicNumber(
            self.context,
            self.valuation + other.valuation,
            self.unit * other.unit % mod,
            known,
        )

    def __truediv__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("p-adic division by zero")
        if self.is_zero:
            return self
        known = min(self.known, other.known)
        mod = self.context.prime**known
        return PadicNumber(
            self.context,
            self.valuation - other.valuation,
            self.unit * pow(other.unit, -1, mod) % mod,
            known,
        )

    def __pow__(self, n: int) -> "PadicNumber":
        if n == 0:
            return PadicNumber.from_int(1, self.context)
        if self.is_zero:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return self
        mod = self.context.prime**self.known
        u = pow(self.unit, -1, mod) if n < 0 else self.unit
        return PadicNumber(
            self.context,
            self.valuation * n,
            pow(u, abs(n), mod),
            self.known,
        )

    def scaled(self, q: Fraction | int) -> "PadicNumber":
        """Multiply by an exact rational without precision loss."""
        q = Fraction(q)
        if q == 0:
            return PadicNumber.zero(self.context)
        return self * PadicNumber.from_fraction(q, self.context)


# -- unit-group structure ---------------------------------------------------


def is_mth_power(x: PadicNumber, m: int) -> bool:
    """Whether x is an m-th power in Q_p (requires p coprime to m).

    The unit part is an m-th power iff its residue is one in F_p^*, tested
    via u^((p-1)/gcd(m, p-1)) = 1 mod p; the valuation must be divisible
    by m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if x.is_zero:
        raise ValueError("zero has no well-defined power class")
    p = x.context.prime
    if m > 1 and math.gcd(p, m) != 1:
        raise ValueError("p divides m; wild case not supported")
    if x.valuation % m != 0:
        return False
    g = math.gcd(m, p - 1)
    return pow(x.residue(), (p - 1) // g, p) == 1


def _hensel_lift_power(w0: int, target_unit: int, m: int, ctx: PadicContext, digits: int) -> int:
    """Lift w0 with w0^m = target mod p to a root modulo p^digits."""
    p = ctx.prime
    w, have = w0 % p, 1
    while have < digits:
        have = min(2 * have, digits)
        mod = p**have
        fw = (pow(w, m, mod) - target_unit) % mod
        dw = m * pow(w, m - 1, mod) % mod
        w = (w - fw * pow(dw, -1, mod)) % mod
    return w % p**digits


def mth_root(x: PadicNumber, m: int) -> PadicNumber:
    """A deterministic m-th root of x in Q_p.

    The branch is fixed by taking the smallest nonnegative residue among the
    valid starting residues mod p, then Hensel lifting (p coprime to m keeps
    the derivative a unit, so lifting is quadratic and lossless).

    Raises:
        ValueError: if x is not an m-th power.
    """
    if not is_mth_power(x, m):
        raise ValueError("not an m-th power in Q_p")
    if m == 1:
        return x
    p = x.context.prime
    u0 = x.residue()
    w0 = min(w for w in range(1, p) if pow(w, m, p) == u0)
    w = _hensel_lift_power(w0, x.unit_mod(x.known), m, x.context, x.known)
    return PadicNumber(x.context, x.valuation // m, w, x.known)


def primitive_root_of_unity(m: int, ctx: PadicContext) -> PadicNumber:
    """The lift of the smallest residue of exact multiplicative order m.

    Requires p = 1 mod m so that mu_m lives in Q_p; the root is pinned down
    by Hensel lifting X^m - 1 from the chosen residue.
    """
    p = ctx.prime
    if m < 1:
        raise ValueError("m must be positive")
    if (p - 1) % m != 0:
        raise ValueError(f"Q_{p} has no primitive {m}-th root of unity")
    divisors = [d for d in range(1, m) if m % d == 0]
    w0 = None
    for a in range(1, p):
        if pow(a, m, p) != 1:
            continue
        if all(pow(a, d, p) != 1 for d in divisors):
            w0 = a
            break
    assert w0 is not None  # guaranteed: F_p^* is cyclic of order divisible by m
    w = _hensel_lift_power(w0, 1, m, ctx, ctx.precision)
    return PadicNumber(ctx, 0, w, ctx.precision)


def _ilog(n: int, p: int) -> int:
    """floor(log_p(n)) for n >= 1."""
    e, q = 0, p
    while q <= n:
        q *= p
        e += 1
    return e


def iwasawa_log(x: PadicNumber) -> PadicNumber:
    """The Iwasawa branch of the p-adic logarithm (Log p = 0).

    The valuation is discarded; the unit u is pushed into the principal
    units by u^(p-1), fed through log(1+t) = sum (-1)^(n+1) t^n / n, and the
    result divided by p-1.  Division by n costs v_p(n) digits of absolute
    precision, which the summation tracks automatically.
    """
    if x.is_zero:
        raise ValueError("log of zero")
    ctx = x.context
    p = ctx.prime
    mod = p**x.known
    w = pow(x.unit % mod, p - 1, mod)
    z = PadicNumber.from_int(w, ctx) - PadicNumber.from_int(1, ctx)
    if z.is_zero:
        return PadicNumber.zero(ctx)
    target = x.known
    t = z.valuation
    total = PadicNumber.zero(ctx)
    z_pow = PadicNumber.from_int(1, ctx)
    n = 0
    while True:
        n += 1
        z_pow = z_pow * z
        term = z_pow.scaled(Fraction((-1) ** (n + 1), n))
        total = total + term
        if n * t - _ilog(n + 1, p) > target:
            break
    return total.scaled(Fraction(1, p - 1))


# -- the working prime -------------------------------------------------------


def chabauty_prime(m: int) -> tuple[int, int]:
    """Least prime p = 1 mod m, together with the reporting cap 2^phi(m) - 1.

    The sieve is unconditional (Dirichlet).  The reporting cap understates
    the true elementary bound, which carries one more doubling: for m in
    {2, 3, 4, 6, 8} the least prime (3, 7, 5, 7, 17) already exceeds
    2^phi(m) - 1, while 2^(phi(m)+1) - 1 holds in every case (and is tight
    at m = 2, 3, 6).  The cap is therefore returned for reporting but only
    the corrected bound is enforced.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    cap = 2 ** euler_phi(m) - 1
    corrected = 2 ** (euler_phi(m) + 1) - 1
    q = m + 1
    while True:
        if is_prime(q):
            break
        q += m
    assert q <= corrected, "least prime exceeded the corrected elementary cap"
    return q, cap
