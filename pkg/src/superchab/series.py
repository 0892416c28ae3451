"""Finite-window Laurent series over Q_p on p-adic discs and annuli.

A series is a dict of PadicNumber coefficients supported in an exponent
window [lo, hi].  Outside the window a side is either exactly zero (an
"entire" side, as for polynomials) or unknown-but-bounded, recorded as a
linear lower bound on coefficient valuations.  The annulus 0 < v(z) < beta
is the standard domain; a disc is the same with nonnegative exponents only.

The window never silently swallows known-nonzero mass: shifting or growing
past the hard cap raises instead of truncating.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .padic import PadicContext, PadicNumber, PrecisionError, _ilog

__all__ = [
    "AnnulusSpec",
    "LaurentSeries",
    "NewtonPolygon",
    "TailBound",
    "ZeroCount",
    "bc_integral",
    "branch_root_series",
    "combine",
    "count_zeros_annulus",
    "formal_antiderivative",
    "mu_factor",
    "newton_polygon",
    "rolle_zero_bound",
]

MAX_WINDOW = 4096
DEFAULT_ORDER = 64


@dataclass(frozen=True)
class AnnulusSpec:
    """Domain marker: open annulus 0 < v(z) < inner_valuation, or open disc."""

    inner_valuation: Fraction | None
    is_disc: bool

    def __post_init__(self) -> None:
        if self.is_disc:
            if self.inner_valuation is not None:
                raise ValueError("disc domain carries no inner radius")
        else:
            if self.inner_valuation is None or self.inner_valuation <= 0:
                raise ValueError("annulus needs a positive inner valuation")

    @staticmethod
    def disc() -> "AnnulusSpec":
        return AnnulusSpec(None, True)

    @staticmethod
    def annulus(beta: Fraction | int) -> "AnnulusSpec":
        return AnnulusSpec(Fraction(beta), False)

    def contains_valuation(self, t: Fraction) -> bool:
        if self.is_disc:
            return t > 0
        return 0 < t < self.inner_valuation


@dataclass(frozen=True)
class TailBound:
    """Valuation floor for unknown coefficients beyond a window edge.

    At distance d >= 1 past the edge the coefficient valuation is at least
    offset + slope * d.
    """

    slope: Fraction
    offset: Fraction = Fraction(0)

    def at(self, d: int) -> Fraction:
        return self.offset + self.slope * d


def _merge_tails(a: TailBound | None, b: TailBound | None) -> TailBound | None:
    if a is None:
        return b
    if b is None:
        return a
    return TailBound(min(a.slope, b.slope), min(a.offset, b.offset))


class LaurentSeries:
    """Immutable by convention; operations return fresh instances."""

    def __init__(
        self,
        ctx: PadicContext,
        coefficients: dict[int, PadicNumber],
        domain: AnnulusSpec,
        lo: int,
        hi: int,
        tail_below: TailBound | None = None,
        tail_above: TailBound | None = None,
    ):
        if lo > hi:
            raise ValueError("empty window")
        if hi - lo > MAX_WINDOW:
            raise ValueError("window growth exceeds the hard cap")
        if domain.is_disc and lo < 0:
            raise ValueError("disc series cannot have negative exponents")
        coeffs = {}
        for n, c in coefficients.items():
            if c.context != ctx:
                raise ValueError("coefficient context mismatch")
            if c.is_zero:
                continue
            if not (lo <= n <= hi):
                raise ValueError(f"coefficient exponent {n} outside window [{lo},{hi}]")
            coeffs[n] = c
        self.context = ctx
        self.coefficients = coeffs
        self.domain = domain
        self.lo = lo
        self.hi = hi
        self.tail_below = None if (domain.is_disc and lo == 0) else tail_below
        self.tail_above = tail_above

    # -- construction --------------------------------------------------------

    @staticmethod
    def from_dict(
        data: dict[int, object],
        ctx: PadicContext,
        domain: AnnulusSpec | None = None,
        lo: int | None = None,
        hi: int | None = None,
    ) -> "LaurentSeries":
        """Exact Laurent polynomial from int/Fraction/PadicNumber values."""
        coeffs: dict[int, PadicNumber] = {}
        for n, v in data.items():
            c = v if isinstance(v, PadicNumber) else PadicNumber.from_fraction(Fraction(v), ctx)
            coeffs[n] = c
        exps = [n for n, c in coeffs.items() if not c.is_zero]
        w_lo = min(exps, default=0)
        w_hi = max(exps, default=0)
        if domain is None:
            domain = AnnulusSpec.disc() if w_lo >= 0 else AnnulusSpec.annulus(1)
        return LaurentSeries(
            ctx,
            coeffs,
            domain,
            min(w_lo, 0 if domain.is_disc else w_lo) if lo is None else lo,
            w_hi if hi is None else hi,
        )

    @staticmethod
    def zero(ctx: PadicContext, domain: AnnulusSpec) -> "LaurentSeries":
        return LaurentSeries(ctx, {}, domain, 0, 0)

    @staticmethod
    def one(ctx: PadicContext, domain: AnnulusSpec) -> "LaurentSeries":
        return LaurentSeries(ctx, {0: PadicNumber.from_int(1, ctx)}, domain, 0, 0)

    # -- inspection ----------------------------------------------------------

    @property
    def truncation_order(self) -> int:
        return max(abs(self.lo), abs(self.hi))

    @property
    def entire(self) -> bool:
        return self.tail_below is None and self.tail_above is None

    @property
    def is_zero(self) -> bool:
        return not self.coefficients and self.entire

    def coefficient(self, n: int) -> PadicNumber:
        return self.coefficients.get(n, PadicNumber.zero(self.context))

    def support(self) -> list[int]:
        return sorted(self.coefficients)

    def __repr__(self) -> str:  # pragma: no cover
        terms = ", ".join(f"{n}: {c!r}" for n, c in sorted(self.coefficients.items()))
        return f"LaurentSeries([{self.lo},{self.hi}] {{{terms}}})"

    def agrees_with(self, other: "LaurentSeries", abs_digits: int) -> bool:
        """Coefficientwise agreement modulo p^abs_digits on the joint window."""
        for n in range(max(self.lo, other.lo), min(self.hi, other.hi) + 1):
            if not self.coefficient(n).agrees_with(other.coefficient(n), abs_digits):
                return False
        return True

    # -- ring operations -----------------------------------------------------

    def _join_domain(self, other: "LaurentSeries") -> AnnulusSpec:
        if self.entire and not other.entire:
            return other.domain
        if other.entire and not self.entire:
            return self.domain
        if self.domain != other.domain:
            raise ValueError("domain mismatch between Laurent series")
        return self.domain

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(
            self.context,
            {n: -c for n, c in self.coefficients.items()},
            self.domain,
            self.lo,
            self.hi,
            self.tail_below,
            self.tail_above,
        )

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        domain = self._join_domain(other)
        lo_known = max(
            self.lo if self.tail_below is not None else -MAX_WINDOW,
            other.lo if other.tail_below is not None else -MAX_WINDOW,
        )
        hi_known = min(
            self.hi if self.tail_above is not None else MAX_WINDOW,
            other.hi if other.tail_above is not None else MAX_WINDOW,
        )
        lo = max(min(self.lo, other.lo), lo_known)
        hi = min(max(self.hi, other.hi), hi_known)
        if lo > hi:
            raise PrecisionError("windows do not overlap")
        coeffs: dict[int, PadicNumber] = {}
        for n in set(self.coefficients) | set(other.coefficients):
            if lo <= n <= hi:
                coeffs[n] = self.coefficient(n) + other.coefficient(n)
        below = _merge_tails(self.tail_below, other.tail_below)
        above = _merge_tails(self.tail_above, other.tail_above)
        # Stored mass of one operand dropped past the shared window folds
        # into the tail bound as a constant floor.
        for s in (self, other):
            dropped_lo = [c.valuation for n, c in s.coefficients.items() if n < lo]
            dropped_hi = [c.valuation for n, c in s.coefficients.items() if n > hi]
            if dropped_lo:
                below = _merge_tails(below, TailBound(Fraction(0), Fraction(min(dropped_lo))))
            if dropped_hi:
                above = _merge_tails(above, TailBound(Fraction(0), Fraction(min(dropped_hi))))
        if domain.is_disc and lo < 0:
            lo = 0
        return LaurentSeries(self.context, coeffs, domain, lo, hi, below, above)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scaled(self, c: PadicNumber | Fraction | int) -> "LaurentSeries":
        if not isinstance(c, PadicNumber):
            c = PadicNumber.from_fraction(Fraction(c), self.context)
        if c.is_zero:
            return LaurentSeries.zero(self.context, self.domain)
        shift_val = Fraction(c.valuation)
        bump = lambda t: None if t is None else TailBound(t.slope, t.offset + shift_val)
        return LaurentSeries(
            self.context,
            {n: coef * c for n, coef in self.coefficients.items()},
            self.domain,
            self.lo,
            self.hi,
            bump(self.tail_below),
            bump(self.tail_above),
        )

    def shifted(self, k: int) -> "LaurentSeries":
        """Multiply by z^k (the window shifts with the coefficients)."""
        domain = self.domain
        if domain.is_disc and self.lo + k < 0:
            raise ValueError("shift would move known mass below a disc window")
        return LaurentSeries(
            self.context,
            {n + k: c for n, c in self.coefficients.items()},
            domain,
            self.lo + k,
            self.hi + k,
            self.tail_below,
            self.tail_above,
        )

    def _min_stored_valuation(self) -> Fraction:
        vals = [c.valuation for c in self.coefficients.values()]
        return Fraction(min(vals)) if vals else Fraction(0)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        domain = self._join_domain(other)
        lo = self.lo + other.lo
        hi = self.hi + other.hi
        acc: dict[int, PadicNumber] = {}
        for i, a in self.coefficients.items():
            for j, b in other.coefficients.items():
                n = i + j
                prod = a * b
                acc[n] = acc[n] + prod if n in acc else prod
        # Knowledge boundaries: an entire side of one factor extends the other
        # factor's window by its extreme stored exponent; a truncated side pins
        # the result at the sum of the truncated edges.
        if self.tail_above is None and other.tail_above is not None:
            supp = self.support()
            hi = other.hi + (min(supp) if supp else 0)
        elif other.tail_above is None and self.tail_above is not None:
            supp = other.support()
            hi = self.hi + (min(supp) if supp else 0)
        if self.tail_below is None and other.tail_below is not None:
            supp = self.support()
            lo = other.lo + (max(supp) if supp else 0)
        elif other.tail_below is None and self.tail_below is not None:
            supp = other.support()
            lo = self.lo + (max(supp) if supp else 0)
        lo = max(lo, -MAX_WINDOW)
        hi = min(hi, MAX_WINDOW)
        if lo > hi:
            raise PrecisionError("product window collapsed")
        coeffs = {n: c for n, c in acc.items() if lo <= n <= hi}
        below = above = None
        if not (self.tail_below is None and other.tail_below is None):
            slope = min(
                t.slope for t in (self.tail_below, other.tail_below) if t is not None
            )
            offs = []
            for s, t in ((self, other.tail_below), (other, self.tail_below)):
                if t is not None:
                    offs.append(t.at(1) + s._min_stored_valuation())
            below = TailBound(slope, min(offs))
        if not (self.tail_above is None and other.tail_above is None):
            slope = min(
                t.slope for t in (self.tail_above, other.tail_above) if t is not None
            )
            offs = []
            for s, t in ((self, other.tail_above), (other, self.tail_above)):
                if t is not None:
                    offs.append(t.at(1) + s._min_stored_valuation())
            above = TailBound(slope, min(offs))
        return LaurentSeries(self.context, coeffs, domain, lo, hi, below, above)

    def __pow__(self, m: int) -> "LaurentSeries":
        if m < 0:
            raise ValueError("negative series powers go through invert")
        result = LaurentSeries.one(self.context, self.domain)
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    # -- composition and inversion -------------------------------------------

    def compose_monomial(
        self, c: PadicNumber, k: int, domain: AnnulusSpec | None = None
    ) -> "LaurentSeries":
        """Substitute z -> c * w^k (k > 0), remapping exponents exactly."""
        if k <= 0:
            raise ValueError("monomial substitution needs a positive exponent")
        if c.is_zero:
            raise ValueError("monomial substitution needs a nonzero scale")
        coeffs = {n * k: coef * c**n for n, coef in self.coefficients.items()}
        scale = lambda t: None if t is None else TailBound(
            Fraction(t.slope, k) if t.slope else Fraction(0),
            t.offset + min(Fraction(0), Fraction(c.valuation)),
        )
        new_domain = domain if domain is not None else self.domain
        return LaurentSeries(
            self.context,
            coeffs,
            new_domain,
            self.lo * k,
            self.hi * k,
            scale(self.tail_below),
            scale(self.tail_above),
        )

    def compose(self, inner: "LaurentSeries") -> "LaurentSeries":
        """Substitute an entire series with strictly positive lowest exponent.

        Horner evaluation.  The inner series must be an exact polynomial
        vanishing at the disc center, so every power raises the minimum
        exponent and the substitution is exact up to the outer truncation.
        """
        if self.lo < 0:
            raise ValueError("composition target must be a power series")
        if not inner.entire:
            raise ValueError("inner series must be entire")
        if min(inner.support(), default=1) < 1 or not inner.domain.is_disc:
            raise ValueError("inner series must vanish at the disc center")
        result = LaurentSeries.zero(self.context, inner.domain)
        for n in range(self.hi, -1, -1):
            result = result * inner
            coef = self.coefficient(n)
            if not coef.is_zero:
                result = result + LaurentSeries(
                    self.context, {0: coef}, inner.domain, 0, 0
                )
        if self.tail_above is not None:
            in_lo = min(inner.support(), default=1)
            cut = (self.hi + 1) * in_lo - 1
            slope = Fraction(self.tail_above.slope, in_lo)
            off = self.tail_above.at(1) + (self.hi + 1) * min(
                Fraction(0), inner._min_stored_valuation()
            )
            result = result.window_clipped(result.lo, cut)
            result = LaurentSeries(
                self.context,
                result.coefficients,
                result.domain,
                result.lo,
                result.hi,
                result.tail_below,
                _merge_tails(result.tail_above, TailBound(slope, off)),
            )
        return result

    def invert(self) -> "LaurentSeries":
        """Reciprocal via a geometric series, verified a posteriori.

        Requires a dominant monomial: a unique stored exponent of minimal
        valuation whose removal leaves only terms that vanish on the domain
        (positive exponents of nonnegative valuation, negative exponents
        with per-step decay).  Raises if the residual check fails.
        """
        if not self.coefficients:
            raise ZeroDivisionError("inverting the zero series")
        ctx = self.context
        n_prec = ctx.precision
        min_val = min(c.valuation for c in self.coefficients.values())
        leads = [n for n, c in self.coefficients.items() if c.valuation == min_val]
        e = min(leads)
        lead = self.coefficients[e]
        if self.domain.is_disc and e != 0:
            raise ValueError("series vanishes at the disc center")
        beta = Fraction(0) if self.domain.is_disc else self.domain.inner_valuation
        eps = {}
        decay = None
        for n, c in self.coefficients.items():
            if n == e:
                rest = c / lead - PadicNumber.from_int(1, ctx)
                if not rest.is_zero:
                    eps[0] = rest
                continue
            t = c / lead
            rel = n - e
            if rel < 0:
                # the term must still vanish at the inner edge of the annulus
                step = Fraction(t.valuation, -rel)
                if step < beta or step <= 0:
                    raise ValueError("series has zeros inside the annulus")
                decay = step if decay is None else min(decay, step)
            elif t.valuation < 0:
                raise ValueError("series has zeros inside the annulus")
            eps[rel] = t
        span = self.hi - self.lo
        iters = span + 4
        if decay is not None:
            iters += (n_prec + 4) * max(1, int(1 / decay) + 1)
        iters = min(iters, MAX_WINDOW)
        eps_series = LaurentSeries(
            ctx, eps, self.domain, self.lo - e, self.hi - e,
            self.tail_below, self.tail_above,
        )
        geom = LaurentSeries.one(ctx, self.domain)
        power = LaurentSeries.one(ctx, self.domain)
        sign = -1
        for _ in range(iters):
            power = (power * eps_series).window_clipped(self.lo - e, self.hi - e)
            if not power.coefficients:
                break
            geom = geom + (power if sign > 0 else -power)
            sign = -sign
            if all(c.valuation >= n_prec for c in power.coefficients.values()):
                break
        inv = geom.scaled(PadicNumber.from_int(1, ctx) / lead).shifted(-e)
        check = (inv * self).window_clipped(
            max(inv.lo + self.lo, -span), min(inv.hi + self.hi, span)
        )
        one = LaurentSeries.one(ctx, self.domain)
        resid = check - one
        floor = n_prec if decay is None else max(2, n_prec - int(1 / decay) - 1)
        for n, c in resid.coefficients.items():
            margin = floor if decay is None else min(
                floor, int((span - abs(n)) * decay)
            )
            if margin > 0 and c.valuation < min(margin, floor):
                raise ValueError("series is not invertible on its domain")
        return inv

    def window_clipped(self, lo: int, hi: int) -> "LaurentSeries":
        """Restrict to a subwindow, folding clipped mass into tail floors."""
        lo = max(lo, self.lo) if self.tail_below is not None else lo
        hi = min(hi, self.hi) if self.tail_above is not None else hi
        lo = max(lo, -MAX_WINDOW)
        hi = min(hi, MAX_WINDOW)
        below, above = self.tail_below, self.tail_above
        dropped_lo = [c.valuation for n, c in self.coefficients.items() if n < lo]
        dropped_hi = [c.valuation for n, c in self.coefficients.items() if n > hi]
        if dropped_lo:
            below = _merge_tails(below, TailBound(Fraction(0), Fraction(min(dropped_lo))))
        if dropped_hi:
            above = _merge_tails(above, TailBound(Fraction(0), Fraction(min(dropped_hi))))
        coeffs = {n: c for n, c in self.coefficients.items() if lo <= n <= hi}
        return LaurentSeries(self.context, coeffs, self.domain, lo, hi, below, above)

    # -- evaluation ----------------------------------------------------------

    def eval_at(self, z: PadicNumber) -> PadicNumber:
        """Evaluate at a point whose valuation lies strictly inside the domain.

        Tail contributions are folded into the attained precision of the
        result; an evaluation the tails would dominate raises.
        """
        if z.is_zero:
            raise ValueError("evaluation at the puncture")
        t = Fraction(z.valuation)
        if not self.domain.contains_valuation(t):
            raise ValueError("evaluation point outside the domain of convergence")
        total = PadicNumber.zero(self.context)
        for n, c in self.coefficients.items():
            total = total + c * z**n
        caps: list[Fraction] = []
        if self.tail_above is not None:
            caps.append(self.tail_above.at(1) + (self.hi + 1) * t)
        if self.tail_below is not None:
            if self.tail_below.slope <= t:
                raise PrecisionError("tail does not converge at this point")
            # increasing in the distance once slope > t, so d = 1 is extremal
            caps.append(self.tail_below.at(1) + (self.lo - 1) * t)
        if not caps:
            return total
        cap_int = int(min(caps))
        if total.is_zero:
            return total
        if cap_int <= total.valuation:
            raise PrecisionError("evaluation drowned in tail uncertainty")
        known = min(total.known, cap_int - total.valuation)
        return PadicNumber(self.context, total.valuation, total.unit_mod(known), known)


# -- Newton polygons ----------------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (exponent, valuation) with its slope runs."""

    vertices: tuple[tuple[int, Fraction], ...]
    slopes: tuple[tuple[Fraction, int], ...]


def newton_polygon(s: LaurentSeries) -> NewtonPolygon:
    pts = sorted((n, Fraction(c.valuation)) for n, c in s.coefficients.items())
    if not pts:
        raise ValueError("Newton polygon of the zero series")
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep the hull lower-convex: drop the middle point when it lies
            # on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes: list[tuple[Fraction, int]] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(hull), tuple(slopes))


@dataclass(frozen=True)
class ZeroCount:
    """Zero count on an open annulus/disc with its confidence grade."""

    kind: str  # "exact" | "certified" | "indeterminate"
    count: int


def count_zeros_annulus(s: LaurentSeries, dom: AnnulusSpec) -> ZeroCount:
    """Zeros (with multiplicity, over the algebraic closure) of valuation
    strictly inside the domain: slope -L segments of length l contribute l
    zeros of valuation L.
    """
    if not s.coefficients:
        raise ValueError("zero counting needs a nonzero series")
    poly = newton_polygon(s)
    count = 0
    for slope, length in poly.slopes:
        lam = -slope
        if lam <= 0:
            continue
        if dom.is_disc or lam < dom.inner_valuation:
            count += length
    if s.entire:
        return ZeroCount("exact", count)
    certified = True
    hull = poly.vertices
    h_min = min(v for _, v in hull)
    if s.tail_above is not None:
        # safe when the hull reaches its floor at its right end and unknown
        # upper coefficients cannot dip below that floor
        right_ok = hull[-1][1] == h_min and s.tail_above.at(1) >= h_min
        certified = certified and right_ok
    if s.tail_below is not None:
        beta = Fraction(0) if dom.is_disc else dom.inner_valuation
        t = s.tail_below
        n1, h1 = hull[0]
        steep = max((lam for lam, _ in ((-sl, ln) for sl, ln in poly.slopes)), default=Fraction(0))
        need = max(beta, steep)
        ok = t.slope >= need and t.at(1) >= h1 - need * (n1 - (s.lo - 1))
        certified = certified and ok
    return ZeroCount("certified" if certified else "indeterminate", count)


# -- integration --------------------------------------------------------------


def formal_antiderivative(s: LaurentSeries) -> tuple[LaurentSeries, PadicNumber]:
    """For omega = s dT/T, return (F, a0) with dF = (s - a0) dT/T.

    F = sum over n != 0 of (a_n / n) T^n; the residue a0 multiplies Log
    downstream.  Division by n costs v_p(n) digits of absolute precision,
    tracked by the coefficients themselves.
    """
    ctx = s.context
    coeffs: dict[int, PadicNumber] = {}
    for n, c in s.coefficients.items():
        if n == 0:
            continue
        coeffs[n] = c.scaled(Fraction(1, n))
    p = ctx.prime
    loss = Fraction(_ilog(max(abs(s.lo), abs(s.hi), 1) + MAX_WINDOW // 2, p) + 1)
    relax = lambda t: None if t is None else TailBound(t.slope, t.offset - loss)
    F = LaurentSeries(
        ctx, coeffs, s.domain, s.lo, s.hi, relax(s.tail_below), relax(s.tail_above)
    )
    return F, s.coefficient(0)


def bc_integral(
    omega: LaurentSeries, x: PadicNumber, y: PadicNumber
) -> PadicNumber:
    """Coleman integral of omega = s dT/T from x to y on one annulus/disc.

    Symmetric normalization: (F(y) + a0 Log y) - (F(x) + a0 Log x), with Log
    the Iwasawa branch.  Both endpoints must sit strictly inside the domain.
    """
    from .padic import iwasawa_log

    F, a0 = formal_antiderivative(omega)
    out = F.eval_at(y) - F.eval_at(x)
    if not a0.is_zero:
        out = out + a0 * (iwasawa_log(y) - iwasawa_log(x))
    return out


# -- branch factor series ------------------------------------------------------


def branch_root_series(
    theta: PadicNumber,
    m: int,
    side: str,
    order: int = DEFAULT_ORDER,
    domain: AnnulusSpec | None = None,
) -> LaurentSeries:
    """m-th root factor attached to one branch point.

    side "minus": (1 - x/theta)^(1/m), a power series converging on
    v(x) > v(theta); side "plus": (1 - theta/x)^(1/m) in inverse powers,
    converging on v(x) < v(theta).  Binomial coefficients binom(1/m, k) are
    exact rationals and p-integral as long as p does not divide m.
    """
    ctx = theta.context
    if theta.is_zero:
        raise ValueError("branch factor at the origin is a plain monomial")
    if m < 1 or math.gcd(ctx.prime, m) != 1:
        raise ValueError("p divides m")
    coeffs: dict[int, PadicNumber] = {}
    binom = Fraction(1)
    alpha = Fraction(1, m)
    inv_theta = PadicNumber.from_int(1, ctx) / theta
    for k in range(order + 1):
        if k > 0:
            binom *= (alpha - (k - 1)) / k
        if side == "minus":
            coeffs[k] = (-inv_theta) ** k * PadicNumber.from_fraction(binom, ctx)
        elif side == "plus":
            coeffs[-k] = (-theta) ** k * PadicNumber.from_fraction(binom, ctx)
        else:
            raise ValueError("side must be 'plus' or 'minus'")
    tv = Fraction(theta.valuation)
    if side == "minus":
        dom = domain if domain is not None else AnnulusSpec.disc()
        tail = TailBound(max(-tv, Fraction(0)), max(-tv, Fraction(0)) * (order + 1))
        return LaurentSeries(ctx, coeffs, dom, 0, order, None, tail)
    if tv <= 0:
        raise ValueError("plus side needs a branch point of positive valuation")
    dom = domain if domain is not None else AnnulusSpec.annulus(tv)
    tail = TailBound(tv, tv * (order + 1))
    return LaurentSeries(ctx, coeffs, dom, -order, 0, tail, None)


def combine(a: LaurentSeries, b: LaurentSeries, op: str) -> LaurentSeries:
    """Spec-level dispatcher over the series ring operations."""
    if op == "multiply":
        return a * b
    if op == "invert-first":
        return a.invert() * b
    if op == "compose":
        return a.compose(b)
    raise ValueError(f"unknown combine op {op!r}")


# -- zero bounds ---------------------------------------------------------------


def mu_factor(p: int, e: int = 1) -> Fraction:
    """The antiderivative stretch factor 1 + e/(p - e - 1)."""
    if p <= e + 1:
        raise ValueError("prime too small for the ramification index")
    return 1 + Fraction(e, p - e - 1)


def rolle_zero_bound(w: int, p: int, e: int = 1, g: int | None = None) -> int:
    """Zeros of an antiderivative on an annulus: at most floor(mu * w).

    p <= e + 1 is a hard error; p <= 2g only warns, since the underlying
    comparison theorem assumes the prime clears twice the genus.
    """
    if w < 0:
        raise ValueError("negative Newton polygon width")
    if p <= e + 1:
        raise ValueError("prime does not exceed e + 1")
    if g is not None and p <= 2 * g:
        warnings.warn(
            f"prime {p} does not exceed 2g = {2 * g}; the zero bound's "
            "hypothesis is violated",
            RuntimeWarning,
            stacklevel=2,
        )
    mu = mu_factor(p, e)
    return int(mu * w)
