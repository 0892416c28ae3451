"""Superelliptic curves y^m = f(x): model, validation, genus, normal forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import ratpoly
from .padic import PadicContext, PadicNumber, primitive_root_of_unity

__all__ = [
    "CurvePoint",
    "CurveStats",
    "HypothesisViolation",
    "SuperellipticCurve",
    "apply_automorphism",
    "branch_count_cap",
    "genus",
    "move_branch_from_infinity",
    "satisfies_curve",
    "validate",
]


class HypothesisViolation(ValueError):
    """One or more named hypothesis failures, kept as a structured list."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(violations))


@dataclass(frozen=True)
class CurveStats:
    s: int
    degree: int
    genus: int


@dataclass(frozen=True)
class CurvePoint:
    """Affine point (x, y) or a marker for the places above x = infinity."""

    x: Fraction | PadicNumber | None
    y: Fraction | PadicNumber | None
    at_infinity: bool = False


class SuperellipticCurve:
    """y^m = f(x) with f given by exact rational coefficients.

    Branch data (distinct roots with multiplicities) is either supplied
    exactly in factored form or recovered as square-free blocks; the genus
    formula only consumes block degrees and multiplicities, so no algebraic
    factorization is ever needed.
    """

    def __init__(
        self,
        m: int,
        f_coefficients: list[Fraction | int],
        branch_data: list[tuple[Fraction, int]] | None = None,
    ):
        if m < 2:
            raise ValueError("m must be at least 2")
        coeffs = ratpoly.normalize([Fraction(a) for a in f_coefficients])
        if ratpoly.degree(coeffs) < 1:
            raise ValueError("f must be non-constant")
        self.m = m
        self.f = coeffs
        self.branch_data = None
        if branch_data is not None:
            rebuilt = [Fraction(self.leading_coefficient)]
            for theta, mult in branch_data:
                if mult < 1:
                    raise ValueError("branch multiplicities must be positive")
                factor = [-Fraction(theta), Fraction(1)]
                for _ in range(mult):
                    rebuilt = ratpoly.mul(rebuilt, factor)
            if rebuilt != coeffs:
                raise ValueError("branch data does not reproduce f")
            self.branch_data = [(Fraction(t), int(n)) for t, n in branch_data]

    @staticmethod
    def from_branch_points(
        m: int, c: Fraction | int, roots: list[tuple[Fraction | int, int]]
    ) -> "SuperellipticCurve":
        seen = set()
        for theta, _ in roots:
            if Fraction(theta) in seen:
                raise ValueError("repeated branch point; merge multiplicities")
            seen.add(Fraction(theta))
        f = [Fraction(c)]
        for theta, mult in roots:
            factor = [-Fraction(theta), Fraction(1)]
            for _ in range(mult):
                f = ratpoly.mul(f, factor)
        return SuperellipticCurve(m, f, [(Fraction(t), int(n)) for t, n in roots])

    @property
    def degree(self) -> int:
        return ratpoly.degree(self.f)

    @property
    def leading_coefficient(self) -> Fraction:
        return self.f[-1]

    def branch_blocks(self) -> list[tuple[list[Fraction], int]]:
        """Square-free blocks (monic factor, multiplicity), pairwise coprime.

        Each block of degree k carries k distinct branch points sharing one
        multiplicity.
        """
        if self.branch_data is not None:
            return [([-t, Fraction(1)], n) for t, n in self.branch_data]
        _, blocks = ratpoly.squarefree_decomposition(self.f)
        return blocks

    def branch_multiplicities(self) -> list[tuple[int, int]]:
        """(count of distinct points, shared multiplicity) per block."""
        return [(ratpoly.degree(g), e) for g, e in self.branch_blocks()]

    @property
    def branch_point_count(self) -> int:
        return sum(k for k, _ in self.branch_multiplicities())

    def evaluate_f(self, x: Fraction) -> Fraction:
        return ratpoly.evaluate(self.f, x)

    def __repr__(self) -> str:  # pragma: no cover
        return f"SuperellipticCurve(m={self.m}, deg={self.degree})"


def genus(curve: SuperellipticCurve) -> int:
    """Riemann-Hurwitz: 2g - 2 = m(s-1) - gcd(m, deg f) - sum gcd(m, n_i)."""
    m = curve.m
    s = curve.branch_point_count
    ram = sum(k * math.gcd(m, e) for k, e in curve.branch_multiplicities())
    rhs = m * (s - 1) - math.gcd(m, curve.degree) - ram
    if rhs % 2:
        raise ValueError("non-integral genus: inconsistent input")
    g = rhs // 2 + 1
    if g < 0:
        raise ValueError("negative genus: inconsistent input")
    return g


def validate(curve: SuperellipticCurve) -> CurveStats:
    """Main-theorem hypotheses: multiplicities below m, degree at least 4,
    genus at least 3.  All violations are reported together."""
    violations = []
    for k, e in curve.branch_multiplicities():
        if e >= curve.m:
            violations.append(
                f"branch multiplicity {e} (at {k} point{'s' if k > 1 else ''}) "
                f"is not below m = {curve.m}"
            )
    if curve.degree < 4:
        violations.append(f"deg(f) = {curve.degree} is below 4")
    g = genus(curve)
    if g < 3:
        violations.append(f"genus {g} is below 3")
    if violations:
        raise HypothesisViolation(violations)
    return CurveStats(s=curve.branch_point_count, degree=curve.degree, genus=g)


def branch_count_cap(curve: SuperellipticCurve) -> int:
    """s is at most floor((4g-4)/m) + 4; the cap is returned, the bound
    asserted."""
    g = genus(curve)
    cap = (4 * g - 4) // curve.m + 4
    s = curve.branch_point_count
    if s > cap:
        raise AssertionError(
            f"branch count {s} exceeds cap {cap}: inconsistent input data"
        )
    return cap


def move_branch_from_infinity(curve: SuperellipticCurve) -> SuperellipticCurve:
    """Invert the x-coordinate so no branch point hides above infinity.

    First translate x by the least nonnegative integer t with f(t) != 0,
    then substitute x -> 1/x, y -> y/x^ceil(deg f / m).  When m does not
    divide deg f a new branch point appears at 0 with multiplicity
    m - (deg f mod m); the genus never changes.
    """
    t = 0
    while ratpoly.evaluate(curve.f, Fraction(t)) == 0:
        t += 1
    shifted = ratpoly.shift(curve.f, Fraction(t)) if t else curve.f
    d = curve.degree
    m = curve.m
    target = m * ((d + m - 1) // m)
    flipped = ratpoly.reverse(shifted, target)
    new_data = None
    if curve.branch_data is not None:
        new_data = []
        for theta, mult in curve.branch_data:
            moved = theta - t
            # a root at the shift target would have made f(t) = 0
            new_data.append((Fraction(1, 1) / moved, mult))
        extra = target - d
        if extra:
            new_data.append((Fraction(0), extra))
    return SuperellipticCurve(m, flipped, new_data)


def satisfies_curve(
    point: CurvePoint, curve: SuperellipticCurve, abs_digits: int | None = None
) -> bool:
    """Exact check for rational coordinates, to-precision for p-adic ones."""
    if point.at_infinity:
        return True
    x, y = point.x, point.y
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return y**curve.m == ratpoly.evaluate(curve.f, x)
    if not isinstance(x, PadicNumber) or not isinstance(y, PadicNumber):
        raise TypeError("mixed exact/p-adic coordinates")
    ctx = x.context
    fx = PadicNumber.zero(ctx)
    for k in reversed(range(len(curve.f))):
        fx = fx * x + PadicNumber.from_fraction(curve.f[k], ctx)
    diff = y**curve.m - fx
    if diff.is_zero:
        return True
    digits = abs_digits if abs_digits is not None else ctx.precision // 2
    return diff.valuation >= digits


def apply_automorphism(
    point: CurvePoint, curve: SuperellipticCurve, ctx: PadicContext, k: int
) -> CurvePoint:
    """The order-m deck transformation (x, y) -> (x, zeta_m^k y)."""
    if point.at_infinity:
        return point
    k = k % curve.m
    if k == 0:
        return point
    if isinstance(point.y, Fraction):
        if curve.m % 2 == 0 and k == curve.m // 2:
            return CurvePoint(point.x, -point.y)
        zeta = primitive_root_of_unity(curve.m, ctx)
        x = PadicNumber.from_fraction(Fraction(point.x), ctx)
        y = PadicNumber.from_fraction(Fraction(point.y), ctx) * zeta**k
        return CurvePoint(x, y)
    zeta = primitive_root_of_unity(curve.m, ctx)
    return CurvePoint(point.x, point.y * zeta**k)
