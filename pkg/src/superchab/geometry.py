"""Residue geometry over Q_p: cluster trees of branch points, maximal
annuli, their classification, and explicit verified chart maps.

Every chart carries its own verification: the series identity
y(z)^m = f(x(z)) is rechecked coefficientwise against a truncation-
reliability budget, and a chart that misses its budget is an internal
error, never a silent result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import ratpoly
from .curve import SuperellipticCurve, genus
from .padic import (
    PadicContext,
    PadicNumber,
    is_mth_power,
    mth_root,
    primitive_root_of_unity,
)
from .series import AnnulusSpec, LaurentSeries, TailBound, branch_root_series

__all__ = [
    "AnnulusAnalysis",
    "ChartMap",
    "ChartVerificationError",
    "ClusterNode",
    "ClusterTree",
    "DiscAnalysis",
    "DiscSpec",
    "ResidueAnnulus",
    "annulus_orbit_count",
    "build_cluster_tree",
    "classify_annulus",
    "curve_branch_points",
    "enumerate_maximal_annuli",
    "parameterize_annulus",
    "parameterize_disc",
    "pruned_annulus_count",
    "qp_roots",
]


class ChartVerificationError(AssertionError):
    """A constructed chart failed its own series identity check."""


# -- root finding over Q_p -----------------------------------------------------


def _poly_eval_mod(P: list[int], x: int, mod: int) -> int:
    acc = 0
    for c in reversed(P):
        acc = (acc * x + c) % mod
    return acc


def _poly_derivative_int(P: list[int]) -> list[int]:
    return [k * c for k, c in enumerate(P) if k > 0] or [0]


def _hensel_root(P: list[int], a: int, ctx: PadicContext) -> PadicNumber:
    """Quadratic lift of a simple residue root to full working precision."""
    p = ctx.prime
    target = ctx.precision + 8
    dP = _poly_derivative_int(P)
    digits = 1
    x = a % p
    while digits < target:
        digits = min(2 * digits, target)
        mod = p**digits
        fx = _poly_eval_mod(P, x, mod)
        dfx = _poly_eval_mod(dP, x, mod)
        inv = pow(dfx, -1, mod)
        x = (x - fx * inv) % mod
    v = 0
    y = x
    while y and y % p == 0:
        y //= p
        v += 1
    if x == 0:
        return PadicNumber.zero(ctx)
    known = min(ctx.precision, target - v)
    return PadicNumber(ctx, v, (x // p**v) % p**known, known)


def _zp_roots_squarefree(
    P: list[int], ctx: PadicContext, depth: int = 0
) -> tuple[list[PadicNumber], bool]:
    """Simple roots of a square-free integer polynomial in Z_p."""
    p = ctx.prime
    if depth > 3 * ctx.precision:
        return [], False
    dP = _poly_derivative_int(P)
    roots: list[PadicNumber] = []
    complete = True
    for a in range(p):
        if _poly_eval_mod(P, a, p) != 0:
            continue
        if _poly_eval_mod(dP, a, p) != 0:
            roots.append(_hensel_root(P, a, ctx))
            continue
        # repeated residue root: zoom in on the sub-disc a + pZ_p
        shifted = ratpoly.shift([Fraction(c) for c in P], Fraction(a))
        rescaled = [int(c) * p**k for k, c in enumerate(shifted)]
        content = min(_int_val(q, p) for q in rescaled if q != 0)
        Q = [q // p**content for q in rescaled]
        sub, sub_ok = _zp_roots_squarefree(Q, ctx, depth + 1)
        complete = complete and sub_ok
        a_p = PadicNumber.from_int(a, ctx)
        p_p = PadicNumber.from_int(p, ctx)
        for y in sub:
            roots.append(a_p + p_p * y)
    return roots, complete


def _int_val(n: int, p: int) -> int:
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def qp_roots(
    coeffs: list[Fraction], ctx: PadicContext
) -> tuple[list[PadicNumber], bool]:
    """All Q_p roots of a square-free rational polynomial, plus a flag
    telling whether the polynomial splits completely over Q_p."""
    poly = ratpoly.normalize([Fraction(c) for c in coeffs])
    deg = ratpoly.degree(poly)
    if deg < 1:
        return [], True
    if not ratpoly.is_squarefree(poly):
        raise ValueError("qp_roots expects a square-free polynomial")
    roots: list[PadicNumber] = []
    # strip a root at the origin before reversing
    if poly[0] == 0:
        roots.append(PadicNumber.zero(ctx))
        poly = poly[1:]
        deg -= 1
    den = math.lcm(*(c.denominator for c in poly))
    P = [int(c * den) for c in poly]
    g = math.gcd(*(abs(c) for c in P))
    P = [c // g for c in P]
    nonneg, ok1 = _zp_roots_squarefree(P, ctx)
    roots.extend(nonneg)
    # negative-valuation roots are inverses of small roots of the reversal
    R = list(reversed(P))
    small, ok2 = _zp_roots_squarefree(R, ctx)
    one = PadicNumber.from_int(1, ctx)
    for r in small:
        if not r.is_zero and r.valuation >= 1:
            roots.append(one / r)
    complete = ok1 and ok2 and (len(roots) == ratpoly.degree(
        ratpoly.normalize([Fraction(c) for c in coeffs])
    ))
    return roots, complete


def curve_branch_points(
    curve: SuperellipticCurve, ctx: PadicContext
) -> tuple[list[tuple[PadicNumber, int]], bool]:
    """Branch points of f in Q_p with multiplicities; the flag reports
    whether every branch point was found (full splitting)."""
    points: list[tuple[PadicNumber, int]] = []
    complete = True
    for block, mult in curve.branch_blocks():
        roots, ok = qp_roots(block, ctx)
        complete = complete and ok
        points.extend((r, mult) for r in roots)
    return points, complete


# -- cluster trees --------------------------------------------------------------


@dataclass
class ClusterNode:
    members: tuple[int, ...]
    depth: int | None  # None on singleton leaves
    parent_depth: int | None
    children: tuple["ClusterNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return len(self.members) == 1


@dataclass
class ClusterTree:
    points: list[PadicNumber]
    multiplicities: list[int]
    root: ClusterNode

    def proper_clusters(self) -> list[ClusterNode]:
        out: list[ClusterNode] = []

        def walk(node: ClusterNode, is_root: bool) -> None:
            if not is_root and not node.is_leaf:
                out.append(node)
            for ch in node.children:
                walk(ch, False)

        walk(self.root, True)
        return out


def _pair_valuation(a: PadicNumber, b: PadicNumber) -> int:
    d = a - b
    if d.is_zero:
        raise ValueError("coincident branch points")
    return d.valuation


def build_cluster_tree(
    theta: list[PadicNumber], multiplicities: list[int] | None = None
) -> ClusterTree:
    """Hierarchical clustering of points under v(theta_i - theta_j).

    Children of a cluster of depth delta are the classes of the relation
    v(theta_i - theta_j) > delta; ultrametricity makes this an equivalence.
    """
    if multiplicities is None:
        multiplicities = [1] * len(theta)
    if len(theta) != len(multiplicities):
        raise ValueError("one multiplicity per branch point")
    if len(theta) < 1:
        raise ValueError("empty branch locus")

    def build(indices: tuple[int, ...], parent_depth: int | None) -> ClusterNode:
        if len(indices) == 1:
            return ClusterNode(indices, None, parent_depth)
        depth = min(
            _pair_valuation(theta[i], theta[j])
            for k, i in enumerate(indices)
            for j in indices[k + 1 :]
        )
        groups: list[list[int]] = []
        for i in indices:
            for grp in groups:
                if _pair_valuation(theta[i], theta[grp[0]]) > depth:
                    grp.append(i)
                    break
            else:
                groups.append([i])
        children = tuple(build(tuple(g), depth) for g in groups)
        return ClusterNode(indices, depth, parent_depth, children)

    root = build(tuple(range(len(theta))), None)
    return ClusterTree(list(theta), list(multiplicities), root)


def pruned_annulus_count(tree: ClusterTree, infinity_is_branch: bool = False) -> int:
    """Edges of the pruned skeleton: annuli separating at least two branch
    classes on each side.  This is the count the leaf-edge bound applies to.
    """
    root = tree.root
    root_legs = len(root.children) + (1 if infinity_is_branch else 0)
    root_internal = root_legs >= 3 and not root.is_leaf

    edges = 0

    def walk(node: ClusterNode, ancestor_internal: bool) -> None:
        nonlocal edges
        for ch in node.children:
            if not ch.is_leaf:
                if ancestor_internal:
                    edges += 1
                walk(ch, True)

    walk(root, root_internal)
    if not root_internal:
        proper_top = [c for c in root.children if not c.is_leaf]
        if len(root.children) == 2 and len(proper_top) == 2:
            edges += 1
    return edges


# -- residue annuli -------------------------------------------------------------


@dataclass
class ResidueAnnulus:
    center: PadicNumber
    rational_center: int
    valuation_interval: tuple[int, int]
    theta_0: list[tuple[PadicNumber, int]]
    theta_infty: list[tuple[PadicNumber, int]]
    d: int | None = None
    case: str | None = None
    from_branch_pair: bool = False
    m: int | None = None

    def __post_init__(self) -> None:
        lo, hi = self.valuation_interval
        if lo >= hi:
            raise ValueError("empty annulus interval")
        for th, _ in self.theta_0 + self.theta_infty:
            diff = th - self.center
            if not diff.is_zero and lo < diff.valuation < hi:
                raise ValueError("branch point strictly inside the annulus")

    def weighted_inner_count(self) -> int:
        return sum(n for _, n in self.theta_0)


def enumerate_maximal_annuli(
    tree: ClusterTree,
    m: int | None = None,
    infinity_is_branch: bool = False,
) -> list[ResidueAnnulus]:
    """One annulus per proper cluster: interval from the parent's depth to
    the cluster's own.  The pruned skeleton count is asserted against the
    leaf bound s - 3 (counting the place at infinity when it ramifies)."""
    annuli: list[ResidueAnnulus] = []

    def walk(node: ClusterNode) -> None:
        if not node.is_leaf and node.parent_depth is not None:
            members = set(node.members)
            center = tree.points[node.members[0]]
            hi = node.depth
            lo = node.parent_depth
            if center.is_zero or center.valuation >= 0:
                c_rat = center.value_mod(max(hi, 1)) if not center.is_zero else 0
            else:
                raise ValueError(
                    "annulus center of negative valuation; renormalize the curve"
                )
            th0 = [
                (tree.points[i], tree.multiplicities[i]) for i in sorted(members)
            ]
            thinf = [
                (tree.points[i], tree.multiplicities[i])
                for i in range(len(tree.points))
                if i not in members
            ]
            a = ResidueAnnulus(center, c_rat, (lo, hi), th0, thinf)
            if m is not None:
                a.d = math.gcd(a.weighted_inner_count(), m)
                a.case = classify_annulus(a, m)
            annuli.append(a)
        for ch in node.children:
            walk(ch)

    walk(tree.root)
    s_eff = len(tree.points) + (1 if infinity_is_branch else 0)
    pruned = pruned_annulus_count(tree, infinity_is_branch)
    assert pruned <= max(0, s_eff - 3), (
        f"pruned annulus count {pruned} exceeds leaf bound {max(0, s_eff - 3)}"
    )
    return annuli


def classify_annulus(a: ResidueAnnulus, m: int) -> str:
    """split (d > 1 disjoint annuli permuted), rotation (single annulus,
    rotated), or inverting (m = 2 only, from two-branch-point discs)."""
    d = math.gcd(a.weighted_inner_count(), m)
    a.d = d
    a.m = m
    if m == 2:
        if a.from_branch_pair:
            return "inverting"
        return "split" if d == 2 else "rotation"
    label = "split" if d > 1 else "rotation"
    assert label != "inverting"
    return label


def annulus_orbit_count(curve: SuperellipticCurve, ctx: PadicContext) -> int:
    """Number of deck-orbits of maximal annuli (one per skeleton edge);
    asserted against floor((4g-4)/m) + 1."""
    points, complete = curve_branch_points(curve, ctx)
    if not complete:
        raise ValueError("branch locus does not split over Q_p")
    tree = build_cluster_tree([t for t, _ in points], [n for _, n in points])
    inf_branch = curve.degree % curve.m != 0
    count = pruned_annulus_count(tree, inf_branch)
    g = genus(curve)
    cap = (4 * g - 4) // curve.m + 1
    assert count <= cap, f"orbit count {count} exceeds cap {cap}"
    return count


# -- charts ---------------------------------------------------------------------


@dataclass
class ChartMap:
    x_series: LaurentSeries
    y_series: LaurentSeries
    sheet_index: int
    domain: AnnulusSpec
    gamma: PadicNumber
    attained: int


@dataclass
class AnnulusAnalysis:
    annulus: ResidueAnnulus
    status: str  # "charts" | "no_points" | "unanalyzed"
    charts: list[ChartMap] = field(default_factory=list)
    power_tests: dict[str, str] = field(default_factory=dict)
    attained: int | None = None
    detail: str = ""
    scale: PadicNumber | None = None

    def report(self) -> dict:
        lo, hi = self.annulus.valuation_interval
        return {
            "center": str(self.annulus.rational_center),
            "interval": [lo, hi],
            "theta_0_count": self.annulus.weighted_inner_count(),
            "d": self.annulus.d,
            "case": self.annulus.case,
            "status": self.status,
            "power_tests": dict(self.power_tests),
            "charts": len(self.charts),
            "verification_precision": self.attained,
            "detail": self.detail,
        }


def _padic_product(vals, ctx: PadicContext) -> PadicNumber:
    out = PadicNumber.from_int(1, ctx)
    for v in vals:
        out = out * v
    return out


def _branch_series_product(
    theta0: list[tuple[PadicNumber, int]],
    thetainf: list[tuple[PadicNumber, int]],
    m: int,
    order: int,
    domain: AnnulusSpec,
    ctx: PadicContext,
) -> LaurentSeries:
    """h = prod over inner points of (1 - theta/x)^(n/m) times prod over
    outer points of (1 - x/theta)^(n/m); converges on the open annulus."""
    h = LaurentSeries.one(ctx, domain)
    for th, n in theta0:
        if th.is_zero:
            continue  # factor x^n is carried by the monomial part
        # The exactly-zero side of each factor is tagged with an explicit
        # floor so repeated products keep the full window instead of pinning
        # at the one-sided supports.
        fac = _pseudo_entire(branch_root_series(th, m, "plus", order=order, domain=domain))
        for _ in range(n):
            h = (h * fac).window_clipped(-order, order)
    for th, n in thetainf:
        fac = _pseudo_entire(branch_root_series(th, m, "minus", order=order, domain=domain))
        for _ in range(n):
            h = (h * fac).window_clipped(-order, order)
    return h


def parameterize_annulus(
    a: ResidueAnnulus,
    curve: SuperellipticCurve,
    ctx: PadicContext,
    target: int | None = None,
) -> AnnulusAnalysis:
    """Verified charts over a maximal annulus.

    After recentering (x = c + p^L x') the curve reads
    y^m = Q0 * x'^k0 * h(x')^m with k0 branch points (with multiplicity)
    inside and h a unit branch-series product.  Charts exist when
    Q0 * U^k0 is an m-th power for a scale U = p^sigma * u0; each of the d
    sheets is x(z) = U z^(m/d), y_j(z) = zeta^j * Gamma * z^(k0/d) * h(x(z)).
    When Q0 is not even a d-th power there are no rational points over the
    annulus at all.
    """
    m = curve.m
    p = ctx.prime
    if target is None:
        target = ctx.precision // 2
    lo, hi = a.valuation_interval
    L = lo
    beta = hi - lo
    c_rat = a.rational_center

    shifted = ratpoly.shift(curve.f, Fraction(c_rat)) if c_rat else curve.f
    scaled = ratpoly.compose_linear(shifted, Fraction(0), Fraction(p) ** L)

    theta0 = []
    thetainf = []
    pl = PadicNumber.from_int(p, ctx) ** L
    c_p = PadicNumber.from_int(c_rat, ctx)
    for th, n in a.theta_0:
        theta0.append(((th - c_p) / pl, n))
    for th, n in a.theta_infty:
        thetainf.append(((th - c_p) / pl, n))
    for th, n in theta0:
        if not th.is_zero and th.valuation < beta:
            raise ValueError("inner branch point escaped the annulus recentering")
    for th, n in thetainf:
        if th.is_zero or th.valuation > 0:
            raise ValueError("outer branch point escaped the annulus recentering")

    k0 = a.weighted_inner_count()
    d = math.gcd(k0, m)
    a.d = d
    md = m // d
    lead = PadicNumber.from_fraction(scaled[-1], ctx)
    q0 = lead * _padic_product(((-th) ** n for th, n in thetainf), ctx)

    analysis = AnnulusAnalysis(annulus=a, status="unanalyzed")
    analysis.power_tests["d_th_power(Q0)"] = str(is_mth_power(q0, d)) if d > 1 else "trivial"

    scale = None
    for sigma in range(md):
        for u0 in range(1, p):
            cand = PadicNumber.from_int(p**sigma * u0, ctx)
            if is_mth_power(q0 * cand**k0, m):
                scale = cand
                break
        if scale is not None:
            break
    if scale is None:
        if d > 1 and not is_mth_power(q0, d):
            analysis.status = "no_points"
            analysis.detail = (
                "scale constant is not a d-th power: no rational points over "
                "this annulus"
            )
            return analysis
        analysis.status = "unanalyzed"
        analysis.detail = "no scale unit passed the m-th power test"
        return analysis

    # normalize the scale so the chart coordinate annulus has positive radii
    sigma = scale.valuation
    if sigma > 0:
        scale = scale / PadicNumber.from_int(p**md, ctx)
        sigma = sigma - md
    gamma = mth_root(q0 * scale**k0, m)
    analysis.power_tests["m_th_power(Q0*U^k0)"] = "True"
    analysis.scale = scale

    order = max(24, (target + 2) // max(beta, 1) + 12)
    z_beta = Fraction(beta + abs(sigma), md)
    z_dom = AnnulusSpec.annulus(z_beta)
    x_dom = AnnulusSpec.annulus(Fraction(beta))
    h = _branch_series_product(theta0, thetainf, m, order, x_dom, ctx)
    h_z = h.compose_monomial(scale, md, domain=z_dom)

    x_series = LaurentSeries(ctx, {md: scale}, z_dom, md, md)

    # Verify at the x-level, where every stored coefficient has nonnegative
    # valuation: h(x)^m * Q0 * x^k0 must reproduce the recentered f.  The
    # z-charts inherit this through the exact monomial substitution and the
    # exact constant identity gamma^m = Q0 * U^k0.
    h_pow = h**m
    lhs = h_pow.shifted(k0).scaled(q0)
    rhs = LaurentSeries.from_dict(
        {k: PadicNumber.from_fraction(c, ctx) for k, c in enumerate(scaled) if c != 0},
        ctx,
        x_dom,
    )
    resid = lhs - rhs
    vq = min(0, q0.valuation)
    attained = None
    for n in range(resid.lo, resid.hi + 1):
        cap_n = beta * (order + 1 - max(0, n - k0)) + vq
        if cap_n < target:
            continue
        c = resid.coefficient(n)
        got = min(int(cap_n), ctx.precision) if c.is_zero else min(c.valuation, int(cap_n))
        attained = got if attained is None else min(attained, got)
    if attained is None or attained < target:
        raise ChartVerificationError(
            f"chart residual attains {attained}, below target {target}"
        )

    zeta = primitive_root_of_unity(m, ctx)
    charts = []
    y_base = h_z.shifted(k0 // d).scaled(gamma)

    for j in range(d):
        y_j = y_base.scaled(zeta**j) if j else y_base
        charts.append(
            ChartMap(
                x_series=x_series,
                y_series=y_j,
                sheet_index=j,
                domain=z_dom,
                gamma=gamma * zeta**j,
                attained=attained,
            )
        )
    analysis.status = "charts"
    analysis.charts = charts
    analysis.attained = attained
    return analysis


def tau_chart_action(analysis: AnnulusAnalysis, m: int) -> tuple[int, int]:
    """The deck transformation sends chart j to chart j+1 with the same
    coordinate: y_(j+1)(z) = zeta_m * y_j(z) exactly.  Returns (a, b) for
    the action z -> zeta^a z, j -> j + b; here a = 0, b = 1."""
    charts = analysis.charts
    if not charts:
        raise ValueError("no charts to act on")
    ctx = charts[0].y_series.context
    zeta = primitive_root_of_unity(m, ctx)
    d = len(charts)
    for j, chart in enumerate(charts):
        image = chart.y_series.scaled(zeta)
        target = charts[(j + 1) % d].y_series
        if (j + 1) % d == 0:
            # wrapping multiplies by zeta^d, the in-annulus rotation class
            target = charts[0].y_series.scaled(zeta**d)
        if not image.agrees_with(target, ctx.precision // 2):
            raise ChartVerificationError("deck action does not permute charts")
    return (0, 1)


# -- discs ----------------------------------------------------------------------


@dataclass
class DiscSpec:
    center: Fraction
    radius_valuation: int = 1

    def __post_init__(self) -> None:
        self.center = Fraction(self.center)
        if self.radius_valuation < 1:
            raise ValueError("disc radius valuation must be at least 1")


@dataclass
class DiscAnalysis:
    spec: DiscSpec
    case: int
    status: str
    charts: list[ChartMap] = field(default_factory=list)
    power_tests: dict[str, str] = field(default_factory=dict)
    attained: int | None = None
    detail: str = ""


def _shift_poly_padic(
    coeffs: list[Fraction], c: PadicNumber, ctx: PadicContext
) -> list[PadicNumber]:
    """f(c + t) coefficients by binomial expansion around a p-adic center."""
    n = len(coeffs)
    out = [PadicNumber.zero(ctx) for _ in range(n)]
    powers = [PadicNumber.from_int(1, ctx)]
    for _ in range(n - 1):
        powers.append(powers[-1] * c)
    for k, ck in enumerate(coeffs):
        if ck == 0:
            continue
        ckp = PadicNumber.from_fraction(ck, ctx)
        for j in range(k + 1):
            out[j] = out[j] + ckp * PadicNumber.from_int(math.comb(k, j), ctx) * powers[k - j]
    return out


def parameterize_disc(
    spec: DiscSpec,
    curve: SuperellipticCurve,
    ctx: PadicContext,
    target: int | None = None,
) -> DiscAnalysis:
    """Chart construction on a residue disc, split by branch-point count.

    Case 1 (no branch point inside): the center value of f decides the whole
    disc; if it is an m-th power there are m disjoint disc charts, otherwise
    there are no rational points over the disc.  Case 2 (one simple branch
    point): a single chart built over the m-th power map.  Case 3 (two
    branch points, m even): exact for m = 2; for even m > 2 only the
    structural count m/2 is reported.
    """
    m = curve.m
    p = ctx.prime
    if target is None:
        target = ctx.precision // 2
    lam = spec.radius_valuation
    points, complete = curve_branch_points(curve, ctx)
    if not complete:
        return DiscAnalysis(
            spec, 0, "unanalyzed",
            detail="branch locus does not split over Q_p; bound still valid",
        )
    center_p = PadicNumber.from_fraction(spec.center, ctx)
    inside = []
    for th, n in points:
        diff = th - center_p
        if diff.is_zero or diff.valuation >= lam:
            inside.append((th, n))
    distinct = len(inside)

    if distinct == 0:
        return _disc_case_one(spec, curve, ctx, points, target)
    if distinct == 1:
        th, n = inside[0]
        if n > 1:
            return DiscAnalysis(
                spec, 2, "unanalyzed",
                detail=f"branch point of multiplicity {n}; not charted",
            )
        return _disc_case_two(spec, curve, ctx, th, points, target)
    if distinct == 2:
        if m % 2 == 1:
            raise ValueError("two branch points in a disc require even m")
        if m == 2:
            return _disc_case_three_m2(spec, curve, ctx, inside, points, target)
        return DiscAnalysis(
            spec, 3, "unanalyzed",
            detail=f"{m // 2} annuli over the disc; charts need a degree-"
            f"{m // 2} cover coordinate not available over Q_p",
        )
    raise ValueError("disc contains more than two branch points")


def _disc_case_one(spec, curve, ctx, points, target) -> DiscAnalysis:
    m = curve.m
    p = ctx.prime
    lam = spec.radius_valuation
    fc = curve.evaluate_f(spec.center)
    fc_p = PadicNumber.from_fraction(fc, ctx)
    analysis = DiscAnalysis(spec, 1, "unanalyzed")
    ok = is_mth_power(fc_p, m)
    analysis.power_tests["m_th_power(f(center))"] = str(ok)
    if not ok:
        analysis.status = "no_points"
        analysis.detail = "center value is not an m-th power"
        return analysis
    gamma = mth_root(fc_p, m)
    center_p = PadicNumber.from_fraction(spec.center, ctx)
    unit_scale = PadicNumber.from_int(p ** (lam - 1), ctx)
    order = max(24, target + 8)
    dom = AnnulusSpec.disc()
    theta_rel = []
    for th, n in points:
        theta_rel.append(((th - center_p) / unit_scale, n))
    h = LaurentSeries.one(ctx, dom)
    for th, n in theta_rel:
        fac = branch_root_series(th, m, "minus", order=order, domain=dom)
        for _ in range(n):
            h = (h * fac).window_clipped(0, order)
    x_series = LaurentSeries(
        ctx,
        {0: center_p, 1: unit_scale},
        dom,
        0,
        1,
    )
    # residual check: (gamma h)^m - f(center + scale z), one-sided and exact
    y0 = h.scaled(gamma)
    ypow = (y0**m).window_clipped(0, order)
    shifted = ratpoly.shift(curve.f, spec.center)
    f_comp = LaurentSeries.from_dict(
        {
            k: PadicNumber.from_fraction(c, ctx) * unit_scale**k
            for k, c in enumerate(shifted)
            if c != 0
        },
        ctx,
        dom,
    )
    resid = ypow - f_comp.window_clipped(0, order)
    attained = ctx.precision
    for k in range(0, order - 2):
        c = resid.coefficient(k)
        if not c.is_zero:
            attained = min(attained, c.valuation)
    if attained < target:
        raise ChartVerificationError(
            f"disc chart residual attains {attained}, below target {target}"
        )
    zeta = primitive_root_of_unity(m, ctx)
    charts = []
    for i in range(m):
        yi = y0.scaled(zeta**i) if i else y0
        charts.append(
            ChartMap(x_series, yi, i, dom, gamma * zeta**i, attained)
        )
    analysis.status = "charts"
    analysis.charts = charts
    analysis.attained = attained
    return analysis


def _disc_case_two(spec, curve, ctx, theta, points, target) -> DiscAnalysis:
    m = curve.m
    p = ctx.prime
    lam = spec.radius_valuation
    analysis = DiscAnalysis(spec, 2, "unanalyzed")
    # recenter at the branch point: f(theta + t) = t * G(t)
    F = _shift_poly_padic(curve.f, theta, ctx)
    if not F[0].is_zero and F[0].valuation < ctx.precision // 2:
        raise ValueError("disc case 2 center is not a branch point")
    G = F[1:]
    g0 = G[0]
    if g0.is_zero:
        raise ValueError("branch point is not simple")
    # effective radius: valuations of x - theta on the curve satisfy
    # v + v(f'(theta)) = 0 mod m
    lam_eff = lam
    while (lam_eff + g0.valuation) % m:
        lam_eff += 1
    analysis.power_tests["radius_condition"] = (
        "exact" if lam_eff == lam else f"deepened to {lam_eff}"
    )
    # anchor the chart on the open unit disc: v(x - theta) = lam_eff + m(v(z) - 1)
    scale = None
    for u0 in range(1, p):
        cand = PadicNumber.from_fraction(
            Fraction(u0 * p**lam_eff, p**m), ctx
        )
        if is_mth_power(cand * g0, m):
            scale = cand
            break
    if scale is None:
        analysis.detail = "no scale unit passed the m-th power test"
        return analysis
    gamma = mth_root(scale * g0, m)
    order = max(24, target + 8)
    dom = AnnulusSpec.disc()
    h = LaurentSeries.one(ctx, dom)
    for th, n in points:
        rel = th - theta
        if rel.is_zero:
            continue
        fac = branch_root_series(rel, m, "minus", order=order, domain=dom)
        for _ in range(n):
            h = (h * fac).window_clipped(0, order)
    h_z = h.compose_monomial(scale, m)
    y = h_z.shifted(1).scaled(gamma)
    x_series = LaurentSeries(
        ctx, {0: theta, m: scale}, dom, 0, m
    )
    # t-level identity: h(t)^m * g0 = G(t); the chart follows by the exact
    # substitution t = scale * z^m together with gamma^m = scale * g0
    h_pow = (h**m).scaled(g0)
    g_series = LaurentSeries.from_dict(
        {k: ck for k, ck in enumerate(G) if not ck.is_zero}, ctx, dom
    )
    resid = h_pow - g_series.window_clipped(0, order)
    attained = ctx.precision
    for k in range(0, order - 1):
        c = resid.coefficient(k)
        if not c.is_zero:
            attained = min(attained, c.valuation)
    if attained < target:
        raise ChartVerificationError(
            f"disc chart residual attains {attained}, below target {target}"
        )
    analysis.status = "charts"
    analysis.charts = [ChartMap(x_series, y, 0, dom, gamma, attained)]
    analysis.attained = attained
    return analysis


def _disc_case_three_m2(spec, curve, ctx, inside, points, target) -> DiscAnalysis:
    p = ctx.prime
    analysis = DiscAnalysis(spec, 3, "unanalyzed")
    (t1, n1), (t2, n2) = inside
    if n1 != 1 or n2 != 1:
        analysis.detail = "non-simple branch pair"
        return analysis
    two = PadicNumber.from_int(2, ctx)
    c = (t1 + t2) / two
    half_diff = (t1 - t2) / two
    b_const = half_diff * half_diff
    v_b = b_const.valuation
    # g = f with the two inner factors removed; gamma^2 = g(c)
    g_at_c = PadicNumber.from_fraction(curve.leading_coefficient, ctx)
    for th, n in points:
        rel = c - th
        if (th - t1).is_zero or (th - t2).is_zero:
            continue
        g_at_c = g_at_c * rel**n
    ok = is_mth_power(g_at_c, 2)
    analysis.power_tests["square(g(center))"] = str(ok)
    if not ok:
        analysis.status = "no_points"
        analysis.detail = "no rational points off the branch pair"
        return analysis
    gamma = mth_root(g_at_c, 2)
    order = max(24, 2 * target + 8)
    dom = AnnulusSpec.annulus(Fraction(v_b))
    quarter_b = b_const / PadicNumber.from_int(4, ctx)
    # x(z) = c + z + B/(4z); the branch factor part is (z - B/(4z))^2
    w_plus = LaurentSeries(
        ctx, {1: PadicNumber.from_int(1, ctx), -1: quarter_b}, dom, -1, 1
    )
    w_minus = LaurentSeries(
        ctx, {1: PadicNumber.from_int(1, ctx), -1: -quarter_b}, dom, -1, 1
    )
    x_series = LaurentSeries(
        ctx, {0: c, 1: PadicNumber.from_int(1, ctx), -1: quarter_b}, dom, -1, 1
    )
    # h^2 = g(x)/g(c): evaluate the square-root branch factors at x - c
    h = LaurentSeries.one(ctx, dom)
    for th, n in points:
        if (th - t1).is_zero or (th - t2).is_zero:
            continue
        rel = th - c
        fac = branch_root_series(rel, 2, "minus", order=order, domain=AnnulusSpec.disc())
        # substitute the two-sided coordinate w = z + B/4z
        comp = _eval_series_at_laurent(fac, w_plus, order)
        for _ in range(n):
            h = (h * comp).window_clipped(-order, order)
    y = (_pseudo_entire(w_minus) * h).scaled(gamma).window_clipped(-order, order)
    ysq = (y * y).window_clipped(-order, order)
    f_x = _eval_poly_at_laurent(curve.f, x_series, ctx, order)
    resid = ysq - f_x
    attained = ctx.precision
    guard = max(2, int(2 * target / max(v_b, 1)))
    for k in range(-(order - guard), order - guard + 1):
        cc = resid.coefficient(k)
        if not cc.is_zero:
            attained = min(attained, cc.valuation)
    if attained < target:
        raise ChartVerificationError(
            f"disc pair chart residual attains {attained}, below target {target}"
        )
    analysis.status = "charts"
    analysis.charts = [ChartMap(x_series, y, 0, dom, gamma, attained)]
    analysis.attained = attained
    analysis.detail = "deck action: z -> B/(4z) with y -> -y"
    return analysis


def _pseudo_entire(s: LaurentSeries) -> LaurentSeries:
    """Tag an exact Laurent polynomial with explicit huge tail floors.

    True coefficients beyond the window are zero, so the floor is sound;
    the tag keeps window knowledge from pinning at the polynomial's support
    when it multiplies a truncated series.
    """
    big = TailBound(Fraction(0), Fraction(10**9))
    return LaurentSeries(
        s.context,
        dict(s.coefficients),
        s.domain,
        s.lo,
        s.hi,
        s.tail_below if s.tail_below is not None else big,
        s.tail_above if s.tail_above is not None else big,
    )


def _eval_series_at_laurent(
    outer: LaurentSeries, inner: LaurentSeries, clip: int
) -> LaurentSeries:
    """Horner substitution of a two-sided Laurent argument into a power
    series; callers guarantee coefficient decay makes this converge."""
    if outer.lo < 0:
        raise ValueError("outer series must be a power series")
    inner = _pseudo_entire(inner)
    result = LaurentSeries.zero(outer.context, inner.domain)
    for n in range(outer.hi, -1, -1):
        result = (result * inner).window_clipped(-clip, clip)
        coef = outer.coefficient(n)
        if not coef.is_zero:
            result = result + LaurentSeries(
                outer.context, {0: coef}, inner.domain, 0, 0
            )
    return result


def _eval_poly_at_laurent(
    coeffs: list[Fraction], inner: LaurentSeries, ctx: PadicContext, clip: int
) -> LaurentSeries:
    inner = _pseudo_entire(inner)
    result = LaurentSeries.zero(ctx, inner.domain)
    for k in reversed(range(len(coeffs))):
        result = (result * inner).window_clipped(-clip, clip)
        if coeffs[k] != 0:
            result = result + LaurentSeries(
                ctx, {0: PadicNumber.from_fraction(coeffs[k], ctx)}, inner.domain, 0, 0
            )
    return result
