"""Dense polynomials over Q as plain coefficient lists (ascending powers).

Just enough exact machinery for the curve model: evaluation, arithmetic,
gcd, and Yun's square-free decomposition.  Lists are never mutated in place
by the exported helpers.
"""

from __future__ import annotations

from fractions import Fraction

Poly = list[Fraction]


def normalize(c: list) -> Poly:
    """Coerce to Fraction and strip trailing zeros (zero poly -> [])."""
    out = [Fraction(x) for x in c]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(f: Poly) -> int:
    """Degree, with deg 0 = -1 by convention."""
    return len(f) - 1


def evaluate(f: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return normalize(
        [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)]
    )


def scale(f: Poly, c: Fraction) -> Poly:
    return normalize([c * a for a in f])


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return normalize(out)


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    quo = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    inv_lead = 1 / g[-1]
    while len(rem) >= len(g) and any(c != 0 for c in rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - len(g)
        coef = rem[-1] * inv_lead
        quo[shift] = coef
        for i, b in enumerate(g):
            rem[shift + i] -= coef * b
        rem.pop()
    return normalize(quo), normalize(rem)


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm."""
    a, b = normalize(f), normalize(g)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if a:
        a = scale(a, 1 / a[-1])
    return a


def derivative(f: Poly) -> Poly:
    return normalize([i * c for i, c in enumerate(f)][1:])


def squarefree_decomposition(f: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Yun's algorithm: f = lead * prod g_i^i with the g_i monic, square-free,
    and pairwise coprime.  Returns (lead, [(g_i, i), ...]) omitting trivial
    factors.
    """
    f = normalize(f)
    if not f:
        raise ValueError("zero polynomial")
    lead = f[-1]
    f = scale(f, 1 / lead)
    if degree(f) == 0:
        return lead, []
    df = derivative(f)
    a = gcd(f, df)
    b = divmod_poly(f, a)[0]
    c = divmod_poly(df, a)[0]
    d = add(c, scale(derivative(b), Fraction(-1)))
    factors: list[tuple[Poly, int]] = []
    i = 1
    while degree(b) > 0:
        g = gcd(b, d)
        if degree(g) > 0:
            factors.append((g, i))
        b = divmod_poly(b, g)[0]
        c = divmod_poly(d, g)[0]
        d = add(c, scale(derivative(b), Fraction(-1)))
        i += 1
    return lead, factors


def shift(f: Poly, t: Fraction) -> Poly:
    """f(x + t)."""
    out: Poly = []
    for c in reversed(normalize(f)):
        out = add(mul(out, [t, Fraction(1)]), [c])
    return out


def compose_linear(f: Poly, a: Fraction, b: Fraction) -> Poly:
    """f(a + b*x)."""
    out: Poly = []
    for c in reversed(normalize(f)):
        out = add(mul(out, [a, b]), [c])
    return out


def reverse(f: Poly, n: int | None = None) -> Poly:
    """x^n * f(1/x) for n >= deg f (defaults to deg f)."""
    f = normalize(f)
    if n is None:
        n = degree(f)
    if n < degree(f):
        raise ValueError("reversal order below degree")
    out = [Fraction(0)] * (n + 1)
    for i, c in enumerate(f):
        out[n - i] = c
    return normalize(out)


def is_squarefree(f: Poly) -> bool:
    f = normalize(f)
    return degree(f) >= 1 and degree(gcd(f, derivative(f))) == 0
