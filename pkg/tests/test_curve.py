import random
from fractions import Fraction

import pytest

from superchab import ratpoly
from superchab.curve import (
    CurvePoint,
    HypothesisViolation,
    SuperellipticCurve,
    apply_automorphism,
    branch_count_cap,
    genus,
    move_branch_from_infinity,
    satisfies_curve,
    validate,
)
from superchab.padic import PadicContext, PadicNumber

Q7 = PadicContext(7, 20)


def curve_x4_plus_1(m=3):
    return SuperellipticCurve(m, [1, 0, 0, 0, 1])


class TestValidation:
    def test_x4_plus_1_valid(self):
        stats = validate(curve_x4_plus_1())
        assert (stats.s, stats.degree, stats.genus) == (4, 4, 3)

    def test_total_multiplicity_rejected(self):
        c = SuperellipticCurve.from_branch_points(3, 1, [(1, 3), (2, 1)])
        with pytest.raises(HypothesisViolation) as exc:
            validate(c)
        assert any("multiplicity 3" in v for v in exc.value.violations)

    def test_low_genus_rejected(self):
        with pytest.raises(HypothesisViolation) as exc:
            validate(curve_x4_plus_1(m=2))
        assert any("genus 1" in v for v in exc.value.violations)

    def test_low_degree_rejected(self):
        c = SuperellipticCurve(3, [1, 1, 0, 1])
        with pytest.raises(HypothesisViolation) as exc:
            validate(c)
        assert any("below 4" in v for v in exc.value.violations)

    def test_branch_data_must_match(self):
        with pytest.raises(ValueError):
            SuperellipticCurve(3, [1, 0, 0, 0, 1], branch_data=[(Fraction(1), 4)])


class TestGenus:
    def test_frozen_values(self):
        assert genus(SuperellipticCurve(2, [1] + [0] * 7 + [1])) == 3
        assert genus(curve_x4_plus_1()) == 3
        assert genus(SuperellipticCurve(3, [1] + [0] * 11 + [1])) == 10

    def test_classical_hyperelliptic(self):
        rng = random.Random(7)
        done = 0
        while done < 20:
            deg = rng.randrange(4, 24)
            coeffs = [Fraction(rng.randrange(-9, 10)) for _ in range(deg)] + [
                Fraction(1)
            ]
            if not ratpoly.is_squarefree(coeffs):
                continue
            g = genus(SuperellipticCurve(2, coeffs))
            want = (deg - 2) // 2 if deg % 2 == 0 else (deg - 1) // 2
            assert g == want
            done += 1

    def test_multiplicity_blocks(self):
        # y^3 = (x-1)^2 (x-2): 2g-2 = 3*1 - gcd(3,3) - (1+1) = -2
        c = SuperellipticCurve.from_branch_points(3, 1, [(1, 2), (2, 1)])
        assert genus(c) == 0


class TestMoveBranchFromInfinity:
    def test_x4_plus_1(self):
        moved = move_branch_from_infinity(curve_x4_plus_1())
        assert moved.f == ratpoly.normalize(
            [Fraction(0), 0, 1, 0, 0, 0, 1]
        )
        # one new branch point (x = 0) of multiplicity 2 = 3 - (4 mod 3)
        assert (1, 2) in moved.branch_multiplicities()

    def test_divisible_degree_adds_no_root(self):
        c = SuperellipticCurve(2, [1] + [0] * 7 + [1])
        moved = move_branch_from_infinity(c)
        assert moved.degree == 8
        assert moved.branch_point_count == 8

    def test_root_at_origin_translates_first(self):
        c = SuperellipticCurve.from_branch_points(
            3, 1, [(0, 1), (2, 1), (3, 1), (4, 1)]
        )
        moved = move_branch_from_infinity(c)
        # t = 1 shifts the roots to -1, 1, 2, 3 before inversion
        roots = {t for t, _ in moved.branch_data}
        assert Fraction(-1) in roots and Fraction(1) in roots
        assert genus(moved) == genus(c)

    def test_genus_invariant_random(self):
        rng = random.Random(23)
        done = 0
        while done < 100:
            m = rng.randrange(2, 7)
            s = rng.randrange(4, 8)
            pool = list(range(-8, 9))
            rng.shuffle(pool)
            roots = [(Fraction(pool[i]), rng.randrange(1, m) if m > 2 else 1)
                     for i in range(s)]
            c = SuperellipticCurve.from_branch_points(m, rng.randrange(1, 5), roots)
            if c.degree < 4:
                continue
            assert genus(move_branch_from_infinity(c)) == genus(c)
            done += 1


class TestBranchCountCap:
    def test_frozen(self):
        assert branch_count_cap(curve_x4_plus_1()) == 6
        deg12 = SuperellipticCurve(3, [1] + [0] * 11 + [1])
        assert branch_count_cap(deg12) == 16
        deg8 = SuperellipticCurve(2, [1] + [0] * 7 + [1])
        assert branch_count_cap(deg8) == 8


class TestAutomorphism:
    def test_identity_power(self):
        pt = CurvePoint(Fraction(0), Fraction(1))
        assert apply_automorphism(pt, curve_x4_plus_1(), Q7, 3) is pt

    def test_hyperelliptic_flip_stays_rational(self):
        c = SuperellipticCurve(2, [1] + [0] * 5 + [1])
        pt = CurvePoint(Fraction(0), Fraction(1))
        out = apply_automorphism(pt, c, Q7, 1)
        assert out.y == Fraction(-1)

    def test_cube_twist_in_q7(self):
        pt = CurvePoint(Fraction(0), Fraction(1))
        out = apply_automorphism(pt, curve_x4_plus_1(), Q7, 1)
        assert out.y.value_mod(2) == 30

    def test_closure(self):
        c = curve_x4_plus_1()
        pt = CurvePoint(Fraction(0), Fraction(1))
        assert satisfies_curve(pt, c)
        for k in range(1, 3):
            image = apply_automorphism(pt, c, Q7, k)
            assert satisfies_curve(image, c)


class TestSatisfies:
    def test_exact(self):
        c = curve_x4_plus_1()
        assert satisfies_curve(CurvePoint(Fraction(0), Fraction(1)), c)
        assert not satisfies_curve(CurvePoint(Fraction(1), Fraction(1)), c)

    def test_padic(self):
        c = curve_x4_plus_1()
        x = PadicNumber.from_int(0, Q7)
        y = PadicNumber.from_int(1, Q7)
        assert satisfies_curve(CurvePoint(x, y), c)

    def test_infinity_marker(self):
        assert satisfies_curve(CurvePoint(None, None, at_infinity=True), curve_x4_plus_1())
