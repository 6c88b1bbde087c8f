import random
from fractions import Fraction

import pytest

from lagdef.fields import GAUSSIAN, GaussianRational
from lagdef.ring import (
    Inhomogeneous,
    ParseError,
    RingError,
    WeightedRing,
    is_quasi_homogeneous,
    weighted_degree,
    z_substitution,
)

SIGMA2 = WeightedRing(["A", "B", "C", "D"], [2, 3, 4, 5])

F1 = "-27*B^2*C+96*A*C^2-45*A*B*D+1125*D^2"
F2 = "81*B^3-288*A*B*C+405*A^2*D-900*C*D"
F3 = "-45*A*B^2+135*A^2*C-300*C^2+1125*B*D"


def rand_poly(ring, rng, max_terms=4, max_exp=3, max_coeff=9):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mon = tuple(rng.randint(0, max_exp) for _ in ring.variables)
        c = rng.randint(-max_coeff, max_coeff)
        if c:
            terms[mon] = terms.get(mon, 0) + c
    p = ring.zero()
    for mon, c in terms.items():
        p = p + ring.monomial(mon, c)
    return p


class TestArithmetic:
    def test_difference_of_squares(self):
        R = WeightedRing(["x", "y"], [1, 1])
        x, y = R.gens()
        assert (x + y) * (x - y) == x ** 2 - y ** 2

    def test_add_zero(self):
        p = SIGMA2.parse(F1)
        assert p + SIGMA2.zero() == p

    def test_long_coefficient_multiplication(self):
        # -27 B^2 C times 1125 D^2
        a = SIGMA2.parse("-27*B^2*C")
        b = SIGMA2.parse("1125*D^2")
        assert a * b == SIGMA2.parse("-30375*B^2*C*D^2")

    def test_ring_axioms_random(self):
        rng = random.Random(7)
        R = WeightedRing(["x", "y", "z"], [1, 2, 1])
        for _ in range(25):
            p, q, r = (rand_poly(R, rng) for _ in range(3))
            assert (p + q) + r == p + (q + r)
            assert p * q == q * p
            assert p * (q + r) == p * q + p * r
            assert (p * q) * r == p * (q * r)

    def test_ring_mismatch(self):
        R1 = WeightedRing(["x"], [1])
        R2 = WeightedRing(["y"], [1])
        with pytest.raises(RingError):
            _ = R1.gens()[0] + R2.gens()[0]

    def test_power(self):
        R = WeightedRing(["x"], [1])
        (x,) = R.gens()
        assert (x + 1) ** 3 == x ** 3 + 3 * x ** 2 + 3 * x + 1


class TestWeightedDegree:
    def test_monomial(self):
        assert weighted_degree(SIGMA2.parse("-27*B^2*C")) == 10

    def test_cusp(self):
        R = WeightedRing(["x", "y"], [2, 3])
        assert weighted_degree(R.parse("y^2-x^3")) == 6

    def test_inhomogeneous_marker(self):
        R = WeightedRing(["x", "y"], [1, 1])
        d = weighted_degree(R.parse("x+y^2"))
        assert d == Inhomogeneous([1, 2])

    def test_zero_poly_has_no_degree(self):
        with pytest.raises(ValueError):
            weighted_degree(SIGMA2.zero())

    def test_degree_additive_for_homogeneous(self):
        rng = random.Random(11)
        for _ in range(10):
            d1, d2 = rng.randint(2, 8), rng.randint(2, 8)
            mons1 = SIGMA2.monomials_of_weight(d1)
            mons2 = SIGMA2.monomials_of_weight(d2)
            if not mons1 or not mons2:
                continue
            p = sum((SIGMA2.monomial(m, rng.randint(1, 5)) for m in mons1), SIGMA2.zero())
            q = sum((SIGMA2.monomial(m, rng.randint(1, 5)) for m in mons2), SIGMA2.zero())
            assert weighted_degree(p * q) == d1 + d2

    def test_sigma2_generators(self):
        ok, degs = is_quasi_homogeneous([SIGMA2.parse(F1), SIGMA2.parse(F2), SIGMA2.parse(F3)])
        assert ok and degs == [10, 9, 8]

    def test_quasi_homogeneous_detects(self):
        R = WeightedRing(["x", "y"], [3, 2])
        ok, degs = is_quasi_homogeneous([R.parse("x^2+y^3")])
        assert ok and degs == [6]
        R2 = WeightedRing(["x", "y"], [1, 1])
        ok, _ = is_quasi_homogeneous([R2.parse("x+y^2")])
        assert not ok


class TestDerivative:
    def test_examples(self):
        R = WeightedRing(["x", "y"], [2, 3])
        f = R.parse("y^2-x^3")
        assert f.derivative("x") == R.parse("-3*x^2")
        assert SIGMA2.parse("1125*D^2").derivative("D") == SIGMA2.parse("2250*D")
        assert R.parse("x").derivative("y").is_zero()

    def test_unknown_variable(self):
        R = WeightedRing(["x"], [1])
        with pytest.raises(RingError):
            R.parse("x").derivative("q")

    def test_leibniz_random(self):
        rng = random.Random(3)
        R = WeightedRing(["x", "y"], [1, 1])
        for _ in range(20):
            p, q = rand_poly(R, rng), rand_poly(R, rng)
            for v in ("x", "y"):
                lhs = (p * q).derivative(v)
                rhs = p.derivative(v) * q + p * q.derivative(v)
                assert lhs == rhs


class TestComplexSubstitution:
    RING = WeightedRing(["p1", "q1", "p2", "q2"], [1, 1, 1, 1], field=GAUSSIAN)
    ZP = [("p1", "q1"), ("p2", "q2")]

    def test_modulus_squared(self):
        p = z_substitution(self.RING, self.ZP, [1, 1, 0, 0])
        assert p == self.RING.parse("p1^2+q1^2")
        assert all(
            not isinstance(c, GaussianRational) or c.im == 0 for c in p.terms.values()
        )

    def test_zbar_squared(self):
        p = z_substitution(self.RING, self.ZP, [0, 2, 0, 0])
        assert p == self.RING.parse("p1^2-q1^2-2*i*p1*q1")

    def test_second_pair(self):
        assert z_substitution(self.RING, self.ZP, [0, 0, 1, 1]) == self.RING.parse("p2^2+q2^2")

    def test_requires_gaussian(self):
        R = WeightedRing(["p1", "q1"], [1, 1])
        with pytest.raises(RingError):
            z_substitution(R, [("p1", "q1")], [1, 1])


class TestParser:
    def test_sigma2_roundtrip(self):
        for text in (F1, F2, F3):
            p = SIGMA2.parse(text)
            assert SIGMA2.parse(str(p)) == p

    def test_whitespace_insensitive(self):
        a = SIGMA2.parse(" -27*B^2*C + 96*A*C^2\t-45*A*B*D+1125*D^2 ")
        assert a == SIGMA2.parse(F1)

    def test_parentheses_and_quotient(self):
        R = WeightedRing(["x", "y"], [1, 1])
        assert R.parse("(x+y)^2 - 2*x*y") == R.parse("x^2+y^2")
        assert R.parse("x/2") == R.parse("x") / 2

    def test_imaginary_unit(self):
        R = WeightedRing(["x", "y"], [1, 1], field=GAUSSIAN)
        p = R.parse("i*x")
        assert p * p == -(R.parse("x") ** 2)

    def test_errors(self):
        R = WeightedRing(["x", "y"], [1, 1])
        for bad in ("x +", "x ** 2", "(x", "x^y", "x/(y)"):
            with pytest.raises(ParseError):
                R.parse(bad)

    def test_unknown_variable(self):
        with pytest.raises(RingError):
            SIGMA2.parse("E^2")


class TestGaussianRationals:
    def test_field_ops(self):
        i = GaussianRational(0, 1)
        a = GaussianRational(Fraction(1, 2), Fraction(3, 4))
        assert a * (1 / a) == 1
        assert i * i == -1
        assert (a + a.conjugate()) == 2 * a.re
        assert complex(i) == 1j

    def test_division_normalized(self):
        a = GaussianRational(1, 1)
        b = GaussianRational(2, -2)
        q = a / b
        assert q * b == a
