"""Exact arithmetic layer: factorization, declared bases, symbolic
ratios and values, multiplicative dependence, dimension solver."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lipeq.exactnum import (ExactRatio, SymValue, DeclaredBase,
                            FactorizationError,
                            UncertifiableComparisonError,
                            factorize, ratio_cmp, to_exponent_vector,
                            mult_dependence, log_ratio_rational,
                            moran_dimension)


# ---------------------------------------------------------------------------
# factorization

class TestFactorize:
    def test_small(self):
        assert factorize(360) == {2: 3, 3: 2, 5: 1}

    def test_one(self):
        assert factorize(1) == {}

    def test_prime(self):
        assert factorize(101) == {101: 1}

    def test_large_semiprime(self):
        p, q = 1000003, 1000033
        assert factorize(p * q) == {p: 1, q: 1}

    def test_unfactorable_raises(self):
        # product of two 80-bit primes cannot be certified small
        n = (2 ** 82 - 99) * (2 ** 80 - 65)
        with pytest.raises(FactorizationError):
            factorize(n, max_factor_bits=64)

    @given(st.integers(min_value=2, max_value=10 ** 9))
    def test_roundtrip(self, n):
        fac = factorize(n)
        prod = 1
        for p, e in fac.items():
            prod *= p ** e
        assert prod == n


# ---------------------------------------------------------------------------
# declared bases and symbolic ratios

def golden_env():
    # x with x + x^2 = 1, i.e. (sqrt(5)-1)/2
    b = DeclaredBase("g", "0.61803398874989484820458683436563811772", digits=35)
    return {"g": b}


class TestExactRatio:
    def test_rational_equality(self):
        assert ExactRatio(Fraction(2, 10)) == ExactRatio(Fraction(1, 5))

    def test_symbolic_structural_equality(self):
        a = ExactRatio(Fraction(1, 2), (("g", 2),))
        b = ExactRatio(Fraction(1, 2), (("g", 2),))
        c = ExactRatio(Fraction(1, 2), (("g", 3),))
        assert a == b
        assert a != c

    def test_mul_div_pow(self):
        a = ExactRatio(Fraction(1, 3), (("g", 1),))
        b = ExactRatio(Fraction(3, 4), (("g", 2),))
        assert a * b == ExactRatio(Fraction(1, 4), (("g", 3),))
        assert (a * b) / b == a
        assert a.pow_int(3) == ExactRatio(Fraction(1, 27), (("g", 3),))

    def test_interval_encloses_value(self):
        env = golden_env()
        r = ExactRatio(Fraction(1, 2), (("g", 2),))
        lo, hi = r.interval(env)
        v = Fraction("0.61803398874989484820458683436563811772") ** 2 / 2
        assert lo <= v <= hi
        assert hi - lo < Fraction(1, 10 ** 30)

    def test_ratio_cmp(self):
        env = golden_env()
        g = ExactRatio(Fraction(1), (("g", 1),))
        assert ratio_cmp(g, ExactRatio(Fraction(1, 2)), env) == 1
        assert ratio_cmp(g, ExactRatio(Fraction(2, 3)), env) == -1
        assert ratio_cmp(g, g, env) == 0

    def test_ratio_cmp_uncertifiable(self):
        # one decimal digit cannot separate g from 0.618
        b = DeclaredBase("g", "0.6", digits=1)
        g = ExactRatio(Fraction(1), (("g", 1),))
        with pytest.raises(UncertifiableComparisonError):
            ratio_cmp(g, ExactRatio(Fraction(3, 5)), {"g": b})


class TestSymValue:
    def test_arithmetic(self):
        env = golden_env()
        g = SymValue.wrap(ExactRatio(Fraction(1), (("g", 1),)).value(env),
                          env)
        two_g = g + g
        assert two_g - g == g
        assert g * Fraction(2) == two_g

    def test_golden_identity(self):
        # g + g^2 differs from 1 by less than the enclosure can certify
        # nonzero, and the canonical-zero check is purely structural,
        # so equality comparisons must refuse rather than guess
        env = golden_env()
        g = ExactRatio(Fraction(1), (("g", 1),)).value(env)
        g2 = ExactRatio(Fraction(1), (("g", 2),)).value(env)
        s = SymValue.wrap(g, env) + g2
        with pytest.raises(UncertifiableComparisonError):
            s == Fraction(1)

    def test_comparisons(self):
        env = golden_env()
        g = SymValue.wrap(
            ExactRatio(Fraction(1), (("g", 1),)).value(env), env)
        assert g > Fraction(1, 2)
        assert g < Fraction(7, 10)
        assert not g.is_zero()


# ---------------------------------------------------------------------------
# multiplicative dependence

class TestMultDependence:
    def test_equal(self):
        r = ExactRatio(Fraction(1, 5))
        assert mult_dependence(r, r) == (1, 1)

    def test_quarter_eighth(self):
        a = ExactRatio(Fraction(1, 4))
        b = ExactRatio(Fraction(1, 8))
        assert mult_dependence(a, b) == (3, 2)

    def test_independent(self):
        a = ExactRatio(Fraction(1, 2))
        b = ExactRatio(Fraction(1, 3))
        assert mult_dependence(a, b) is None

    def test_symbolic(self):
        a = ExactRatio(Fraction(1), (("g", 2),))
        b = ExactRatio(Fraction(1), (("g", 3),))
        assert mult_dependence(a, b) == (3, 2)

    def test_symbolic_vs_rational_independent(self):
        a = ExactRatio(Fraction(1), (("g", 1),))
        b = ExactRatio(Fraction(1, 2))
        assert mult_dependence(a, b) is None

    def test_log_ratio(self):
        a = ExactRatio(Fraction(1, 4))
        b = ExactRatio(Fraction(1, 8))
        assert log_ratio_rational(a, b) == Fraction(2, 3)
        assert log_ratio_rational(a, ExactRatio(Fraction(1, 3))) is None

    @given(st.integers(min_value=2, max_value=30),
           st.integers(min_value=1, max_value=5),
           st.integers(min_value=1, max_value=5))
    def test_powers_of_common_base(self, base, i, j):
        a = ExactRatio(Fraction(1, base ** i))
        b = ExactRatio(Fraction(1, base ** j))
        p, q = mult_dependence(a, b)
        assert a.pow_int(p) == b.pow_int(q)
        g = math.gcd(p, q)
        assert g == 1

    def test_exponent_vector(self):
        r = ExactRatio(Fraction(4, 45), (("g", -2),))
        assert to_exponent_vector(r) == {2: 2, 3: -2, 5: -1, "g": -2}


# ---------------------------------------------------------------------------
# dimension solver

class TestMoranDimension:
    def test_equal_ratios_closed_form(self):
        for n, m in ((3, 5), (4, 7), (2, 9)):
            s = moran_dimension([ExactRatio(Fraction(1, m))] * n)
            assert abs(s - math.log(n) / math.log(m)) <= 1e-10

    def test_golden_case(self):
        # two ratios x, x^2 with x + x^2 = 1 have dimension 1
        env = golden_env()
        rs = [ExactRatio(Fraction(1), (("g", 1),)),
              ExactRatio(Fraction(1), (("g", 2),))]
        assert abs(moran_dimension(rs, env=env) - 1.0) <= 1e-10

    def test_residual_bound(self):
        rs = [ExactRatio(Fraction(1, 4)), ExactRatio(Fraction(1, 3)),
              ExactRatio(Fraction(1, 8))]
        s = moran_dimension(rs)
        total = sum(float(r.as_fraction()) ** s for r in rs)
        assert abs(total - 1.0) <= 1e-12

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.fractions(min_value=Fraction(1, 50),
                                 max_value=Fraction(9, 10)),
                    min_size=2, max_size=6))
    def test_random_lists(self, fracs):
        rs = [ExactRatio(f) for f in fracs]
        s = moran_dimension(rs)
        total = sum(float(f) ** s for f in fracs)
        assert abs(total - 1.0) <= 1e-12

    def test_needs_two_ratios(self):
        with pytest.raises(Exception):
            moran_dimension([ExactRatio(Fraction(1, 2))])
