import random
from fractions import Fraction

import pytest
from gmpy2 import mpq

from toproot.oracle import (PolynomialOracle, expand_from_roots, explicit_oracle,
                            from_roots, read_coefficients, with_counter)


def random_rational(rng, bits=10, half=False):
    den = 1 << bits
    top = den // 2 if half else den
    return mpq(rng.randrange(0, top + 1), den)


class TestExplicitOracle:
    def test_constant_term(self):
        p = explicit_oracle([1, -3, 2])
        assert p.evaluate(0) == 2

    def test_direct_substitution(self):
        p = explicit_oracle([1, -3, 2])
        assert p.evaluate(3) == 2  # 9 - 9 + 2

    def test_rational_points(self):
        p = explicit_oracle([1, mpq(-3, 2), mpq(1, 2)])
        assert p.evaluate(mpq(1, 3)) == mpq(1, 3) ** 2 - mpq(3, 2) * mpq(1, 3) + mpq(1, 2)

    def test_rejects_degree_zero(self):
        with pytest.raises(ValueError):
            explicit_oracle([1])

    def test_rejects_non_monic(self):
        with pytest.raises(ValueError):
            explicit_oracle([2, 1, 1])

    def test_eval_pair_matches_evaluate(self):
        p = explicit_oracle([1, mpq(-1, 3), mpq(5, 7), -2])
        x = mpq(22, 7)
        num, den = p.eval_pair(x.numerator, x.denominator)
        assert mpq(num, den) == p.evaluate(x)


class TestFromRoots:
    def test_product_example(self):
        p = from_roots([mpq(1, 2), mpq(1, 4)])
        assert p.evaluate(1) == mpq(3, 8)

    def test_root_evaluates_to_zero(self):
        assert from_roots([0]).evaluate(0) == 0

    def test_triple_root(self):
        p = from_roots([mpq(1, 4)] * 3)
        assert p.evaluate(mpq(1, 2)) == mpq(1, 64)

    def test_top_root_recorded(self):
        p = from_roots([mpq(1, 8), mpq(3, 8), mpq(1, 4)])
        assert p.top_root == mpq(3, 8)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            from_roots([])

    def test_matches_independent_product_on_random_instances(self):
        # Independent oracle: plain Fraction arithmetic, no shared code path.
        rng = random.Random(20240817)
        for _ in range(100):
            n = rng.randrange(1, 13)
            roots = [random_rational(rng) for _ in range(n)]
            p = from_roots(roots)
            x = random_rational(rng) - mpq(1, 3)
            expected = Fraction(1)
            fx = Fraction(int(x.numerator), int(x.denominator))
            for r in roots:
                expected *= fx - Fraction(int(r.numerator), int(r.denominator))
            got = p.evaluate(x)
            assert Fraction(int(got.numerator), int(got.denominator)) == expected

    def test_agrees_with_expanded_coefficients(self):
        rng = random.Random(7)
        for _ in range(25):
            n = rng.randrange(1, 7)
            roots = [random_rational(rng) for _ in range(n)]
            direct = from_roots(roots)
            expanded = explicit_oracle(expand_from_roots(roots))
            for _ in range(4):
                x = random_rational(rng, bits=8) - mpq(1, 5)
                assert direct.evaluate(x) == expanded.evaluate(x)

    def test_monotone_beyond_top_root(self):
        rng = random.Random(99)
        for _ in range(20):
            roots = [random_rational(rng, half=True) for _ in range(rng.randrange(1, 9))]
            p = from_roots(roots)
            top = max(roots)
            y = top + random_rational(rng) + mpq(1, 1024)
            x = y + random_rational(rng) + mpq(1, 1024)
            assert p.evaluate(x) > p.evaluate(y) > 0


class TestQueryCounting:
    def test_zero_before_any_query(self):
        _, log = with_counter(from_roots([0]))
        assert log.count == 0 and log.max_query_bits == 0

    def test_counts_evaluations(self):
        counted, log = with_counter(from_roots([mpq(1, 4), mpq(1, 2)]))
        for x in (0, 1, mpq(3, 4)):
            counted.evaluate(x)
        assert log.count == 3

    def test_bit_accounting(self):
        counted, log = with_counter(from_roots([0]))
        counted.evaluate(mpq(1, 1024))
        assert log.max_query_bits >= 11

    def test_pair_queries_logged_in_canonical_form(self):
        counted, log = with_counter(from_roots([0]))
        counted.eval_pair(2, 2048)  # reduces to 1/1024
        assert log.count == 1
        assert log.max_query_bits == 12

    def test_point_recording_flag(self):
        counted, log = with_counter(from_roots([0]), record_points=True)
        counted.evaluate(mpq(1, 3))
        assert log.points == [mpq(1, 3)]
        counted2, log2 = with_counter(from_roots([0]))
        counted2.evaluate(mpq(1, 3))
        assert log2.points is None

    def test_concurrent_counting(self):
        from concurrent.futures import ThreadPoolExecutor
        counted, log = with_counter(from_roots([mpq(1, 2)] * 4))
        with ThreadPoolExecutor(max_workers=8) as pool:
            list(pool.map(counted.evaluate, [mpq(i, 17) for i in range(200)]))
        assert log.count == 200


class TestDegreeValidation:
    def test_degree_must_be_positive(self):
        with pytest.raises(ValueError):
            PolynomialOracle(0, lambda x: x)


class TestCoefficientFile(object):
    def test_round_trip_with_comments(self, tmp_path):
        path = tmp_path / "poly.txt"
        path.write_text("# x^2 - 3x + 2\n1\n-3\n\n2   # constant\n")
        assert read_coefficients(path) == [1, -3, 2]

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1\nnot-a-number\n")
        with pytest.raises(ValueError):
            read_coefficients(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("# nothing here\n")
        with pytest.raises(ValueError):
            read_coefficients(path)
