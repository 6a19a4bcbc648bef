import random

import pytest
from gmpy2 import mpq

from toproot.newton import classic_newton, contraction_check, iteration_cap
from toproot.oracle import from_roots, with_counter


class TestClassicNewton:
    def test_single_root(self):
        res = classic_newton(from_roots([mpq(1, 4)]), mpq(1, 2**10))
        assert 0 <= res.root_estimate - mpq(1, 4) <= mpq(1, 2**10)

    def test_three_roots_tight(self):
        roots = [mpq(1, 2), mpq(1, 4), mpq(1, 8)]
        res = classic_newton(from_roots(roots), mpq(1, 2**20))
        assert 0 <= res.root_estimate - mpq(1, 2) <= mpq(1, 2**20)

    def test_rejects_large_eps(self):
        with pytest.raises(ValueError):
            classic_newton(from_roots([0]), mpq(3, 4))
        with pytest.raises(ValueError):
            classic_newton(from_roots([0]), 0)

    def test_two_queries_per_iteration(self):
        res = classic_newton(from_roots([mpq(1, 4), mpq(1, 8)]), mpq(1, 2**12))
        assert res.queries == 2 * res.iterations

    def test_exact_root_hit_returns_immediately(self):
        # x0 = 1 is already the top root
        res = classic_newton(from_roots([1, mpq(1, 4)]), mpq(1, 4))
        assert res.root_estimate == 1
        assert res.queries == 1

    def test_respects_iteration_cap(self):
        n, eps = 5, mpq(1, 2**10)
        res = classic_newton(from_roots([mpq(i, 16) for i in range(1, 6)]), eps)
        assert res.iterations <= iteration_cap(n, eps)

    def test_one_sided_and_monotone(self):
        rng = random.Random(4242)
        for _ in range(20):
            n = rng.randrange(1, 9)
            roots = [mpq(rng.randrange(0, 2**10 + 1), 2**11) for _ in range(n)]
            top = max(roots)
            res = classic_newton(from_roots(roots), mpq(1, 2**14))
            assert 0 <= res.root_estimate - top <= mpq(1, 2**14)
            for prev, cur in zip(res.iterates, res.iterates[1:]):
                assert cur <= prev
                assert cur >= top

    def test_query_bits_tracked_when_wrapped(self):
        counted, log = with_counter(from_roots([mpq(1, 4)]))
        classic_newton(counted, mpq(1, 2**10))
        assert log.count > 0 and log.max_query_bits > 0


class TestContractionCheck:
    def test_single_root_trace(self):
        res = classic_newton(from_roots([mpq(1, 4)]), mpq(1, 2**10))
        assert contraction_check(res.iterates, mpq(1, 4), 1)

    def test_random_known_root_traces(self):
        rng = random.Random(77)
        for _ in range(15):
            n = rng.randrange(1, 7)
            roots = [mpq(rng.randrange(0, 2**8 + 1), 2**9) for _ in range(n)]
            res = classic_newton(from_roots(roots), mpq(1, 2**16))
            assert contraction_check(res.iterates, max(roots), n)

    def test_rejects_doctored_trace(self):
        # second iterate dips below lambda_1: must fail
        assert not contraction_check([mpq(1), mpq(1, 8)], mpq(1, 4), 2)
        # non-contracting step: must fail
        assert not contraction_check([mpq(1), mpq(1)], mpq(1, 4), 2)
