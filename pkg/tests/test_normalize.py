import random

import pytest
from gmpy2 import mpq

from toproot.detpoly import SymmetricMatrix, charpoly_oracle
from toproot.normalize import (AffineRootMap, denormalize_root,
                               normalize_matrix, normalize_poly)
from toproot.oracle import from_roots


def leading_coefficient(oracle, n):
    xs = [mpq(i) for i in range(n + 1)]
    total = mpq(0)
    for i, xi in enumerate(xs):
        denom = mpq(1)
        for j, xj in enumerate(xs):
            if i != j:
                denom *= xi - xj
        total += oracle.evaluate(xi) / denom
    return total


class TestNormalizePoly:
    def test_symmetric_pair_maps_inside(self):
        p = from_roots([mpq(1, 2), mpq(-1, 2)])
        q, m = normalize_poly(p, 1)
        assert q.evaluate(mpq(3, 8)) == 0
        assert q.evaluate(mpq(1, 8)) == 0
        assert m.scale == 4

    def test_zero_maps_to_center(self):
        q, _ = normalize_poly(from_roots([0]), 1)
        assert q.evaluate(mpq(1, 4)) == 0

    def test_extreme_roots_hit_boundary(self):
        a = mpq(3, 2)
        q, _ = normalize_poly(from_roots([a, -a]), a)
        assert q.evaluate(mpq(1, 2)) == 0
        assert q.evaluate(0) == 0

    def test_rejects_nonpositive_bound(self):
        with pytest.raises(ValueError):
            normalize_poly(from_roots([0]), 0)

    def test_each_eval_costs_one_underlying_query(self):
        from toproot.oracle import with_counter
        counted, log = with_counter(from_roots([mpq(1, 3)]))
        q, _ = normalize_poly(counted, 1)
        q.evaluate(mpq(1, 7))
        q.evaluate(mpq(2, 7))
        assert log.count == 2

    def test_normalized_oracle_is_monic(self):
        rng = random.Random(17)
        for n in (1, 2, 3, 5, 8):
            roots = [mpq(rng.randrange(-64, 65), 64) for _ in range(n)]
            q, _ = normalize_poly(from_roots(roots), 2)
            assert leading_coefficient(q, n) == 1

    def test_round_trip_recovers_top_root_exactly(self):
        rng = random.Random(23)
        for _ in range(25):
            n = rng.randrange(1, 8)
            a = mpq(rng.randrange(1, 9), rng.randrange(1, 5))
            roots = [a * mpq(rng.randrange(-128, 129), 128) for _ in range(n)]
            p = from_roots(roots)
            q, m = normalize_poly(p, a)
            # the normalized top root is known from the construction
            mu = max(r / (4 * a) + mpq(1, 4) for r in roots)
            assert q.evaluate(mu) == 0
            assert denormalize_root(mu, m) == max(roots)
            assert q.top_root == mu

    def test_error_transfer_is_exactly_scale(self):
        m = AffineRootMap(scale=mpq(20, 3), degree=4)
        mu, err = mpq(1, 3), mpq(1, 97)
        moved = denormalize_root(mu + err, m) - denormalize_root(mu, m)
        assert moved == m.scale * err


class TestDenormalizeRoot:
    def test_inverse_of_first_example(self):
        assert denormalize_root(mpq(3, 8), AffineRootMap(mpq(4), 2)) == mpq(1, 2)

    def test_center_to_zero(self):
        assert denormalize_root(mpq(1, 4), AffineRootMap(mpq(4), 1)) == 0

    def test_right_endpoint_to_bound(self):
        a = mpq(7, 5)
        assert denormalize_root(mpq(1, 2), AffineRootMap(4 * a, 3)) == a


class TestNormalizeMatrix:
    def test_hand_example(self):
        A = SymmetricMatrix.diagonal([1, -1])
        B, m = normalize_matrix(A, mpq(3, 2))
        assert B.rows[0][0] == mpq(5, 12)
        assert B.rows[1][1] == mpq(1, 12)
        assert denormalize_root(mpq(5, 12), m) == 1

    def test_zero_matrix(self):
        A = SymmetricMatrix([[mpq(0)] * 2 for _ in range(2)])
        B, _ = normalize_matrix(A, 1)
        assert B.rows[0][0] == mpq(1, 4) and B.rows[0][1] == 0

    def test_identity(self):
        B, m = normalize_matrix(SymmetricMatrix.identity(2), 2)
        assert B.rows[0][0] == mpq(3, 8)
        assert denormalize_root(mpq(3, 8), m) == 1

    def test_rejects_nonpositive_bound(self):
        with pytest.raises(ValueError):
            normalize_matrix(SymmetricMatrix.identity(2), 0)

    def test_result_is_symmetric_rational(self):
        A = SymmetricMatrix([[mpq(1), mpq(-2)], [mpq(-2), mpq(5)]])
        B, _ = normalize_matrix(A, mpq(11, 2))
        assert isinstance(B, SymmetricMatrix)

    def test_spectrum_contained_via_charpoly_signs(self):
        # det(xI - B) keeps one sign at x = 1/2 and alternates at 0
        rng = random.Random(31)
        from toproot.detpoly import frobenius_upper_bound
        for _ in range(10):
            n = rng.randrange(1, 5)
            rows = [[mpq(rng.randrange(-9, 10), rng.randrange(1, 4))
                     for _ in range(n)] for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    rows[j][i] = rows[i][j]
            A = SymmetricMatrix(rows)
            B, _ = normalize_matrix(A, frobenius_upper_bound(A))
            p = charpoly_oracle(B)
            assert p.evaluate(mpq(1, 2)) > 0
            at_zero = p.evaluate(0)
            assert at_zero > 0 if n % 2 == 0 else at_zero < 0
