import random
from fractions import Fraction

import numpy as np
import pytest

from benford2.dyadic import DepthError, unpack_bits
from benford2.transition import (
    apply_dense,
    apply_fast,
    brute_force_element,
    build_dense,
    chunk_decomposition,
    element_from_chunks,
    matrix_element,
    matrix_element_exact,
)

# the 4x4 matrix of limiting scaled probabilities at depth 2, row by row
DEPTH2_MATRIX = [
    [Fraction(1, 4), Fraction(2, 5), Fraction(1, 3), Fraction(2, 7)],
    [Fraction(1, 4), Fraction(1, 5), Fraction(1, 3), Fraction(2, 7)],
    [Fraction(1, 4), Fraction(1, 5), Fraction(1, 6), Fraction(2, 7)],
    [Fraction(1, 4), Fraction(1, 5), Fraction(1, 6), Fraction(1, 7)],
]


class TestMatrixElement:
    def test_depth2_golden_entries(self):
        assert matrix_element_exact((0, 0), (0, 1)) == Fraction(2, 5)
        assert matrix_element_exact((1, 1), (1, 1)) == Fraction(1, 7)

    def test_depth1_golden_entry(self):
        assert matrix_element_exact((0,), (1,)) == Fraction(2, 3)

    def test_float_is_rounded_rational(self):
        assert matrix_element((0, 0), (0, 1)) == 0.4

    def test_bounds(self):
        for k in range(1, 7):
            for a in range(1 << k):
                for x in range(1 << k):
                    value = matrix_element_exact(unpack_bits(x, k), unpack_bits(a, k))
                    assert 0 < value <= Fraction(2, 1 << k)
                    assert value >= Fraction(1, 1 << (k + 1))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            matrix_element((0,), (0, 1))

    def test_depth2_closed_form(self):
        # (1 + a1*[x1=0] + a2*[x1=a1][x2=0]) / (4 + 2*a1 + a2)
        for a1 in (0, 1):
            for a2 in (0, 1):
                for x1 in (0, 1):
                    for x2 in (0, 1):
                        direct = Fraction(
                            1 + a1 * (x1 == 0) + a2 * (x1 == a1) * (x2 == 0),
                            4 + 2 * a1 + a2,
                        )
                        assert direct == matrix_element_exact((x1, x2), (a1, a2))


class TestBuildDense:
    def test_depth1_golden(self):
        entries = build_dense(1).entries
        assert entries.tolist() == [[0.5, 2 / 3], [0.5, 1 / 3]]

    def test_depth2_golden(self):
        entries = build_dense(2).entries
        for x in range(4):
            for a in range(4):
                assert entries[x, a] == float(DEPTH2_MATRIX[x][a])

    def test_column_sums_float(self):
        for k in (1, 2, 5, 8):
            sums = build_dense(k).column_sums()
            assert np.max(np.abs(sums - 1.0)) <= 1e-12

    def test_column_sums_exact_rational(self):
        for k in range(1, 7):
            n = 1 << k
            for a in range(n):
                alpha = unpack_bits(a, k)
                total = sum(matrix_element_exact(unpack_bits(x, k), alpha) for x in range(n))
                assert total == 1

    def test_column_numerators_exact_through_depth_10(self):
        # common denominator n + a: numerators 1 + excess must sum to n + a
        for k in range(1, 11):
            n = 1 << k
            index = np.arange(n, dtype=np.int64)
            counts = np.sum(index[:, np.newaxis] < index[np.newaxis, :], axis=0) + n
            assert np.array_equal(counts, n + index)

    def test_depth_guard(self):
        with pytest.raises(DepthError):
            build_dense(0)
        with pytest.raises(DepthError):
            build_dense(13)


class TestApply:
    def test_dense_first_column(self):
        result = apply_dense(build_dense(1), np.array([1.0, 0.0]))
        assert result.tolist() == [0.5, 0.5]

    def test_dense_fixed_point_depth1(self):
        vector = np.array([4 / 7, 3 / 7])
        result = apply_dense(build_dense(1), vector)
        assert np.max(np.abs(result - vector)) <= 1e-15

    def test_dense_near_fixed_point_depth2(self):
        vector = np.array([0.3152, 0.2626, 0.2251, 0.1969])
        result = apply_dense(build_dense(2), vector)
        assert np.max(np.abs(result - vector)) <= 1e-4

    def test_dense_preserves_sum(self):
        rng = np.random.default_rng(5)
        for k in (1, 3, 6):
            matrix = build_dense(k)
            for _ in range(10):
                vector = rng.random(1 << k)
                assert abs(apply_dense(matrix, vector).sum() - vector.sum()) <= 1e-12

    def test_dense_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_dense(build_dense(2), np.ones(3))

    def test_fast_fixed_point_depth1(self):
        vector = np.array([4 / 7, 3 / 7])
        assert np.max(np.abs(apply_fast(vector, 1) - vector)) <= 1e-12

    def test_fast_uniform_output_strictly_decreasing(self):
        for k in range(1, 11):
            result = apply_fast(np.full(1 << k, 1.0 / (1 << k)), k)
            assert np.all(np.diff(result) < 0)

    def test_fast_matches_dense(self):
        rng = np.random.default_rng(17)
        for k in range(1, 11):
            matrix = build_dense(k)
            trials = 100 if k == 10 else 10
            for _ in range(trials):
                vector = rng.random(1 << k)
                gap = np.abs(apply_fast(vector, k) - apply_dense(matrix, vector))
                assert np.max(gap) <= 1e-12

    def test_fast_length_check(self):
        with pytest.raises(ValueError):
            apply_fast(np.ones(3), 2)
        with pytest.raises(DepthError):
            apply_fast(np.ones(2), 25)


class TestBruteForceElement:
    def test_closed_form_block_100_scale_100(self):
        # count below 2^(m+2) of numbers starting 100: 1+2+...+2^(m-1) = 2^m - 1
        for m in (1, 4, 8, 16):
            expected = Fraction((1 << m) - 1, 1 << (m + 2))
            assert brute_force_element((0, 0), (0, 0), m) == expected

    def test_depth1_scale_11(self):
        value = brute_force_element((0,), (1,), 10)
        assert abs(value - Fraction(2, 3)) <= Fraction(1, 1 << 9)

    def test_oracle_agreement_exhaustive(self):
        for padding in (8, 16, 24):
            bound = Fraction(2, 1 << padding)
            for k in range(1, 7):
                for a in range(1 << k):
                    alpha = unpack_bits(a, k)
                    for x in range(1 << k):
                        target = unpack_bits(x, k)
                        gap = abs(
                            brute_force_element(target, alpha, padding)
                            - matrix_element_exact(target, alpha)
                        )
                        assert gap <= bound

    def test_guards(self):
        with pytest.raises(ValueError):
            brute_force_element((0,), (0,), 0)
        with pytest.raises(DepthError):
            brute_force_element((0,) * 20, (0,) * 20, 30)
        with pytest.raises(ValueError):
            brute_force_element((0, 0), (0,), 8)


class TestChunkDecomposition:
    def test_zero_bits_only_base_chunk(self):
        chunks = chunk_decomposition((0, 0), 3)
        assert chunks.sizes == (32, 0, 0)
        assert chunks.total == 32

    def test_all_ones_example(self):
        chunks = chunk_decomposition((1, 1), 2)
        assert chunks.sizes == (16, 8, 4)
        assert chunks.boundaries == (0, 16, 24, 28)

    def test_sizes_sum_to_scale(self):
        rng = random.Random(3)
        for _ in range(100):
            k = rng.randrange(1, 10)
            alpha = unpack_bits(rng.randrange(1 << k), k)
            padding = rng.randrange(1, 12)
            chunks = chunk_decomposition(alpha, padding)
            scale = ((1 << k) + sum(b << (k - 1 - i) for i, b in enumerate(alpha))) << padding
            assert sum(chunks.sizes) == scale
            assert chunks.boundaries == tuple(
                sum(chunks.sizes[: i + 1]) for i in range(-1, k + 1)
            )

    def test_size_rule_per_bit(self):
        alpha = (1, 0, 1)
        chunks = chunk_decomposition(alpha, 4)
        k = len(alpha)
        assert chunks.sizes[0] == 1 << (4 + k)
        for r in range(1, k + 1):
            assert chunks.sizes[r] == alpha[r - 1] << (4 + k - r)

    def test_population_fractions(self):
        chunks = chunk_decomposition((0, 1), 2, target=(0, 0))
        assert chunks.fractions is not None
        assert chunks.fractions[0] == Fraction(1, 4)
        # second bit of the scale goes above the target's second bit 0
        assert chunks.fractions[2] == Fraction(1, 1)

    def test_rebuilt_element_matches_exhaustively(self):
        for k in range(1, 6):
            for a in range(1 << k):
                alpha = unpack_bits(a, k)
                for x in range(1 << k):
                    target = unpack_bits(x, k)
                    assert element_from_chunks(target, alpha) == matrix_element_exact(
                        target, alpha
                    )

    def test_target_length_mismatch(self):
        with pytest.raises(ValueError):
            chunk_decomposition((0, 1), 2, target=(0,))
