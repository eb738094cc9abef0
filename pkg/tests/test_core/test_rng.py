"""Tests for counter-based seeding."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brownian_hull.core import (
    counter_normals,
    counter_uniforms,
    derive_seed,
    derive_seeds,
    generator,
    mix64,
)
from brownian_hull.core.rng import MASK64, hash_pairs

seeds = st.integers(min_value=0, max_value=MASK64)


class TestDeriveSeed:
    def test_matches_splitmix64_reference_outputs(self) -> None:
        """derive_seed(0, k) is the k-th output of splitmix64 seeded with 0."""
        assert derive_seed(0, 0) == 0xE220A8397B1DCDAF
        assert derive_seed(0, 1) == 0x6E789E6AA1B965F4

    def test_mix64_of_zero_is_zero(self) -> None:
        assert mix64(0) == 0

    @given(master=seeds, k=st.integers(min_value=0, max_value=10**6))
    @settings(max_examples=200)
    def test_stays_in_64_bits(self, master: int, k: int) -> None:
        assert 0 <= derive_seed(master, k) <= MASK64

    def test_derive_seeds_is_a_slice_of_derive_seed(self) -> None:
        assert derive_seeds(5, 4, start=10) == [derive_seed(5, k) for k in range(10, 14)]

    def test_distinct_samples_get_distinct_seeds(self) -> None:
        assert len(set(derive_seeds(3, 10_000))) == 10_000

    @given(master=seeds)
    @settings(max_examples=50)
    def test_vectorized_hash_matches_scalar(self, master: int) -> None:
        counters = np.arange(16, dtype=np.uint64)
        keys = np.full(16, master, dtype=np.uint64)
        expected = [derive_seed(master, int(c)) for c in counters]
        assert hash_pairs(keys, counters).tolist() == expected


class TestCounterStreams:
    def test_uniforms_lie_in_half_open_unit_interval(self) -> None:
        u = counter_uniforms(np.full(10_000, 9, dtype=np.uint64), np.arange(10_000, dtype=np.uint64))
        assert np.all(u > 0.0)
        assert np.all(u <= 1.0)

    def test_normals_have_unit_variance(self) -> None:
        z = counter_normals(np.full(200_000, 1, dtype=np.uint64), np.arange(200_000, dtype=np.uint64))
        assert abs(z.mean()) < 0.01
        assert abs(z.var() - 1.0) < 0.02

    def test_normal_depends_only_on_its_key_and_counter(self) -> None:
        keys = np.array([4, 5, 6], dtype=np.uint64)
        counters = np.array([7, 8, 9], dtype=np.uint64)
        batch = counter_normals(keys, counters)
        single = counter_normals(keys[1:2], counters[1:2])
        assert single[0] == pytest.approx(batch[1], rel=1e-14, abs=1e-14)

    def test_generator_is_reproducible(self) -> None:
        a = generator(123).standard_normal(8)
        b = generator(123).standard_normal(8)
        assert np.array_equal(a, b)
