import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polar_wiretap.exceptions import CapacityError
from polar_wiretap.gf2 import rank
from polar_wiretap.polar import (
    ERASED,
    BecChannel,
    bhattacharyya_bec,
    bit_reversal_permutation,
    generator_matrix,
    polar_encode,
    sc_decode_bec,
    sc_decode_bec_batch,
    transmit_bec,
)


def explicit_generator(n):
    """B_N F^{(x)n} built from np.kron and string-reversed indices."""
    g = np.ones((1, 1), dtype=np.uint8)
    for _ in range(n):
        g = np.kron(g, np.array([[1, 0], [1, 1]], dtype=np.uint8))
    rev = [int(format(i, f"0{n}b")[::-1], 2) if n else 0 for i in range(1 << n)]
    return g[rev]


def bit_channel_erased(g, unerased, i):
    """Genie-aided erasure of bit-channel i: u_i is undetermined by the
    unerased outputs and u_0..u_{i-1} iff row i lies in the span of the later
    rows restricted to the unerased positions."""
    later = g[i + 1:][:, unerased]
    return rank(g[i:][:, unerased]) == rank(later)


def exact_bit_channel_erasures(eps, n):
    """Exact bit-channel erasure probabilities by summing over all erasure
    patterns of the N channel uses."""
    big_n = 1 << n
    g = explicit_generator(n)
    z = np.zeros(big_n)
    for pattern in itertools.product((0, 1), repeat=big_n):
        erased = np.array(pattern, dtype=bool)
        p = eps ** erased.sum() * (1 - eps) ** (big_n - erased.sum())
        unerased = np.flatnonzero(~erased)
        for i in range(big_n):
            z[i] += p * bit_channel_erased(g, unerased, i)
    return z


class TestBhattacharyya:
    def test_one_step(self):
        np.testing.assert_allclose(bhattacharyya_bec(BecChannel(0.5), 1), [0.75, 0.25])

    def test_base_case(self):
        np.testing.assert_allclose(bhattacharyya_bec(0.25, 0), [0.25])

    def test_two_levels(self):
        np.testing.assert_allclose(bhattacharyya_bec(0.25, 2),
                                   [0.68359375, 0.19140625, 0.12109375, 0.00390625], atol=1e-15)

    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("eps", [0.25, 0.5])
    def test_matches_exact_bit_channel_erasures(self, eps, n):
        np.testing.assert_allclose(bhattacharyya_bec(eps, n), exact_bit_channel_erasures(eps, n), atol=1e-12)

    def test_matches_monte_carlo_genie_sc(self):
        # per-index erasure frequency of genie-aided SC at 1e5 trials
        trials, n, eps = 100_000, 2, 0.25
        rng = np.random.default_rng(5)
        u = rng.integers(0, 2, size=(trials, 4), dtype=np.uint8)
        y = transmit_bec(polar_encode(u, n), eps, rng)
        _, erased = sc_decode_bec_batch(y, np.arange(4), u)
        freq = erased.mean(axis=0)
        z = bhattacharyya_bec(eps, n)
        sigma = np.sqrt(z * (1 - z) / trials)
        assert np.all(np.abs(freq - z) <= 5 * sigma + 1e-12)

    def test_genie_sc_frequency_at_n6(self):
        trials, n, eps = 20_000, 6, 0.4
        rng = np.random.default_rng(6)
        u = rng.integers(0, 2, size=(trials, 64), dtype=np.uint8)
        y = transmit_bec(polar_encode(u, n), eps, rng)
        _, erased = sc_decode_bec_batch(y, np.arange(64), u)
        z = bhattacharyya_bec(eps, n)
        sigma = np.sqrt(z * (1 - z) / trials)
        assert np.all(np.abs(erased.mean(axis=0) - z) <= 5 * sigma + 1e-12)

    @pytest.mark.parametrize("eps", [0.0, 0.1, 0.25, 0.5, 0.9, 1.0])
    def test_conservation(self, eps):
        for n in range(0, 13):
            z = bhattacharyya_bec(eps, n)
            assert np.all((z >= 0) & (z <= 1))
            assert abs(z.sum() - (1 << n) * eps) < 1e-9

    @pytest.mark.parametrize("eps", [0.25, 0.5])
    def test_polarization_fraction_non_decreasing(self, eps):
        fractions = [np.mean(bhattacharyya_bec(eps, n) < 1e-6) for n in range(4, 15)]
        assert all(b >= a for a, b in zip(fractions, fractions[1:]))

    @given(st.floats(0, 1), st.floats(0, 1), st.integers(0, 10))
    @settings(max_examples=50, deadline=None)
    def test_degradedness_ordering(self, a, b, n):
        eps_m, eps_w = min(a, b), max(a, b)
        assert np.all(bhattacharyya_bec(eps_w, n) >= bhattacharyya_bec(eps_m, n) - 1e-12)

    def test_invalid_channel(self):
        with pytest.raises(ValueError):
            BecChannel(1.5)
        with pytest.raises(ValueError):
            bhattacharyya_bec(0.5, -1)


class TestBitReversal:
    def test_small(self):
        assert bit_reversal_permutation(0).tolist() == [0]
        assert bit_reversal_permutation(2).tolist() == [0, 2, 1, 3]
        assert bit_reversal_permutation(3).tolist() == [0, 4, 2, 6, 1, 5, 3, 7]

    @pytest.mark.parametrize("n", range(0, 11))
    def test_involution(self, n):
        p = bit_reversal_permutation(n)
        np.testing.assert_array_equal(p[p], np.arange(1 << n))


class TestEncode:
    def test_second_row_of_f(self):
        assert polar_encode([0, 1], 1).tolist() == [1, 1]

    def test_last_row_all_ones(self):
        assert polar_encode([0, 0, 0, 1], 2).tolist() == [1, 1, 1, 1]

    def test_against_explicit_product(self):
        assert polar_encode([1, 1, 0, 0], 2).tolist() == [0, 0, 1, 0]
        assert (np.array([1, 1, 0, 0]) @ explicit_generator(2) % 2).tolist() == [0, 0, 1, 0]

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_exhaustive_against_generator(self, n):
        big_n = 1 << n
        g = explicit_generator(n)
        words = np.array(list(itertools.product((0, 1), repeat=big_n)), dtype=np.uint8)
        np.testing.assert_array_equal(polar_encode(words, n), words.astype(int) @ g % 2)
        np.testing.assert_array_equal(polar_encode(polar_encode(words, n), n), words)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_random_against_generator(self, n, rng):
        u = rng.integers(0, 2, size=(200, 1 << n), dtype=np.uint8)
        np.testing.assert_array_equal(polar_encode(u, n), u.astype(int) @ explicit_generator(n) % 2)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            polar_encode([0, 1, 1], 2)
        with pytest.raises(ValueError):
            polar_encode([0, 1, 1])

    @given(st.integers(0, 10).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))))
    @settings(max_examples=80, deadline=None)
    def test_involution(self, case):
        n, u = case
        np.testing.assert_array_equal(polar_encode(polar_encode(u, n), n), u)


class TestGeneratorMatrix:
    def test_n1(self):
        np.testing.assert_array_equal(generator_matrix(1), [[1, 0], [1, 1]])

    def test_n2(self):
        np.testing.assert_array_equal(generator_matrix(2),
                                      [[1, 0, 0, 0], [1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 1, 1]])

    @pytest.mark.parametrize("n", [1, 2, 3, 6])
    def test_self_inverse(self, n):
        g = generator_matrix(n).astype(int)
        np.testing.assert_array_equal(g @ g % 2, np.eye(1 << n))
        np.testing.assert_array_equal(generator_matrix(n), explicit_generator(n))

    def test_limit(self):
        with pytest.raises(CapacityError):
            generator_matrix(5, limit=4)


class TestSCDecode:
    def test_no_erasures(self, rng):
        for n in range(0, 8):
            big_n = 1 << n
            u = rng.integers(0, 2, size=big_n, dtype=np.uint8)
            frozen = np.flatnonzero(rng.random(big_n) < 0.5)
            np.testing.assert_array_equal(sc_decode_bec(polar_encode(u, n), frozen, u[frozen]), u)

    def test_all_erased_all_frozen(self):
        frozen_values = np.array([1, 0, 1, 1, 0, 0, 1, 0], dtype=np.uint8)
        out = sc_decode_bec(np.full(8, ERASED, dtype=np.uint8), np.arange(8), frozen_values)
        np.testing.assert_array_equal(out, frozen_values)

    def test_single_erasure_example(self):
        # completions of the erased symbol: x0 in {0, 1}; only one re-encodes
        # to a u with u0 = u1 = 0
        u = np.array([0, 0, 1, 1], dtype=np.uint8)
        x = polar_encode(u, 2)
        candidates = []
        for x0 in (0, 1):
            trial = x.copy()
            trial[0] = x0
            cand = polar_encode(trial, 2)
            if cand[0] == 0 and cand[1] == 0:
                candidates.append(cand)
        assert len(candidates) == 1
        y = x.copy()
        y[0] = ERASED
        out = sc_decode_bec(y, [0, 1], [0, 0])
        np.testing.assert_array_equal(out, candidates[0])
        np.testing.assert_array_equal(out, u)

    def test_erased_information_bit_decides_zero(self):
        u_hat, erased = sc_decode_bec_batch(np.full((1, 2), ERASED, dtype=np.uint8), [0], [1])
        assert u_hat.tolist() == [[1, 0]]
        assert erased.tolist() == [[True, True]]

    def test_batch_matches_single(self, rng):
        n, big_n = 5, 32
        frozen = np.arange(0, big_n, 3)
        u = rng.integers(0, 2, size=(50, big_n), dtype=np.uint8)
        u[:, frozen] = 0
        y = transmit_bec(polar_encode(u, n), 0.3, rng)
        batch, _ = sc_decode_bec_batch(y, frozen, np.zeros(frozen.size, dtype=np.uint8))
        for row, word in zip(batch, y):
            np.testing.assert_array_equal(row, sc_decode_bec(word, frozen, np.zeros(frozen.size)))

    def test_sc_success_implies_ml_recovery(self, rng):
        # whenever SC resolves every information bit, the estimate is the
        # transmitted word
        n, big_n = 6, 64
        z = bhattacharyya_bec(0.3, n)
        info = np.argsort(z, kind="stable")[:32]
        frozen = np.setdiff1d(np.arange(big_n), info)
        u = rng.integers(0, 2, size=(500, big_n), dtype=np.uint8)
        y = transmit_bec(polar_encode(u, n), 0.3, rng)
        u_hat, erased = sc_decode_bec_batch(y, frozen, u[:, frozen])
        clean = ~erased[:, info].any(axis=1)
        assert clean.any()
        np.testing.assert_array_equal(u_hat[clean], u[clean])

    def test_validation(self):
        with pytest.raises(ValueError):
            sc_decode_bec(np.zeros(3, dtype=np.uint8), [], [])
        with pytest.raises(ValueError):
            sc_decode_bec(np.zeros(4, dtype=np.uint8), [0, 5], [0, 0])
        with pytest.raises(ValueError):
            sc_decode_bec(np.zeros(4, dtype=np.uint8), [0, 1], [0])
        with pytest.raises(ValueError):
            sc_decode_bec(np.array([0, 1, 3, 0]), [0], [0])


class TestTransmit:
    def test_noiseless(self, rng):
        x = rng.integers(0, 2, size=64, dtype=np.uint8)
        np.testing.assert_array_equal(transmit_bec(x, BecChannel(0.0), rng), x)

    def test_all_erased(self, rng):
        x = rng.integers(0, 2, size=64, dtype=np.uint8)
        assert np.all(transmit_bec(x, 1.0, rng) == ERASED)

    def test_erasure_fraction(self, rng):
        y = transmit_bec(np.zeros(100_000, dtype=np.uint8), 0.25, rng)
        assert abs(np.mean(y == ERASED) - 0.25) < 0.01

    def test_deterministic_given_seed(self):
        x = np.ones(500, dtype=np.uint8)
        a = transmit_bec(x, 0.4, np.random.default_rng(3))
        b = BecChannel(0.4).transmit(x, np.random.default_rng(3))
        np.testing.assert_array_equal(a, b)
        np.testing.assert_array_equal(x, 1)
