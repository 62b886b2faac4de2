"""Dyadic martingales: transforms, norms, Haar views, DP, and search."""

import json

import numpy as np
import pytest

from oracles import brute_force_word_optimum
from sharpmult.martingales import (
    HaarExpansion,
    PaleyWalshMartingale,
    ResolutionError,
    TransformSequence,
    dp_optimal_ratio,
    haar_sides,
    haar_to_paley_walsh,
    lp_norm,
    martingale_from_json,
    martingale_to_json,
    ratio,
    search_extremal,
    transform,
)


def random_pair(rng, N, lo, hi):
    f = PaleyWalshMartingale(tuple(rng.standard_normal(2**n) for n in range(N)))
    v = TransformSequence.predictable(
        tuple(rng.uniform(lo, hi, 2**n) for n in range(N))
    )
    return f, v


class TestTypes:
    def test_level_shapes_enforced(self):
        with pytest.raises(ValueError):
            PaleyWalshMartingale((np.ones(2),))
        with pytest.raises(ValueError):
            PaleyWalshMartingale((np.ones(1), np.ones(3)))

    def test_depth_cap(self):
        with pytest.raises(ValueError):
            PaleyWalshMartingale(tuple(np.zeros(2**n) for n in range(25)))

    def test_path_values_layout(self):
        f = PaleyWalshMartingale((np.array([1.0]), np.array([10.0, 20.0])))
        # index bit 0 holds eps_1, bit 1 holds eps_2 (0 means +1)
        assert list(f.path_values(1)) == [1.0, -1.0]
        assert list(f.path_values()) == [11.0, 19.0, -9.0, -21.0]

    def test_transform_sequence(self):
        v = TransformSequence.deterministic([1.0, -0.5])
        assert v.is_deterministic and v.within(-1.0, 1.0)
        assert not v.within(0.0, 1.0)
        w = TransformSequence.predictable([np.array([0.3]), np.array([0.1, 0.9])])
        assert not w.is_deterministic

    def test_martingale_difference_property(self):
        # E[f_n - f_{n-1} | first n-1 signs] = 0: sibling paths average out
        rng = np.random.default_rng(3)
        f = PaleyWalshMartingale(tuple(rng.standard_normal(2**n) for n in range(4)))
        for n in range(2, 5):
            prev = f.path_values(n - 1)
            cur = f.path_values(n).reshape(2, 2 ** (n - 1))
            assert np.allclose(0.5 * (cur[0] + cur[1]), prev)


class TestTransform:
    def test_identity(self):
        rng = np.random.default_rng(0)
        f, _ = random_pair(rng, 4, 0, 1)
        v = TransformSequence.deterministic([1.0] * 4)
        assert all(
            np.array_equal(a, b)
            for a, b in zip(transform(f, v).levels, f.levels)
        )

    def test_constant_scaling(self):
        rng = np.random.default_rng(1)
        f, _ = random_pair(rng, 5, 0, 1)
        v = TransformSequence.deterministic([-2.5] * 5)
        for p in (1.5, 2.0, 3.0):
            assert lp_norm(transform(f, v), p) == pytest.approx(
                2.5 * lp_norm(f, p), rel=1e-13
            )

    def test_two_step_sign_flip(self):
        f = PaleyWalshMartingale.constant_steps([1.0, 1.0])
        v = TransformSequence.deterministic([1.0, -1.0])
        g = transform(f, v)
        assert lp_norm(g, 2.0) == pytest.approx(np.sqrt(2), rel=1e-14)
        assert lp_norm(f, 2.0) == pytest.approx(np.sqrt(2), rel=1e-14)

    def test_depth_mismatch(self):
        f = PaleyWalshMartingale.constant_steps([1.0, 1.0])
        with pytest.raises(ValueError):
            transform(f, TransformSequence.deterministic([1.0]))

    def test_composition(self):
        # dyadic multipliers make the product reassociation exact in floats
        rng = np.random.default_rng(2)
        f, _ = random_pair(rng, 4, -1, 1)
        pick = lambda n: rng.choice([-1.0, -0.5, 0.5, 1.0, 2.0], size=2**n)
        v = TransformSequence.predictable(tuple(pick(n) for n in range(4)))
        w = TransformSequence.predictable(tuple(pick(n) for n in range(4)))
        vw = TransformSequence.predictable(
            tuple(a * b for a, b in zip(v.levels, w.levels))
        )
        lhs = transform(transform(f, v), w)
        rhs = transform(f, vw)
        assert all(np.array_equal(a, b) for a, b in zip(lhs.levels, rhs.levels))


class TestLpNorm:
    def test_single_step(self):
        f = PaleyWalshMartingale.constant_steps([1.0])
        for p in (1.0, 2.0, 7.5):
            assert lp_norm(f, p) == 1.0

    def test_two_signs_p2(self):
        f = PaleyWalshMartingale.constant_steps([1.0, 1.0])
        assert lp_norm(f, 2.0) == pytest.approx(np.sqrt(2), rel=1e-14)

    def test_two_signs_p4_enumeration(self):
        f = PaleyWalshMartingale.constant_steps([1.0, 1.0])
        paths = [e1 + e2 for e1 in (1, -1) for e2 in (1, -1)]
        golden = (sum(abs(x) ** 4 for x in paths) / 4) ** 0.25
        assert golden == pytest.approx(8.0**0.25, rel=1e-15)
        assert lp_norm(f, 4.0) == pytest.approx(golden, rel=1e-14)

    def test_max_over_levels_not_assumed(self):
        rng = np.random.default_rng(4)
        f, _ = random_pair(rng, 6, 0, 1)
        p = 3.0
        per_level = [
            float(np.mean(np.abs(f.path_values(n)) ** p) ** (1 / p))
            for n in range(1, 7)
        ]
        assert lp_norm(f, p) == pytest.approx(max(per_level), rel=1e-14)
        assert np.argmax(per_level) == len(per_level) - 1

    def test_p_validation(self):
        with pytest.raises(ValueError):
            lp_norm(PaleyWalshMartingale.constant_steps([1.0]), 0.9)


class TestRatio:
    def test_constant_transform(self):
        rng = np.random.default_rng(5)
        f, _ = random_pair(rng, 4, 0, 1)
        v = TransformSequence.deterministic([3.0] * 4)
        assert ratio(f, v, 2.5) == pytest.approx(3.0, rel=1e-13)

    def test_zero_norm_rejected(self):
        f = PaleyWalshMartingale.constant_steps([0.0, 0.0])
        v = TransformSequence.deterministic([1.0, 1.0])
        with pytest.raises(ValueError):
            ratio(f, v, 2.0)

    def test_burkholder_cap_random(self):
        rng = np.random.default_rng(6)
        for p in (1.5, 2.0, 3.0, 4.0):
            cap = max(p, p / (p - 1)) - 1
            for _ in range(200):
                f, v = random_pair(rng, 5, -1, 1)
                assert ratio(f, v, p) <= cap + 1e-10

    def test_choi_cap_random(self):
        rng = np.random.default_rng(7)
        for p in (1.5, 2.0, 3.0, 4.0):
            cap = max(p, p / (p - 1)) / 2
            for _ in range(200):
                f, v = random_pair(rng, 5, 0, 1)
                assert ratio(f, v, p) <= cap + 1e-10


class TestDP:
    def test_p2_symmetric(self):
        for N in (1, 2, 3, 4):
            r = dp_optimal_ratio(
                2.0, -1.0, 1.0, N, value_grid_resolution=256, check_resolution=False
            )
            assert r == pytest.approx(1.0, abs=1e-3)

    def test_p2_asymmetric(self):
        r = dp_optimal_ratio(
            2.0, -2.0, 1.0, 4, value_grid_resolution=256, check_resolution=False
        )
        assert r == pytest.approx(2.0, abs=1e-3)

    def test_p4_monotone_in_depth(self):
        rs = [
            dp_optimal_ratio(
                4.0, -1.0, 1.0, N, value_grid_resolution=512, check_resolution=False
            )
            for N in range(1, 7)
        ]
        assert all(a <= b + 1e-12 for a, b in zip(rs, rs[1:]))
        assert rs[-1] <= 3.0
        assert rs[2] > 1.1

    def test_monotone_in_interval(self):
        kw = dict(value_grid_resolution=256, check_resolution=False)
        r1 = dp_optimal_ratio(3.0, -1.0, 1.0, 3, **kw)
        r2 = dp_optimal_ratio(3.0, -1.5, 1.0, 3, **kw)
        r3 = dp_optimal_ratio(3.0, -1.0, 1.5, 3, **kw)
        assert r1 <= r2 + 1e-9 and r1 <= r3 + 1e-9

    def test_matches_brute_force_words(self):
        cases = [
            (4.0, -1.0, 1.0, 3),
            (4.0, 0.0, 1.0, 3),
            (3.0, -2.0, 1.0, 2),
            (1.5, -1.0, 1.0, 3),
        ]
        for p, b, B, N in cases:
            lib = dp_optimal_ratio(
                p, b, B, N, value_grid_resolution=256, check_resolution=False
            )
            oracle = brute_force_word_optimum(p, b, B, N, M=256)
            assert abs(lib - oracle) <= 1e-6

    def test_resolution_check_passes_when_fine(self):
        r = dp_optimal_ratio(4.0, -1.0, 1.0, 3, value_grid_resolution=512)
        assert 1.0 < r < 3.0

    def test_resolution_check_raises_when_coarse(self):
        with pytest.raises(ResolutionError):
            dp_optimal_ratio(4.0, -1.0, 1.0, 4, value_grid_resolution=16)

    def test_validation(self):
        with pytest.raises(ValueError):
            dp_optimal_ratio(1.0, -1.0, 1.0, 2)
        with pytest.raises(ValueError):
            dp_optimal_ratio(4.0, 1.0, -1.0, 2)
        with pytest.raises(ValueError):
            dp_optimal_ratio(4.0, -1.0, 1.0, 13)


class TestSearch:
    def test_p2_exact(self):
        for b, B in ((-1.0, 1.0), (-2.0, 1.0), (0.0, 0.5)):
            _, _, r = search_extremal(2.0, b, B, 4, budget=6, seed=0)
            assert r == pytest.approx(max(abs(b), abs(B)), abs=1e-12)

    def test_deterministic_under_seed(self):
        a = search_extremal(4.0, -1.0, 1.0, 4, budget=8, seed=11)
        b = search_extremal(4.0, -1.0, 1.0, 4, budget=8, seed=11)
        assert a[2] == b[2]
        assert all(np.array_equal(x, y) for x, y in zip(a[0].levels, b[0].levels))

    def test_word_stays_on_endpoints(self):
        f, v, r = search_extremal(4.0, -0.5, 1.0, 4, budget=8, seed=0)
        assert v.is_deterministic
        for lv in v.levels:
            assert lv[0] in (-0.5, 1.0)
        assert ratio(f, v, 4.0) == pytest.approx(r, rel=1e-12)

    def test_matches_dp_at_depth_four(self):
        dp = dp_optimal_ratio(
            4.0, -1.0, 1.0, 4, value_grid_resolution=512, check_resolution=False
        )
        _, _, r = search_extremal(4.0, -1.0, 1.0, 4, budget=10, seed=0)
        assert abs(r - dp) / dp < 0.01

    def test_choi_interval_case(self):
        _, _, r = search_extremal(4.0, 0.0, 1.0, 4, budget=10, seed=0)
        assert 1.0 <= r <= 2.0

    def test_trace(self):
        out = search_extremal(3.0, -1.0, 1.0, 3, budget=5, seed=0, return_trace=True)
        f, v, r, trace = out
        assert len(trace) == 5
        assert [row[0] for row in trace] == list(range(5))
        assert max(row[2] for row in trace) == pytest.approx(r, rel=1e-15)


class TestHaar:
    def test_equal_multipliers(self):
        exp = HaarExpansion((1.0, 1.0), (1.0, 1.0))
        lhs, rhs = haar_sides(exp, 2.0)
        assert lhs == rhs

    def test_flip_second(self):
        exp = HaarExpansion((1.0, 1.0), (1.0, -1.0))
        lhs, rhs = haar_sides(exp, 3.0)
        assert lhs == pytest.approx(2 ** (2 / 3), rel=1e-14)
        assert rhs == pytest.approx(2 ** (2 / 3), rel=1e-14)

    def test_zero_one_multipliers_choi_cap(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            K = int(rng.integers(1, 16))
            a = rng.standard_normal(K + 1)
            e = rng.integers(0, 2, K + 1).astype(float)
            lhs, rhs = haar_sides(HaarExpansion(tuple(a), tuple(e)), 4.0)
            assert lhs <= 2.0 * rhs + 1e-10

    def test_evaluation_is_exact_on_refined_grids(self):
        exp = HaarExpansion((0.3, -1.2, 0.7, 2.0), (1.0, 0.5, -0.25, 1.0))
        coarse = exp.evaluate(exp.multipliers)
        fine = exp.evaluate(exp.multipliers, L=exp.grid_depth + 2)
        assert np.array_equal(np.repeat(coarse, 4), fine)

    def test_haar_paley_walsh_agreement(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            K = int(rng.integers(1, 16))
            a = rng.standard_normal(K + 1)
            e = rng.uniform(-1, 1, K + 1)
            exp = HaarExpansion(tuple(a), tuple(e))
            f, v, off_f, off_g = haar_to_paley_walsh(exp)
            for p in (2.0, 3.5):
                lhs, rhs = haar_sides(exp, p)
                fp = f.path_values() + off_f
                gp = transform(f, v).path_values() + off_g
                assert rhs == pytest.approx(
                    float(np.mean(np.abs(fp) ** p) ** (1 / p)), rel=1e-13
                )
                assert lhs == pytest.approx(
                    float(np.mean(np.abs(gp) ** p) ** (1 / p)), rel=1e-13
                )


class TestJson:
    def test_roundtrip_deterministic(self):
        rng = np.random.default_rng(10)
        f, _ = random_pair(rng, 3, 0, 1)
        v = TransformSequence.deterministic([1.0, -1.0, 1.0])
        doc = json.loads(martingale_to_json(f, v))
        assert doc["N"] == 3 and doc["v"] == [1.0, -1.0, 1.0]
        f2, v2 = martingale_from_json(json.dumps(doc))
        assert all(np.array_equal(a, b) for a, b in zip(f.levels, f2.levels))
        assert v2.is_deterministic

    def test_roundtrip_predictable(self):
        rng = np.random.default_rng(11)
        f, v = random_pair(rng, 3, -1, 1)
        f2, v2 = martingale_from_json(martingale_to_json(f, v))
        assert all(np.array_equal(a, b) for a, b in zip(v.levels, v2.levels))

    def test_depth_mismatch_rejected(self):
        with pytest.raises(ValueError):
            martingale_from_json('{"N": 2, "d": [[1.0]]}')
