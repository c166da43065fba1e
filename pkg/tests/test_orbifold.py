"""Pullback profiles, induced multiplicities, counting bound, twist threshold."""

import random
from fractions import Fraction

import pytest

from orbicert.catalog import load_builtin
from orbicert.lattice import ConfigError
from orbicert.orbifold import (
    INF,
    OrbifoldDivisor,
    ProfilePoint,
    PullbackProfile,
    ample_twist_threshold,
    induced_multiplicities,
    is_orbifold_morphism,
    support_bound,
)
from orbicert.positivity import WeightedBoundary

FOUR_LINES = load_builtin("four-lines")
WEIGHTS = WeightedBoundary.make([4, 4, 4, 3])


def test_orbifold_divisor_make():
    delta = OrbifoldDivisor.make([(2, 5), (0, INF), (1, 1)])
    assert delta.items == ((0, INF), (2, 5))
    assert delta.support == (0, 2)
    assert delta.multiplicity(0) == INF
    assert delta.multiplicity(1) == 1
    assert delta.multiplicity(2) == 5
    with pytest.raises(ConfigError):
        OrbifoldDivisor.make([(0, 2), (0, 3)])
    with pytest.raises(ConfigError):
        OrbifoldDivisor.make([(-1, 2)])
    with pytest.raises(ConfigError):
        OrbifoldDivisor.make([(0, 0)])


def test_profile_point_make():
    p = ProfilePoint.make("a", {1: 2, 0: 3})
    assert p.contacts == ((0, 3), (1, 2))
    assert p.t_total == 5
    q = ProfilePoint.make("b", [(2, 1)])
    assert q.t_total == 1
    for bad in ({}, {0: 0}, {0: -1}, {-1: 2}, {0: Fraction(1, 2)}):
        with pytest.raises(ConfigError):
            ProfilePoint.make("c", bad)
    with pytest.raises(ConfigError):
        ProfilePoint.make("d", [(0, 1), (0, 2)])


def test_profile_validation():
    with pytest.raises(ConfigError):
        PullbackProfile.make([("a", {0: 1}), ("a", {1: 1})], 2)
    with pytest.raises(ConfigError):
        PullbackProfile.make([("a", {5: 1})], 2)


def test_profile_degrees_and_json():
    profile = PullbackProfile.make(
        [("a", {0: 2, 1: 1}), ("b", {0: 3}), ("c", {2: 4})], 4
    )
    assert profile.pullback_degree(0) == 5
    assert profile.pullback_degree(1) == 1
    assert profile.pullback_degree(3) == 0
    text = profile.to_json()
    back = PullbackProfile.from_json(text)
    assert back == profile
    assert back.to_json() == text


def test_induced_multiplicities():
    profile = PullbackProfile.make([("a", {0: 2, 1: 1})], 2)
    assert induced_multiplicities(profile, [7, 5]) == (3,)
    assert induced_multiplicities(profile, [INF, 5]) == (INF,)
    assert induced_multiplicities(profile, [1, 1]) == (1,)
    assert induced_multiplicities(profile, [6, 9]) == (3,)
    with pytest.raises(ConfigError):
        induced_multiplicities(profile, [7])


def test_morphism_rules():
    profile = PullbackProfile.make([("a", {0: 3}), ("b", {1: 2})], 2)
    assert is_orbifold_morphism(profile, [4, 5], [12, 10])
    assert not is_orbifold_morphism(profile, [3, 5], [12, 10])
    assert is_orbifold_morphism(profile, [INF, 5], [INF, 10])
    assert not is_orbifold_morphism(profile, [9, 5], [INF, 10])
    assert is_orbifold_morphism(profile, [1, 1], [1, 1])
    with pytest.raises(ConfigError):
        is_orbifold_morphism(profile, [4], [12, 10])
    with pytest.raises(ConfigError):
        is_orbifold_morphism(profile, [0, 5], [12, 10])


def random_profile(rng: random.Random):
    n_comp = rng.randint(1, 4)
    points = []
    for i in range(rng.randint(1, 5)):
        met = rng.sample(range(n_comp), rng.randint(1, n_comp))
        points.append((f"x{i}", {j: rng.randint(1, 4) for j in met}))
    target = [
        INF if rng.random() < 0.25 else rng.randint(1, 9) for _ in range(n_comp)
    ]
    return PullbackProfile.make(points, n_comp), target


def test_induced_is_minimal_morphism_random():
    rng = random.Random(907)
    for _ in range(500):
        profile, target = random_profile(rng)
        induced = induced_multiplicities(profile, target)
        assert is_orbifold_morphism(profile, induced, target)
        for k, n in enumerate(induced):
            if n == INF:
                lowered = list(induced)
                lowered[k] = 10**9
                assert not is_orbifold_morphism(profile, lowered, target)
            elif n >= 2:
                lowered = list(induced)
                lowered[k] = int(n) - 1
                assert not is_orbifold_morphism(profile, lowered, target)


def test_support_bound_random():
    rng = random.Random(1009)
    for _ in range(800):
        profile, target = random_profile(rng)
        lhs, rhs = support_bound(profile, target)
        assert lhs == len(profile.points)
        assert lhs <= rhs


def test_support_bound_equality_all_infinite():
    profile = PullbackProfile.make([("a", {0: 1}), ("b", {1: 3})], 2)
    lhs, rhs = support_bound(profile, [INF, INF])
    assert lhs == rhs == 2


def test_twist_threshold_four_lines():
    full = OrbifoldDivisor.make([(j, INF) for j in range(4)])
    assert ample_twist_threshold(FOUR_LINES, WEIGHTS, 1, full) == 1
    assert ample_twist_threshold(FOUR_LINES, WEIGHTS, 0, full) == 1
    empty = OrbifoldDivisor.make([])
    assert ample_twist_threshold(FOUR_LINES, WEIGHTS, 7, empty) == 1
    # residue 3 - 100/m first turns positive at m = 34
    assert ample_twist_threshold(FOUR_LINES, WEIGHTS, 100, full) == 34
    assert ample_twist_threshold(FOUR_LINES, WEIGHTS, Fraction(7, 2), full) == 2


def test_twist_threshold_errors():
    full = OrbifoldDivisor.make([(j, INF) for j in range(4)])
    with pytest.raises(ConfigError):
        ample_twist_threshold(FOUR_LINES, WEIGHTS, -1, full)
    with pytest.raises(ConfigError):
        ample_twist_threshold(
            FOUR_LINES, WEIGHTS, 1, OrbifoldDivisor.make([(9, 2)])
        )
    from orbicert.lattice import SurfaceConfig

    bad = SurfaceConfig.build([2], [2], hyperplane=False, allow_single_component=True)
    with pytest.raises(ValueError):
        ample_twist_threshold(
            bad, WeightedBoundary.make([1]), 1, OrbifoldDivisor.make([(0, 2)])
        )
