from __future__ import annotations

import itertools
import random

import pytest

from omsr.perms import PermGroup, Permutation


def test_permutation_composition_order() -> None:
    # p * q applies p first, then q
    p = Permutation((1, 0, 2))
    q = Permutation((0, 2, 1))
    assert (p * q)(0) == 2
    assert (q * p)(0) == 1


def test_permutation_inverse_and_identity() -> None:
    rng = random.Random(3)
    for _ in range(50):
        degree = rng.randrange(1, 9)
        images = list(range(degree))
        rng.shuffle(images)
        p = Permutation(images)
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()
    assert Permutation.identity(4).is_identity()


def test_permutation_rejects_non_bijection() -> None:
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_cycle_string() -> None:
    assert Permutation((1, 2, 0, 3)).cycle_string() == "(0 1 2)"
    assert Permutation((1, 0, 3, 2)).cycle_string() == "(0 1)(2 3)"
    assert Permutation.identity(3).cycle_string() == "()"


def test_perm_group_symmetric() -> None:
    group = PermGroup(4, [Permutation((1, 2, 3, 0)), Permutation((1, 0, 2, 3))])
    assert group.order() == 24
    for images in itertools.permutations(range(4)):
        assert Permutation(images) in group


def test_perm_group_membership_rejects_outsiders() -> None:
    rotations = PermGroup(4, [Permutation((1, 2, 3, 0))])
    assert rotations.order() == 4
    assert Permutation((2, 3, 0, 1)) in rotations
    assert Permutation((1, 0, 3, 2)) not in rotations
    assert Permutation((0, 2, 1, 3)) not in rotations


def test_perm_group_trivial() -> None:
    trivial = PermGroup(5)
    assert trivial.order() == 1
    assert trivial.orbits() == [[v] for v in range(5)]


def test_orbits_partition_points() -> None:
    group = PermGroup(6, [Permutation((1, 2, 0, 3, 4, 5)), Permutation((0, 1, 2, 4, 3, 5))])
    orbits = {frozenset(o) for o in group.orbits()}
    assert orbits == {frozenset({0, 1, 2}), frozenset({3, 4}), frozenset({5})}
    assert sorted(group.orbit_of(4)) == [3, 4]


def test_stabilizer_orders_satisfy_orbit_relation() -> None:
    group = PermGroup(4, [Permutation((1, 2, 3, 0)), Permutation((1, 0, 2, 3))])
    for v in range(4):
        stab = group.stabilizer(v)
        assert stab.order() * len(group.orbit_of(v)) == group.order()
        assert all(p(v) == v for p in stab.generators)


def test_semiregular_detection() -> None:
    rotations = PermGroup(4, [Permutation((1, 2, 3, 0))])
    assert rotations.is_semiregular()
    with_fixed_point = PermGroup(4, [Permutation((0, 2, 1, 3))])
    assert not with_fixed_point.is_semiregular()


def test_group_order_via_random_closure() -> None:
    # the chain's order must agree with a plain closure count
    rng = random.Random(11)
    for _ in range(20):
        degree = rng.randrange(2, 7)
        gens = []
        for _ in range(2):
            images = list(range(degree))
            rng.shuffle(images)
            gens.append(Permutation(images))
        group = PermGroup(degree, gens)
        seen = {Permutation.identity(degree)}
        frontier = [Permutation.identity(degree)]
        while frontier:
            current = frontier.pop()
            for g in gens:
                nxt = current * g
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        assert group.order() == len(seen)
        assert all(p in group for p in seen)
