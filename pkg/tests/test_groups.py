from itertools import product

import pytest

from conftest import random_cyclic_group
from torcrep.errors import ExplosionGuard, NotInSL
from torcrep.groups import (
    close_group,
    compact_juniors,
    crepant_obstructions,
    element_names,
    junior_simplex,
)
from torcrep.hilbert import hilbert_basis
from torcrep.lattice import LatticePoint


def test_close_order6(z6):
    assert z6.order == 6
    coords = {g.coords for g in z6.elements}
    assert coords == {
        (0, 0, 0), (1, 2, 3), (2, 4, 0), (3, 0, 3), (4, 2, 0), (5, 4, 3),
    }


def test_close_order7(z7):
    coords = {g.coords for g in z7.elements}
    assert coords == {
        (0, 0, 0, 0), (1, 1, 2, 3), (2, 2, 4, 6), (3, 3, 6, 2),
        (4, 4, 1, 5), (5, 5, 3, 1), (6, 6, 5, 4),
    }


def test_close_empty(trivial3):
    assert trivial3.order == 1
    assert trivial3.r == 1


def test_close_rejects_non_sl():
    with pytest.raises(NotInSL):
        close_group([LatticePoint((1, 2, 2), 6)])


def test_close_normalizes_denominator():
    doubled = close_group([LatticePoint((2, 4, 6), 12)])
    assert doubled.r == 6
    assert doubled.order == 6


def test_explosion_guard():
    with pytest.raises(ExplosionGuard):
        close_group(
            [LatticePoint((1, 99, 0), 100), LatticePoint((0, 1, 99), 100)],
            max_elements=50,
        )


def test_ages(z6, z2):
    assert LatticePoint((0, 0, 0), 1).age == 0
    assert LatticePoint((1, 2, 3), 6).age == 1
    assert LatticePoint((1, 1, 1, 1), 2).age == 2
    for g in z6.elements:
        if not g.is_zero():
            assert 1 <= g.age <= 2
            assert g.age.denominator == 1


def test_junior_simplex(z6, z7, trivial3):
    js = junior_simplex(z6)
    assert len(js.interior_points) == 4
    assert len(junior_simplex(z7).interior_points) == 1
    assert junior_simplex(trivial3).interior_points == ()
    assert len(junior_simplex(trivial3).vertices) == 3


def test_junior_simplex_is_slice_of_lattice(z6, z5, z7):
    # independent enumeration of N-points with coords >= 0 summing to r
    for group in (z6, z5, z7):
        r, n = group.r, group.n
        found = set()
        for g in group.elements:
            # integer shifts keeping all coordinates within [0, r]
            options = []
            for c in g.coords:
                opts = [z for z in range(0, 2) if 0 <= c + r * z <= r]
                options.append(opts)
            for shift in product(*options):
                pt = tuple(c + r * z for c, z in zip(g.coords, shift))
                if sum(pt) == r:
                    found.add(pt)
        expected = {p.coords for p in junior_simplex(group).points}
        assert found == expected


def test_compact_juniors(z6, z5, trivial3):
    assert [g.coords for g in compact_juniors(z6)] == [(1, 2, 3)]
    assert {g.coords for g in compact_juniors(z5)} == {(1, 2, 2), (3, 1, 1)}
    assert compact_juniors(trivial3) == ()


def test_obstructions(z2, z7, z6):
    rep2 = crepant_obstructions(z2, hilbert_basis(z2))
    assert rep2.not_generated_by_juniors
    rep7 = crepant_obstructions(z7, hilbert_basis(z7))
    assert rep7.hilbert_basis_contains_seniors
    assert not rep7.not_generated_by_juniors
    rep6 = crepant_obstructions(z6, hilbert_basis(z6))
    assert not rep6.not_generated_by_juniors
    assert not rep6.hilbert_basis_contains_seniors
    assert not rep6.crepant_excluded


def test_group_axioms_random(rng):
    for _ in range(20):
        group = random_cyclic_group(rng, rng.choice([2, 3, 4]), rmax=12)
        coords = {g.coords for g in group.elements}
        r, n = group.r, group.n
        for a in coords:
            inv = tuple((-x) % r for x in a)
            assert inv in coords
            for b in coords:
                assert tuple((x + y) % r for x, y in zip(a, b)) in coords
        assert r**n % len(coords) == 0
        assert group.lattice.index_over_std == group.order


def test_element_names(z6):
    names = element_names(z6)
    by_name = {v: k.coords for k, v in names.items()}
    assert by_name["g1"] == (1, 2, 3)
    assert by_name["g4"] == (4, 2, 0)
    assert by_name["g5"] == (5, 4, 3)
