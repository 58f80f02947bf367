from itertools import product

import pytest

from arrtop.geometry import (
    characteristic_polynomial,
    evaluate_poly,
    intersection_poset,
)
from arrtop.harness import braid_essentialized, random_central, random_generic
from arrtop.realfaces import (
    enumerate_faces,
    region_counts,
    separating_set,
    sign_vector_realizable,
)

from conftest import make_arrangement


def faces_by_dim(fc):
    out = {}
    for f in fc.faces:
        out[f.dim] = out.get(f.dim, 0) + 1
    return out


def test_a2_faces(a2):
    fc = enumerate_faces(a2)
    assert len(fc.faces) == 5
    assert faces_by_dim(fc) == {0: 2, 1: 3}
    assert len(fc.chambers) == 3


def test_bool2_faces(bool2):
    fc = enumerate_faces(bool2)
    assert len(fc.faces) == 9
    assert faces_by_dim(fc) == {0: 1, 1: 4, 2: 4}


def test_gen3_faces(gen3):
    fc = enumerate_faces(gen3)
    assert len(fc.faces) == 19
    assert faces_by_dim(fc) == {0: 3, 1: 9, 2: 7}
    assert sum((-1) ** f.dim for f in fc.faces) == 1


def test_witnesses_are_exact(gen3, cen3):
    for arr in (gen3, cen3, braid_essentialized(4)):
        fc = enumerate_faces(arr)
        for f in fc.faces:
            signs = tuple((h.eval(f.witness) > 0) - (h.eval(f.witness) < 0)
                          for h in arr.hyperplanes)
            assert signs == f.sign


@pytest.mark.parametrize("seed", [1, 2])
def test_euler_relation_random(seed):
    for arr in (random_generic(4, 2, seed), random_central(4, 3, seed)):
        fc = enumerate_faces(arr)
        assert sum((-1) ** f.dim for f in fc.faces) == (-1) ** arr.dim


@pytest.mark.parametrize("fixture,counts", [
    ("gen3", (7, 1)), ("cen3", (6, 0)), ("a1", (2, 0)), ("a2", (3, 1)),
])
def test_region_counts(fixture, counts, request):
    fc = enumerate_faces(request.getfixturevalue(fixture))
    assert region_counts(fc) == counts


def test_region_counts_match_zaslavsky():
    for arr in (braid_essentialized(4), random_generic(5, 2, seed=3),
                random_central(5, 3, seed=9)):
        chambers, bounded = region_counts(enumerate_faces(arr))
        chi = characteristic_polynomial(intersection_poset(arr))
        n = arr.dim
        assert chambers == (-1) ** n * evaluate_poly(chi, -1)
        assert bounded == (-1) ** n * evaluate_poly(chi, 1)


def test_separating_sets(bool2):
    fc = enumerate_faces(bool2)
    pp = fc.index_of((1, 1))
    mp = fc.index_of((-1, 1))
    mm = fc.index_of((-1, -1))
    assert separating_set(fc, pp, mp) == {0}
    assert separating_set(fc, pp, mm) == {0, 1}
    assert separating_set(fc, pp, pp) == frozenset()


def test_separating_set_rejects_non_chambers(bool2):
    fc = enumerate_faces(bool2)
    vertex = fc.index_of((0, 0))
    chamber = fc.index_of((1, 1))
    with pytest.raises(ValueError):
        separating_set(fc, vertex, chamber)


@pytest.mark.parametrize("rows,dim", [
    ([((1, 0), 0), ((0, 1), 0), ((1, 1), 1)], 2),
    ([((1, 0), 0), ((0, 1), 0), ((1, -1), 0)], 2),
    ([((1, 0), 0), ((1, 0), 1), ((0, 1), 0)], 2),          # parallel pair
    ([((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0), ((1, 1, 1), 1)], 3),
])
def test_enumeration_against_3d_oracle(rows, dim):
    arr = make_arrangement(dim, rows)
    fc = enumerate_faces(arr)
    realizable = {sigma for sigma in product((-1, 0, 1), repeat=arr.d)
                  if sign_vector_realizable(arr, sigma) is not None}
    assert {f.sign for f in fc.faces} == realizable


def test_enumeration_against_oracle_random():
    for seed in (5, 6):
        arr = random_generic(4, 2, seed)
        fc = enumerate_faces(arr)
        realizable = {sigma for sigma in product((-1, 0, 1), repeat=arr.d)
                      if sign_vector_realizable(arr, sigma) is not None}
        assert {f.sign for f in fc.faces} == realizable


def test_adjacent_chambers_match_localized_region_count(gen3, cen3):
    # chambers adjacent to F are the chambers of the localization at F
    from arrtop.geometry import Arrangement
    for arr in (gen3, cen3):
        fc = enumerate_faces(arr)
        for i, face in enumerate(fc.faces):
            sub = [arr.hyperplanes[j] for j, s in enumerate(face.sign) if s == 0]
            adjacent = len(fc.adjacent_chambers(i))
            if not sub:
                assert adjacent == 1
                continue
            local = Arrangement.build(arr.dim, sub)
            chi = characteristic_polynomial(intersection_poset(local))
            assert adjacent == (-1) ** arr.dim * evaluate_poly(chi, -1)


def test_cover_relation_is_zero_relaxation(gen3):
    fc = enumerate_faces(gen3)
    for lo, hi in fc.covers:
        f, g = fc.faces[lo], fc.faces[hi]
        assert g.dim == f.dim + 1
        assert all(s == 0 or s == t for s, t in zip(f.sign, g.sign))
        assert sum(1 for s in f.sign if s == 0) > sum(1 for s in g.sign if s == 0)
