from fractions import Fraction

import pytest

from arrtop.exactla import FMatrixSparse
from arrtop.fields import FieldSpec
from arrtop.geometry import betti_numbers, intersection_poset
from arrtop.harness import braid_essentialized, c1_expected_dims, random_central, random_generic
from arrtop.localsys import build_local_system, scalar_system
from arrtop.realfaces import enumerate_faces
from arrtop.salvetti import (
    boundary_matrices,
    build_salvetti,
    euler_characteristic,
    twisted_betti,
    untwisted_homology,
)

Q = FieldSpec.rationals()
F7 = FieldSpec.prime(7)


def complex_for(arr):
    return build_salvetti(enumerate_faces(arr))


@pytest.mark.parametrize("fixture,counts", [
    ("bool2", [4, 8, 4]),
    ("cen3", [6, 12, 6]),
    ("a2", [3, 4]),
    ("gen3", [7, 18, 12]),
])
def test_cell_counts(fixture, counts, request):
    sc = complex_for(request.getfixturevalue(fixture))
    assert sc.cell_counts == counts


def test_zero_cells_are_chambers(gen3):
    fc = enumerate_faces(gen3)
    sc = build_salvetti(fc)
    assert len(sc.cells[0]) == len(fc.chambers)


def test_euler_alternating_sum(gen3, cen3, a2):
    for arr in (gen3, cen3, a2):
        sc = complex_for(arr)
        b = betti_numbers(intersection_poset(arr))
        assert euler_characteristic(sc) == sum((-1) ** i * x for i, x in enumerate(b))


def test_boundary_squares_to_zero_over_z(gen3):
    sc = complex_for(gen3)
    mats = boundary_matrices(sc)
    cols = mats[0].columns()
    prod = {}
    for (m, j), v in mats[1].entries.items():
        for i, w in cols.get(m, []):
            prod[(i, j)] = prod.get((i, j), 0) + v * w
    assert all(v == 0 for v in prod.values())


def test_incidence_records(bool2):
    sc = complex_for(bool2)
    fc = sc.fc
    for inc in sc.incidences():
        source = sc.cells[inc.degree][inc.source]
        target = sc.cells[inc.degree - 1][inc.target]
        assert inc.sign in (-1, 1)
        # target face covers source face
        assert inc.target in range(len(sc.cells[inc.degree - 1]))
        f, g = fc.faces[source.face], fc.faces[target.face]
        assert g.dim == f.dim + 1
        # crossings are the separating set of the two chambers
        c, d = fc.faces[source.chamber].sign, fc.faces[target.chamber].sign
        assert inc.crossings == frozenset(i for i, (x, y) in enumerate(zip(c, d)) if x != y)


@pytest.mark.parametrize("maker,seed", [
    (lambda s: random_generic(4, 2, s), 21),
    (lambda s: random_generic(4, 3, s), 22),
    (lambda s: random_central(4, 3, s), 23),
])
def test_untwisted_oracle_random(maker, seed):
    arr = maker(seed)
    sc = complex_for(arr)
    assert untwisted_homology(sc) == betti_numbers(intersection_poset(arr))


def test_untwisted_oracle_braid4():
    arr = braid_essentialized(4)
    sc = complex_for(arr)
    assert sc.cell_counts == [24, 72, 72, 24]
    assert untwisted_homology(sc) == [1, 6, 11, 6]
    for p in (2, 3, 7, 101):
        assert untwisted_homology(sc, FieldSpec.prime(p)) == [1, 6, 11, 6]


def test_twisted_a1(a1):
    sc = complex_for(a1)
    assert twisted_betti(sc, scalar_system(Q, [2])) == [0, 0]
    assert twisted_betti(sc, scalar_system(Q, [-1])) == [0, 0]
    assert twisted_betti(sc, scalar_system(Q, [1])) == [1, 1]


def test_twisted_a2(a2):
    sc = complex_for(a2)
    assert twisted_betti(sc, scalar_system(Q, [2, 3])) == [0, 1]


def test_twisted_bool2(bool2):
    sc = complex_for(bool2)
    assert twisted_betti(sc, scalar_system(Q, [2, 3])) == [0, 0, 0]


def test_twisted_constant_scales(gen3):
    sc = complex_for(gen3)
    const2 = build_local_system(Q, 2, [[[1, 0], [0, 1]]] * 3)
    assert twisted_betti(sc, const2) == [2, 6, 6]


def test_twisted_cen3_vanishing(cen3):
    sc = complex_for(cen3)
    assert twisted_betti(sc, scalar_system(Q, [2, 2, 2])) == [0, 0, 0]


def test_twisted_cen3_f7(cen3):
    sc = complex_for(cen3)
    assert twisted_betti(sc, scalar_system(F7, [2, 2, 2])) == [0, 1, 1]


def test_twisted_gen3(gen3):
    sc = complex_for(gen3)
    assert twisted_betti(sc, scalar_system(Q, [2, 2, 2])) == [0, 0, 1]


def test_twisted_rejects_mismatched_system(gen3):
    sc = complex_for(gen3)
    with pytest.raises(ValueError, match="3"):
        twisted_betti(sc, scalar_system(Q, [2, 3]))


def test_c1_closed_form_oracle(a2):
    sc = complex_for(a2)
    for scalars in ([2, 3], [2, Fraction(1, 2)], [-1, -1], [1, 5]):
        system = scalar_system(Q, scalars)
        assert twisted_betti(sc, system) == c1_expected_dims(system)
    unipotent = build_local_system(Q, 2, [[[1, 1], [0, 1]]] * 2)
    assert twisted_betti(sc, unipotent) == c1_expected_dims(unipotent)


def test_dual_pair_total_dimension(gen3, cen3):
    systems = [
        scalar_system(Q, [2, 3, 5]),
        scalar_system(F7, [2, 2, 2]),
        build_local_system(Q, 2, [[[1, 1], [0, 1]]] * 3),
        build_local_system(Q, 2, [[[2, 0], [0, 3]], [[5, 0], [0, Fraction(1, 3)]],
                                  [[1, 0], [0, 1]]]),
    ]
    for arr in (gen3, cen3):
        sc = complex_for(arr)
        for system in systems:
            total = sum(twisted_betti(sc, system))
            total_inv = sum(twisted_betti(sc, system.inverse_system()))
            assert total == total_inv


def test_euler_multiplicativity_samples(gen3, cen3):
    for arr in (gen3, cen3):
        sc = complex_for(arr)
        chi = sum((-1) ** i * x
                  for i, x in enumerate(betti_numbers(intersection_poset(arr))))
        for system in (scalar_system(Q, [2, 3, 5]),
                       build_local_system(F7, 2, [[[2, 0], [0, 3]]] * 3)):
            dims = twisted_betti(sc, system)
            assert sum((-1) ** i * x for i, x in enumerate(dims)) == system.rank * chi


def test_cell_count_dominates_twisted_betti(gen3):
    # CW model: b_i(U;L) <= r * c_i in every degree
    sc = complex_for(gen3)
    system = scalar_system(Q, [2, 3, 5])
    dims = twisted_betti(sc, system)
    assert all(d <= system.rank * c for d, c in zip(dims, sc.cell_counts))
    assert all(c >= b for c, b in
               zip(sc.cell_counts, betti_numbers(intersection_poset(gen3))))


def test_boundary_matrix_shapes(cen3):
    sc = complex_for(cen3)
    mats = boundary_matrices(sc)
    assert [(m.nrows, m.ncols) for m in mats] == [(6, 12), (12, 6)]
    assert all(isinstance(m, FMatrixSparse) for m in mats)
    assert all(v in (-1, 1) for m in mats for v in m.entries.values())


def test_boundary_rank_equals_transpose_rank(gen3):
    from arrtop.exactla import rank
    sc = complex_for(gen3)
    for m in boundary_matrices(sc):
        assert rank(m, Q) == rank(m.transpose(), Q)
        assert rank(m, F7) == rank(m.transpose(), F7)


def test_incidence_target_chamber_is_nearest(gen3, cen3):
    # among the chambers adjacent to the target face, the one recorded in
    # the incidence minimizes the separating set from the source chamber
    for arr in (gen3, cen3):
        sc = complex_for(arr)
        fc = sc.fc
        for inc in sc.incidences():
            source = sc.cells[inc.degree][inc.source]
            target = sc.cells[inc.degree - 1][inc.target]
            c_sign = fc.faces[source.chamber].sign
            best = len(inc.crossings)
            for other in fc.adjacent_chambers(target.face):
                o_sign = fc.faces[other].sign
                dist = sum(1 for a, b in zip(c_sign, o_sign) if a != b)
                assert dist >= best
                if dist == best:
                    assert other == target.chamber
