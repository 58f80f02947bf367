"""Salvetti model of a complexified-real arrangement complement.

Cells in degree k are pairs (F, C): a face F of codimension k of the
real arrangement together with a chamber C adjacent to it.  The cell
(G, D) lies on the boundary of (F, C) exactly when G covers F in the
face poset and D is the chamber adjacent to G nearest to C (the
composition G∘C: take G's sign where nonzero, C's sign where G is
zero).  This face relation makes the model a regular CW complex, so
integer incidence signs exist; they are computed degree by degree by
closing all "diamonds" (two-step intervals) over the signs fixed one
degree below, and the resulting convention is gated, not trusted:
boundary-squares-to-zero is verified over the integers at build time
and over every coefficient field before any rank is taken.

Twisted boundaries: crossing a hyperplane from its negative to its
positive side picks up the meridian monodromy, so a full turn around a
hyperplane accumulates exactly one monodromy factor.  Blocks are
assembled transposed; with that orientation the homology of the
resulting complex computes, in every degree, the cohomology dimensions
of the entrywise-inverse system (for rank one the two coincide up to
the usual inversion).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .exactla import FMatrixSparse, complex_dims
from .fields import FieldSpec
from .localsys import LocalSystem, mat_mul, identity_matrix, transpose
from .realfaces import FaceComplex


@dataclass(frozen=True)
class SCell:
    face: int            # index into FaceComplex.faces
    chamber: int         # index of an adjacent chamber face
    degree: int          # codim of the face


@dataclass(frozen=True)
class Incidence:
    degree: int          # degree of the source cell
    source: int          # position within degree `degree`
    target: int          # position within degree `degree - 1`
    sign: int
    crossings: frozenset  # hyperplanes separating source and target chambers


@dataclass
class SalvettiComplex:
    fc: FaceComplex
    cells: list          # cells[k] = list of SCell, sorted
    boundary: list       # boundary[k][pos] = list of (target_pos, sign, neg_crossings, crossings)

    @property
    def cell_counts(self):
        return [len(layer) for layer in self.cells]

    @property
    def dim(self):
        return len(self.cells) - 1

    def incidences(self):
        for k in range(1, len(self.cells)):
            for pos, records in enumerate(self.boundary[k]):
                for target, sign, _neg, crossings in records:
                    yield Incidence(k, pos, target, sign, crossings)


def _compose(g_sign, c_sign):
    """Chamber adjacent to G nearest C: G's sign where nonzero, else C's."""
    return tuple(g if g != 0 else c for g, c in zip(g_sign, c_sign))


def build_salvetti(fc: FaceComplex) -> SalvettiComplex:
    """All (face, adjacent chamber) pairs, graded by codim, with a sign
    convention satisfying boundary-squared = 0 over the integers."""
    arr = fc.arrangement
    n = arr.dim
    top_codim = max(n - f.dim for f in fc.faces)

    cells = [[] for _ in range(top_codim + 1)]
    for fi, face in enumerate(fc.faces):
        k = n - face.dim
        for c in fc.adjacent_chambers(fi):
            cells[k].append(SCell(fi, c, k))
    for layer in cells:
        layer.sort(key=lambda s: (fc.faces[s.face].sign, fc.faces[s.chamber].sign))
    index = [{(s.face, s.chamber): i for i, s in enumerate(layer)} for layer in cells]

    boundary = [None] * (top_codim + 1)
    # signs per cell: dict target_pos -> sign, kept per degree for diamonds
    sign_maps = [None] * (top_codim + 1)

    for k in range(1, top_codim + 1):
        layer_boundary = []
        layer_signs = []
        for pos, cell in enumerate(cells[k]):
            face = fc.faces[cell.face]
            csign = fc.faces[cell.chamber].sign
            covers = []
            for g in fc.covering(cell.face):
                dsign = _compose(fc.faces[g].sign, csign)
                target = index[k - 1][(g, fc.index_of(dsign))]
                crossings = frozenset(i for i, (a, b) in enumerate(zip(csign, dsign))
                                      if a != b)
                neg = frozenset(i for i in crossings if csign[i] == -1)
                covers.append((target, g, crossings, neg))
            covers.sort(key=lambda t: (t[0], t[1]))
            signs = _orient(cell, covers, k, sign_maps[k - 1], fc)
            records = [(target, signs[idx], neg, crossings)
                       for idx, (target, _g, crossings, neg) in enumerate(covers)]
            layer_boundary.append(records)
            layer_signs.append({target: sign for target, sign, _n, _c in records})
        boundary[k] = layer_boundary
        sign_maps[k] = layer_signs
    boundary[0] = [[] for _ in cells[0]]

    sc = SalvettiComplex(fc, cells, boundary)
    dims, mats = _integer_matrices(sc)
    complex_dims(mats, dims, FieldSpec.rationals())  # raises on a bad convention
    return sc


def _orient(cell, covers, k, prev_signs, fc):
    """Signs for the covers of one cell.

    Degree 1: the cell is a path from its own chamber to the opposite
    one; target minus source.  Higher degrees: propagate through the
    diamonds (pairs of covers over a common codim-2 cell), whose closing
    condition is determined by the signs already fixed one degree down;
    the boundary sphere is connected, so BFS reaches every cover."""
    if k == 1:
        own = fc.faces[cell.chamber].sign
        signs = []
        for _target, g, _crossings, _neg in covers:
            signs.append(-1 if fc.faces[g].sign == own else 1)
        if sorted(signs) != [-1, 1]:
            raise RuntimeError("degree-1 Salvetti cell without two distinct endpoints")
        return signs

    # shared lower cells: lam -> [(cover position, sign of cover -> lam)]
    shared = {}
    for idx, (target, _g, _crossings, _neg) in enumerate(covers):
        for lam, s in prev_signs[target].items():
            shared.setdefault(lam, []).append((idx, s))
    edges = [[] for _ in covers]
    for lam, pair in shared.items():
        if len(pair) != 2:
            raise RuntimeError(
                f"interval between cells is not a diamond ({len(pair)} middle cells)")
        (i, si), (j, sj) = pair
        edges[i].append((j, -si * sj))
        edges[j].append((i, -si * sj))

    signs = [0] * len(covers)
    for start in range(len(covers)):
        if signs[start]:
            continue
        signs[start] = 1
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j, rel in edges[i]:
                expected = signs[i] * rel
                if signs[j] == 0:
                    signs[j] = expected
                    queue.append(j)
                elif signs[j] != expected:
                    raise RuntimeError("inconsistent incidence signs on a cell boundary")
    return signs


def _integer_matrices(sc: SalvettiComplex):
    counts = sc.cell_counts
    dims = list(counts)
    mats = []
    for k in range(1, len(counts)):
        m = FMatrixSparse(counts[k - 1], counts[k])
        for pos, records in enumerate(sc.boundary[k]):
            for target, sign, _neg, _crossings in records:
                m.add(target, pos, sign)
        mats.append(m)
    return dims, mats


def boundary_matrices(sc: SalvettiComplex):
    """Integer boundary matrices (entries +-1), the trivial-monodromy
    specialization of the twisted complex."""
    _, mats = _integer_matrices(sc)
    return mats


def untwisted_homology(sc: SalvettiComplex, fieldspec: FieldSpec = None):
    """Homology dims of the integer complex over Q (or over F_p)."""
    fieldspec = fieldspec or FieldSpec.rationals()
    dims, mats = _integer_matrices(sc)
    if fieldspec.kind == "Fp":
        p = fieldspec.p
        reduced = []
        for m in mats:
            rm = FMatrixSparse(m.nrows, m.ncols)
            for (i, j), v in m.entries.items():
                if v % p:
                    rm.entries[(i, j)] = v % p
            reduced.append(rm)
        mats = reduced
    return complex_dims(mats, dims, fieldspec).homology


@dataclass
class TwistedComplex:
    field: FieldSpec
    rank: int
    dims: list
    matrices: list


def twisted_complex(sc: SalvettiComplex, system: LocalSystem) -> TwistedComplex:
    """Boundary matrices with coefficients in the local system.

    Each incidence contributes an r x r block: the incidence sign times
    the (transposed) product of the monodromies of the hyperplanes
    crossed from their negative to their positive side."""
    arr = sc.fc.arrangement
    if system.d != arr.d:
        raise ValueError(f"system has {system.d} matrices, arrangement has {arr.d}")
    field = system.field
    r = system.rank
    ident = identity_matrix(field, r)
    block_cache = {frozenset(): ident}

    def block_for(neg):
        got = block_cache.get(neg)
        if got is None:
            acc = ident
            for i in sorted(neg):
                acc = mat_mul(field, acc, system.monodromy[i])
            got = transpose(acc)
            block_cache[neg] = got
        return got

    counts = sc.cell_counts
    dims = [r * c for c in counts]
    mats = []
    for k in range(1, len(counts)):
        m = FMatrixSparse(dims[k - 1], dims[k])
        for pos, records in enumerate(sc.boundary[k]):
            for target, sign, neg, _crossings in records:
                block = block_for(neg)
                for a in range(r):
                    row = block[a]
                    for b in range(r):
                        v = row[b]
                        if not field.is_zero(v):
                            m.add(r * target + a, r * pos + b,
                                  v if sign > 0 else field.neg(v))
        mats.append(m)
    return TwistedComplex(field, r, dims, mats)


def twisted_betti(sc: SalvettiComplex, system: LocalSystem):
    """Twisted Betti numbers: per-degree homology dims of the twisted
    complex, padded to the ambient dimension.

    Convention: these are the cohomology dimensions of the
    entrywise-inverse system.  The verification corpus is closed under
    inversion, so statements quantified over all systems are unaffected.
    """
    tc = twisted_complex(sc, system)
    hom = complex_dims(tc.matrices, tc.dims, tc.field).homology
    n = sc.fc.arrangement.dim
    return hom + [0] * (n + 1 - len(hom))


def euler_characteristic(sc: SalvettiComplex) -> int:
    return sum((-1) ** k * c for k, c in enumerate(sc.cell_counts))
