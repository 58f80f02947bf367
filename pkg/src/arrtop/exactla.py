"""Exact linear algebra over Q and F_p.

Two layers:

* small dense helpers over Fraction (row reduction, affine solves, null
  spaces) used by the combinatorial geometry, and
* the rank / homology workhorses for chain complexes: sparse ingest,
  fraction-free (Bareiss) elimination on arbitrary-precision integers
  over Q, vectorized Gaussian elimination over F_p.

There are no tolerances anywhere; every result is an exact integer or
rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .fields import FieldSpec


class ChainComplexError(Exception):
    """Raised when consecutive boundary matrices do not compose to zero."""


# ---------------------------------------------------------------------------
# dense rational helpers


def rref(rows):
    """Reduced row echelon form over Q.

    Returns (rref_rows, pivot_columns).  Input rows are lists/tuples of
    Fractions; the input is not modified.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank_dense(rows) -> int:
    _, pivots = rref(rows)
    return len(pivots)


def solve_affine(eqs, n):
    """Solve a rational system a·x = b.

    `eqs` is a list of (coeffs, rhs).  Returns (particular, basis) where
    `particular` is one solution (free variables set to 0) and `basis`
    spans the solution space of the homogeneous system, or None if the
    system is inconsistent.
    """
    if not eqs:
        particular = [Fraction(0)] * n
        basis = [[Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
        return particular, basis
    aug = [list(a) + [b] for a, b in eqs]
    m, pivots = rref(aug)
    if n in pivots:
        return None
    particular = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        particular[c] = m[r][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        basis.append(v)
    return particular, basis


def nullspace(rows, n):
    """Basis of {x : a·x = 0 for every row a}."""
    sol = solve_affine([(row, Fraction(0)) for row in rows], n)
    return sol[1]


def invert_dense(rows):
    """Inverse of a square rational matrix; raises on singular input."""
    n = len(rows)
    aug = [list(map(Fraction, rows[i])) + [Fraction(1 if j == i else 0) for j in range(n)]
           for i in range(n)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in m]


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# sparse matrices and rank


@dataclass
class FMatrixSparse:
    """Sparse matrix: at most one entry per position, no stored zeros."""

    nrows: int
    ncols: int
    entries: dict = field(default_factory=dict)

    def add(self, i, j, value):
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry ({i},{j}) outside {self.nrows}x{self.ncols}")
        cur = self.entries.get((i, j))
        new = value if cur is None else cur + value
        if new == 0:
            self.entries.pop((i, j), None)
        else:
            self.entries[(i, j)] = new

    def columns(self):
        """entries grouped by column: {j: [(i, value), ...]}"""
        cols = {}
        for (i, j), v in self.entries.items():
            cols.setdefault(j, []).append((i, v))
        return cols

    def transpose(self) -> "FMatrixSparse":
        t = FMatrixSparse(self.ncols, self.nrows)
        for (i, j), v in self.entries.items():
            t.entries[(j, i)] = v
        return t

    def dense_rows(self):
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows


def _rows_to_integers(rows):
    """Scale each row by the lcm of denominators; rank is unchanged."""
    out = []
    for row in rows:
        if any(isinstance(x, Fraction) for x in row):
            l = 1
            for x in row:
                d = x.denominator if isinstance(x, Fraction) else 1
                l = l * d // gcd(l, d)
            out.append([int(x * l) for x in row])
        else:
            out.append([int(x) for x in row])
    return out


def _rank_bareiss(rows) -> int:
    """Fraction-free elimination on integer rows; mutates `rows`."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        p = pr[col]
        for i in range(rank + 1, nrows):
            ri = rows[i]
            f = ri[col]
            if f:
                for j in range(col + 1, ncols):
                    ri[j] = (p * ri[j] - f * pr[j]) // prev
                ri[col] = 0
            elif p != prev:
                # fraction-free invariant: untouched rows still rescale
                for j in range(col + 1, ncols):
                    ri[j] = (p * ri[j]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _rank_mod_p(rows, p: int) -> int:
    if not rows or not rows[0]:
        return 0
    m = np.array(rows, dtype=np.int64) % p
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = (m[rank] * inv) % p
        below = np.nonzero(m[rank + 1:, col])[0] + rank + 1
        if below.size:
            m[below] = (m[below] - np.outer(m[below, col], m[rank])) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(matrix: FMatrixSparse, fieldspec: FieldSpec) -> int:
    """Exact rank of a sparse matrix over the given field."""
    if matrix.nrows == 0 or matrix.ncols == 0 or not matrix.entries:
        return 0
    rows = matrix.dense_rows()
    if fieldspec.kind == "Q":
        return _rank_bareiss(_rows_to_integers(rows))
    return _rank_mod_p([[x % fieldspec.p for x in row] for row in rows], fieldspec.p)


# ---------------------------------------------------------------------------
# chain complexes


@dataclass
class ComplexDims:
    """Per-degree cell dimensions, boundary ranks and homology dims."""

    dims: list
    ranks: list          # ranks[k-1] = rank of boundary C_k -> C_{k-1}, k = 1..n
    homology: list

    def euler(self) -> int:
        return sum((-1) ** k * d for k, d in enumerate(self.dims))


def _verify_composition(upper: FMatrixSparse, lower: FMatrixSparse, fieldspec: FieldSpec, k: int):
    """Check lower ∘ upper = 0 (upper: C_{k+1} -> C_k, lower: C_k -> C_{k-1})."""
    lower_cols = lower.columns()
    for j, col in upper.columns().items():
        acc = {}
        for m, v in col:
            for i, w in lower_cols.get(m, ()):
                acc[i] = fieldspec.add(acc.get(i, fieldspec.zero), fieldspec.mul(w, v))
        for i, val in acc.items():
            if not fieldspec.is_zero(val):
                raise ChainComplexError(
                    f"boundary composition nonzero in degrees {k + 1}->{k - 1} "
                    f"at ({i},{j}): {val}")


def complex_dims(matrices, dims, fieldspec: FieldSpec) -> ComplexDims:
    """Homology dimensions of a chain complex.

    `matrices[k-1]` is the boundary C_k -> C_{k-1} (shape dims[k-1] x dims[k])
    for k = 1..n; `dims` lists the chain-group dimensions.  Composition to
    zero is verified first and a violation is a hard error, never a wrong
    answer.
    """
    n = len(dims) - 1
    if len(matrices) != n:
        raise ValueError(f"expected {n} boundary matrices, got {len(matrices)}")
    for k, mat in enumerate(matrices, start=1):
        if mat.nrows != dims[k - 1] or mat.ncols != dims[k]:
            raise ValueError(f"boundary {k} has shape {mat.nrows}x{mat.ncols}, "
                             f"expected {dims[k - 1]}x{dims[k]}")
    for k in range(1, n):
        _verify_composition(matrices[k], matrices[k - 1], fieldspec, k)
    ranks = [rank(m, fieldspec) for m in matrices]
    homology = []
    for k in range(n + 1):
        below = ranks[k - 1] if k >= 1 else 0
        above = ranks[k] if k < n else 0
        h = dims[k] - below - above
        if h < 0:
            raise ChainComplexError(f"negative homology dimension in degree {k}")
        homology.append(h)
    return ComplexDims(list(dims), ranks, homology)
