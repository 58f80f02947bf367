"""Exact combinatorial geometry of affine hyperplane arrangements over Q.

An arrangement is a finite set of affine hyperplanes a·x = b with
rational coefficients in C^n (complexified-real: the defining forms are
real).  This module computes the intersection poset of flats with its
Möbius function, the characteristic polynomial, Whitney-sum Betti
numbers of the complement, and the surgeries used by dimension
arguments: essentialization, localization at a flat, deconing a central
arrangement, and certified generic sections.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactla import dot, invert_dense, nullspace, rank_dense, rref, solve_affine
from .fields import format_rational, parse_rational


class ArrangementError(Exception):
    """Invalid arrangement data."""


class GenericityError(Exception):
    """No combinatorially generic section found within the retry budget."""

    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = failures or []


@dataclass(frozen=True)
class Hyperplane:
    """The locus {x : normal·x = offset}."""

    normal: tuple
    offset: Fraction
    label: str

    def eval(self, point) -> Fraction:
        return dot(self.normal, point) - self.offset


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple
    is_central: bool
    is_essential: bool

    @property
    def d(self) -> int:
        return len(self.hyperplanes)

    def normals(self):
        return [list(h.normal) for h in self.hyperplanes]

    def common_point(self):
        """A point on every hyperplane, or None."""
        sol = solve_affine([(h.normal, h.offset) for h in self.hyperplanes], self.dim)
        return None if sol is None else tuple(sol[0])

    @staticmethod
    def build(dim, hyperplanes) -> "Arrangement":
        if dim < 1:
            raise ArrangementError(f"ambient dimension must be >= 1, got {dim}")
        if not hyperplanes:
            raise ArrangementError("arrangement needs at least one hyperplane")
        seen = {}
        for h in hyperplanes:
            if len(h.normal) != dim:
                raise ArrangementError(f"hyperplane {h.label}: normal has length "
                                       f"{len(h.normal)}, ambient dimension is {dim}")
            lead = next((x for x in h.normal if x != 0), None)
            if lead is None:
                raise ArrangementError(f"hyperplane {h.label}: zero normal vector")
            key = tuple(x / lead for x in h.normal) + (h.offset / lead,)
            if key in seen:
                raise ArrangementError(
                    f"duplicate hyperplanes: {seen[key]} and {h.label} define the same locus")
            seen[key] = h.label
        arr = Arrangement(
            dim=dim,
            hyperplanes=tuple(hyperplanes),
            is_central=solve_affine([(h.normal, h.offset) for h in hyperplanes], dim) is not None,
            is_essential=rank_dense([h.normal for h in hyperplanes]) == dim,
        )
        return arr

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "hyperplanes": [
                {"label": h.label,
                 "normal": [format_rational(x) for x in h.normal],
                 "offset": format_rational(h.offset)}
                for h in self.hyperplanes
            ],
        }


def validate_arrangement(raw: dict) -> Arrangement:
    """Parse and canonicalize a raw arrangement description.

    Expects {"dim": n, "hyperplanes": [{"label", "normal", "offset"}, ...]}
    with rational strings.  Hyperplane order is preserved.
    """
    if not isinstance(raw, dict) or "dim" not in raw or "hyperplanes" not in raw:
        raise ArrangementError("arrangement file needs 'dim' and 'hyperplanes'")
    try:
        dim = int(raw["dim"])
    except (TypeError, ValueError):
        raise ArrangementError(f"bad ambient dimension {raw.get('dim')!r}")
    hyps = []
    for idx, row in enumerate(raw["hyperplanes"]):
        label = str(row.get("label", f"H{idx + 1}"))
        try:
            normal = tuple(parse_rational(x) for x in row["normal"])
            offset = parse_rational(row.get("offset", "0"))
        except (KeyError, ValueError) as exc:
            raise ArrangementError(f"hyperplane {label}: {exc}")
        hyps.append(Hyperplane(normal, offset, label))
    return Arrangement.build(dim, hyps)


# ---------------------------------------------------------------------------
# intersection poset


@dataclass(frozen=True)
class Flat:
    """A nonempty intersection of hyperplanes (the ambient space for
    the empty intersection).

    `containing` is closed: it lists every hyperplane whose locus
    contains the flat, which determines the flat uniquely.
    """

    codim: int
    point: tuple
    directions: tuple
    containing: frozenset
    mobius: int

    def key(self):
        return tuple(sorted(self.containing))


@dataclass
class FlatPoset:
    """Intersection poset of flats, ordered by reverse inclusion.

    The bottom element is the ambient space with Möbius value 1; Y <= X
    iff the flat X is contained in Y, equivalently containing(Y) is a
    subset of containing(X).
    """

    arrangement: Arrangement
    flats: tuple

    @property
    def ambient_dim(self) -> int:
        return self.arrangement.dim

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    def of_codim(self, c):
        return [f for f in self.flats if f.codim == c]

    def flat_counts(self):
        counts = [0] * (self.ambient_dim + 1)
        for f in self.flats:
            counts[f.codim] += 1
        return counts


def _hyperplanes_containing(arr: Arrangement, point, directions) -> frozenset:
    found = []
    for i, h in enumerate(arr.hyperplanes):
        if h.eval(point) == 0 and all(dot(h.normal, v) == 0 for v in directions):
            found.append(i)
    return frozenset(found)


def intersection_poset(arr: Arrangement) -> FlatPoset:
    """All nonempty intersections of hyperplane subsets, with Möbius values."""
    n = arr.dim
    origin = tuple(Fraction(0) for _ in range(n))
    std = tuple(tuple(Fraction(1 if j == i else 0) for j in range(n)) for i in range(n))
    flats = {frozenset(): (origin, std)}
    frontier = [frozenset()]
    while frontier:
        fresh = []
        for key in frontier:
            point, dirs = flats[key]
            for i in range(arr.d):
                if i in key:
                    continue
                eqs = [(arr.hyperplanes[j].normal, arr.hyperplanes[j].offset)
                       for j in sorted(key | {i})]
                sol = solve_affine(eqs, n)
                if sol is None:
                    continue
                pt, basis = sol
                closure = _hyperplanes_containing(arr, pt, basis)
                if closure not in flats:
                    flats[closure] = (tuple(pt), tuple(tuple(v) for v in basis))
                    fresh.append(closure)
        frontier = fresh

    order = sorted(flats, key=lambda s: (n - len(flats[s][1]), tuple(sorted(s))))
    mobius = {}
    for key in order:
        if not key:
            mobius[key] = 1
        else:
            mobius[key] = -sum(mobius[other] for other in order
                               if other != key and other <= key and other in mobius)
    result = tuple(
        Flat(codim=n - len(flats[key][1]), point=flats[key][0],
             directions=flats[key][1], containing=key, mobius=mobius[key])
        for key in order)
    return FlatPoset(arr, result)


def characteristic_polynomial(poset: FlatPoset):
    """Coefficients [c_0, ..., c_n] of sum_X mu(X) t^{dim X}; monic."""
    n = poset.ambient_dim
    coeffs = [0] * (n + 1)
    for f in poset.flats:
        coeffs[n - f.codim] += f.mobius
    return coeffs


def evaluate_poly(coeffs, t: int) -> int:
    return sum(c * t ** i for i, c in enumerate(coeffs))


def betti_numbers(poset: FlatPoset):
    """Whitney sums: b_i = sum of |mu(X)| over flats of codimension i."""
    b = [0] * (poset.ambient_dim + 1)
    for f in poset.flats:
        b[f.codim] += abs(f.mobius)
    return b


def zero_flats(poset: FlatPoset):
    """Flats of dimension zero (codimension = ambient dimension)."""
    return poset.of_codim(poset.ambient_dim)


# ---------------------------------------------------------------------------
# surgeries


def essentialize(arr: Arrangement):
    """Quotient by the lineality space along a rational complement.

    Returns (essential arrangement, projection rows).  The projection P
    satisfies: x lies on hyperplane i iff P x lies on the image
    hyperplane i.  Identity when the input is already essential.
    """
    n = arr.dim
    if arr.is_essential:
        identity = tuple(tuple(Fraction(1 if j == i else 0) for j in range(n))
                         for i in range(n))
        return arr, identity
    normals = [h.normal for h in arr.hyperplanes]
    _, pivots = rref(normals)
    m = len(pivots)
    lineality = nullspace(normals, n)
    cols = [[Fraction(1 if i == p else 0) for i in range(n)] for p in pivots]
    cols += [list(v) for v in lineality]
    basis = [[cols[j][i] for j in range(n)] for i in range(n)]  # columns -> matrix
    inv = invert_dense(basis)
    proj = tuple(tuple(inv[r][c] for c in range(n)) for r in range(m))
    hyps = [Hyperplane(tuple(h.normal[p] for p in pivots), h.offset, h.label)
            for h in arr.hyperplanes]
    return Arrangement.build(m, hyps), proj


def localize(arr: Arrangement, flat: Flat) -> Arrangement:
    """Subarrangement of the hyperplanes containing the flat (central)."""
    for i in flat.containing:
        h = arr.hyperplanes[i]
        if h.eval(flat.point) != 0 or any(dot(h.normal, v) != 0 for v in flat.directions):
            raise ArrangementError(f"{h.label} does not contain the given flat")
    closure = _hyperplanes_containing(arr, flat.point, flat.directions)
    if closure != flat.containing:
        raise ArrangementError("not a flat of this arrangement")
    hyps = [arr.hyperplanes[i] for i in sorted(flat.containing)]
    return Arrangement.build(arr.dim, hyps)


def decone(arr: Arrangement, i0: int) -> Arrangement:
    """Send hyperplane i0 to infinity via a rational coordinate change.

    Requires a central essential arrangement in dimension >= 2.  The
    output lives in C^{n-1}; its hyperplane j corresponds to input
    hyperplane j != i0, in order.
    """
    if not arr.is_central:
        raise ArrangementError("decone requires a central arrangement")
    if not arr.is_essential:
        raise ArrangementError("decone requires an essential arrangement")
    if not 0 <= i0 < arr.d:
        raise ArrangementError(f"hyperplane index {i0} out of range")
    n = arr.dim
    if n < 2:
        raise ArrangementError("decone requires ambient dimension >= 2")
    # after translating the center to the origin every defining form is
    # linear, so only the normals enter the chart computation
    a0 = arr.hyperplanes[i0].normal
    rows = [list(a0)]
    chosen = []
    for j in range(n):
        e = [Fraction(1 if c == j else 0) for c in range(n)]
        if rank_dense(rows + [e]) > len(rows):
            rows.append(e)
            chosen.append(e)
        if len(rows) == n:
            break
    t_rows = chosen + [list(a0)]          # last coordinate is the form of H_i0
    tinv = invert_dense(t_rows)
    hyps = []
    for j, h in enumerate(arr.hyperplanes):
        if j == i0:
            continue
        c = [sum(h.normal[k] * tinv[k][i] for k in range(n)) for i in range(n)]
        hyps.append(Hyperplane(tuple(c[:n - 1]), -c[n - 1], h.label))
    return Arrangement.build(n - 1, hyps)


@dataclass(frozen=True)
class SectionCertificate:
    """Witness that a section plane is combinatorially generic."""

    k: int
    seed: int
    attempts: int
    base_point: tuple
    directions: tuple
    index_map: tuple


def _check_section(arr, poset, sec_poset, base, dirs, k):
    """Combinatorial genericity: codim <= k flats survive with the same
    codimension and containing set, higher ones are missed, and the
    truncated Betti numbers match."""
    by_key = {f.containing: f for f in sec_poset.flats}
    survivors = 0
    for f in poset.flats:
        eqs = []
        for i in sorted(f.containing):
            h = arr.hyperplanes[i]
            eqs.append(([dot(h.normal, u) for u in dirs], h.offset - dot(h.normal, base)))
        sol = solve_affine(eqs, k)
        if f.codim <= k:
            if sol is None or k - len(sol[1]) != f.codim:
                return f"flat {sorted(f.containing)} (codim {f.codim}) not met transversally"
            g = by_key.get(f.containing)
            if g is None or g.codim != f.codim:
                return f"flat {sorted(f.containing)} has no matching section flat"
            survivors += 1
        elif sol is not None:
            return f"flat {sorted(f.containing)} of codim {f.codim} > {k} meets the plane"
    if survivors != len(sec_poset.flats):
        return "section has extra flats"
    if betti_numbers(sec_poset) != betti_numbers(poset)[:k + 1]:
        return "truncated Betti numbers disagree"
    return None


def generic_section(arr: Arrangement, k: int, seed: int, max_attempts: int = 32):
    """Certified combinatorially generic k-plane section.

    The plane is drawn pseudo-randomly (integer coordinates, determined
    by seed); each draw is certified against the intersection poset and
    redrawn on failure, up to `max_attempts`.  For k = n the arrangement
    is returned unchanged.
    """
    n = arr.dim
    if not 1 <= k <= n:
        raise ArrangementError(f"section dimension {k} out of range 1..{n}")
    if k == n:
        identity = tuple(tuple(Fraction(1 if j == i else 0) for j in range(n))
                         for i in range(n))
        cert = SectionCertificate(k, seed, 0, tuple(Fraction(0) for _ in range(n)),
                                  identity, tuple(range(arr.d)))
        return arr, cert
    poset = intersection_poset(arr)
    rng = random.Random(seed)
    failures = []
    for attempt in range(1, max_attempts + 1):
        base = tuple(Fraction(rng.randint(-10000, 10000)) for _ in range(n))
        dirs = tuple(tuple(Fraction(rng.randint(-10000, 10000)) for _ in range(n))
                     for _ in range(k))
        if rank_dense([list(u) for u in dirs]) != k:
            failures.append("degenerate direction matrix")
            continue
        hyps = []
        for h in arr.hyperplanes:
            normal = tuple(dot(h.normal, u) for u in dirs)
            hyps.append(Hyperplane(normal, h.offset - dot(h.normal, base), h.label))
        if any(all(x == 0 for x in h.normal) for h in hyps):
            failures.append("plane parallel to a hyperplane")
            continue
        try:
            sec = Arrangement.build(k, hyps)
        except ArrangementError as exc:
            failures.append(str(exc))
            continue
        sec_poset = intersection_poset(sec)
        problem = _check_section(arr, poset, sec_poset, base, dirs, k)
        if problem is not None:
            failures.append(problem)
            continue
        cert = SectionCertificate(k, seed, attempt, base, dirs, tuple(range(arr.d)))
        return sec, cert
    raise GenericityError(
        f"no generic {k}-section of d={arr.d} arrangement after {max_attempts} attempts",
        failures)
