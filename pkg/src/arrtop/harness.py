"""Theorem-derived verification suite.

Each check restates one dimension-level identity or inequality about
twisted Betti numbers as an exact integer comparison, evaluated on a
reproducible corpus of arrangements and abelian local systems.  There
are no tolerances: a check passes exactly or fails with full
reproduction data (ids plus the generating seed).

The corpus is deterministic in its seed, closed under entrywise matrix
inversion of local systems, and contains at least 100 nontrivial
systems per arrangement by default.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import geometry, localsys, realfaces, salvetti
from .exactla import FMatrixSparse, rank as matrix_rank
from .fields import FieldSpec, format_rational
from .geometry import Arrangement, Hyperplane
from .localsys import LocalSystem, build_local_system, is_trivial, identity_matrix


class PreconditionError(Exception):
    """A check was invoked on inputs outside its stated hypotheses."""


DEFAULT_PRIMES = (2, 3, 7, 101)

STATEMENTS = {
    "untwisted_match": "Salvetti homology equals Whitney-sum Betti numbers; "
                       "chamber counts match the characteristic-polynomial evaluations",
    "constant_equality": "constant rank-r coefficients give exactly r times the "
                         "untwisted Betti numbers in every degree",
    "main_theorem": "nontrivial coefficients: b_i(U;L) < r*b_i(U) in every degree",
    "euler": "alternating sum of twisted Betti numbers equals r times the "
             "Euler characteristic of the complement",
    "relative_section": "for a generic hyperplane section B: b_i agrees for i <= n-2 "
                        "and b_{n-1}(B) - b_{n-1}(U) + b_n(U) = r*b_n(U)",
    "local_global": "b_n(U;L) >= sum of b_n over localizations at 0-flats; "
                    "equality for constant coefficients",
    "nearby_section": "generic section of U dominates the generic section of "
                      "each localization in degree n-1",
    "central_structure": "central case: invertible (T - I) forces vanishing; "
                         "T = I gives b_k(U) = b_k(M) + b_{k-1}(M) for every decone",
    "lefschetz": "generic i-section: b_i(U;L) <= b_i(B;L) and untwisted b_i agree",
    "c1_oracle": "dimension-1 closed form: (dim ker-intersection, r(d-1) + same)",
}


@dataclass
class CheckReport:
    check: str
    arrangement: str
    system: str | None
    status: str            # pass / fail / skipped
    data: dict = dc_field(default_factory=dict)
    aux: str = ""

    def to_json(self, seed):
        return {
            "check": self.check,
            "arrangement": self.arrangement,
            "system": self.system,
            "status": self.status,
            "data": self.data,
            "aux": self.aux,
            "statement": STATEMENTS[self.check],
            "seed": seed,
        }


# ---------------------------------------------------------------------------
# named and generated arrangements


def _hyp(normal, offset, label):
    return Hyperplane(tuple(Fraction(x) for x in normal), Fraction(offset), label)


def named_arrangements():
    """The fixed examples every corpus contains."""
    build = Arrangement.build
    named = {
        "a1": build(1, [_hyp((1,), 0, "H1")]),
        "a2": build(1, [_hyp((1,), 0, "H1"), _hyp((1,), 1, "H2")]),
        "bool2": build(2, [_hyp((1, 0), 0, "x"), _hyp((0, 1), 0, "y")]),
        "gen3": build(2, [_hyp((1, 0), 0, "x"), _hyp((0, 1), 0, "y"),
                          _hyp((1, 1), 1, "x+y-1")]),
        "cen3": build(2, [_hyp((1, 0), 0, "x"), _hyp((0, 1), 0, "y"),
                          _hyp((1, -1), 0, "x-y")]),
    }
    return named


def braid_essentialized(m: int) -> Arrangement:
    """All x_i = x_j in C^m, quotiented by the diagonal."""
    hyps = []
    for i in range(m):
        for j in range(i + 1, m):
            normal = [Fraction(0)] * m
            normal[i], normal[j] = Fraction(1), Fraction(-1)
            hyps.append(Hyperplane(tuple(normal), Fraction(0), f"x{i + 1}-x{j + 1}"))
    arr = Arrangement.build(m, hyps)
    essential, _ = geometry.essentialize(arr)
    return essential


def _subseed(*parts) -> int:
    digest = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _binomials(d, n):
    from math import comb
    return [comb(d, i) for i in range(n + 1)]


def random_generic(d: int, n: int, seed: int) -> Arrangement:
    """d hyperplanes in general position in C^n (certified: Betti numbers
    are the binomial coefficients)."""
    import random as _random
    rng = _random.Random(seed)
    for _ in range(64):
        hyps = []
        for i in range(d):
            normal = tuple(Fraction(rng.randint(-5, 5)) for _ in range(n))
            hyps.append(Hyperplane(normal, Fraction(rng.randint(-9, 9)), f"H{i + 1}"))
        try:
            arr = Arrangement.build(n, hyps)
        except geometry.ArrangementError:
            continue
        if not arr.is_essential:
            continue
        poset = geometry.intersection_poset(arr)
        if geometry.betti_numbers(poset) == _binomials(d, n):
            return arr
    raise RuntimeError(f"failed to sample a generic ({d},{n}) arrangement")


def random_central(d: int, n: int, seed: int) -> Arrangement:
    """d distinct hyperplanes through the origin, essential."""
    import random as _random
    rng = _random.Random(seed)
    for _ in range(64):
        hyps = []
        for i in range(d):
            normal = tuple(Fraction(rng.randint(-5, 5)) for _ in range(n))
            hyps.append(Hyperplane(normal, Fraction(0), f"H{i + 1}"))
        try:
            arr = Arrangement.build(n, hyps)
        except geometry.ArrangementError:
            continue
        if arr.is_essential:
            return arr
    raise RuntimeError(f"failed to sample a central ({d},{n}) arrangement")


# ---------------------------------------------------------------------------
# corpus of local systems


@dataclass(frozen=True)
class CorpusSpec:
    """Deterministic corpus description; expansion depends only on seed."""

    seed: int = 0
    primes: tuple = DEFAULT_PRIMES
    include_named: bool = True
    braid_sizes: tuple = (3, 4)
    generic_sizes: tuple = ((4, 2), (6, 2), (4, 3))
    central_sizes: tuple = ((4, 3), (5, 3))
    rank1_q_random: int = 6
    rank1_fp_random: int = 9
    rank2_diag_q: int = 2
    rank2_diag_fp: int = 2
    constant_ranks: tuple = (1, 2, 3)
    include_unipotent: bool = True
    include_balanced: bool = True
    min_nontrivial: int = 100


@dataclass
class CorpusItem:
    arrangement_id: str
    arrangement: Arrangement
    systems: tuple        # of (system_id, LocalSystem)


def _id_frag(x) -> str:
    return format_rational(x).replace("/", "_").replace("-", "m")


def _add_with_inverse(out, seen, sys_id, system):
    for candidate_id, candidate in ((sys_id, system),
                                    (sys_id + "-inv", system.inverse_system())):
        key = (candidate.field, candidate.monodromy)
        if key not in seen:
            seen[key] = candidate_id
            out.append((candidate_id, candidate))


def systems_for_arrangement(arr: Arrangement, spec: CorpusSpec, arr_id: str):
    """Local systems attached to one arrangement, closed under inversion."""
    import random as _random
    d = arr.d
    q = FieldSpec.rationals()
    out, seen = [], {}

    for r in spec.constant_ranks:
        ident = identity_matrix(q, r)
        out.append((f"const-r{r}", LocalSystem(q, r, tuple(ident for _ in range(d)))))

    pool = [Fraction(2), Fraction(3), Fraction(5), Fraction(1, 2), Fraction(-1)]
    for s in pool:
        _add_with_inverse(out, seen, f"q1-eq-{_id_frag(s)}",
                          localsys.scalar_system(q, [s] * d))
    rng = _random.Random(_subseed(spec.seed, arr_id, "q1"))
    for t in range(spec.rank1_q_random):
        scalars = [pool[rng.randrange(len(pool))] for _ in range(d)]
        _add_with_inverse(out, seen, f"q1-rnd-{t}", localsys.scalar_system(q, scalars))

    if spec.include_balanced and d >= 2:
        bal = [Fraction(2)] + [Fraction(1)] * (d - 2) + [Fraction(1, 2)]
        _add_with_inverse(out, seen, "q1-bal", localsys.scalar_system(q, bal))
        diag = [(Fraction(2), Fraction(3))] * (d - 1) + \
            [(Fraction(2) ** (1 - d), Fraction(3) ** (1 - d))]
        mats = [[[a, 0], [0, b]] for a, b in diag]
        _add_with_inverse(out, seen, "q2-bal", build_local_system(q, 2, mats))

    for p in spec.primes:
        if p == 2:
            continue
        fp = FieldSpec.prime(p)
        for s in sorted({2 % p, 3 % p, p - 1}):
            if s in (0, 1):
                continue
            _add_with_inverse(out, seen, f"f{p}1-eq-{s}",
                              localsys.scalar_system(fp, [s] * d))
        rng = _random.Random(_subseed(spec.seed, arr_id, f"fp1-{p}"))
        for t in range(spec.rank1_fp_random):
            while True:
                scalars = [rng.randrange(1, p) for _ in range(d)]
                if any(s != 1 for s in scalars):
                    break
            _add_with_inverse(out, seen, f"f{p}1-rnd-{t}",
                              localsys.scalar_system(fp, scalars))

    rng = _random.Random(_subseed(spec.seed, arr_id, "q2"))
    for t in range(spec.rank2_diag_q):
        mats = []
        for _ in range(d):
            a = pool[rng.randrange(len(pool))]
            b = pool[rng.randrange(len(pool))]
            mats.append([[a, 0], [0, b]])
        _add_with_inverse(out, seen, f"q2-diag-{t}", build_local_system(q, 2, mats))

    for p in (7, 101):
        if p not in spec.primes:
            continue
        fp = FieldSpec.prime(p)
        rng = _random.Random(_subseed(spec.seed, arr_id, f"fp2-{p}"))
        for t in range(spec.rank2_diag_fp):
            mats = [[[rng.randrange(2, p), 0], [0, rng.randrange(2, p)]]
                    for _ in range(d)]
            _add_with_inverse(out, seen, f"f{p}2-diag-{t}",
                              build_local_system(fp, 2, mats))

    if spec.include_unipotent:
        uni = [[1, 1], [0, 1]]
        _add_with_inverse(out, seen, "q2-uni",
                          build_local_system(q, 2, [uni] * d))
        for p in (2, 3, 7):
            if p in spec.primes:
                _add_with_inverse(out, seen, f"f{p}2-uni",
                                  build_local_system(FieldSpec.prime(p), 2, [uni] * d))

    # top up with cheap prime-field systems until the nontrivial target
    odd_primes = [p for p in spec.primes if p > 2]
    if spec.min_nontrivial and odd_primes:
        p = max(odd_primes)
        fp = FieldSpec.prime(p)
        rng = _random.Random(_subseed(spec.seed, arr_id, "topup"))
        attempt = 0
        while attempt < 20 * spec.min_nontrivial:
            if sum(1 for _, s in out if not is_trivial(s)) >= spec.min_nontrivial:
                break
            attempt += 1
            if attempt % 3:
                while True:
                    scalars = [rng.randrange(1, p) for _ in range(d)]
                    if any(s != 1 for s in scalars):
                        break
                _add_with_inverse(out, seen, f"f{p}1-top-{attempt}",
                                  localsys.scalar_system(fp, scalars))
            else:
                mats = [[[rng.randrange(2, p), 0], [0, rng.randrange(2, p)]]
                        for _ in range(d)]
                _add_with_inverse(out, seen, f"f{p}2-top-{attempt}",
                                  build_local_system(fp, 2, mats))
    return tuple(out)


def generate_corpus(spec: CorpusSpec):
    """Deterministic corpus: named examples, essentialized braids, random
    generic and random central arrangements, each with its systems."""
    items = []
    arrangements = []
    if spec.include_named:
        arrangements.extend(named_arrangements().items())
    for m in spec.braid_sizes:
        arrangements.append((f"braid{m}", braid_essentialized(m)))
    for d, n in spec.generic_sizes:
        arrangements.append(
            (f"gen-{d}-{n}", random_generic(d, n, _subseed(spec.seed, "gen", d, n))))
    for d, n in spec.central_sizes:
        arrangements.append(
            (f"cen-{d}-{n}", random_central(d, n, _subseed(spec.seed, "cen", d, n))))
    for arr_id, arr in arrangements:
        if not arr.is_essential:
            raise RuntimeError(f"corpus arrangement {arr_id} is not essential")
        items.append(CorpusItem(arr_id, arr, systems_for_arrangement(arr, spec, arr_id)))
    return items


# ---------------------------------------------------------------------------
# cached computation context


class VerifyContext:
    """Shared caches for one verification run.

    Complexes are identified by stable string ids; twisted dimensions
    are cached per (complex id, system id).  Every ambient-dimension-1
    complex that gets evaluated is recorded for the closed-form sweep.
    """

    def __init__(self, seed: int, primes=DEFAULT_PRIMES):
        self.seed = seed
        self.primes = tuple(primes)
        self.arrangements = {}
        self._poset = {}
        self._betti = {}
        self._faces = {}
        self._salvetti = {}
        self._dims = {}
        self._sections = {}
        self._locals = {}
        self._decones = {}
        self.c1_seen = {}

    def register(self, arr_id: str, arr: Arrangement):
        self.arrangements[arr_id] = arr

    def arrangement(self, arr_id: str) -> Arrangement:
        return self.arrangements[arr_id]

    def poset(self, arr_id):
        if arr_id not in self._poset:
            self._poset[arr_id] = geometry.intersection_poset(self.arrangements[arr_id])
        return self._poset[arr_id]

    def betti(self, arr_id):
        if arr_id not in self._betti:
            self._betti[arr_id] = geometry.betti_numbers(self.poset(arr_id))
        return self._betti[arr_id]

    def faces(self, arr_id):
        if arr_id not in self._faces:
            self._faces[arr_id] = realfaces.enumerate_faces(self.arrangements[arr_id])
        return self._faces[arr_id]

    def salvetti(self, arr_id):
        if arr_id not in self._salvetti:
            self._salvetti[arr_id] = salvetti.build_salvetti(self.faces(arr_id))
        return self._salvetti[arr_id]

    def dims(self, arr_id, sys_id, system):
        key = (arr_id, sys_id)
        if key not in self._dims:
            value = salvetti.twisted_betti(self.salvetti(arr_id), system)
            self._dims[key] = value
            if self.arrangements[arr_id].dim == 1:
                self.c1_seen[key] = (system, value)
        return self._dims[key]

    def section(self, arr_id, k):
        key = (arr_id, k)
        if key not in self._sections:
            arr = self.arrangements[arr_id]
            sec, cert = geometry.generic_section(
                arr, k, _subseed(self.seed, "section", arr_id, k))
            if k == arr.dim:
                # full-dimensional section is the arrangement itself;
                # keep its id so cached dimensions are shared
                self._sections[key] = (arr_id, cert)
            else:
                sec_id = f"{arr_id}|sec{k}"
                self.register(sec_id, sec)
                self._sections[key] = (sec_id, cert)
        return self._sections[key]

    def localizations(self, arr_id):
        """(loc_id, index_map, flat) per zero flat; the localized
        arrangement at a zero flat is central and essential."""
        if arr_id not in self._locals:
            poset = self.poset(arr_id)
            out = []
            for flat in geometry.zero_flats(poset):
                loc = geometry.localize(self.arrangements[arr_id], flat)
                index_map = tuple(sorted(flat.containing))
                loc_id = f"{arr_id}|loc" + "-".join(str(i) for i in index_map)
                self.register(loc_id, loc)
                out.append((loc_id, index_map, flat))
            self._locals[arr_id] = tuple(out)
        return self._locals[arr_id]

    def decone(self, arr_id, i0):
        key = (arr_id, i0)
        if key not in self._decones:
            m = geometry.decone(self.arrangements[arr_id], i0)
            m_id = f"{arr_id}|dec{i0}"
            self.register(m_id, m)
            self._decones[key] = m_id
        return self._decones[key]


# ---------------------------------------------------------------------------
# checks


def check_untwisted_match(ctx: VerifyContext, arr_id: str) -> CheckReport:
    arr = ctx.arrangement(arr_id)
    poset = ctx.poset(arr_id)
    b = ctx.betti(arr_id)
    chi = geometry.characteristic_polynomial(poset)
    n = arr.dim
    regions, bounded = realfaces.region_counts(ctx.faces(arr_id))
    hom_q = salvetti.untwisted_homology(ctx.salvetti(arr_id))
    data = {
        "betti": b, "homology_q": hom_q,
        "regions": [regions, bounded],
        "zaslavsky": [(-1) ** n * geometry.evaluate_poly(chi, -1),
                      (-1) ** n * geometry.evaluate_poly(chi, 1)],
    }
    ok = hom_q == b and regions == data["zaslavsky"][0] and bounded == data["zaslavsky"][1]
    for p in ctx.primes:
        hom_p = salvetti.untwisted_homology(ctx.salvetti(arr_id), FieldSpec.prime(p))
        data[f"homology_f{p}"] = hom_p
        ok = ok and hom_p == b
    return CheckReport("untwisted_match", arr_id, None, "pass" if ok else "fail", data)


def check_constant_equality(ctx: VerifyContext, arr_id: str, r: int) -> CheckReport:
    arr = ctx.arrangement(arr_id)
    q = FieldSpec.rationals()
    ident = identity_matrix(q, r)
    system = LocalSystem(q, r, tuple(ident for _ in range(arr.d)))
    dims = ctx.dims(arr_id, f"const-r{r}", system)
    b = ctx.betti(arr_id)
    expected = [r * x for x in b]
    status = "pass" if dims == expected else "fail"
    return CheckReport("constant_equality", arr_id, f"const-r{r}", status,
                       {"dims": dims, "expected": expected})


def check_main_theorem(ctx: VerifyContext, arr_id: str, sys_id: str,
                       system: LocalSystem) -> CheckReport:
    arr = ctx.arrangement(arr_id)
    if not arr.is_essential:
        raise PreconditionError("main theorem check needs an essential arrangement")
    if is_trivial(system):
        raise PreconditionError("main theorem check needs a nontrivial system "
                                "(use the constant-equality check)")
    dims = ctx.dims(arr_id, sys_id, system)
    bound = [system.rank * x for x in ctx.betti(arr_id)]
    ok = all(dims[i] < bound[i] for i in range(arr.dim + 1))
    return CheckReport("main_theorem", arr_id, sys_id, "pass" if ok else "fail",
                       {"dims": dims, "strict_bound": bound})


def check_euler(ctx: VerifyContext, arr_id: str, sys_id: str,
                system: LocalSystem) -> CheckReport:
    arr = ctx.arrangement(arr_id)
    dims = ctx.dims(arr_id, sys_id, system)
    b = ctx.betti(arr_id)
    twisted = sum((-1) ** i * x for i, x in enumerate(dims))
    untwisted = sum((-1) ** i * x for i, x in enumerate(b))
    ok = twisted == system.rank * untwisted
    return CheckReport("euler", arr_id, sys_id, "pass" if ok else "fail",
                       {"twisted_euler": twisted, "euler": untwisted,
                        "rank": system.rank})


def check_relative_section(ctx: VerifyContext, arr_id: str, sys_id: str,
                           system: LocalSystem) -> CheckReport:
    arr = ctx.arrangement(arr_id)
    n = arr.dim
    if n < 2:
        return CheckReport("relative_section", arr_id, sys_id, "skipped",
                           {"reason": "ambient dimension 1"})
    sec_id, _cert = ctx.section(arr_id, n - 1)
    dims_a = ctx.dims(arr_id, sys_id, system)
    dims_b = ctx.dims(sec_id, sys_id, system)
    r, b = system.rank, ctx.betti(arr_id)
    low_match = all(dims_a[i] == dims_b[i] for i in range(n - 1))
    relative = dims_b[n - 1] - dims_a[n - 1] + dims_a[n] == r * b[n]
    top_equal_implies = dims_a[n] != r * b[n] or dims_a[n - 1] == dims_b[n - 1]
    ok = low_match and relative and top_equal_implies
    return CheckReport("relative_section", arr_id, sys_id, "pass" if ok else "fail",
                       {"dims": dims_a, "section_dims": dims_b, "top_bound": r * b[n]})


def check_local_global(ctx: VerifyContext, arr_id: str, sys_id: str,
                       system: LocalSystem) -> CheckReport:
    arr = ctx.arrangement(arr_id)
    n = arr.dim
    dims_a = ctx.dims(arr_id, sys_id, system)
    local_sum = 0
    parts = []
    for loc_id, index_map, _flat in ctx.localizations(arr_id):
        restricted = localsys.restrict(system, index_map)
        local_dims = ctx.dims(loc_id, sys_id, restricted)
        local_sum += local_dims[n]
        parts.append(local_dims[n])
    if is_trivial(system):
        ok = dims_a[n] == local_sum
    else:
        ok = dims_a[n] >= local_sum
    return CheckReport("local_global", arr_id, sys_id, "pass" if ok else "fail",
                       {"top": dims_a[n], "local_tops": parts,
                        "constant": is_trivial(system)})


def check_nearby_section(ctx: VerifyContext, arr_id: str, sys_id: str,
                         system: LocalSystem, loc_id: str, index_map) -> CheckReport:
    arr = ctx.arrangement(arr_id)
    n = arr.dim
    if n < 2:
        return CheckReport("nearby_section", arr_id, sys_id, "skipped",
                           {"reason": "ambient dimension 1"}, aux=loc_id)
    sec_id, _ = ctx.section(arr_id, n - 1)
    loc_sec_id, _ = ctx.section(loc_id, n - 1)
    global_dims = ctx.dims(sec_id, sys_id, system)
    local_dims = ctx.dims(loc_sec_id, sys_id, localsys.restrict(system, index_map))
    ok = global_dims[n - 1] >= local_dims[n - 1]
    return CheckReport("nearby_section", arr_id, sys_id, "pass" if ok else "fail",
                       {"section_dim": global_dims[n - 1],
                        "local_section_dim": local_dims[n - 1]}, aux=loc_id)


def check_central_structure(ctx: VerifyContext, arr_id: str, sys_id: str,
                            system: LocalSystem) -> CheckReport:
    arr = ctx.arrangement(arr_id)
    if not (arr.is_central and arr.is_essential):
        raise PreconditionError("central-structure check needs a central "
                                "essential arrangement")
    n = arr.dim
    turn = localsys.total_turn(arr, system)
    ident = identity_matrix(system.field, system.rank)
    dims_a = ctx.dims(arr_id, sys_id, system)
    if turn == ident:
        if n == 1:
            expected = [system.rank * x for x in ctx.betti(arr_id)]
            ok = dims_a == expected
            return CheckReport("central_structure", arr_id, sys_id,
                               "pass" if ok else "fail",
                               {"case": "turn-identity", "dims": dims_a,
                                "expected": expected})
        details = {}
        ok = True
        for i0 in range(arr.d):
            m_id = ctx.decone(arr_id, i0)
            descended = localsys.decone_system(arr, system, i0)
            dims_m = ctx.dims(m_id, sys_id, descended)
            padded = list(dims_m) + [0]
            expected = [padded[k] + (padded[k - 1] if k else 0) for k in range(n + 1)]
            details[f"decone{i0}"] = dims_m
            ok = ok and dims_a == expected
        details.update({"case": "turn-identity", "dims": dims_a})
        return CheckReport("central_structure", arr_id, sys_id,
                           "pass" if ok else "fail", details)
    delta = localsys.mat_sub_identity(system.field, turn)
    sparse = FMatrixSparse(system.rank, system.rank)
    for i, row in enumerate(delta):
        for j, v in enumerate(row):
            if not system.field.is_zero(v):
                sparse.entries[(i, j)] = v
    if matrix_rank(sparse, system.field) == system.rank:
        ok = all(x == 0 for x in dims_a)
        return CheckReport("central_structure", arr_id, sys_id,
                           "pass" if ok else "fail",
                           {"case": "turn-invertible-difference", "dims": dims_a})
    return CheckReport("central_structure", arr_id, sys_id, "skipped",
                       {"case": "turn-degenerate", "reason":
                        "total turn differs from the identity but T - I is singular"})


def check_lefschetz(ctx: VerifyContext, arr_id: str, sys_id: str,
                    system: LocalSystem, i: int) -> CheckReport:
    arr = ctx.arrangement(arr_id)
    if not 1 <= i <= arr.dim:
        raise PreconditionError(f"section dimension {i} out of range")
    sec_id, _ = ctx.section(arr_id, i)
    dims_a = ctx.dims(arr_id, sys_id, system)
    dims_b = ctx.dims(sec_id, sys_id, system)
    ok = dims_a[i] <= dims_b[i] and ctx.betti(sec_id)[i] == ctx.betti(arr_id)[i]
    return CheckReport("lefschetz", arr_id, sys_id, "pass" if ok else "fail",
                       {"degree": i, "dim": dims_a[i], "section_dim": dims_b[i]},
                       aux=f"i{i}")


def c1_expected_dims(system: LocalSystem):
    """Closed form on C^1 minus d points: b_0 is the dimension of the
    common fixed space of the monodromies, b_1 = r(d-1) + b_0."""
    r, d = system.rank, system.d
    stacked = FMatrixSparse(d * r, r)
    for h, mat in enumerate(system.monodromy):
        delta = localsys.mat_sub_identity(system.field, mat)
        for i in range(r):
            for j in range(r):
                if not system.field.is_zero(delta[i][j]):
                    stacked.entries[(h * r + i, j)] = delta[i][j]
    b0 = r - matrix_rank(stacked, system.field)
    return [b0, r * (d - 1) + b0]


def check_c1_closed_form(ctx: VerifyContext, arr_id: str, sys_id: str,
                         system: LocalSystem, computed) -> CheckReport:
    expected = c1_expected_dims(system)
    ok = list(computed[:2]) == expected and all(x == 0 for x in computed[2:])
    return CheckReport("c1_oracle", arr_id, sys_id, "pass" if ok else "fail",
                       {"dims": list(computed), "expected": expected})


# ---------------------------------------------------------------------------
# runner


ALL_CHECKS = ("untwisted_match", "constant_equality", "main_theorem", "euler",
              "relative_section", "local_global", "nearby_section",
              "central_structure", "lefschetz", "c1_oracle")


def run_verification(corpus, seed: int, checks=None, primes=DEFAULT_PRIMES):
    """Run the selected checks over a corpus; returns (reports, summary).

    Reports are sorted by (check, arrangement, system, aux); the summary
    counts pass/fail with skipped instances included in the total."""
    selected = set(checks) if checks else set(ALL_CHECKS)
    unknown = selected - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    ctx = VerifyContext(seed, primes)
    for item in corpus:
        ctx.register(item.arrangement_id, item.arrangement)
    reports = []
    for item in corpus:
        aid = item.arrangement_id
        if "untwisted_match" in selected:
            reports.append(check_untwisted_match(ctx, aid))
        if "constant_equality" in selected:
            for r in (1, 2, 3):
                reports.append(check_constant_equality(ctx, aid, r))
        arr = item.arrangement
        for sys_id, system in item.systems:
            nontrivial = not is_trivial(system)
            if "main_theorem" in selected and nontrivial:
                reports.append(check_main_theorem(ctx, aid, sys_id, system))
            if "euler" in selected:
                reports.append(check_euler(ctx, aid, sys_id, system))
            if "relative_section" in selected:
                reports.append(check_relative_section(ctx, aid, sys_id, system))
            if "local_global" in selected:
                reports.append(check_local_global(ctx, aid, sys_id, system))
            if "nearby_section" in selected and arr.dim >= 2:
                for loc_id, index_map, _flat in ctx.localizations(aid):
                    reports.append(check_nearby_section(
                        ctx, aid, sys_id, system, loc_id, index_map))
            if "lefschetz" in selected:
                for i in range(1, arr.dim + 1):
                    reports.append(check_lefschetz(ctx, aid, sys_id, system, i))
            if "central_structure" in selected and arr.is_central:
                reports.append(check_central_structure(ctx, aid, sys_id, system))
    if "c1_oracle" in selected:
        for (arr_id, sys_id), (system, dims) in sorted(ctx.c1_seen.items()):
            reports.append(check_c1_closed_form(ctx, arr_id, sys_id, system, dims))
    reports.sort(key=lambda r: (r.check, r.arrangement, r.system or "", r.aux))
    summary = {
        "total": len(reports),
        "passed": sum(1 for r in reports if r.status == "pass"),
        "failed": sum(1 for r in reports if r.status == "fail"),
        "seed": seed,
    }
    return reports, summary


def reports_to_json(reports, summary, seed):
    return {"reports": [r.to_json(seed) for r in reports], "summary": summary}
