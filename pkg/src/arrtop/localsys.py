"""Abelian local systems on arrangement complements.

A rank-r local system is encoded by one invertible r x r monodromy
matrix per hyperplane meridian; the matrices are required to commute
pairwise, so the monodromy of any loop is determined by winding numbers
alone and no fundamental-group presentation is needed.  Fields are Q
and F_p.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldSpec, format_rational
from .geometry import Arrangement


class LocalSystemError(Exception):
    pass


def identity_matrix(fieldspec: FieldSpec, r: int):
    one, zero = fieldspec.one, fieldspec.zero
    return tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r))


def mat_mul(fieldspec: FieldSpec, a, b):
    r = len(a)
    return tuple(
        tuple(sum_field(fieldspec, (fieldspec.mul(a[i][k], b[k][j]) for k in range(r)))
              for j in range(r))
        for i in range(r))


def sum_field(fieldspec: FieldSpec, items):
    acc = fieldspec.zero
    for x in items:
        acc = fieldspec.add(acc, x)
    return acc


def mat_sub_identity(fieldspec: FieldSpec, a):
    """a - I."""
    r = len(a)
    one = fieldspec.one
    return tuple(tuple(fieldspec.sub(a[i][j], one if i == j else fieldspec.zero)
                       for j in range(r)) for i in range(r))


def mat_inverse(fieldspec: FieldSpec, a):
    """Inverse by Gauss-Jordan; raises LocalSystemError when singular."""
    r = len(a)
    aug = [list(a[i]) + list(identity_matrix(fieldspec, r)[i]) for i in range(r)]
    row = 0
    for col in range(r):
        piv = next((i for i in range(row, r) if not fieldspec.is_zero(aug[i][col])), None)
        if piv is None:
            raise LocalSystemError("singular matrix")
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = fieldspec.inv(aug[row][col])
        aug[row] = [fieldspec.mul(inv, x) for x in aug[row]]
        for i in range(r):
            if i != row and not fieldspec.is_zero(aug[i][col]):
                f = aug[i][col]
                aug[i] = [fieldspec.sub(x, fieldspec.mul(f, y))
                          for x, y in zip(aug[i], aug[row])]
        row += 1
    return tuple(tuple(aug[i][r:]) for i in range(r))


def transpose(a):
    r = len(a)
    return tuple(tuple(a[j][i] for j in range(r)) for i in range(r))


@dataclass(frozen=True)
class LocalSystem:
    field: FieldSpec
    rank: int
    monodromy: tuple     # one r x r matrix per hyperplane, pairwise commuting

    @property
    def d(self) -> int:
        return len(self.monodromy)

    def inverse_system(self) -> "LocalSystem":
        """Entrywise matrix-inverse system (meridians act by inverses)."""
        return LocalSystem(self.field, self.rank,
                           tuple(mat_inverse(self.field, a) for a in self.monodromy))

    def to_json(self) -> dict:
        fmt = format_rational if self.field.kind == "Q" else str
        return {
            "field": self.field.to_json(),
            "rank": self.rank,
            "monodromy": [[fmt(x) for row in m for x in row] for m in self.monodromy],
        }


def build_local_system(fieldspec: FieldSpec, rank: int, matrices) -> LocalSystem:
    """Validate and build: every matrix invertible, all pairs commuting."""
    if rank < 1:
        raise LocalSystemError(f"rank must be >= 1, got {rank}")
    mats = []
    for idx, m in enumerate(matrices):
        rows = tuple(tuple(fieldspec.element(x) for x in row) for row in m)
        if len(rows) != rank or any(len(row) != rank for row in rows):
            raise LocalSystemError(f"matrix {idx + 1} is not {rank}x{rank}")
        mats.append(rows)
    for idx, m in enumerate(mats):
        try:
            mat_inverse(fieldspec, m)
        except LocalSystemError:
            raise LocalSystemError(f"monodromy matrix {idx + 1} is singular")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mat_mul(fieldspec, mats[i], mats[j]) != mat_mul(fieldspec, mats[j], mats[i]):
                raise LocalSystemError(
                    f"matrices {i + 1} and {j + 1} do not commute; "
                    "only abelian monodromy is supported")
    return LocalSystem(fieldspec, rank, tuple(mats))


def scalar_system(fieldspec: FieldSpec, scalars) -> LocalSystem:
    """Rank-1 system from a scalar per hyperplane."""
    return build_local_system(fieldspec, 1, [[[s]] for s in scalars])


def is_trivial(system: LocalSystem) -> bool:
    ident = identity_matrix(system.field, system.rank)
    return all(m == ident for m in system.monodromy)


def total_turn(arr: Arrangement, system: LocalSystem):
    """Product of all monodromy matrices: the turn around the center of a
    central arrangement (order-free by commutativity)."""
    if not arr.is_central:
        raise LocalSystemError("total turn is defined for central arrangements only")
    if system.d != arr.d:
        raise LocalSystemError(f"system has {system.d} matrices, arrangement has {arr.d}")
    acc = identity_matrix(system.field, system.rank)
    for m in system.monodromy:
        acc = mat_mul(system.field, acc, m)
    return acc


def restrict(system: LocalSystem, index_map) -> LocalSystem:
    """System on a sub/section arrangement: hyperplane j of the target
    carries the monodromy of original hyperplane index_map[j]."""
    index_map = list(index_map)
    if len(set(index_map)) != len(index_map):
        raise LocalSystemError("index map must be injective")
    for i in index_map:
        if not 0 <= i < system.d:
            raise LocalSystemError(f"index {i} out of range 0..{system.d - 1}")
    return LocalSystem(system.field, system.rank,
                       tuple(system.monodromy[i] for i in index_map))


def decone_system(arr: Arrangement, system: LocalSystem, i0: int) -> LocalSystem:
    """Descend along the deconing of a central essential arrangement.

    Only systems whose total turn is the identity descend; others are
    rejected."""
    if not (arr.is_central and arr.is_essential):
        raise LocalSystemError("decone_system needs a central essential arrangement")
    if not 0 <= i0 < arr.d:
        raise LocalSystemError(f"hyperplane index {i0} out of range")
    t = total_turn(arr, system)
    if t != identity_matrix(system.field, system.rank):
        raise LocalSystemError("system does not descend: total turn is not the identity")
    return LocalSystem(system.field, system.rank,
                       tuple(m for j, m in enumerate(system.monodromy) if j != i0))


def local_system_from_json(obj: dict) -> LocalSystem:
    fieldspec = FieldSpec.from_json(obj["field"])
    rank = int(obj["rank"])
    mats = []
    for flat in obj["monodromy"]:
        if len(flat) == rank and all(isinstance(row, list) for row in flat):
            rows = flat
        else:
            if len(flat) != rank * rank:
                raise LocalSystemError(
                    f"matrix needs {rank * rank} row-major entries, got {len(flat)}")
            rows = [flat[i * rank:(i + 1) * rank] for i in range(rank)]
        mats.append(rows)
    return build_local_system(fieldspec, rank, mats)
