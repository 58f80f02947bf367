"""Coefficient fields: the rationals and prime fields F_p.

Elements of Q are `fractions.Fraction`; elements of F_p are ints in
[0, p).  Everything downstream (local systems, boundary matrices, rank
computations) is generic over a FieldSpec.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(s) -> Fraction:
    """Parse a rational string: optional sign, digits, optional '/digits'."""
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL_RE.match(s.strip()):
        raise ValueError(f"malformed rational {s!r}")
    return Fraction(s.strip())


def format_rational(q: Fraction) -> str:
    return str(q)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q (kind='Q') or F_p (kind='Fp' with p prime)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("Q takes no characteristic")
        elif self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"Fp needs a prime, got {self.p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("Q")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("Fp", p)

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def element(self, value) -> "Fraction | int":
        """Coerce an int / Fraction / rational string into this field."""
        q = value if isinstance(value, Fraction) else parse_rational(value)
        if self.kind == "Q":
            return q
        if q.denominator % self.p == 0:
            raise ValueError(f"{q} has no image in F_{self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.p

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.kind == "Q" else pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        return str(a)

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}

    @staticmethod
    def from_json(obj: dict) -> "FieldSpec":
        kind = obj.get("kind")
        if kind == "Q":
            return FieldSpec.rationals()
        if kind == "Fp":
            return FieldSpec.prime(int(obj["p"]))
        raise ValueError(f"unknown field spec {obj!r}")
