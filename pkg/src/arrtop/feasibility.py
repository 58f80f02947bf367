"""Exact rational linear feasibility with witness extraction.

Decides systems of affine equalities plus strict / weak inequalities
over Q and, when feasible, returns an exact rational point in the
relative interior.  Equalities are eliminated by row reduction; the
remaining inequality system is decided by Fourier-Motzkin elimination,
and a witness is reconstructed by back-substitution through the
eliminated variables.  Problem dimensions here are tiny (ambient
dimension of an arrangement), so the doubling blowup of elimination is
irrelevant.
"""

from __future__ import annotations

from fractions import Fraction

from .exactla import dot, solve_affine

# An inequality is (coeffs, const, strict) meaning coeffs·u + const > 0
# (strict) or >= 0.


def _eliminate(ineqs, nvars):
    """Fourier-Motzkin passes; returns per-level constraint lists or None
    if a constant constraint is violated."""
    levels = []
    current = ineqs
    for v in range(nvars - 1, -1, -1):
        levels.append(current)
        lowers, uppers, rest = [], [], []
        for a, c, strict in current:
            if a[v] > 0:
                lowers.append((a, c, strict))
            elif a[v] < 0:
                uppers.append((a, c, strict))
            else:
                rest.append((a, c, strict))
        new = list(rest)
        for la, lc, ls in lowers:
            for ua, uc, us in uppers:
                # u_v > -(l·u + lc)/la and u_v < ... combine:
                coef = [ua[j] * la[v] - la[j] * ua[v] for j in range(nvars)]
                coef[v] = Fraction(0)
                const = uc * la[v] - lc * ua[v]
                new.append((coef, const, ls or us))
        current = new
    for a, c, strict in current:
        if any(x != 0 for x in a):
            raise AssertionError("variable left after elimination")
        if strict and not c > 0:
            return None
        if not strict and not c >= 0:
            return None
    return levels


def _interval_pick(ineqs, v, partial):
    """Value for variable v; variables below v are already assigned.

    Constraints passed in come from the elimination level where only
    variables 0..v survive, so the interval is guaranteed nonempty.
    """
    lo = None
    hi = None
    for a, c, strict in ineqs:
        if a[v] == 0:
            continue
        rest = c + sum(a[j] * partial[j] for j in range(v) if a[j] != 0)
        bound = -rest / a[v]
        if a[v] > 0:
            if lo is None or bound > lo:
                lo = bound
        else:
            if hi is None or bound < hi:
                hi = bound
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    if lo == hi:
        # both weak, else elimination would have failed
        return lo
    return (lo + hi) / 2


def feasible_point(eqs, ineqs, n):
    """Witness for {x in Q^n : eqs hold, ineqs hold}, or None.

    eqs: list of (coeffs, rhs) with coeffs·x = rhs.
    ineqs: list of (coeffs, rhs, strict) with coeffs·x > rhs (strict)
    or coeffs·x >= rhs.
    """
    sol = solve_affine(eqs, n)
    if sol is None:
        return None
    p, basis = sol
    m = len(basis)
    reduced = []
    for a, b, strict in ineqs:
        coef = [dot(a, v) for v in basis]
        const = dot(a, p) - b
        if all(x == 0 for x in coef):
            if strict and not const > 0:
                return None
            if not strict and not const >= 0:
                return None
            continue
        reduced.append((coef, const, strict))
    if m == 0:
        return list(p)
    levels = _eliminate(reduced, m)
    if levels is None:
        return None
    u = [Fraction(0)] * m
    # levels[i] holds the constraints before eliminating variable m-1-i
    for v in range(m):
        u[v] = _interval_pick(levels[m - 1 - v], v, u)
    x = list(p)
    for coef, vec in zip(u, basis):
        if coef != 0:
            x = [xi + coef * vi for xi, vi in zip(x, vec)]
    return x
