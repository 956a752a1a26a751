"""Reference decision procedures that share no code path with the cone engine.

Cone membership here is decided by Fourier-Motzkin elimination of the
combination multipliers.  Slow, but simple enough to trust.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from conelab import exact


def _normalize(row: list[Fraction]) -> tuple:
    """Scale an inequality sum(c_i l_i) <= b so duplicates compare equal."""
    coeffs = row[:-1]
    nz = next((abs(x) for x in coeffs if x != 0), None)
    if nz is None:
        return tuple(row)
    return tuple(x / nz for x in row)


def fm_feasible(inequalities: list[list[Fraction]], nvars: int) -> bool:
    """Is {l : sum_j a_ij l_j <= b_i for all i} nonempty?  Rows are [a_i1..a_in, b_i]."""
    rows = {_normalize([Fraction(x) for x in r]) for r in inequalities}
    for k in range(nvars):
        pos, neg, rest = [], [], []
        for r in rows:
            if r[k] > 0:
                pos.append(r)
            elif r[k] < 0:
                neg.append(r)
            else:
                rest.append(r)
        new = set(rest)
        for p in pos:
            for n in neg:
                # p[k] > 0, n[k] < 0: combine to cancel variable k
                combo = [p[i] * (-n[k]) + n[i] * p[k] for i in range(nvars + 1)]
                new.add(_normalize(combo))
        rows = new
    return all(r[-1] >= 0 for r in rows)


def cone_membership(generators: Sequence[Sequence], x: Sequence) -> bool:
    """Is x a nonnegative combination of the generators?"""
    gens = [exact.vec(g) for g in generators]
    x = exact.vec(x)
    k = len(gens)
    if k == 0:
        return exact.is_zero(x)
    # Eliminate the equalities G l = x by Gaussian substitution first.
    # Augmented rows: sum_j g_j[i] l_j = x[i].
    aug = [[g[i] for g in gens] + [x[i]] for i in range(len(x))]
    red, pivots = exact.rref(aug, k + 1)
    if k in pivots:
        return False  # inconsistent linear system
    free = [j for j in range(k) if j not in pivots]
    # pivot variable l_p = row[k] - sum_{f free} row[f] l_f >= 0
    ineqs = []
    for row, p in zip(red, pivots):
        # -(row[k] - sum row[f] l_f) <= 0  <=>  sum row[f] l_f <= row[k]
        ineqs.append([row[f] for f in free] + [row[k]])
    for idx, f in enumerate(free):
        r = [Fraction(0)] * (len(free) + 1)
        r[idx] = Fraction(-1)
        ineqs.append(r)
    if not free:
        return all(r[-1] >= 0 for r in ineqs)
    return fm_feasible(ineqs, len(free))


def has_opposite_pair(generators: Sequence[Sequence]) -> bool:
    """True iff the cone contains a line: some generator's negation is in the cone."""
    gens = [exact.vec(g) for g in generators]
    gens = [g for g in gens if not exact.is_zero(g)]
    return any(cone_membership(gens, tuple(-x for x in g)) for g in gens)


def hyperplane_meets_cone_nontrivially(generators: Sequence[Sequence], coord: int) -> bool:
    """Does cone(generators) contain a nonzero x with x[coord] == 0?

    The cone cut by the hyperplane is generated by the generators lying in it
    together with one balanced combination of each (positive, negative) pair.
    """
    gens = [exact.vec(g) for g in generators]
    gens = [g for g in gens if not exact.is_zero(g)]
    if any(g[coord] == 0 for g in gens):
        return True
    pos = [g for g in gens if g[coord] > 0]
    neg = [g for g in gens if g[coord] < 0]
    for p in pos:
        for n in neg:
            combo = exact.add(exact.scale(-n[coord], p), exact.scale(p[coord], n))
            if not exact.is_zero(combo):
                return True
    return False
