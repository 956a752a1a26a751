"""Exact rational linear algebra over ``fractions.Fraction``.

Vectors are tuples of Fractions; matrices are tuples of row tuples.  Nothing
here ever touches a float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from conelab.errors import InputError

Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would silently inject rounding error.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise InputError(f"not a rational number: {value!r}")
        try:
            return Fraction(value.replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {value!r}") from exc
    raise InputError(f"not a rational number: {value!r}")


def as_int(value) -> int:
    q = as_fraction(value)
    if q.denominator != 1:
        raise InputError(f"not an integer: {value!r}")
    return q.numerator


def vec(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def format_rational(q: Fraction) -> str:
    """``"p/q"`` with q > 0 in lowest terms, or ``"p"`` when q == 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_vector(v: Sequence) -> str:
    return "[" + ", ".join(format_rational(x) for x in v) + "]"


def parse_vector(text: str) -> Vector:
    """Parse ``"[1, -1/2]"`` (brackets optional) into a rational vector."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    if not body.strip():
        return ()
    return vec(part for part in body.split(","))


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def squared_norm(a: Sequence) -> Fraction:
    return dot(a, a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


def identity(n: int) -> tuple:
    return tuple(unit(n, i) for i in range(n))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b)) if b else []
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m))


def primitive(v: Sequence) -> Vector:
    """Positive multiple of ``v`` with coprime integer entries.

    Direction is preserved (no sign flip).  Zero maps to zero.
    """
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(x // g) for x in ints)


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : row . x = 0 for every row}, canonical (rref-derived, primitive)."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def row_space_basis(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Canonical primitive basis of the row space (rref rows, scaled)."""
    red, _ = rref(rows, ncols)
    return [primitive(r) for r in red]


def in_span(x: Sequence, rows: Sequence[Sequence], ncols: int) -> bool:
    return rank(list(rows) + [list(x)], ncols) == rank(rows, ncols)


def project_onto_span(x: Sequence, basis: Sequence[Sequence]) -> Vector:
    """Orthogonal projection of ``x`` onto span(basis), exactly."""
    n = len(x)
    if not basis:
        return tuple(Fraction(0) for _ in range(n))
    # Solve Gram * c = B x.
    gram = [[dot(b1, b2) for b2 in basis] for b1 in basis]
    rhs = [dot(b, x) for b in basis]
    k = len(basis)
    aug = [gram[i] + [rhs[i]] for i in range(k)]
    red, pivots = rref(aug, k + 1)
    coeffs = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        coeffs[p] = row[k]
    out = [Fraction(0)] * n
    for c, b in zip(coeffs, basis):
        for j in range(n):
            out[j] += c * b[j]
    return tuple(out)


def inverse(m: Sequence[Sequence]) -> tuple:
    n = len(m)
    aug = [list(map(Fraction, row)) + list(unit(n, i)) for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise InputError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red[:n])
