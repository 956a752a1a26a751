"""Finitely generated abelian groups through integer matrices.

The workhorse is :func:`smith_normal_form`; everything else (presentations,
group elements, the passage to the real vector space) is bookkeeping around
its output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from conelab.errors import InputError


@dataclass(frozen=True)
class IntegerMatrix:
    """Row-major integer matrix with arbitrary-precision entries."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InputError(f"non-integer matrix entry {x!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise InputError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int, cols: int) -> "IntegerMatrix":
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            m[i][i] = d
        return cls.from_rows(m, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        a = self.tolist()
        return IntegerMatrix.from_rows([[a[i][j] for i in range(self.rows)] for j in range(self.cols)],
                                       self.rows)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.tolist(), other.tolist()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntegerMatrix.from_rows(out, other.cols)

    def diagonal_entries(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        return _bareiss_det(self.tolist())


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(d, u, v)`` with ``u @ m @ v == d``.

    ``u`` and ``v`` are unimodular and the diagonal of ``d`` is a nonnegative
    divisibility chain.  The pivot at every step is the entry of smallest
    absolute value in the untreated block, ties going to the lowest
    (row, column), so the output is a deterministic function of the input.
    """
    rows, cols = m.rows, m.cols
    a = m.tolist()
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x != 0 and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return (IntegerMatrix.from_rows(a, cols), IntegerMatrix.from_rows(u, rows),
            IntegerMatrix.from_rows(v, cols))


@dataclass(frozen=True)
class GroupPresentation:
    """Z^free_rank + sum of Z/theta_j, with theta_j | theta_{j+1}.

    Labels are metadata and take no part in equality.
    """

    free_rank: int
    torsion_orders: tuple[int, ...] = ()
    basis_labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(self.torsion_orders))
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        if self.free_rank < 0:
            raise InputError("free rank must be nonnegative")
        for j, theta in enumerate(self.torsion_orders):
            if theta < 2:
                raise InputError(f"torsion order {theta} must be at least 2")
            if j and theta % self.torsion_orders[j - 1]:
                raise InputError(f"torsion orders {self.torsion_orders} do not form a divisibility chain")

    @property
    def length(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.free_rank, (0,) * len(self.torsion_orders))

    def element(self, free: Iterable[int] = (), torsion: Iterable[int] = ()) -> "GroupElement":
        free = tuple(free)
        torsion = tuple(torsion)
        if not free and self.free_rank:
            free = (0,) * self.free_rank
        if not torsion and self.torsion_orders:
            torsion = (0,) * len(self.torsion_orders)
        return GroupElement(self, free, torsion)

    def free_generator(self, i: int) -> "GroupElement":
        return self.element([int(k == i) for k in range(self.free_rank)])

    def torsion_generator(self, j: int) -> "GroupElement":
        return self.element(torsion=[int(k == j) for k in range(len(self.torsion_orders))])

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion_orders)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    presentation: GroupPresentation
    free_part: tuple[int, ...]
    torsion_part: tuple[int, ...]

    def __post_init__(self):
        pres = self.presentation
        free = tuple(self.free_part)
        tors = tuple(self.torsion_part)
        if len(free) != pres.free_rank:
            raise InputError(f"free part has length {len(free)}, presentation has free rank {pres.free_rank}")
        if len(tors) != len(pres.torsion_orders):
            raise InputError(f"torsion part has length {len(tors)}, expected {len(pres.torsion_orders)}")
        for x in free + tors:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InputError(f"group element coordinates must be integers, got {x!r}")
        tors = tuple(x % theta for x, theta in zip(tors, pres.torsion_orders))
        object.__setattr__(self, "free_part", free)
        object.__setattr__(self, "torsion_part", tors)

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.presentation != self.presentation:
            raise InputError("group elements belong to different presentations")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.presentation,
                            tuple(a + b for a, b in zip(self.free_part, other.free_part)),
                            tuple(a + b for a, b in zip(self.torsion_part, other.torsion_part)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.presentation, tuple(-a for a in self.free_part),
                            tuple(-a for a in self.torsion_part))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, n: int) -> "GroupElement":
        return scale(n, self)

    def is_zero(self) -> bool:
        return not any(self.free_part) and not any(self.torsion_part)

    def coordinates(self) -> tuple[int, ...]:
        return self.free_part + self.torsion_part


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def negate(a: GroupElement) -> GroupElement:
    return -a


def scale(n: int, a: GroupElement) -> GroupElement:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InputError(f"scalar must be an integer, got {n!r}")
    return GroupElement(a.presentation, tuple(n * x for x in a.free_part),
                        tuple(n * x for x in a.torsion_part))


def realify(a: GroupElement) -> tuple[Fraction, ...]:
    """Image in the real vector space: the free coordinates; torsion is dropped."""
    return tuple(Fraction(x) for x in a.free_part)


@dataclass(frozen=True)
class PresentedQuotient:
    """A presentation together with the map from the original generators."""

    presentation: GroupPresentation
    coordinate_map: IntegerMatrix  # generators x generators, the v of the SNF
    diagonal: tuple[int, ...]

    def element_from_generators(self, coords: Sequence[int]) -> GroupElement:
        """Class of sum(coords[i] * generator_i) in normalized coordinates."""
        g = self.coordinate_map.rows
        if len(coords) != g:
            raise InputError(f"expected {g} generator coordinates, got {len(coords)}")
        v = self.coordinate_map.tolist()
        y = [sum(coords[i] * v[i][j] for i in range(g)) for j in range(g)]
        r = len(self.diagonal)
        torsion = [y[j] for j in range(r) if self.diagonal[j] > 1]
        return self.presentation.element(y[r:], torsion)


def presentation_from_relations(generators: int, relations: IntegerMatrix,
                                labels: Sequence[str] = ()) -> GroupPresentation:
    """Normalize the cokernel of the relation rows to free rank plus invariant factors."""
    return quotient_from_relations(generators, relations, labels).presentation


def quotient_from_relations(generators: int, relations: IntegerMatrix,
                            labels: Sequence[str] = ()) -> PresentedQuotient:
    if relations.rows and relations.cols != generators:
        raise InputError(f"relations have {relations.cols} columns but there are {generators} generators")
    if relations.rows == 0:
        relations = IntegerMatrix(0, generators, ())
    d, _, v = smith_normal_form(relations)
    diag = tuple(x for x in d.diagonal_entries() if x != 0)
    free_rank = generators - len(diag)
    torsion = tuple(x for x in diag if x > 1)
    pres = GroupPresentation(free_rank, torsion, tuple(labels))
    return PresentedQuotient(pres, v, diag)
