"""Exact polyhedral cones over Q.

A :class:`RationalCone` is stored by generators (the V-description).  The
H-description (inward facet normals plus the equations of the linear span)
is computed on demand by the double description method and cached.

Facet normals are only unique up to adding vectors orthogonal to the span,
so each one is projected onto the span before being made primitive.  That
makes the H-description canonical and the facet lists comparable.
"""

from __future__ import annotations

import threading
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from conelab import exact
from conelab.errors import InputError

Vector = tuple


def _canonical_generators(dim: int, generators) -> tuple[Vector, ...]:
    seen = set()
    out = []
    dropped = 0
    for g in generators:
        g = exact.vec(g)
        if len(g) != dim:
            raise InputError(f"generator {exact.format_vector(g)} has length {len(g)}, expected {dim}")
        if exact.is_zero(g):
            dropped += 1
            continue
        p = exact.primitive(g)
        if p not in seen:
            seen.add(p)
            out.append(p)
    if dropped:
        warnings.warn(f"dropped {dropped} zero generator(s)", stacklevel=3)
    return tuple(out)


@dataclass(frozen=True)
class HDescription:
    normals: tuple[Vector, ...]
    span_equations: tuple[Vector, ...]


class RationalCone:
    """Cone of nonnegative rational combinations of finitely many generators."""

    __slots__ = ("ambient_dim", "generators", "_facets", "_lock")

    def __init__(self, ambient_dim: int, generators: Sequence[Sequence] = ()):
        if ambient_dim < 0:
            raise InputError("ambient dimension must be nonnegative")
        self.ambient_dim = ambient_dim
        self.generators = _canonical_generators(ambient_dim, generators)
        self._facets: HDescription | None = None
        self._lock = threading.Lock()

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence]) -> "RationalCone":
        generators = list(generators)
        if not generators:
            raise InputError("cannot infer the ambient dimension of an empty generator list")
        return cls(len(generators[0]), generators)

    def __repr__(self):
        gens = ", ".join(exact.format_vector(g) for g in self.generators)
        return f"RationalCone({self.ambient_dim}, [{gens}])"

    def __eq__(self, other):
        if not isinstance(other, RationalCone) or other.ambient_dim != self.ambient_dim:
            return NotImplemented
        return self.h_description() == other.h_description()

    def __hash__(self):
        return hash((self.ambient_dim, self.h_description()))

    def h_description(self) -> HDescription:
        if self._facets is None:
            with self._lock:
                if self._facets is None:
                    self._facets = _compute_facets(self.ambient_dim, self.generators)
        return self._facets

    def is_zero(self) -> bool:
        return not self.generators


# ---------------------------------------------------------------------------
# double description


def h_to_v(inequalities: Sequence[Sequence], equalities: Sequence[Sequence],
           dim: int) -> tuple[list[Vector], list[Vector]]:
    """Generators of {x : a.x >= 0 for a in inequalities, e.x = 0 for e in equalities}.

    Returns ``(lineality_basis, extreme_rays)``; the cone equals
    span(lineality_basis) + cone(extreme_rays).  Constraints are inserted in
    input order (equalities first, as pairs of opposite inequalities) and
    adjacency is decided by the rank of the common tight constraints.
    """
    constraints: list[Vector] = []
    for e in equalities:
        e = exact.vec(e)
        constraints.append(e)
        constraints.append(tuple(-x for x in e))
    constraints.extend(exact.vec(a) for a in inequalities)
    for a in constraints:
        if len(a) != dim:
            raise InputError(f"constraint of length {len(a)} in dimension {dim}")

    lineality: list[Vector] = list(exact.identity(dim))
    rays: list[Vector] = []
    done: list[Vector] = []

    for a in constraints:
        if exact.is_zero(a):
            continue
        pivot = next((i for i, l in enumerate(lineality) if exact.dot(a, l) != 0), None)
        if pivot is not None:
            l0 = lineality.pop(pivot)
            s = exact.dot(a, l0)
            if s < 0:
                l0 = tuple(-x for x in l0)
                s = -s
            lineality = [exact.primitive(exact.sub(l, exact.scale(exact.dot(a, l) / s, l0)))
                         for l in lineality]
            rays = [exact.primitive(exact.sub(r, exact.scale(exact.dot(a, r) / s, l0))) for r in rays]
            rays.append(exact.primitive(l0))
            done.append(a)
            continue

        done.append(a)
        values = [exact.dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, values) if v > 0]
        neg = [(r, v) for r, v in zip(rays, values) if v < 0]
        zero = [r for r, v in zip(rays, values) if v == 0]
        target = dim - len(lineality) - 2
        new = pos + zero
        if pos and neg:
            tight = {r: frozenset(i for i, c in enumerate(done) if exact.dot(c, r) == 0)
                     for r in pos + [r for r, _ in neg]}
            for p in pos:
                vp = exact.dot(a, p)
                for n, vn in neg:
                    common = tight[p] & tight[n]
                    if len(common) < target:
                        continue
                    if exact.rank([done[i] for i in common], dim) != target:
                        continue
                    new.append(exact.primitive(exact.sub(exact.scale(vp, n), exact.scale(vn, p))))
        # deduplicate while preserving order
        seen = set()
        rays = []
        for r in new:
            if r not in seen:
                seen.add(r)
                rays.append(r)
    return lineality, rays


def _compute_facets(dim: int, generators: tuple[Vector, ...]) -> HDescription:
    span = exact.row_space_basis(generators, dim) if generators else []
    equations = exact.row_space_basis(exact.nullspace(span, dim), dim) if span else list(exact.identity(dim))
    equations = [exact.primitive(e) for e in equations]
    # The dual cone {a : a.g >= 0} has lineality = span^perp; its rays are the facet normals.
    _, rays = h_to_v(generators, (), dim)
    normals = set()
    for r in rays:
        p = exact.primitive(exact.project_onto_span(r, span))
        if not exact.is_zero(p):
            normals.add(p)
    return HDescription(tuple(sorted(normals)), tuple(sorted(equations)))


# ---------------------------------------------------------------------------
# public operations


def _point(c: RationalCone, x) -> Vector:
    x = exact.vec(x)
    if len(x) != c.ambient_dim:
        raise InputError(f"point of length {len(x)} does not match ambient dimension {c.ambient_dim}")
    return x


def facets(c: RationalCone) -> tuple[list[Vector], list[Vector]]:
    h = c.h_description()
    return list(h.normals), list(h.span_equations)


def contains(c: RationalCone, x) -> bool:
    x = _point(c, x)
    h = c.h_description()
    return (all(exact.dot(e, x) == 0 for e in h.span_equations)
            and all(exact.dot(n, x) >= 0 for n in h.normals))


def interior_contains(c: RationalCone, x) -> bool:
    x = _point(c, x)
    h = c.h_description()
    if h.span_equations:
        return False
    return all(exact.dot(n, x) > 0 for n in h.normals)


def relative_interior_contains(c: RationalCone, x) -> bool:
    x = _point(c, x)
    h = c.h_description()
    return (all(exact.dot(e, x) == 0 for e in h.span_equations)
            and all(exact.dot(n, x) > 0 for n in h.normals))


def lineality_space(c: RationalCone) -> list[Vector]:
    h = c.h_description()
    rows = list(h.span_equations) + list(h.normals)
    if not rows:
        return list(exact.identity(c.ambient_dim))
    return exact.row_space_basis(exact.nullspace(rows, c.ambient_dim), c.ambient_dim)


def is_strongly_convex(c: RationalCone) -> bool:
    return not lineality_space(c)


def _cone_from_v(dim: int, lineality, rays) -> RationalCone:
    gens = list(rays)
    for l in lineality:
        gens.append(l)
        gens.append(tuple(-x for x in l))
    return RationalCone(dim, gens)


def intersect_halfspaces(c: RationalCone, inequalities: Sequence[Sequence] = (),
                         equations: Sequence[Sequence] = ()) -> RationalCone:
    """c intersected with {a.x >= 0} for each inequality and {e.x = 0} for each equation."""
    h = c.h_description()
    ineqs = [exact.vec(a) for a in inequalities]
    eqs = [exact.vec(e) for e in equations]
    for v in ineqs + eqs:
        if len(v) != c.ambient_dim:
            raise InputError(f"constraint of length {len(v)} does not match ambient dimension {c.ambient_dim}")
    lin, rays = h_to_v(list(h.normals) + ineqs, list(h.span_equations) + eqs, c.ambient_dim)
    return _cone_from_v(c.ambient_dim, lin, rays)


def intersect_subspace(c: RationalCone, subspace_equations: Sequence[Sequence]) -> RationalCone:
    if not subspace_equations:
        return c
    return intersect_halfspaces(c, (), subspace_equations)


def image_cone(map_matrix: Sequence[Sequence], c: RationalCone) -> RationalCone:
    rows = [exact.vec(r) for r in map_matrix]
    for r in rows:
        if len(r) != c.ambient_dim:
            raise InputError(f"map has {len(r)} columns, cone lives in dimension {c.ambient_dim}")
    images = [exact.mat_vec(rows, g) for g in c.generators]
    return RationalCone(len(rows), [x for x in images if not exact.is_zero(x)])


def halfspace_contains(c: RationalCone, functional) -> bool:
    f = _point(c, functional)
    return all(exact.dot(f, g) >= 0 for g in c.generators)


def cone_contains_cone(outer: RationalCone, inner: RationalCone) -> bool:
    return all(contains(outer, g) for g in inner.generators)


def same_cone(a: RationalCone, b: RationalCone) -> bool:
    """Mutual generator containment."""
    return a.ambient_dim == b.ambient_dim and cone_contains_cone(a, b) and cone_contains_cone(b, a)


@dataclass(frozen=True)
class LevelSetCertificate:
    bounded: bool
    vertices: tuple[Vector, ...] = ()
    squared_diameter: Fraction | None = None
    recession_direction: Vector | None = None


def level_set_diameter_bounded(c: RationalCone, rank_coordinate: int, level) -> LevelSetCertificate:
    """Decide boundedness of {x in c : x[rank_coordinate] = level} for level > 0.

    Bounded exactly when c meets the hyperplane {x[rank_coordinate] = 0} only
    at the origin.  A bounded slice comes with its vertices and exact squared
    diameter; an unbounded one with a recession direction inside that
    hyperplane.
    """
    level = exact.as_fraction(level)
    if level <= 0:
        raise InputError("level must be positive")
    if not 0 <= rank_coordinate < c.ambient_dim:
        raise InputError(f"rank coordinate {rank_coordinate} out of range")
    e = exact.unit(c.ambient_dim, rank_coordinate)
    recession = intersect_subspace(c, [e])
    if not recession.is_zero():
        return LevelSetCertificate(False, recession_direction=min(recession.generators))
    upper = intersect_halfspaces(c, [e])
    vertices = sorted(exact.scale(level / g[rank_coordinate], g) for g in upper.generators)
    diam = max((exact.squared_norm(exact.sub(p, q)) for p in vertices for q in vertices),
               default=Fraction(0))
    return LevelSetCertificate(True, tuple(vertices), diam)
