"""Validators that check the cone-theoretic statements on finite data.

Each validator returns a :class:`TheoremReport`.  A ``violated`` verdict
always carries a certificate whose numbers can be fed back through the cone
and class operations to reproduce the failure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from conelab import cone as cones
from conelab import exact
from conelab.classes import (BettiSequence, ModuleClass, RingDescriptor, canonical_dual_class,
                             complexity_lower_bound, dual_class, kernel_from_divisor,
                             nu_involution_matrix, rank_one_reflexive, syzygy_class,
                             syzygy_rank_profile)
from conelab.errors import InputError
from conelab.lattice import GroupElement, realify

DEFAULT_HORIZON = 1000
DEFAULT_BOUND = Fraction(10**6)


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not_applicable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    verdict: Verdict
    certificate: dict
    citation: str

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.VIOLATED


def _v(x) -> str:
    return exact.format_vector(x)


def _q(x) -> str:
    return exact.format_rational(x)


# ---------------------------------------------------------------------------
# fixed-rank cone chain


def finite_chain(vectors: Sequence[Sequence], r) -> dict:
    """Conditions (c)-(g) of the fixed-rank chain for the cone on ``vectors``.

    Polyhedrality and closedness hold by construction for finitely many
    generators and are recorded as such; the other three are decided.
    """
    vectors = [exact.vec(v) for v in vectors]
    dim = len(vectors[0])
    c = cones.RationalCone(dim, vectors)
    cut = cones.intersect_subspace(c, [exact.unit(dim, 0)])
    e_holds = cut.is_zero()
    slice_ = cones.level_set_diameter_bounded(c, 0, r)
    lineality = cones.lineality_space(c)
    return {
        "cone": c,
        "c_polyhedral": True,
        "d_closed": True,
        "e_meets_kernel_trivially": e_holds,
        "e_witness": None if e_holds else min(cut.generators),
        "f_level_set_bounded": slice_.bounded,
        "slice": slice_,
        "g_strongly_convex": not lineality,
        "lineality": lineality,
    }


def theorem1_report(classes: Sequence[ModuleClass], r: int, ring: RingDescriptor) -> TheoremReport:
    if r < 1:
        raise InputError("rank must be at least 1")
    if not classes:
        raise InputError("no classes given")
    for m in classes:
        if m.rank != r:
            raise InputError(f"class {m.label} has rank {m.rank}, expected {r}")
        if m.mcm_flag is not True:
            raise InputError(f"class {m.label} is not declared maximal Cohen-Macaulay")
        if m.kernel_part.presentation != ring.kernel_group:
            raise InputError(f"class {m.label} does not live in h({ring.name})")
    chain = finite_chain([m.realify() for m in classes], r)
    e, f, g = chain["e_meets_kernel_trivially"], chain["f_level_set_bounded"], chain["g_strongly_convex"]
    failures = []
    if e != f:
        failures.append("(e) and (f) disagree")
    if f and not g:
        failures.append("(f) holds but (g) fails")
    if not e:
        failures.append("positive-rank generators meet the rank-zero hyperplane")
    slice_ = chain["slice"]
    cert = {
        "rank": str(r),
        "generators": [_v(x) for x in chain["cone"].generators],
        "conditions": {"c": "holds (finitely generated)", "d": "holds (polyhedral cones are closed)",
                       "e": "holds" if e else "fails", "f": "holds" if f else "fails",
                       "g": "holds" if g else "fails"},
        "facets": [_v(n) for n in cones.facets(chain["cone"])[0]],
    }
    if slice_.bounded:
        cert["slice_vertices"] = [_v(x) for x in slice_.vertices]
        cert["slice_squared_diameter"] = _q(slice_.squared_diameter)
    else:
        cert["recession_direction"] = _v(slice_.recession_direction)
    if chain["lineality"]:
        cert["lineality"] = [_v(x) for x in chain["lineality"]]
    if failures:
        cert["failures"] = failures
    return TheoremReport("t1", Verdict.VIOLATED if failures else Verdict.HOLDS, cert,
                         "t1: fixed-rank cone chain (c) => (d) => (e) <=> (f) => (g)")


# ---------------------------------------------------------------------------
# class streams


@dataclass(frozen=True)
class ClassStream:
    generator: Callable[[int], ModuleClass]
    description: str

    def __getitem__(self, n: int) -> ModuleClass:
        return self.generator(n)


def linear_stream(base: ModuleClass, step: GroupElement) -> ClassStream:
    """n -> base + n * step (step in k(R))."""
    def produce(n: int) -> ModuleClass:
        return ModuleClass(f"{base.label}+{n}t", base.rank, base.kernel_part + n * step)
    return ClassStream(produce, f"{base.label} + n*{_v(step.coordinates())}")


def alternating_stream(base: ModuleClass, step: GroupElement) -> ClassStream:
    """n -> base + (-1)^n * step."""
    def produce(n: int) -> ModuleClass:
        sign = -1 if n % 2 else 1
        return ModuleClass(f"{base.label}{'-' if sign < 0 else '+'}t", base.rank,
                           base.kernel_part + sign * step)
    return ClassStream(produce, f"{base.label} +/- {_v(step.coordinates())}")


def stream_divergence_monitor(s: ClassStream, r: int, horizon: int = DEFAULT_HORIZON,
                              bound=DEFAULT_BOUND) -> TheoremReport:
    """Scan indices 0..horizon for a point of the rank-r slice outside the ball of radius ``bound``."""
    if horizon < 1:
        raise InputError("horizon must be at least 1")
    bound = exact.as_fraction(bound)
    if bound <= 0:
        raise InputError("bound must be positive")
    bound_sq = bound * bound
    max_sq = Fraction(0)
    for n in range(horizon + 1):
        m = s[n]
        if m.rank != r:
            raise InputError(f"stream produced rank {m.rank} at index {n}, expected {r}")
        point = m.realify()
        sq = exact.squared_norm(point)
        max_sq = max(max_sq, sq)
        if sq > bound_sq:
            tau = point[1:]
            direction = (Fraction(0),) + exact.primitive(tau)
            return TheoremReport("stream", Verdict.HOLDS, {
                "status": "divergence",
                "index": str(n),
                "point": _v(point),
                "squared_norm": _q(sq),
                "squared_bound": _q(bound_sq),
                "direction": _v(direction),
                "tau_squared_norm": _q(exact.squared_norm(tau)),
                "horizon": str(horizon),
                "bound": _q(bound),
                "stream": s.description,
            }, "stream: divergent sequence on the rank-r slice witnesses unboundedness")
    return TheoremReport("stream", Verdict.HOLDS, {
        "status": "bounded up to horizon (not a proof of boundedness)",
        "max_squared_norm": _q(max_sq),
        "horizon": str(horizon),
        "bound": _q(bound),
        "stream": s.description,
    }, "stream: divergent sequence on the rank-r slice witnesses unboundedness")


# ---------------------------------------------------------------------------
# lattice separation


def prop16_separation(classes: Sequence[ModuleClass]) -> TheoremReport:
    """Distinct classes with distinct real images are at distance >= 1."""
    pairs = 0
    collapses, close = [], []
    min_sq = None
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            if a.kernel_part.presentation != b.kernel_part.presentation:
                raise InputError(f"classes {a.label} and {b.label} live in different groups")
            if a.same_class(b):
                continue
            xa, xb = a.realify(), b.realify()
            if xa == xb:
                collapses.append([a.label, b.label])
                continue
            pairs += 1
            sq = exact.squared_norm(exact.sub(xa, xb))
            min_sq = sq if min_sq is None else min(min_sq, sq)
            if sq < 1:
                close.append({"pair": [a.label, b.label], "squared_distance": _q(sq)})
    cert = {"pairs_checked": str(pairs),
            "min_squared_distance": None if min_sq is None else _q(min_sq),
            "torsion_collapses": collapses}
    if close:
        cert["violations"] = close
    return TheoremReport("p16", Verdict.VIOLATED if close else Verdict.HOLDS, cert,
                         "p16: module classes are isolated at distance 1 in h(R)_R")


# ---------------------------------------------------------------------------
# canonical-dual symmetry


def symmetry_check(classes: Sequence[ModuleClass], ring: RingDescriptor) -> TheoremReport:
    cite = "sym: the canonical-dual involution maps the cone onto itself"
    if not ring.has("canonical_module"):
        return TheoremReport("sym", Verdict.NOT_APPLICABLE, {"reason": "no canonical class declared"}, cite)
    missing = []
    for m in classes:
        d = canonical_dual_class(m, ring)
        if not any(d.same_class(x) for x in classes):
            missing.append({"of": m.label, "dual": _v(d.realify())})
    if missing:
        return TheoremReport("sym", Verdict.NOT_APPLICABLE,
                             {"reason": "class list not closed under canonical dual", "missing": missing}, cite)
    dim = ring.dimension
    c = cones.RationalCone(dim, [m.realify() for m in classes])
    nu = nu_involution_matrix(ring)
    image = cones.image_cone(nu, c)
    not_in_image = [_v(g) for g in c.generators if not cones.contains(image, g)]
    not_in_cone = [_v(g) for g in image.generators if not cones.contains(c, g)]
    cert = {"generators": [_v(g) for g in c.generators],
            "involution": [_v(row) for row in nu],
            "image_generators": [_v(g) for g in image.generators]}
    if not_in_image or not_in_cone:
        cert["not_in_image"] = not_in_image
        cert["image_not_in_cone"] = not_in_cone
        return TheoremReport("sym", Verdict.VIOLATED, cert, cite)
    if ring.has("gorenstein"):
        cert["axis"] = _v(exact.unit(dim, 0))
    return TheoremReport("sym", Verdict.HOLDS, cert, cite)


# ---------------------------------------------------------------------------
# boundary rank criterion


def prop44_boundary_check(rank: int, betti: BettiSequence, length: int | None = None) -> TheoremReport:
    """Necessary condition for [M] or [M*] to lie on the boundary: rk syz^i M >= rk M for all i."""
    cite = "p44: boundary classes satisfy rk syz^i M >= rk M for every integer i"
    if not betti.totally_reflexive:
        return TheoremReport("p44", Verdict.NOT_APPLICABLE,
                             {"reason": "module not declared totally reflexive"}, cite)
    profile = syzygy_rank_profile(rank, betti, length)
    if rank == 0 or (len(profile.syzygy) > 1 and profile.syzygy[1] == 0):
        return TheoremReport("p44", Verdict.NOT_APPLICABLE,
                             {"reason": "free or zero module: syzygies vanish",
                              "syzygy_ranks": [str(x) for x in profile.syzygy]}, cite)
    indexed = profile.indexed()
    cert = {"rank": str(rank),
            "syzygy_ranks": [str(x) for x in profile.syzygy],
            "cosyzygy_ranks": None if profile.cosyzygy is None else [str(x) for x in profile.cosyzygy]}
    dips = [i for i in sorted(indexed, key=lambda i: (abs(i), -i)) if indexed[i] < rank]
    if dips:
        i = dips[0]
        cert.update({"status": "necessary boundary condition fails",
                     "first_dip_index": str(i), "rank_at_dip": str(indexed[i]),
                     "conclusion": "[M] and [M*] are not boundary points; both are interior points of the cone"})
    else:
        side = "syzygy and cosyzygy" if profile.cosyzygy is not None else "syzygy side only"
        cert.update({"status": "necessary condition holds (inconclusive for boundary membership)",
                     "range": side})
    return TheoremReport("p44", Verdict.HOLDS, cert, cite)


# ---------------------------------------------------------------------------
# syzygies entering a polyhedral subcone


def theorem11_entry_indices(m: ModuleClass, betti: BettiSequence, v: cones.RationalCone,
                            horizon: int = 64, unbounded_rank_declared: bool = False) -> TheoremReport:
    """Indices n <= horizon with [syz^n M] in v, plus the exact rank threshold per parity.

    With [M] = r_0[R] + [C], the normalized syzygy is [R] + (-1)^n C / r_n, so
    membership holds exactly when r_n >= max(0, -(-1)^n (a.C) / a_0) over the
    facet normals a of v.
    """
    cite = "t11: syzygies of a module of complexity >= 2 enter a polyhedral subcone infinitely often"
    dim = v.ambient_dim
    e0 = exact.unit(dim, 0)
    if not cones.interior_contains(v, e0):
        return TheoremReport("t11", Verdict.NOT_APPLICABLE, {"reason": "[R] is not an interior point of V"}, cite)
    cx = complexity_lower_bound(betti)
    if not (cx.at_least(2) or unbounded_rank_declared):
        return TheoremReport("t11", Verdict.NOT_APPLICABLE,
                             {"reason": f"complexity {cx} < 2 and no unbounded-rank declaration"}, cite)
    point = m.realify()
    if len(point) != dim:
        raise InputError("class and cone live in different spaces")
    c_vec = point[1:]
    normals, _ = cones.facets(v)
    thresholds = {}
    for parity in (0, 1):
        sign = -1 if parity else 1
        t = Fraction(0)
        for a in normals:
            # a_0 > 0 because [R] is interior
            t = max(t, -sign * exact.dot(a[1:], c_vec) / a[0])
        thresholds[parity] = t
    ranks = syzygy_rank_profile(m.rank, betti, horizon).syzygy
    members, mismatches = [], []
    for n in range(len(ranks)):
        s = syzygy_class(m, betti, n)
        inside = cones.contains(v, s.realify())
        # a zero-rank syzygy has no normalization, so only direct membership applies
        predicted = inside if s.rank == 0 else s.rank >= thresholds[n % 2]
        if inside:
            members.append(n)
        if inside != predicted:
            mismatches.append(n)
    last = len(ranks) - 1
    tails = {}
    for parity in (0, 1):
        idx = [n for n in range(parity, last + 1, 2)]
        n0 = None
        for n in reversed(idx):
            if n in members:
                n0 = n
            else:
                break
        tails["even" if parity == 0 else "odd"] = None if n0 is None else str(n0)
    cert = {"members": [str(n) for n in members],
            "horizon": str(last),
            "ranks": [str(x) for x in ranks],
            "threshold_even": _q(thresholds[0]),
            "threshold_odd": _q(thresholds[1]),
            "tail_start": tails,
            "complexity": str(cx),
            "note": "infinitude follows from unbounded r_n; only indices up to the horizon are enumerated"}
    if mismatches:
        cert["threshold_mismatches"] = [str(n) for n in mismatches]
        return TheoremReport("t11", Verdict.VIOLATED, cert, cite)
    if not members:
        cert["reason"] = "no entry within the horizon"
        return TheoremReport("t11", Verdict.NOT_APPLICABLE, cert, cite)
    return TheoremReport("t11", Verdict.HOLDS, cert, cite)


# ---------------------------------------------------------------------------
# divisor lines


LINE_ASSUMPTIONS = frozenset({"gorenstein_ideal", "rigid", "non_principal", "principal", "height_one",
                              "locally_free_punctured", "dim_ge_3"})


@dataclass(frozen=True)
class DivisorLine:
    """Points base + n * direction in Cl(R); ``declared_mcm`` lists the n known to be MCM."""

    base: GroupElement
    direction: GroupElement
    declared_mcm: frozenset[int]
    assumptions: frozenset[str] = frozenset()
    label: str = ""
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "declared_mcm", frozenset(int(n) for n in self.declared_mcm))
        object.__setattr__(self, "assumptions", frozenset(self.assumptions))
        unknown = self.assumptions - LINE_ASSUMPTIONS
        if unknown:
            raise InputError(f"unknown line assumptions: {sorted(unknown)}")
        if self.base.presentation != self.direction.presentation:
            raise InputError("line base and direction live in different groups")

    def point(self, n: int) -> GroupElement:
        return self.base + n * self.direction

    def with_declared(self, declared: Iterable[int]) -> "DivisorLine":
        return DivisorLine(self.base, self.direction, frozenset(declared), self.assumptions,
                           self.label, self.provenance + " (declared set overridden)")

    @property
    def is_rigid(self) -> bool:
        return "rigid" in self.assumptions or {"dim_ge_3", "locally_free_punctured"} <= self.assumptions


T3_NEEDS = ("gorenstein_ideal", "height_one", "rigid", "non_principal")


def theorem3_walk(line: DivisorLine, ring: RingDescriptor, depth: int = 5) -> TheoremReport:
    cite = "t3: on the line Z*I the MCM points are exactly n = -1, 0, 1"
    missing = [a for a in T3_NEEDS if not (a in line.assumptions or (a == "rigid" and line.is_rigid))]
    ring_missing = [f for f in ("gorenstein", "normal") if not ring.has(f)]
    if missing or ring_missing:
        return TheoremReport("t3", Verdict.NOT_APPLICABLE,
                             {"missing_assumptions": missing, "missing_ring_flags": ring_missing,
                              "line": line.label}, cite)
    if not line.base.is_zero():
        return TheoremReport("t3", Verdict.NOT_APPLICABLE,
                             {"reason": "line does not pass through 0", "line": line.label}, cite)

    def module(n: int) -> ModuleClass:
        return rank_one_reflexive(ring, line.point(n), f"({n})")

    relations = []
    ok = True
    for n in range(1, depth + 1):
        lhs = module(1) + module(-n)
        rhs = module(0) + module(-n + 1)
        holds = lhs.same_class(rhs)
        ok = ok and holds
        relations.append({"n": str(n), "relation": f"[(1)] + [({-n})] = [(0)] + [({-n + 1})]",
                          "lhs": _v(lhs.realify()), "rhs": _v(rhs.realify()), "holds": holds})
    # the n = 1 relation is the dual-class identity for the rank-one class of I
    one = module(1)
    dual_matches = dual_class(one).same_class(module(-1))
    identity_holds = exact.add(one.realify(), dual_class(one).realify()) == exact.scale(2, exact.unit(ring.dimension, 0))
    n1 = relations[0]
    n1_is_dual_identity = dual_matches and identity_holds and n1["holds"]
    conclusion = [-1, 0, 1]
    extra = sorted(n for n in line.declared_mcm if n not in conclusion)
    cert = {"line": line.label,
            "relations": relations,
            "n1_matches_dual_identity": n1_is_dual_identity,
            "conclusion_set": [str(n) for n in conclusion],
            "conclusion_points": [_v(line.point(n).coordinates()) for n in conclusion],
            "declared_mcm": [str(n) for n in sorted(line.declared_mcm)]}
    undeclared = [n for n in conclusion if n not in line.declared_mcm]
    if undeclared:
        cert["undeclared_conclusion_points"] = [str(n) for n in undeclared]
    if extra or not ok or not n1_is_dual_identity:
        if extra:
            cert["violating_indices"] = [str(n) for n in extra]
        return TheoremReport("t3", Verdict.VIOLATED, cert, cite)
    return TheoremReport("t3", Verdict.HOLDS, cert, cite)


LINE_NEEDS = ("gorenstein_ideal", "height_one", "locally_free_punctured", "dim_ge_3")


def line_constraints_check(line: DivisorLine) -> TheoremReport:
    """Interval closure toward 0 on each side, and J+2I, J-2I never both MCM for non-principal I."""
    cite = "line: MCM points on J + Z*I close up toward J and exclude the pair J +/- 2I"
    missing = [a for a in LINE_NEEDS if a not in line.assumptions]
    if missing:
        return TheoremReport("line", Verdict.NOT_APPLICABLE,
                             {"missing_assumptions": missing, "line": line.label}, cite)
    declared = line.declared_mcm
    violations = []
    for sign in (1, -1):
        side = sorted((n for n in declared if n * sign > 0), key=abs)
        if not side:
            continue
        far = max(abs(n) for n in side)
        for i in range(0, far + 1):
            if sign * i not in declared:
                violations.append({"part": "1", "index": str(sign * i),
                                   "reason": f"{sign * far} declared but {sign * i} is not"})
                break
    if "principal" not in line.assumptions and 2 in declared and -2 in declared:
        violations.append({"part": "2", "index": "+2,-2",
                           "reason": "J+2I and J-2I declared together for a non-principal I"})
    cert = {"line": line.label, "declared_mcm": [str(n) for n in sorted(declared)]}
    if violations:
        cert["violations"] = violations
        return TheoremReport("line", Verdict.VIOLATED, cert, cite)
    return TheoremReport("line", Verdict.HOLDS, cert, cite)


# ---------------------------------------------------------------------------
# intersection-multiplicity half-space


def chi_halfspace_report(functional_values: Sequence, classes: Sequence[ModuleClass],
                         probe: GroupElement, zeta: int | None = None) -> TheoremReport:
    """MCM classes satisfy chi(L, -) >= 0; a kernel probe with chi < 0 is cut off the closure."""
    cite = "chi: MCM classes lie in the half-space chi(L, -) >= 0"
    f = exact.vec(functional_values)
    negative = []
    for m in classes:
        x = m.realify()
        if len(x) != len(f):
            raise InputError(f"functional has length {len(f)} but {m.label} lives in dimension {len(x)}")
        val = exact.dot(f, x)
        if val < 0:
            negative.append({"class": m.label, "chi": _q(val)})
    probe_point = (Fraction(0),) + realify(probe)
    if len(probe_point) != len(f):
        raise InputError("probe does not live in k(R)")
    chi_probe = exact.dot(f, probe_point)
    cert = {"functional": _v(f), "probe": _v(probe_point), "chi_probe": _q(chi_probe),
            "classes_checked": [m.label for m in classes]}
    if negative:
        cert["negative_classes"] = negative
        return TheoremReport("chi", Verdict.VIOLATED, cert, cite)
    if chi_probe < 0:
        steps = ["probe is outside the closed half-space chi >= 0, hence outside the closure of the cone",
                 "closure of the cone meets k(R)_R in a subspace not containing the probe: a proper subspace"]
        if zeta == 1:
            steps.append("k(R)_R is a line, so the closure meets it only at 0; "
                         "the rank-one cone is strongly convex and there are finitely many rank-one MCM modules")
        cert["status"] = "probe excluded"
        cert["conclusion"] = steps
    else:
        cert["status"] = "no conclusion (one-sided test)"
    return TheoremReport("chi", Verdict.HOLDS, cert, cite)
