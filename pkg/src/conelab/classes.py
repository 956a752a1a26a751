"""Module classes in h(R) = Z[R] + k(R) and the functionals acting on them.

A class is stored as its rank together with its kernel part, an element of
the presented group k(R).  Everything a ring contributes (which flags hold,
where the canonical class sits, how k(R) is identified with Cl(R)) is
declared on a :class:`RingDescriptor`; none of it is computed from the ring.

Coordinates on h(R)_R are ``(rank, phi_1, ..., phi_zeta)``: the class of R
first, then the free basis of k(R).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

from conelab import exact
from conelab.errors import InconsistentDataError, InputError
from conelab.lattice import GroupElement, GroupPresentation, realify

FLAGS = frozenset({"domain", "normal", "cohen_macaulay", "gorenstein",
                   "isolated_singularity", "canonical_module"})


@dataclass(frozen=True)
class RingDescriptor:
    name: str
    zeta: int
    torsion_orders: tuple[int, ...] = ()
    flags: frozenset[str] = frozenset()
    omega_kernel_part: GroupElement | None = None
    # integer matrix on (free + torsion) coordinates of k(R), sending a kernel
    # part to its determinant in Cl(R); identity when omitted
    determinant_matrix: tuple[tuple[int, ...], ...] | None = None
    provenance: str = ""
    basis_labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(self.torsion_orders))
        object.__setattr__(self, "flags", frozenset(self.flags))
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        unknown = self.flags - FLAGS
        if unknown:
            raise InputError(f"unknown ring flags: {sorted(unknown)}")
        pres = self.kernel_group
        if self.omega_kernel_part is not None and self.omega_kernel_part.presentation != pres:
            raise InputError("canonical class does not live in k(R)")
        if "gorenstein" in self.flags:
            if self.omega_kernel_part is None:
                object.__setattr__(self, "omega_kernel_part", pres.zero())
            elif not self.omega_kernel_part.is_zero():
                raise InconsistentDataError(f"{self.name}: Gorenstein ring with nonzero canonical class")
            object.__setattr__(self, "flags", self.flags | {"canonical_module"})
        if self.determinant_matrix is not None:
            m = tuple(tuple(int(x) for x in row) for row in self.determinant_matrix)
            n = pres.length
            if len(m) != n or any(len(r) != n for r in m):
                raise InputError(f"determinant matrix must be {n}x{n}")
            object.__setattr__(self, "determinant_matrix", m)

    @property
    def kernel_group(self) -> GroupPresentation:
        return GroupPresentation(self.zeta, self.torsion_orders, self.basis_labels)

    @property
    def dimension(self) -> int:
        """Dimension of h(R)_R."""
        return self.zeta + 1

    def has(self, flag: str) -> bool:
        return flag in self.flags

    def kernel(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> GroupElement:
        return self.kernel_group.element(free, torsion)


@dataclass(frozen=True)
class ModuleClass:
    label: str
    rank: int
    kernel_part: GroupElement
    mcm_flag: bool | None = None
    locally_free_codim1: bool = False
    provenance: str = ""

    def __post_init__(self):
        if isinstance(self.rank, bool) or not isinstance(self.rank, int) or self.rank < 0:
            raise InputError(f"{self.label}: rank must be a nonnegative integer")

    def realify(self) -> tuple[Fraction, ...]:
        return (Fraction(self.rank),) + realify(self.kernel_part)

    def same_class(self, other: "ModuleClass") -> bool:
        """Equality in h(R), torsion included; labels and declarations ignored."""
        return self.rank == other.rank and self.kernel_part == other.kernel_part

    def __add__(self, other: "ModuleClass") -> "ModuleClass":
        return ModuleClass(f"{self.label}+{other.label}", self.rank + other.rank,
                           self.kernel_part + other.kernel_part,
                           locally_free_codim1=self.locally_free_codim1 and other.locally_free_codim1)


def free_class(ring: RingDescriptor, r: int = 1, label: str | None = None) -> ModuleClass:
    return ModuleClass(label or ("R" if r == 1 else f"R^{r}"), r, ring.kernel_group.zero(),
                       mcm_flag=True, locally_free_codim1=True)


def rank_functional(m: ModuleClass) -> int:
    return m.rank


def rank_functional_real(x: Sequence) -> Fraction:
    return exact.as_fraction(x[0])


def determinant(m: ModuleClass, ring: RingDescriptor) -> GroupElement:
    """First Chern class: image of the kernel part in Cl(R)."""
    if not ring.has("normal"):
        raise InputError(f"{ring.name}: the determinant map needs a normal ring")
    k = m.kernel_part
    if ring.determinant_matrix is None:
        return k
    coords = k.coordinates()
    image = [sum(a * x for a, x in zip(row, coords)) for row in ring.determinant_matrix]
    pres = k.presentation
    return pres.element(image[:pres.free_rank], image[pres.free_rank:])


def kernel_from_divisor(ring: RingDescriptor, divisor: GroupElement) -> GroupElement:
    """Inverse of :func:`determinant` on k(R)."""
    if ring.determinant_matrix is None:
        return divisor
    inv = exact.inverse(ring.determinant_matrix)
    coords = divisor.coordinates()
    image = []
    for row in inv:
        v = sum((a * x for a, x in zip(row, coords)), Fraction(0))
        if v.denominator != 1:
            raise InputError(f"{ring.name}: determinant matrix is not invertible over Z")
        image.append(int(v))
    pres = divisor.presentation
    return pres.element(image[:pres.free_rank], image[pres.free_rank:])


def rank_one_reflexive(ring: RingDescriptor, divisor: GroupElement, label: str, **kw) -> ModuleClass:
    """Class of the rank-one reflexive module with the given divisor class."""
    kw.setdefault("locally_free_codim1", True)
    return ModuleClass(label, 1, kernel_from_divisor(ring, divisor), **kw)


def dual_class(m: ModuleClass) -> ModuleClass:
    """[M*] = 2r[R] - [M] for M locally free in codimension one."""
    if not m.locally_free_codim1:
        raise InputError(f"{m.label}: dual class needs a module declared locally free in codimension one")
    label = m.label[:-1] if m.label.endswith("*") else m.label + "*"
    return ModuleClass(label, m.rank, -m.kernel_part, mcm_flag=None,
                       locally_free_codim1=True, provenance=f"dual of {m.label}")


def canonical_dual_class(m: ModuleClass, ring: RingDescriptor) -> ModuleClass:
    """[M^dag] = r([R] + [omega]) - [M]; rank is preserved, kernel part r*w - c."""
    if not ring.has("canonical_module") or ring.omega_kernel_part is None:
        raise InputError(f"{ring.name}: no canonical class declared")
    label = m.label[:-1] if m.label.endswith("^") else m.label + "^"
    return ModuleClass(label, m.rank, m.rank * ring.omega_kernel_part - m.kernel_part,
                       mcm_flag=m.mcm_flag, locally_free_codim1=m.locally_free_codim1,
                       provenance=f"canonical dual of {m.label}")


def nu_involution_matrix(ring: RingDescriptor) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix of the canonical-dual involution on h(R)_R: [R] -> [omega], t -> -t."""
    if not ring.has("canonical_module") or ring.omega_kernel_part is None:
        raise InputError(f"{ring.name}: no canonical class declared")
    n = ring.dimension
    w = realify(ring.omega_kernel_part)
    m = [[Fraction(0)] * n for _ in range(n)]
    m[0][0] = Fraction(1)
    for i in range(1, n):
        m[i][0] = w[i - 1]
        m[i][i] = Fraction(-1)
    return tuple(tuple(r) for r in m)


def pushforward(map_data: Sequence[Sequence], x: Sequence, injective_extension: bool = False) -> tuple:
    """Apply a declared map h(S)_R -> h(R)_R.

    For an injective finite extension the map has to be onto; a matrix of
    lower rank is rejected as inconsistent data.
    """
    m = [exact.vec(r) for r in map_data]
    x = exact.vec(x)
    if any(len(r) != len(x) for r in m):
        raise InputError("pushforward matrix does not match the source dimension")
    if injective_extension and exact.rank(m, len(x)) != len(m):
        raise InconsistentDataError("declared injective extension but the map h(S)_R -> h(R)_R is not onto")
    return exact.mat_vec(m, x)


# ---------------------------------------------------------------------------
# Betti data and syzygies

GROWTH_TAGS = ("constant", "polynomial", "exponential")


@dataclass(frozen=True)
class BettiSequence:
    """Betti numbers b_0, b_1, ... of a module.

    ``prefix`` lists explicit values.  Past the prefix, a growth tag with
    coefficients gives closed-form values: ``constant`` (c,) is b_i = c;
    ``polynomial`` (c_0, ..., c_d) is b_i = sum c_j i^j; ``exponential``
    (c, base) is b_i = c * base^i.  ``dual`` carries b_{-1}, b_{-2}, ...
    (the Betti numbers of the dual module) for totally reflexive modules.
    """

    prefix: tuple[int, ...] = ()
    growth: str | None = None
    coefficients: tuple[int, ...] = ()
    dual: "BettiSequence | None" = None
    totally_reflexive: bool = False

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(b) for b in self.prefix))
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if self.dual is not None and not isinstance(self.dual, BettiSequence):
            object.__setattr__(self, "dual", BettiSequence(prefix=tuple(self.dual)))
        if any(b < 0 for b in self.prefix):
            raise InputError("Betti numbers must be nonnegative")
        if self.growth is not None:
            if self.growth not in GROWTH_TAGS:
                raise InputError(f"unknown growth tag {self.growth!r}")
            need = {"constant": 1, "exponential": 2}.get(self.growth)
            if need is not None and len(self.coefficients) != need:
                raise InputError(f"{self.growth} growth takes {need} coefficient(s)")
            if self.growth == "polynomial" and not self.coefficients:
                raise InputError("polynomial growth needs coefficients")

    @classmethod
    def constant(cls, c: int, **kw) -> "BettiSequence":
        return cls(growth="constant", coefficients=(c,), **kw)

    @classmethod
    def polynomial(cls, *coefficients: int, **kw) -> "BettiSequence":
        return cls(growth="polynomial", coefficients=coefficients, **kw)

    @property
    def finite(self) -> bool:
        return self.growth is None

    @property
    def available(self) -> int | None:
        """How many values are known; None means all of them."""
        return len(self.prefix) if self.growth is None else None

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        if i < len(self.prefix):
            return self.prefix[i]
        if self.growth == "constant":
            value = self.coefficients[0]
        elif self.growth == "polynomial":
            value = sum(c * i ** j for j, c in enumerate(self.coefficients))
        elif self.growth == "exponential":
            value = self.coefficients[0] * self.coefficients[1] ** i
        else:
            raise IndexError(f"Betti number b_{i} is beyond the declared prefix")
        if value < 0:
            raise InconsistentDataError(f"closed form gives negative Betti number b_{i} = {value}")
        return value

    def values(self, count: int) -> list[int]:
        return [self[i] for i in range(count)]


DEFAULT_PROFILE_LENGTH = 32


def _ranks(r0: int, betti: BettiSequence, length: int | None) -> list[int]:
    avail = betti.available
    steps = avail if avail is not None else (length if length is not None else DEFAULT_PROFILE_LENGTH)
    if length is not None and avail is not None:
        steps = min(avail, length)
    ranks = [r0]
    for k in range(steps):
        nxt = betti[k] - ranks[-1]
        if nxt < 0:
            raise InconsistentDataError(
                f"Betti data forces rank(syz^{k + 1}) = {betti[k]} - {ranks[-1]} = {nxt} < 0")
        ranks.append(nxt)
    return ranks


@dataclass(frozen=True)
class RankProfile:
    syzygy: tuple[int, ...]
    cosyzygy: tuple[int, ...] | None  # rk syz^{-n} for n = 0, 1, ...

    def indexed(self) -> dict[int, int]:
        """Ranks keyed by the (signed) syzygy index."""
        out = {i: r for i, r in enumerate(self.syzygy)}
        if self.cosyzygy is not None:
            out.update({-i: r for i, r in enumerate(self.cosyzygy) if i})
        return out


def syzygy_rank_profile(rank: int, betti: BettiSequence, length: int | None = None) -> RankProfile:
    """Ranks of syz^0, syz^1, ... from r_{k+1} = b_k - r_k; cosyzygies from the dual Betti data."""
    syz = _ranks(rank, betti, length)
    cosyz = _ranks(rank, betti.dual, length) if betti.dual is not None else None
    return RankProfile(tuple(syz), None if cosyz is None else tuple(cosyz))


def syzygy_class(m: ModuleClass, betti: BettiSequence, n: int) -> ModuleClass:
    """[syz^n M] = r_n [R] + (-1)^n [C] where [M] = r_0 [R] + [C]."""
    if n < 0:
        raise InputError("syzygy index must be nonnegative")
    if n == 0:
        return m
    ranks = _ranks(m.rank, betti, n)
    if len(ranks) <= n:
        raise InputError(f"Betti data covers only {len(ranks) - 1} syzygies, asked for {n}")
    sign = -1 if n % 2 else 1
    return ModuleClass(f"syz^{n}({m.label})", ranks[n], sign * m.kernel_part, mcm_flag=None,
                       locally_free_codim1=m.locally_free_codim1)


@dataclass(frozen=True)
class ComplexityBound:
    value: int | None  # None: unbounded (exponential growth)
    exact: bool
    prefix_only: bool = False
    note: str = ""

    @property
    def unbounded(self) -> bool:
        return self.value is None

    def at_least(self, k: int) -> bool:
        return self.value is None or self.value >= k

    def __str__(self):
        if self.value is None:
            return "at least exponential"
        return f"{'=' if self.exact else '>='} {self.value}"


def _min_exponent(ratio: Fraction, step: Fraction) -> int:
    """Smallest k >= 0 with step**k >= ratio (step > 1)."""
    k, power = 0, Fraction(1)
    while power < ratio:
        power *= step
        k += 1
    return k


def complexity_lower_bound(betti: BettiSequence) -> ComplexityBound:
    """Complexity (polynomial growth degree plus one) of the Betti numbers.

    Closed forms give the exact value.  A finite prefix only yields an
    estimate from the last step b_{n-1} -> b_n: the least k with
    (n/(n-1))^k >= b_n / b_{n-1}, reported as complexity >= k + 1 and flagged
    as prefix-only, since an initial segment never determines asymptotics.
    """
    if betti.growth == "exponential":
        c, base = betti.coefficients
        if c > 0 and base > 1:
            return ComplexityBound(None, True)
        if c == 0 or base == 0:
            return ComplexityBound(0, True)
        return ComplexityBound(1, True)
    if betti.growth == "constant":
        return ComplexityBound(1 if betti.coefficients[0] else 0, True)
    if betti.growth == "polynomial":
        coeffs = list(betti.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return ComplexityBound(len(coeffs), True)
    vals = list(betti.prefix)
    if not any(vals):
        return ComplexityBound(0, False, True, "prefix only")
    if vals[-1] == 0:
        return ComplexityBound(0, False, True, "prefix only; last listed Betti number is zero")
    if len(vals) < 3 or vals[-2] == 0:
        return ComplexityBound(1, False, True, "prefix only")
    n = len(vals) - 1
    k = _min_exponent(Fraction(vals[-1], vals[-2]), Fraction(n, n - 1))
    return ComplexityBound(k + 1, False, True, "prefix only")
