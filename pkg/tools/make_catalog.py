"""Regenerate src/conelab/data/*.json from the definitions below.

Run from the repository root:  python3 tools/make_catalog.py
The files are written with the canonical dumper, so loading and re-dumping
any of them reproduces it byte for byte.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

from conelab.catalog import (BettiRecord, CatalogEntry, ChiRecord, Fact, PresentationRecord, PushforwardRecord,
                             dump_entry)
from conelab.classes import BettiSequence, ModuleClass, RingDescriptor
from conelab.lattice import GroupPresentation
from conelab.theorems import DivisorLine

VERSION = "1"
OUT = Path(__file__).resolve().parent.parent / "src" / "conelab" / "data"

ALL_LINE_HYPOTHESES = frozenset({"gorenstein_ideal", "height_one", "non_principal", "locally_free_punctured",
                                 "dim_ge_3", "rigid"})
HYPERSURFACE_FLAGS = frozenset({"domain", "normal", "cohen_macaulay", "gorenstein"})
YOSHINO = "Yoshino, Cohen-Macaulay Modules over Cohen-Macaulay Rings"
FOSSUM = "Fossum, The Divisor Class Group of a Krull Domain"


def quadric_cone() -> CatalogEntry:
    ring = RingDescriptor(
        "k[[x,y,z,w]]/(xw-yz)", 1, (), HYPERSURFACE_FLAGS | {"isolated_singularity"},
        provenance=f"3-dimensional A1 hypersurface with an isolated singularity; Cl(R) = Zp for p = (x,y) "
                   f"({FOSSUM}, Prop. 14.8). Kernel basis vector t is the class p.",
        basis_labels=("p",))
    t = ring.kernel([1])
    zero = ring.kernel_group.zero()
    mcm = "indecomposable MCM modules over the 3-dimensional A1 singularity are R, p, p* " \
          f"({YOSHINO}, (9.9) and (12.10))"
    classes = (
        ModuleClass("R", 1, zero, True, True, "free module"),
        ModuleClass("p", 1, t, True, True, f"p = (x,y), height one prime; {mcm}"),
        ModuleClass("p*", 1, -t, True, True, f"p* = Hom(p,R), divisor class -p; {mcm}"),
        ModuleClass("R/p", 0, -t, False, False, "torsion module; determinant of R/I is -I for a reflexive ideal I"),
    )
    periodic = BettiSequence.constant(2, dual=BettiSequence.constant(2), totally_reflexive=True)
    betti = (
        BettiRecord("p", periodic, "2x2 matrix factorization of xw-yz: resolution periodic of period 2, "
                                   "all Betti numbers 2; MCM over a hypersurface, hence totally reflexive"),
        BettiRecord("p*", periodic, "same matrix factorization with the factors swapped"),
    )
    line = DivisorLine(zero, t, frozenset({-1, 0, 1}), ALL_LINE_HYPOTHESES, "Zp",
                       "p is a Gorenstein height-one prime (R/p = k[[z,w]]), locally free on the punctured "
                       "spectrum (isolated singularity), rigid since dim R = 3; MCM points of Cl(R) are 0, p, -p")
    chi = ChiRecord("L", (Fraction(2), Fraction(1)), -t,
                    "Dao-Hochster-Miller module L of finite length and finite projective dimension with "
                    "chi(L, R/p) = -1, so chi(L, t) = 1. The value chi(L, R) = 2 is a declared normalization: "
                    "the least value making chi(L, p*) = chi(L, R) - 1 positive, as required for a nonzero MCM "
                    "module. Probe: the kernel part of [R/p].")
    facts = (
        Fact("finite Cohen-Macaulay representation type", f"{YOSHINO}, Corollary (12.6)"),
        Fact("only finitely many rank-one MCM modules up to isomorphism",
             "follows from chi(L, R/p) = -1 and the half-space argument; also from finite CM type"),
        Fact("the cone of MCM classes is polyhedral", "finite CM type: finitely many generators"),
    )
    return CatalogEntry("quadric-cone-3d", VERSION, "3-dimensional A1 quadric cone xw - yz", ring, None,
                        classes, betti, (line,), (chi,), (), facts)


def veronese_pinched() -> CatalogEntry:
    ring = RingDescriptor(
        "k[[x^4,x^3y,x^2y^2,xy^3,y^4]]", 0, (4,), {"domain", "normal", "cohen_macaulay", "canonical_module"},
        omega_kernel_part=GroupPresentation(0, (4,)).element(torsion=[2]), provenance=(
            "normalization Rbar = S^(4) of the pinched Veronese k[[x^4,x^3y,xy^3,y^4]], S = k[[x,y]], "
            "char k != 2. Cl(Rbar) = Z S^3 = Z/4 with S^1 = 3 S^3 and S^2 = 2 S^3 (Bruns-Gubeladze, "
            "Polytopes, Rings and K-theory, Thm 2.3.1), so h(Rbar) = Z + Z/4. Canonical module of S^(4) is the "
            "degree 2 mod 4 component S^2 (Goto-Watanabe, On graded rings I)."),
        basis_labels=("S^3",))
    zero = ring.kernel_group.zero()
    reflexive = "rank-one reflexive over a 2-dimensional normal domain, hence MCM"
    classes = (
        ModuleClass("Rbar", 1, zero, True, True, "free module"),
        ModuleClass("S^1", 1, ring.kernel(torsion=[3]), True, True, f"S^1 = 3 S^3 in Cl; {reflexive}"),
        ModuleClass("S^2", 1, ring.kernel(torsion=[2]), True, True, f"S^2 = 2 S^3 in Cl; {reflexive}"),
        ModuleClass("S^3", 1, ring.kernel(torsion=[1]), True, True, f"generator of Cl = Z/4; {reflexive}"),
    )
    pres = PresentationRecord(
        ("[Rbar]", "cl S^1", "cl S^2", "cl S^3"),
        ((0, 1, 0, -3), (0, 0, 1, -2), (0, 0, 0, 4)),
        "h(Rbar) = Z[Rbar] + Cl(Rbar) with the relations S^1 = 3 S^3, S^2 = 2 S^3, 4 S^3 = 0")
    push = PushforwardRecord(
        "h(Rbar)_R -> h(R)_R", ((Fraction(1),),), True,
        "0 -> R -> Rbar -> k -> 0 with k pseudo-zero gives [M] = [M (x) Rbar] in h(R); the real map sends "
        "[Rbar] to [R] and is onto, so dim h(R)_R <= 1")
    facts = (
        Fact("R = k[[x^4,x^3y,xy^3,y^4]] is not normal, yet dim h(R)_R <= 1",
             "h(R)_R is a homomorphic image of h(Rbar)_R = R[Rbar]"),
        Fact("Rbar/R is isomorphic to k", "the monomial x^2y^2 spans the quotient"),
    )
    return CatalogEntry("veronese-pinched", VERSION,
                        "pinched Veronese subring of k[[x,y]] and its normalization S^(4)", ring, pres,
                        classes, (), (), (), (push,), facts)


def x2w_yz() -> CatalogEntry:
    ring = RingDescriptor(
        "k[[x,y,z,w]]/(x^2w-yz)", 1, (), HYPERSURFACE_FLAGS,
        provenance="3-dimensional normal hypersurface, k perfect; singular locus V(x,y,z), so not an isolated "
                   "singularity. Only the subgroup Zp of Cl(R), p = (x,y), is modelled; t is the class p.",
        basis_labels=("p",))
    t = ring.kernel([1])
    zero = ring.kernel_group.zero()
    classes = (
        ModuleClass("R", 1, zero, True, True, "free module"),
        ModuleClass("p", 1, t, True, True, "p = (x,y) has a 2-periodic resolution by 2x2 matrices, so it is MCM"),
        ModuleClass("p*", 1, -t, True, True, "dual of an MCM module over a Gorenstein ring"),
        ModuleClass("p^(2)", 1, 2 * t, True, True, "p^(2) = (x^2,y) is a Gorenstein ideal, MCM"),
        ModuleClass("p^(2)*", 1, -2 * t, True, True, "dual of an MCM module over a Gorenstein ring"),
    )
    periodic = BettiSequence.constant(2, dual=BettiSequence.constant(2), totally_reflexive=True)
    betti = (BettiRecord("p", periodic, "resolution R^2 <- R^2 <- ... with matrices [[y,xw],[-x,-z]] and "
                                        "[[-z,-xw],[x,y]]; MCM over a hypersurface, hence totally reflexive"),)
    lines = (
        DivisorLine(zero, 2 * t, frozenset({-1, 0, 1}), ALL_LINE_HYPOTHESES - {"rigid"}, "2Zp",
                    "p^(2) = (x^2,y) is Gorenstein of height one and locally free on the punctured spectrum "
                    "(p^(2) R_q = R_q at q = (x,y,z)); dim 3 makes it rigid. MCM points on 2Zp are 0 and +/-2p, "
                    "i.e. n = -1, 0, 1 in units of p^(2)"),
        DivisorLine(zero, t, frozenset({-2, -1, 0, 1, 2}), {"gorenstein_ideal", "height_one", "non_principal",
                                                             "dim_ge_3"}, "Zp",
                    "p and 2p = p^(2) are MCM, but p is not rigid (Ext^1(p,p) != 0) and not locally free on the "
                    "punctured spectrum, so the three-point conclusion does not apply to this line"),
    )
    facts = (Fact("R is normal but does not have an isolated singularity", "Jacobian criterion, Sing R = {q, m}"),)
    return CatalogEntry("x2w-yz", VERSION, "normal 3-dimensional hypersurface x^2 w - y z", ring, None,
                        classes, betti, lines, (), (), facts)


def _finite_points_ring(name: str, flags, provenance: str) -> RingDescriptor:
    return RingDescriptor(name, 1, (), flags, provenance=provenance, basis_labels=("p",))


FINITE_POINTS = "only finitely many MCM points on Zp"
CD_AND_DEPTH = "cd p != 1 (local cohomology H^2_p or H^3_p nonzero) and lim depth R/p^n != 0; " \
               "the finiteness criterion for Gorenstein isolated singularities applies"


def determinantal() -> CatalogEntry:
    ring = _finite_points_ring(
        "k[[X]]/I_2(X), X generic 3x3", HYPERSURFACE_FLAGS | {"isolated_singularity"},
        "5-dimensional Gorenstein complete local ring with isolated singularity, not a complete intersection; "
        "Cl(R) = Cl(A) = ZP = Z for P = (x11,x12,x13) (Bruns-Herzog 7.3; Bruns-Vetter (8.5))")
    facts = (
        Fact(f"{FINITE_POINTS} = Cl(R)", CD_AND_DEPTH + "; P^(n) = P^n so depth R/p^n > 0"),
        Fact("infinite Cohen-Macaulay representation type", f"not a hypersurface; {YOSHINO}, Theorem (8.15)"),
    )
    return CatalogEntry("determinantal-3x3", VERSION, "2x2 minors of a generic 3x3 matrix", ring,
                        None, (), (), (), (), (), facts)


def ci_rational() -> CatalogEntry:
    ring = _finite_points_ring(
        "k[[x,y,z,w,v]]/(xy+z^2+w^2+v^2, xv+yv+zw)", HYPERSURFACE_FLAGS | {"isolated_singularity"},
        "3-dimensional complete intersection with an isolated singularity (char k = 0, Jacobian criterion), "
        "rational singularity (a-invariant -1, Flenner-Watanabe); p = (w,v) height-one prime. Models Zp = Z.")
    facts = (Fact(FINITE_POINTS, CD_AND_DEPTH + "; associated graded ring of p is Gorenstein (Goto-Shimoda)"),)
    return CatalogEntry("ci-rational", VERSION, "rational 3-dimensional complete intersection", ring,
                        None, (), (), (), (), (), facts)


def ci_nonrational() -> CatalogEntry:
    ring = _finite_points_ring(
        "k[[x,y,z,w,v]]/(x^3+y^3+zwv, xy+z^2+w^2+v^2)", HYPERSURFACE_FLAGS | {"isolated_singularity"},
        "3-dimensional complete intersection with an isolated singularity, not rational (a-invariant 0); "
        "p = (x+y,z) height-one prime. Models Zp = Z.")
    facts = (Fact(FINITE_POINTS, CD_AND_DEPTH),
             Fact("not toric, so the semigroup-ring finiteness result does not apply",
                  "defining ideal is not binomial"))
    return CatalogEntry("ci-nonrational", VERSION, "non-rational 3-dimensional complete intersection", ring,
                        None, (), (), (), (), (), facts)


def segre() -> CatalogEntry:
    ring = _finite_points_ring(
        "completion of k[x1..x5]/(x1^3+...+x5^3) # k[y1,y2]", HYPERSURFACE_FLAGS | {"isolated_singularity"},
        "Segre product of a cubic fourfold cone and k[y1,y2]: 5-dimensional Gorenstein, not a complete "
        "intersection, isolated singularity (Goto-Watanabe (4.2.3), (4.4.4), (4.4.7)); p = (x1y1, x1y2). "
        "Models Zp = Z.")
    facts = (Fact(FINITE_POINTS, CD_AND_DEPTH),)
    return CatalogEntry("segre", VERSION, "Segre product of a cubic hypersurface and a polynomial ring", ring,
                        None, (), (), (), (), (), facts)


def countable_type() -> CatalogEntry:
    facts = (
        Fact("a nonfree rank-one MCM module M has at most 2 generators",
             "nu(M) <= e(M) = e(R) rk M = 2 for d >= 3; Buchweitz-Greuel-Schreyer and Burban-Drozd for d = 2"),
        Fact("only finitely many rank-one MCM modules up to isomorphism",
             "classification of MCM modules over A-infinity and D-infinity hypersurfaces with Knoerrer periodicity"),
    )
    return CatalogEntry("countable-type-hypersurface", VERSION,
                        "complete hypersurface of countable CM type (A-infinity or D-infinity), d >= 2, "
                        "k algebraically closed, uncountable, char k != 2", None, None, (), (), (), (), (), facts)


def a1_veronese() -> CatalogEntry:
    facts = (
        Fact("R is a normal Gorenstein ring",
             "invariant ring of a finite group acting on a normal ring; a-invariant of B is -2 (Bruns-Herzog 6.4.1, "
             "Exercise 3.6.21)"),
        Fact("there is a polyhedral subcone V of the MCM cone such that [syz^n M] lies in V for infinitely many n "
             "whenever cx M >= 2", "finite extension R -> S with S the A1 singularity of dimension 3"),
        Fact("the partial invariant ring k[[x^2,xy,y^2,z,w]] has minimal multiplicity and a polyhedral subcone "
             "V meeting every syzygy sequence infinitely often", f"finite CM type; {YOSHINO}, Proposition (16.12)"),
    )
    return CatalogEntry("a1-veronese", VERSION,
                        "second Veronese subring of the 3-dimensional A1 singularity k[x,y,z,w]/(xw-yz)",
                        None, None, (), (), (), (), (), facts)


ENTRIES = (quadric_cone, veronese_pinched, x2w_yz, determinantal, ci_rational, ci_nonrational, segre,
           countable_type, a1_veronese)


def main(out: Path = OUT) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for make in ENTRIES:
        e = make()
        (out / f"{e.name}.json").write_text(dump_entry(e), encoding="utf-8")
        print(f"wrote {e.name}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else OUT)
