from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conelab import exact
from conelab.catalog import available_entries, load_entry
from conelab.classes import (BettiSequence, ModuleClass, RingDescriptor, dual_class, free_class,
                             rank_one_reflexive, syzygy_class)
from conelab.cone import RationalCone, contains
from conelab.errors import InputError
from conelab.lattice import GroupPresentation
from conelab.theorems import (ClassStream, DivisorLine, Verdict, alternating_stream, chi_halfspace_report,
                              finite_chain, line_constraints_check, linear_stream, prop16_separation,
                              prop44_boundary_check, stream_divergence_monitor, symmetry_check,
                              theorem1_report, theorem3_walk, theorem11_entry_indices)

QUADRIC = load_entry("quadric-cone-3d")
QR = QUADRIC.ring
X2W = load_entry("x2w-yz")
T = QR.kernel([1])


def cls(label, rank, t, ring=QR, **kw):
    kw.setdefault("mcm_flag", True)
    kw.setdefault("locally_free_codim1", True)
    return ModuleClass(label, rank, ring.kernel([t]), **kw)


# fixed-rank chain


def test_chain_on_quadric_rank_one():
    rep = theorem1_report(QUADRIC.mcm_classes(1), 1, QR)
    assert rep.verdict is Verdict.HOLDS
    assert all(v.startswith("holds") for v in rep.certificate["conditions"].values())
    assert rep.certificate["slice_vertices"] == ["[1, -1]", "[1, 1]"]
    assert rep.certificate["slice_squared_diameter"] == "4"


def test_chain_on_symmetric_pair():
    rep = theorem1_report([cls("a", 1, 1), cls("b", 1, -1)], 1, QR)
    assert rep.verdict is Verdict.HOLDS
    assert rep.certificate["conditions"]["g"] == "holds"


def test_chain_single_free_class():
    rep = theorem1_report([free_class(QR)], 1, QR)
    assert rep.verdict is Verdict.HOLDS
    assert rep.certificate["slice_vertices"] == ["[1, 0]"]


def test_chain_rejects_rank_mismatch_and_undeclared():
    with pytest.raises(InputError):
        theorem1_report([free_class(QR), cls("x", 2, 0)], 1, QR)
    with pytest.raises(InputError):
        theorem1_report([cls("x", 1, 0, mcm_flag=None)], 1, QR)


def test_chain_detects_rank_zero_direction_in_raw_data():
    chain = finite_chain([(1, 0), (0, 1)], 1)
    assert not chain["e_meets_kernel_trivially"] and not chain["f_level_set_bounded"]
    assert chain["e_witness"] == (0, 1)


@st.composite
def mcm_class_sets(draw):
    zeta = draw(st.integers(1, 3))
    ring = RingDescriptor("rand", zeta, flags={"normal"})
    r = draw(st.integers(1, 4))
    n = draw(st.integers(1, 6))
    classes = [ModuleClass(f"m{i}", r, ring.kernel(draw(st.lists(st.integers(-5, 5), min_size=zeta,
                                                                 max_size=zeta))), mcm_flag=True)
               for i in range(n)]
    return ring, r, classes


@given(mcm_class_sets())
def test_chain_always_holds_for_positive_rank_data(data):
    ring, r, classes = data
    rep = theorem1_report(classes, r, ring)
    assert rep.verdict is Verdict.HOLDS
    conds = rep.certificate["conditions"]
    assert conds["e"] == conds["f"] == conds["g"] == "holds"


# streams


def test_linear_stream_diverges_at_ten():
    rep = stream_divergence_monitor(linear_stream(free_class(QR), T), 1, horizon=1000, bound=10)
    c = rep.certificate
    assert c["status"] == "divergence" and c["index"] == "10" and c["direction"] == "[0, 1]"
    assert exact.squared_norm(exact.parse_vector(c["point"])) == 101


def test_constant_stream_bounded():
    s = ClassStream(lambda n: free_class(QR), "R")
    rep = stream_divergence_monitor(s, 1, horizon=200, bound=10)
    assert rep.certificate["status"].startswith("bounded up to horizon")
    assert "not a proof" in rep.certificate["status"]


def test_alternating_stream_bounded_by_two():
    rep = stream_divergence_monitor(alternating_stream(free_class(QR), T), 1, horizon=100, bound=10)
    assert rep.certificate["max_squared_norm"] == "2"


def test_stream_rank_mismatch_rejected():
    with pytest.raises(InputError):
        stream_divergence_monitor(ClassStream(lambda n: free_class(QR, 2), "R^2"), 1, horizon=3)
    with pytest.raises(InputError):
        stream_divergence_monitor(ClassStream(lambda n: free_class(QR), "R"), 1, horizon=0)


def test_stream_defaults_recorded():
    rep = stream_divergence_monitor(ClassStream(lambda n: free_class(QR), "R"), 1)
    assert rep.certificate["horizon"] == "1000" and rep.certificate["bound"] == "1000000"


@given(st.integers(-4, 4).filter(bool), st.integers(1, 30), st.integers(1, 30), st.integers(0, 50))
def test_divergence_is_monotone_in_horizon(step, bound, horizon, extra):
    s = linear_stream(free_class(QR), QR.kernel([step]))
    first = stream_divergence_monitor(s, 1, horizon=horizon, bound=bound)
    later = stream_divergence_monitor(s, 1, horizon=horizon + extra, bound=bound)
    if first.certificate["status"] == "divergence":
        assert later.certificate["status"] == "divergence"
        assert later.certificate["index"] == first.certificate["index"]


# separation


def test_separation_examples():
    rep = prop16_separation([free_class(QR), cls("p", 1, 1)])
    assert rep.verdict is Verdict.HOLDS and rep.certificate["min_squared_distance"] == "1"
    rep = prop16_separation([free_class(QR), free_class(QR)])
    assert rep.certificate["pairs_checked"] == "0"
    z4 = GroupPresentation(1, (4,))
    a = ModuleClass("a", 1, z4.element([0], [0]))
    b = ModuleClass("b", 1, z4.element([0], [1]))
    rep = prop16_separation([a, b])
    assert rep.verdict is Verdict.HOLDS and rep.certificate["torsion_collapses"] == [["a", "b"]]


# symmetry


def test_symmetry_examples():
    assert symmetry_check(QUADRIC.mcm_classes(1), QR).verdict is Verdict.HOLDS
    assert symmetry_check([free_class(QR)], QR).verdict is Verdict.HOLDS
    rep = symmetry_check([free_class(QR), cls("p", 1, 1)], QR)
    assert rep.verdict is Verdict.NOT_APPLICABLE
    assert rep.certificate["missing"] == [{"of": "p", "dual": "[1, -1]"}]


def test_symmetry_holds_for_catalog_rings():
    for name in available_entries():
        entry = load_entry(name)
        if entry.ring is None or not entry.ring.has("canonical_module"):
            continue
        for r in {m.rank for m in entry.classes if m.mcm_flag}:
            rep = symmetry_check(entry.mcm_classes(r), entry.ring)
            assert rep.verdict is Verdict.HOLDS, (name, r, rep.certificate)


# boundary rank criterion


def test_boundary_condition_holds_for_periodic():
    b = BettiSequence.constant(2, dual=BettiSequence.constant(2), totally_reflexive=True)
    rep = prop44_boundary_check(1, b, 10)
    assert rep.verdict is Verdict.HOLDS
    assert rep.certificate["status"].startswith("necessary condition holds")
    assert rep.certificate["range"] == "syzygy and cosyzygy"


def test_boundary_condition_dip_gives_interior():
    b = BettiSequence.constant(3, totally_reflexive=True)
    rep = prop44_boundary_check(2, b, 10)
    c = rep.certificate
    assert c["status"] == "necessary boundary condition fails"
    assert (c["first_dip_index"], c["rank_at_dip"]) == ("1", "1")
    assert "interior" in c["conclusion"]


def test_boundary_condition_free_and_undeclared():
    free = BettiSequence(prefix=(3, 0, 0), totally_reflexive=True)
    assert prop44_boundary_check(3, free).verdict is Verdict.NOT_APPLICABLE
    assert prop44_boundary_check(1, BettiSequence.constant(2)).verdict is Verdict.NOT_APPLICABLE


# syzygy entry


SYM = RationalCone(2, [(1, 1), (1, -1)])


def test_entry_indices_linear_ranks():
    m = ModuleClass("M", 1, QR.kernel([3]))
    b = BettiSequence.polynomial(3, 2)  # r_n = n + 1
    rep = theorem11_entry_indices(m, b, SYM, horizon=20)
    assert rep.verdict is Verdict.HOLDS
    members = [int(n) for n in rep.certificate["members"]]
    assert members == list(range(2, 21))
    assert rep.certificate["threshold_even"] == rep.certificate["threshold_odd"] == "3"
    for n in range(21):
        assert contains(SYM, syzygy_class(m, b, n).realify()) == (n >= 2)


def test_entry_indices_free_axis():
    rep = theorem11_entry_indices(free_class(QR), BettiSequence.polynomial(1, 1), SYM, horizon=10,
                                  unbounded_rank_declared=True)
    assert rep.certificate["members"][0] == "0"


def test_entry_indices_ray_not_applicable():
    rep = theorem11_entry_indices(free_class(QR), BettiSequence.polynomial(1, 1), RationalCone(2, [(1, 0)]))
    assert rep.verdict is Verdict.NOT_APPLICABLE


def test_entry_indices_need_growth():
    rep = theorem11_entry_indices(free_class(QR), BettiSequence.constant(2), SYM)
    assert rep.verdict is Verdict.NOT_APPLICABLE


@given(st.integers(-6, 6), st.integers(1, 3), st.integers(1, 4), st.integers(0, 3))
def test_entry_threshold_predicts_membership(c, r0, extra, slope):
    m = ModuleClass("M", r0, QR.kernel([c]))
    b = BettiSequence.polynomial(r0 + extra, slope + 1)
    v = RationalCone(2, [(2, 1), (1, -1)])
    rep = theorem11_entry_indices(m, b, v, horizon=12, unbounded_rank_declared=True)
    assert rep.verdict is not Verdict.VIOLATED


# divisor lines


def quadric_line(declared, assumptions=None):
    line = QUADRIC.line_by_label("Zp")
    if assumptions is not None:
        return DivisorLine(line.base, line.direction, frozenset(declared), frozenset(assumptions), "Zp")
    return line.with_declared(declared)


def test_walk_quadric_holds():
    rep = theorem3_walk(QUADRIC.line_by_label("Zp"), QR)
    assert rep.verdict is Verdict.HOLDS
    assert rep.certificate["conclusion_set"] == ["-1", "0", "1"]
    assert rep.certificate["n1_matches_dual_identity"] is True
    assert all(r["holds"] for r in rep.certificate["relations"])


def test_walk_x2w_line_in_second_power_units():
    line = X2W.line_by_label("2Zp")
    rep = theorem3_walk(line, X2W.ring)
    assert rep.verdict is Verdict.HOLDS
    points = rep.certificate["conclusion_points"]
    assert points == ["[-2]", "[0]", "[2]"]


def test_walk_violation_cites_index():
    rep = theorem3_walk(quadric_line({-1, 0, 1, 2}), QR)
    assert rep.verdict is Verdict.VIOLATED and rep.certificate["violating_indices"] == ["2"]


def test_walk_missing_assumptions():
    rep = theorem3_walk(quadric_line({-1, 0, 1}, {"gorenstein_ideal"}), QR)
    assert rep.verdict is Verdict.NOT_APPLICABLE
    assert "rigid" in rep.certificate["missing_assumptions"]


def test_walk_first_relation_is_dual_identity():
    line = QUADRIC.line_by_label("Zp")
    one = rank_one_reflexive(QR, line.point(1), "(1)")
    minus = rank_one_reflexive(QR, line.point(-1), "(-1)")
    assert dual_class(one).same_class(minus)
    rep = theorem3_walk(line, QR, depth=1)
    r = rep.certificate["relations"][0]
    assert exact.parse_vector(r["lhs"]) == exact.add(one.realify(), minus.realify()) == (2, 0)


LINE_HYP = {"gorenstein_ideal", "height_one", "locally_free_punctured", "dim_ge_3", "non_principal"}


def test_line_constraints_examples():
    assert line_constraints_check(quadric_line({-1, 0, 1, 2, 3}, LINE_HYP)).verdict is Verdict.HOLDS
    rep = line_constraints_check(quadric_line({0, 3}, LINE_HYP))
    assert rep.verdict is Verdict.VIOLATED and rep.certificate["violations"][0]["index"] == "1"
    rep = line_constraints_check(quadric_line({-2, 0, 2}, LINE_HYP))
    assert rep.verdict is Verdict.VIOLATED
    assert any(v["part"] == "2" for v in rep.certificate["violations"])


def test_line_constraints_principal_direction_exempt():
    hyp = (LINE_HYP - {"non_principal"}) | {"principal"}
    assert line_constraints_check(quadric_line({-2, -1, 0, 1, 2}, hyp)).verdict is Verdict.HOLDS


def test_line_constraints_not_applicable_without_hypotheses():
    assert line_constraints_check(quadric_line({0}, {"rigid"})).verdict is Verdict.NOT_APPLICABLE


def test_unknown_line_assumption_rejected():
    with pytest.raises(InputError):
        quadric_line({0}, {"smooth"})


@given(st.sets(st.integers(-5, 5), max_size=8))
def test_line_violations_replay(declared):
    rep = line_constraints_check(quadric_line(declared | {0}, LINE_HYP))
    for v in rep.certificate.get("violations", []):
        if v["part"] == "1":
            i = int(v["index"])
            assert i not in declared and any(n * i > 0 and abs(n) > abs(i) for n in declared)
        else:
            assert {2, -2} <= declared
    if rep.verdict is Verdict.HOLDS:
        for n in declared:
            assert all(k in declared | {0} for k in range(min(0, n), max(0, n) + 1))


# chi half-space


def test_chi_probe_excluded_with_finiteness():
    chi = QUADRIC.chi_by_label("L")
    rep = chi_halfspace_report(chi.values, QUADRIC.mcm_classes(1), chi.probe, zeta=QR.zeta)
    assert rep.verdict is Verdict.HOLDS
    c = rep.certificate
    assert c["status"] == "probe excluded" and c["chi_probe"] == "-1"
    assert any("finitely many rank-one" in s for s in c["conclusion"])


def test_chi_zero_functional_and_positive_probe():
    rep = chi_halfspace_report((0, 0), QUADRIC.mcm_classes(1), T)
    assert rep.certificate["status"].startswith("no conclusion")
    rep = chi_halfspace_report((2, 1), QUADRIC.mcm_classes(1), T)
    assert rep.certificate["status"].startswith("no conclusion")


def test_chi_negative_class_is_reported():
    rep = chi_halfspace_report((0, 1), [cls("p*", 1, -1)], T)
    assert rep.verdict is Verdict.VIOLATED
    assert rep.certificate["negative_classes"] == [{"class": "p*", "chi": "-1"}]


def test_chi_dimension_checked():
    with pytest.raises(InputError):
        chi_halfspace_report((1, 0, 0), [free_class(QR)], T)
