"""Ring descriptors and class data with citations, stored as versioned JSON files.

The files live in the package's ``data`` directory; set ``CONELAB_DATA`` to
read them from somewhere else.  Facts about the rings (class groups, which
points are MCM, Betti numbers) are declared here and never recomputed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from conelab.classes import BettiSequence, ModuleClass, RingDescriptor
from conelab.errors import InputError
from conelab.lattice import GroupElement, IntegerMatrix, PresentedQuotient, quotient_from_relations
from conelab.serialize import (FORMAT_TAG, Document, betti_data, class_data, dumps, element_data, int_list,
                               line_data, matrix_data, read_betti, read_class, read_element,
                               read_line, read_ring, reader, ring_data, vector_data)
from conelab.theorems import DivisorLine

DATA_ENV = "CONELAB_DATA"


@dataclass(frozen=True)
class PresentationRecord:
    """h(R) as the cokernel of integer relations on named generators."""

    generators: tuple[str, ...]
    relations: tuple[tuple[int, ...], ...]
    citation: str

    def quotient(self) -> PresentedQuotient:
        m = IntegerMatrix.from_rows(self.relations, len(self.generators))
        # generator names do not survive normalization, so the quotient basis stays unlabelled
        return quotient_from_relations(len(self.generators), m)


@dataclass(frozen=True)
class BettiRecord:
    label: str
    sequence: BettiSequence
    citation: str


@dataclass(frozen=True)
class ChiRecord:
    """Declared values of chi(L, -) on the basis [R], Phi_1, ..., Phi_zeta."""

    label: str
    values: tuple[Fraction, ...]
    probe: GroupElement | None
    citation: str


@dataclass(frozen=True)
class PushforwardRecord:
    label: str
    matrix: tuple[tuple[Fraction, ...], ...]
    injective_extension: bool
    citation: str


@dataclass(frozen=True)
class Fact:
    statement: str
    citation: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    version: str
    description: str
    ring: RingDescriptor | None  # None for entries that only record facts
    presentation: PresentationRecord | None = None
    classes: tuple[ModuleClass, ...] = ()
    betti: tuple[BettiRecord, ...] = ()
    lines: tuple[DivisorLine, ...] = ()
    chi_functionals: tuple[ChiRecord, ...] = ()
    pushforwards: tuple[PushforwardRecord, ...] = ()
    facts: tuple[Fact, ...] = ()

    def class_by_label(self, label: str) -> ModuleClass:
        for m in self.classes:
            if m.label == label:
                return m
        raise InputError(f"{self.name}: no class labelled {label!r}; have {[m.label for m in self.classes]}")

    def betti_for(self, label: str) -> BettiSequence:
        for b in self.betti:
            if b.label == label:
                return b.sequence
        raise InputError(f"{self.name}: no Betti data for {label!r}")

    def line_by_label(self, label: str | None = None) -> DivisorLine:
        if not self.lines:
            raise InputError(f"{self.name}: no divisor lines declared")
        if label is None:
            return self.lines[0]
        for line in self.lines:
            if line.label == label:
                return line
        raise InputError(f"{self.name}: no line labelled {label!r}; have {[l.label for l in self.lines]}")

    def chi_by_label(self, label: str | None = None) -> ChiRecord:
        if not self.chi_functionals:
            raise InputError(f"{self.name}: no chi functionals declared")
        if label is None:
            return self.chi_functionals[0]
        for c in self.chi_functionals:
            if c.label == label:
                return c
        raise InputError(f"{self.name}: no chi functional labelled {label!r}")

    def mcm_classes(self, rank: int | None = None) -> list[ModuleClass]:
        return [m for m in self.classes if m.mcm_flag is True and (rank is None or m.rank == rank)]


# ---------------------------------------------------------------------------
# serialization


def entry_data(e: CatalogEntry) -> dict:
    return {
        "format": FORMAT_TAG,
        "name": e.name,
        "version": e.version,
        "description": e.description,
        "ring": None if e.ring is None else ring_data(e.ring),
        "presentation": None if e.presentation is None else {
            "generators": list(e.presentation.generators),
            "relations": [int_list(r) for r in e.presentation.relations],
            "citation": e.presentation.citation,
        },
        "classes": [class_data(m) for m in e.classes],
        "betti": [dict(label=b.label, **betti_data(b.sequence), citation=b.citation) for b in e.betti],
        "lines": [line_data(l) for l in e.lines],
        "chi_functionals": [{"label": c.label, "values": vector_data(c.values),
                             "probe": None if c.probe is None else element_data(c.probe),
                             "citation": c.citation} for c in e.chi_functionals],
        "pushforwards": [{"label": p.label, "matrix": matrix_data(p.matrix),
                          "injective_extension": p.injective_extension, "citation": p.citation}
                         for p in e.pushforwards],
        "facts": [{"statement": f.statement, "citation": f.citation} for f in e.facts],
    }


def dump_entry(e: CatalogEntry) -> str:
    return dumps(entry_data(e))


def _cited(r, what: str) -> str:
    c = r.get("citation", False)
    text = c.text() if c is not None else ""
    if not text.strip():
        raise r.fail(f"{what} has no citation")
    return text


def parse_entry(doc: Document) -> CatalogEntry:
    r = reader(doc)
    fmt = r.get("format").text()
    if fmt != FORMAT_TAG:
        raise r.fail(f"unsupported format {fmt!r}, expected {FORMAT_TAG!r}", ("format",))
    ring = None
    if r.has("ring"):
        ring_r = r.get("ring")
        ring = read_ring(ring_r)
        _cited(ring_r, "ring")
    for key in ("classes", "betti", "lines", "chi_functionals"):
        if ring is None and r.has(key) and r.get(key).items():
            raise r.fail(f"{key} need a ring descriptor", (key,))
    pres = None
    if r.has("presentation"):
        p = r.get("presentation")
        gens = tuple(x.text() for x in p.get("generators").items())
        rel = p.get("relations").int_matrix(len(gens)) if p.get("relations").items() else []
        pres = PresentationRecord(gens, tuple(tuple(x) for x in rel), _cited(p, "presentation"))
    classes = []
    for c in r.get("classes").items() if r.has("classes") else []:
        _cited(c, "class")
        classes.append(read_class(c, ring))
    labels = {m.label for m in classes}
    if len(labels) != len(classes):
        raise r.fail("class labels must be unique", ("classes",))
    betti = []
    for b in r.get("betti").items() if r.has("betti") else []:
        label = b.get("label").text()
        if label not in labels:
            raise b.fail(f"Betti data for unknown class {label!r}")
        betti.append(BettiRecord(label, read_betti(b), _cited(b, "Betti datum")))
    lines = []
    for l in r.get("lines").items() if r.has("lines") else []:
        _cited(l, "line")
        lines.append(read_line(l, ring))
    chis = []
    for c in r.get("chi_functionals").items() if r.has("chi_functionals") else []:
        values = c.get("values").vector()
        if len(values) != ring.dimension:  # ring is present, checked above
            raise c.fail(f"chi functional has {len(values)} values, h(R)_R has dimension {ring.dimension}")
        probe = read_element(c.get("probe"), ring.kernel_group) if c.has("probe") else None
        chis.append(ChiRecord(c.get("label").text(), values, probe, _cited(c, "chi functional")))
    pushes = []
    for p in r.get("pushforwards").items() if r.has("pushforwards") else []:
        pushes.append(PushforwardRecord(p.get("label").text(), tuple(p.get("matrix").rational_matrix()),
                                        p.get("injective_extension").boolean(), _cited(p, "pushforward")))
    facts = [Fact(f.get("statement").text(), _cited(f, "fact"))
             for f in (r.get("facts").items() if r.has("facts") else [])]
    return CatalogEntry(r.get("name").text(), r.get("version").text(),
                        r.get("description").text() if r.has("description") else "",
                        ring, pres, tuple(classes), tuple(betti), tuple(lines), tuple(chis),
                        tuple(pushes), tuple(facts))


# ---------------------------------------------------------------------------
# lookup


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("conelab") / "data"))


def available_entries() -> list[str]:
    d = data_dir()
    if not d.is_dir():
        return []
    return sorted(p.stem for p in d.glob("*.json"))


def entry_path(name: str) -> Path:
    return data_dir() / f"{name}.json"


def load_entry(name: str) -> CatalogEntry:
    """Load a catalog entry by name, or from a file path."""
    if name.endswith(".json") or os.sep in name:
        return parse_entry(Document.from_path(name))
    names = available_entries()
    if name not in names:
        raise InputError(f"unknown catalog entry {name!r}; available: {', '.join(names) or '(none)'}")
    return parse_entry(Document.from_path(str(entry_path(name))))
