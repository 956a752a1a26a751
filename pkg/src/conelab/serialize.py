"""JSON file format shared by matrices, cones, ring descriptors, entries and reports.

Integers are written as decimal strings and rationals as ``"p/q"`` strings so
nothing passes through a binary float.  On input, JSON integers are accepted
as well; JSON floats are refused.  :func:`dumps` is canonical: loading a file
it produced and dumping again gives the same bytes.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from json.decoder import scanstring
from typing import Any, Sequence

from conelab import exact
from conelab.classes import BettiSequence, ModuleClass, RingDescriptor
from conelab.cone import RationalCone
from conelab.errors import ParseError
from conelab.lattice import GroupElement, GroupPresentation, IntegerMatrix
from conelab.theorems import DivisorLine, TheoremReport

FORMAT_TAG = "conelab/1"


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# reading with positions

_NUMBER = re.compile(r"-?(?:0|[1-9]\d*)(?:\.\d+)?(?:[eE][+-]?\d+)?")
_WS = re.compile(r"[ \t\n\r]*")


def _index_positions(text: str) -> tuple[dict[tuple, int], list[tuple]]:
    """Map each JSON value's path to the 1-based line where it starts.

    Also returns the paths of floating-point literals, which are refused.
    """
    lines: dict[tuple, int] = {}
    floats: list[tuple] = []

    def line_of(pos: int) -> int:
        return text.count("\n", 0, pos) + 1

    def skip(pos: int) -> int:
        return _WS.match(text, pos).end()

    def value(pos: int, path: tuple) -> int:
        pos = skip(pos)
        lines[path] = line_of(pos)
        ch = text[pos]
        if ch == "{":
            pos = skip(pos + 1)
            if text[pos] == "}":
                return pos + 1
            while True:
                pos = skip(pos)
                key, pos = scanstring(text, pos + 1)
                pos = skip(pos) + 1  # colon
                pos = skip(value(pos, path + (key,)))
                if text[pos] == "}":
                    return pos + 1
                pos += 1
        if ch == "[":
            pos = skip(pos + 1)
            if text[pos] == "]":
                return pos + 1
            i = 0
            while True:
                pos = skip(value(pos, path + (i,)))
                i += 1
                if text[pos] == "]":
                    return pos + 1
                pos += 1
        if ch == '"':
            return scanstring(text, pos + 1)[1]
        for lit in ("true", "false", "null"):
            if text.startswith(lit, pos):
                return pos + len(lit)
        m = _NUMBER.match(text, pos)
        if any(c in m.group() for c in ".eE"):
            floats.append(path)
        return m.end()

    value(0, ())
    return lines, floats


class Document:
    """Parsed JSON plus the line of every value, for diagnostics."""

    def __init__(self, text: str, source: str = "<input>"):
        self.source = source
        try:
            self.data = json.loads(text, parse_float=str)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, source) from None
        self._lines, floats = _index_positions(text)
        if floats:
            raise self.error(floats[0], "floating-point literals are not allowed; write rationals as \"p/q\"")

    @classmethod
    def from_path(cls, path: str) -> "Document":
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read file: {exc.strerror}", None, path) from None
        return cls(text, path)

    def line(self, path: tuple) -> int | None:
        while path and path not in self._lines:
            path = path[:-1]
        return self._lines.get(path)

    def error(self, path: tuple, message: str) -> ParseError:
        where = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in path).lstrip(".")
        return ParseError(f"{where or 'document'}: {message}", self.line(path), self.source)


class _Reader:
    """Typed access into a :class:`Document` that reports the failing path."""

    def __init__(self, doc: Document, data=None, path: tuple = ()):
        self.doc = doc
        self.data = doc.data if data is None and not path else data
        self.path = path

    def fail(self, message: str, sub: tuple = ()) -> ParseError:
        return self.doc.error(self.path + sub, message)

    def has(self, key: str) -> bool:
        return isinstance(self.data, dict) and key in self.data and self.data[key] is not None

    def get(self, key: str, required: bool = True) -> "_Reader | None":
        if not isinstance(self.data, dict):
            raise self.fail("expected an object")
        if key not in self.data or self.data[key] is None:
            if required:
                raise self.fail(f"missing key {key!r}")
            return None
        return _Reader(self.doc, self.data[key], self.path + (key,))

    def items(self) -> list["_Reader"]:
        if not isinstance(self.data, list):
            raise self.fail("expected a list")
        return [_Reader(self.doc, x, self.path + (i,)) for i, x in enumerate(self.data)]

    def text(self) -> str:
        if not isinstance(self.data, str):
            raise self.fail("expected a string")
        return self.data

    def boolean(self) -> bool:
        if not isinstance(self.data, bool):
            raise self.fail("expected true or false")
        return self.data

    def integer(self) -> int:
        try:
            return exact.as_int(self.data)
        except (ValueError, TypeError) as exc:
            raise self.fail(str(exc)) from None

    def rational(self) -> Fraction:
        try:
            return exact.as_fraction(self.data)
        except (ValueError, TypeError) as exc:
            raise self.fail(str(exc)) from None

    def int_list(self) -> list[int]:
        if isinstance(self.data, str):
            try:
                return [exact.as_int(x) for x in exact.parse_vector(self.data)]
            except (ValueError, TypeError) as exc:
                raise self.fail(str(exc)) from None
        return [r.integer() for r in self.items()]

    def vector(self) -> tuple[Fraction, ...]:
        if isinstance(self.data, str):
            try:
                return exact.parse_vector(self.data)
            except (ValueError, TypeError) as exc:
                raise self.fail(str(exc)) from None
        return tuple(r.rational() for r in self.items())

    def int_matrix(self, cols: int | None = None) -> list[list[int]]:
        rows = []
        for i, r in enumerate(self.items()):
            row = r.int_list()
            if cols is None:
                cols = len(row)
            elif len(row) != cols:
                raise r.fail(f"row {i + 1} has {len(row)} entries, expected {cols}")
            rows.append(row)
        return rows

    def rational_matrix(self, cols: int | None = None) -> list[tuple[Fraction, ...]]:
        rows = []
        for i, r in enumerate(self.items()):
            row = r.vector()
            if cols is None:
                cols = len(row)
            elif len(row) != cols:
                raise r.fail(f"row {i + 1} has {len(row)} entries, expected {cols}")
            rows.append(row)
        return rows


def reader(doc: Document) -> _Reader:
    return _Reader(doc)


# ---------------------------------------------------------------------------
# writers


def int_str(n: int) -> str:
    return str(int(n))


def int_list(xs: Sequence[int]) -> list[str]:
    return [int_str(x) for x in xs]


def vector_data(v: Sequence) -> list[str]:
    return [exact.format_rational(exact.as_fraction(x)) for x in v]


def matrix_data(m) -> list[list[str]]:
    if isinstance(m, IntegerMatrix):
        m = m.tolist()
    return [vector_data(r) for r in m]


def element_data(a: GroupElement) -> dict:
    return {"free": int_list(a.free_part), "torsion": int_list(a.torsion_part)}


def presentation_data(p: GroupPresentation) -> dict:
    return {"free_rank": int_str(p.free_rank), "torsion_orders": int_list(p.torsion_orders),
            "basis_labels": list(p.basis_labels), "summary": p.describe()}


def ring_data(ring: RingDescriptor) -> dict:
    return {
        "name": ring.name,
        "zeta": int_str(ring.zeta),
        "torsion_orders": int_list(ring.torsion_orders),
        "flags": sorted(ring.flags),
        "omega_kernel_part": None if ring.omega_kernel_part is None else element_data(ring.omega_kernel_part),
        "determinant_matrix": None if ring.determinant_matrix is None
        else [int_list(r) for r in ring.determinant_matrix],
        "basis_labels": list(ring.basis_labels),
        "citation": ring.provenance,
    }


def class_data(m: ModuleClass) -> dict:
    return {"label": m.label, "rank": int_str(m.rank), "kernel": element_data(m.kernel_part),
            "mcm": m.mcm_flag, "locally_free_codim1": m.locally_free_codim1, "citation": m.provenance}


def betti_data(b: BettiSequence) -> dict:
    return {"prefix": int_list(b.prefix), "growth": b.growth, "coefficients": int_list(b.coefficients),
            "dual": None if b.dual is None else betti_data(b.dual),
            "totally_reflexive": b.totally_reflexive}


def line_data(line: DivisorLine) -> dict:
    return {"label": line.label, "base": element_data(line.base), "direction": element_data(line.direction),
            "declared_mcm": int_list(sorted(line.declared_mcm)), "assumptions": sorted(line.assumptions),
            "citation": line.provenance}


def cone_data(c: RationalCone) -> dict:
    return {"ambient_dim": int_str(c.ambient_dim), "generators": matrix_data(c.generators)}


def _plain(x):
    """Certificates may hold Fractions, tuples or enums; make them JSON-ready."""
    if isinstance(x, Fraction):
        return exact.format_rational(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


def report_data(r: TheoremReport) -> dict:
    return {"theorem_id": r.theorem_id, "verdict": r.verdict.value, "citation": r.citation,
            "certificate": _plain(r.certificate)}


# ---------------------------------------------------------------------------
# readers


def read_element(r: _Reader, pres: GroupPresentation) -> GroupElement:
    free = r.get("free").int_list() if r.has("free") else []
    torsion = r.get("torsion").int_list() if r.has("torsion") else []
    if len(free) != pres.free_rank or len(torsion) != len(pres.torsion_orders):
        raise r.fail(f"element needs {pres.free_rank} free and {len(pres.torsion_orders)} torsion "
                     f"coordinates, got {len(free)} and {len(torsion)}")
    try:
        return pres.element(free, torsion)
    except ValueError as exc:
        raise r.fail(str(exc)) from None


def read_ring(r: _Reader) -> RingDescriptor:
    zeta = r.get("zeta").integer()
    torsion = r.get("torsion_orders").int_list() if r.has("torsion_orders") else []
    labels = [x.text() for x in r.get("basis_labels").items()] if r.has("basis_labels") else []
    try:
        pres = GroupPresentation(zeta, tuple(torsion), tuple(labels))
    except ValueError as exc:
        raise r.fail(str(exc)) from None
    omega = read_element(r.get("omega_kernel_part"), pres) if r.has("omega_kernel_part") else None
    det = r.get("determinant_matrix").int_matrix() if r.has("determinant_matrix") else None
    flags = [x.text() for x in r.get("flags").items()] if r.has("flags") else []
    try:
        return RingDescriptor(r.get("name").text(), zeta, tuple(torsion), frozenset(flags), omega,
                              None if det is None else tuple(tuple(x) for x in det),
                              r.get("citation").text() if r.has("citation") else "", tuple(labels))
    except ValueError as exc:
        raise r.fail(str(exc)) from None


def read_class(r: _Reader, ring: RingDescriptor) -> ModuleClass:
    mcm = r.get("mcm", False)
    try:
        return ModuleClass(r.get("label").text(), r.get("rank").integer(),
                           read_element(r.get("kernel"), ring.kernel_group),
                           None if mcm is None else mcm.boolean(),
                           r.get("locally_free_codim1").boolean() if r.has("locally_free_codim1") else False,
                           r.get("citation").text() if r.has("citation") else "")
    except ValueError as exc:
        raise r.fail(str(exc)) from None


def read_betti(r: _Reader) -> BettiSequence:
    try:
        return BettiSequence(
            tuple(r.get("prefix").int_list()) if r.has("prefix") else (),
            r.get("growth").text() if r.has("growth") else None,
            tuple(r.get("coefficients").int_list()) if r.has("coefficients") else (),
            read_betti(r.get("dual")) if r.has("dual") else None,
            r.get("totally_reflexive").boolean() if r.has("totally_reflexive") else False)
    except ValueError as exc:
        raise r.fail(str(exc)) from None


def read_line(r: _Reader, ring: RingDescriptor) -> DivisorLine:
    pres = ring.kernel_group
    try:
        return DivisorLine(read_element(r.get("base"), pres), read_element(r.get("direction"), pres),
                           frozenset(r.get("declared_mcm").int_list()),
                           frozenset(x.text() for x in r.get("assumptions").items()) if r.has("assumptions")
                           else frozenset(),
                           r.get("label").text() if r.has("label") else "",
                           r.get("citation").text() if r.has("citation") else "")
    except ValueError as exc:
        raise r.fail(str(exc)) from None


def read_cone(r: _Reader) -> RationalCone:
    gens = r.get("generators").rational_matrix()
    if r.has("ambient_dim"):
        dim = r.get("ambient_dim").integer()
    elif gens:
        dim = len(gens[0])
    else:
        raise r.fail("an empty generator list needs 'ambient_dim'")
    for i, g in enumerate(gens):
        if len(g) != dim:
            raise r.fail(f"generator {i + 1} has length {len(g)}, expected {dim}", ("generators", i))
    return RationalCone(dim, gens)
