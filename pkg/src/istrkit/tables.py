"""Field tables and form files.

Field table: one record per line ``label|degree|disc|c0,c1,...,cd|row;row;...``
with basis rows written as comma-separated rationals ``p`` or ``p/q``. Blank
lines and ``#`` comments are skipped. A ``# source: <tag>`` line sets the
provenance tag (paper, external or generated) for the records below it; a
record without a tag in force is malformed.

Form file: a line with the rank, then one line per row i holding the upper
triangular entries c_ii .. c_in separated by whitespace. Each entry is a
comma-separated coordinate vector in the field's basis (a plain integer over Q).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .numfield import NumberField, make_field, order_disc
from .qform import QuadraticForm, general_form

SOURCES = ("paper", "external", "generated")

_INT = re.compile(r"-?[0-9]+\Z")
_RAT = re.compile(r"-?[0-9]+(/[0-9]+)?\Z")
_LABEL = re.compile(r"[A-Za-z0-9_.:+-]+\Z")


class MalformedInput(ValueError):
    pass


@dataclass(frozen=True)
class FieldTableEntry:
    label: str
    degree: int
    disc: int
    minpoly: tuple[int, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    source: str

    def build(self) -> NumberField:
        fld = make_field(self.minpoly, self.basis, self.label)
        got = order_disc(fld)
        if got != self.disc:
            raise MalformedInput(f"{self.label}: claimed discriminant {self.disc}, order has {got}")
        return fld


@dataclass(frozen=True)
class BadEntry:
    label: str
    lineno: int
    error: str


def _int(tok: str, what: str) -> int:
    if not _INT.match(tok):
        raise MalformedInput(f"bad integer {tok!r} in {what}")
    return int(tok)


def _rat(tok: str) -> Fraction:
    if not _RAT.match(tok):
        raise MalformedInput(f"bad rational {tok!r}")
    if "/" in tok and int(tok.split("/")[1]) == 0:
        raise MalformedInput("zero denominator")
    return Fraction(tok)


def parse_field_record(line: str, source: str) -> FieldTableEntry:
    parts = line.split("|")
    if len(parts) != 5:
        raise MalformedInput(f"expected 5 fields, got {len(parts)}")
    label, deg_s, disc_s, poly_s, basis_s = parts
    if not _LABEL.match(label):
        raise MalformedInput(f"bad label {label!r}")
    deg = _int(deg_s, "degree")
    disc = _int(disc_s, "discriminant")
    poly = tuple(_int(t, "polynomial") for t in poly_s.split(","))
    if len(poly) != deg + 1:
        raise MalformedInput("polynomial length does not match the degree")
    rows = tuple(tuple(_rat(t) for t in r.split(",")) for r in basis_s.split(";"))
    if len(rows) != deg or any(len(r) != deg for r in rows):
        raise MalformedInput("basis must be a degree x degree matrix")
    if source not in SOURCES:
        raise MalformedInput(f"unknown source tag {source!r}")
    return FieldTableEntry(label, deg, disc, poly, rows, source)


def parse_field_table(text: str) -> list[FieldTableEntry | BadEntry]:
    out: list[FieldTableEntry | BadEntry] = []
    source = None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*source:\s*(\S+)\s*\Z", line)
            if m:
                source = m.group(1)
            continue
        try:
            if source is None:
                raise MalformedInput("record before any '# source:' line")
            out.append(parse_field_record(line, source))
        except MalformedInput as exc:
            out.append(BadEntry(line.split("|", 1)[0], n, str(exc)))
    return out


def read_field_table(path) -> list[FieldTableEntry | BadEntry]:
    return parse_field_table(Path(path).read_text(encoding="utf-8"))


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_field_record(e: FieldTableEntry) -> str:
    poly = ",".join(str(c) for c in e.minpoly)
    rows = ";".join(",".join(_fmt_rat(Fraction(c)) for c in r) for r in e.basis)
    return f"{e.label}|{e.degree}|{e.disc}|{poly}|{rows}"


def entry_from_field(fld: NumberField, source: str, label: str | None = None) -> FieldTableEntry:
    return FieldTableEntry(label or fld.label, fld.degree, order_disc(fld), fld.minpoly, fld.basis, source)


def bundled_cubic_table() -> list[FieldTableEntry | BadEntry]:
    return read_field_table(Path(__file__).with_name("data") / "cubic_fields.txt")


# ------------------------------------------------------------------ forms


def parse_form(text: str, fld: NumberField) -> QuadraticForm:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MalformedInput("empty form file")
    n = _int(lines[0], "rank")
    if n < 1:
        raise MalformedInput("rank must be positive")
    if len(lines) != n + 1:
        raise MalformedInput(f"expected {n} coefficient rows, got {len(lines) - 1}")
    d = fld.degree
    coeffs = [[0] * n for _ in range(n)]
    for i in range(n):
        toks = lines[i + 1].split()
        if len(toks) != n - i:
            raise MalformedInput(f"row {i + 1} needs {n - i} entries")
        for k, tok in enumerate(toks):
            vec = tuple(_int(t, "form entry") for t in tok.split(","))
            if len(vec) != d:
                raise MalformedInput(f"entry {tok!r} has {len(vec)} coordinates, field degree is {d}")
            coeffs[i][i + k] = fld.element(vec)
    for i in range(n):
        for j in range(i):
            coeffs[i][j] = fld.zero
    return general_form(fld, coeffs)


def format_form(Q: QuadraticForm) -> str:
    lines = [str(Q.rank)]
    for i in range(Q.rank):
        lines.append(" ".join(",".join(str(c) for c in Q.c(i, j).coords) for j in range(i, Q.rank)))
    return "\n".join(lines) + "\n"


def parse_coords(text: str, fld: NumberField):
    vec = tuple(_int(t.strip(), "coordinates") for t in text.split(","))
    if len(vec) != fld.degree:
        raise MalformedInput(f"expected {fld.degree} coordinates")
    return fld.element(vec)
