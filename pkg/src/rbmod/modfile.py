"""Module description files and lattice literals.

A module file describes an O-submodule M and, optionally, a k[t^-1]-submodule N::

    # comment
    ambient = 3
    field = 0                 # optional: 0 for Q, or a prime p
    regular:
      a_span = [1, 0, 0]      # A-span generators (the divisible part)
      gens = [0, 1, t; 0, 0, 1]
    singular:
      a_span = []
      gens = [0, t^-1, 0]     # k[t^-1]-span generators

Vector lists use the matrix grammar: vectors separated by ``;`` and entries by
``,``.  A bracketed list may continue over several lines.  A lattice literal
is a one-line form ``lattice n=2 gens=[t, 0; 0, 1]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .errors import ModuleFileError, ScalarSyntaxError
from .fields import QQ, CoefficientField, field_of_characteristic
from .grammar import parse_rows
from .lattice import Lattice, lattice_from_generators
from .linalg import VectorA
from .rsdmod import GeneralSubmodule, RSDecomposition, SingularModule, build_rsd, build_singular, build_submodule


@dataclass
class SectionSpec:
    a_span: list = dc_field(default_factory=list)
    gens: list = dc_field(default_factory=list)


@dataclass
class ModuleSpec:
    """Parsed but unvalidated contents of a module file."""

    ambient: int
    field: CoefficientField = QQ
    regular: SectionSpec = dc_field(default_factory=SectionSpec)
    singular: SectionSpec | None = None
    source: str | None = None

    def submodule(self) -> GeneralSubmodule:
        return build_submodule(self.ambient, self.regular.a_span, self.regular.gens, self.field)

    def singular_module(self) -> SingularModule | None:
        if self.singular is None:
            return None
        return build_singular(self.ambient, self.singular.a_span, self.singular.gens, self.field)

    def rsd(self) -> RSDecomposition:
        N = self.singular_module()
        if N is None:
            raise ModuleFileError("file has no 'singular:' section", source=self.source)
        return build_rsd(self.submodule(), N)


_KEY = re.compile(r"^([A-Za-z_]+)\s*=\s*(.*)$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _logical_lines(text: str, source: str | None = None):
    """(line number, content) with bracketed lists joined across lines."""
    pending, start = None, 0
    for no, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if pending is not None:
            pending += " " + line
            if pending.count("[") <= pending.count("]"):
                yield start, pending
                pending = None
            continue
        if not line:
            continue
        if line.count("[") > line.count("]"):
            pending, start = line, no
            continue
        yield no, line
    if pending is not None:
        raise ModuleFileError("unterminated '['", line=start, source=source)


def _vector_list(value: str, n: int, field: CoefficientField, lineno: int, source) -> list[list]:
    value = value.strip()
    if not (value.startswith("[") and value.endswith("]")):
        raise ModuleFileError("expected a bracketed vector list", line=lineno, source=source)
    inner = value[1:-1]
    try:
        rows = parse_rows(inner, field)
    except ScalarSyntaxError as exc:
        # report the column within the physical text after '['
        pos = None if exc.position is None else exc.position + 1
        raise ModuleFileError(exc.message, pos, source, lineno) from None
    for r in rows:
        if len(r) != n:
            raise ModuleFileError(f"vector of length {len(r)} in ambient dimension {n}", line=lineno, source=source)
    return rows


def parse_module_text(text: str, source: str | None = None) -> ModuleSpec:
    ambient = None
    field = QQ
    sections: dict[str, SectionSpec] = {}
    current = None
    raw_entries = []  # (section, key, value, lineno) parsed once ambient/field are known
    for no, line in _logical_lines(text, source):
        if line.endswith(":") and _KEY.match(line) is None:
            name = line[:-1].strip()
            if name not in ("regular", "singular"):
                raise ModuleFileError(f"unknown section {name!r}", line=no, source=source)
            if name in sections:
                raise ModuleFileError(f"duplicate section {name!r}", line=no, source=source)
            sections[name] = SectionSpec()
            current = name
            continue
        m = _KEY.match(line)
        if m is None:
            raise ModuleFileError(f"cannot parse {line!r}", line=no, source=source)
        key, value = m.group(1), m.group(2)
        if current is None:
            if key == "ambient":
                try:
                    ambient = int(value)
                except ValueError:
                    raise ModuleFileError(f"ambient must be an integer, got {value!r}", line=no,
                                          source=source) from None
                if ambient < 0:
                    raise ModuleFileError("ambient must be non-negative", line=no, source=source)
            elif key == "field":
                try:
                    field = field_of_characteristic(int(value))
                except ValueError as exc:
                    raise ModuleFileError(f"bad field {value!r}: {exc}", line=no, source=source) from None
            else:
                raise ModuleFileError(f"unknown header key {key!r}", line=no, source=source)
        else:
            if key not in ("a_span", "gens"):
                raise ModuleFileError(f"unknown key {key!r} in section {current!r}", line=no, source=source)
            raw_entries.append((current, key, value, no))
    if ambient is None:
        raise ModuleFileError("missing 'ambient = n' header", source=source)
    if "regular" not in sections:
        raise ModuleFileError("missing 'regular:' section", source=source)
    for sec, key, value, no in raw_entries:
        setattr(sections[sec], key, _vector_list(value, ambient, field, no, source))
    return ModuleSpec(ambient, field, sections["regular"], sections.get("singular"), source)


def read_module_file(path: str | Path) -> ModuleSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ModuleFileError(f"cannot read file: {exc.strerror}", source=str(path)) from None
    return parse_module_text(text, str(path))


def _format_list(vectors) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in v) for v in vectors) + "]"


def dump_module(ambient: int, field: CoefficientField, regular: tuple[list, list],
                singular: tuple[list, list] | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"ambient = {ambient}")
    if field.characteristic:
        lines.append(f"field = {field.characteristic}")
    lines.append("regular:")
    lines.append(f"  a_span = {_format_list(regular[0])}")
    lines.append(f"  gens = {_format_list(regular[1])}")
    if singular is not None:
        lines.append("singular:")
        lines.append(f"  a_span = {_format_list(singular[0])}")
        lines.append(f"  gens = {_format_list(singular[1])}")
    return "\n".join(lines) + "\n"


def dump_rsd(rsd: RSDecomposition, comment: str | None = None) -> str:
    """Canonical components: M~, O-basis of M ∩ V0, N~, k[t^-1]-basis of N ∩ V0."""
    return dump_module(rsd.ambient_dim, rsd.field,
                       (rsd.divisible_regular, rsd.regular_free.columns),
                       (rsd.divisible_singular, rsd.singular_free), comment)


def dump_submodule(M: GeneralSubmodule, comment: str | None = None) -> str:
    return dump_module(M.ambient_dim, M.field, (M.divisible, M.free_part.columns), None, comment)


_LATTICE = re.compile(r"^\s*lattice\s+n\s*=\s*(\d+)\s+gens\s*=\s*(\[.*\])\s*$")


def parse_lattice_literal(text: str, field: CoefficientField = QQ) -> Lattice:
    m = _LATTICE.match(text)
    if m is None:
        raise ModuleFileError("expected 'lattice n=<n> gens=[...]'")
    n = int(m.group(1))
    gens = _vector_list(m.group(2), n, field, 1, None)
    return lattice_from_generators(n, [VectorA(g, field) for g in gens], field)


def format_lattice_literal(L: Lattice) -> str:
    return f"lattice n={L.ambient_dim} gens={_format_list(L.columns)}"
