"""Reading and writing contexts, concept lists and reports.

Burmeister ``.cxt`` layout::

    B
    <context name, may be empty>
    <number of objects>
    <number of attributes>
    <blank line>
    <one object name per line>
    <one attribute name per line>
    <one row per object, '.' or 'X' per attribute>
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Mapping, Sequence

import numpy as np

from .context import FormalConcept, FormalContext
from .errors import CellError, DimensionError, HeaderError, InvalidArgumentError

FORMATS = ("cxt", "csv")


def parse(fmt: str, text: str, **kwargs) -> FormalContext:
    if fmt == "cxt":
        return parse_cxt(text, **kwargs)
    if fmt == "csv":
        return parse_csv(text, **kwargs)
    raise InvalidArgumentError(f"unknown context format {fmt!r}; expected one of {FORMATS}")


def serialize(ctx: FormalContext, fmt: str, **kwargs) -> str:
    if fmt == "cxt":
        return serialize_cxt(ctx)
    if fmt == "csv":
        return serialize_csv(ctx, **kwargs)
    raise InvalidArgumentError(f"unknown context format {fmt!r}; expected one of {FORMATS}")


def format_for_path(path: str) -> str:
    return "csv" if str(path).lower().endswith(".csv") else "cxt"


# ------------------------------------------------------------------ cxt


def _int_line(lines: list[str], i: int, what: str) -> int:
    if i >= len(lines):
        raise HeaderError(i + 1, f"missing {what}")
    raw = lines[i].strip()
    try:
        value = int(raw)
    except ValueError:
        raise HeaderError(i + 1, f"expected {what}, got {raw!r}") from None
    if value < 0:
        raise HeaderError(i + 1, f"{what} must be non-negative")
    return value


def parse_cxt(text: str, word_bits: int | None = None) -> FormalContext:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "B":
        raise HeaderError(1, "expected 'B' on the first line")

    # the name line is optional: "B / m / n / <blank>" is accepted too
    name = lines[1] if len(lines) > 1 else ""
    pos = 2
    if _is_int(name) and len(lines) > 3 and _is_int(lines[2]) and not lines[3].strip():
        name, pos = "", 1
    m = _int_line(lines, pos, "object count")
    n = _int_line(lines, pos + 1, "attribute count")
    pos += 2
    if pos >= len(lines) or lines[pos].strip():
        raise HeaderError(pos + 1, "expected a blank line after the dimensions")
    pos += 1

    need = m + n + m
    if len(lines) - pos < need:
        raise DimensionError(len(lines) + 1, f"expected {m} object names, {n} attribute names and {m} rows")
    objects = lines[pos : pos + m]
    attributes = lines[pos + m : pos + m + n]
    pos += m + n

    table = np.zeros((m, n), dtype=bool)
    for g in range(m):
        lineno = pos + g + 1
        row = lines[pos + g].rstrip("\r")
        if len(row) != n:
            raise DimensionError(lineno, f"row has {len(row)} cells, expected {n}")
        for a, ch in enumerate(row):
            if ch in "Xx":
                table[g, a] = True
            elif ch != ".":
                raise CellError(lineno, f"illegal cell character {ch!r} in column {a + 1}")
    for extra in range(pos + m, len(lines)):
        if lines[extra].strip():
            raise DimensionError(extra + 1, "unexpected content after the last row")
    return FormalContext(table, objects, attributes, name=name, word_bits=word_bits)


def _is_int(s: str) -> bool:
    try:
        int(s.strip())
    except ValueError:
        return False
    return True


def serialize_cxt(ctx: FormalContext) -> str:
    out = ["B", ctx.name, str(ctx.m), str(ctx.n), ""]
    out.extend(ctx.object_names)
    out.extend(ctx.attribute_names)
    for row in ctx.incidence:
        out.append("".join("X" if v else "." for v in row))
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------ csv


def parse_csv(
    text: str, header: bool = True, row_names: bool = True, word_bits: int | None = None
) -> FormalContext:
    records = list(csv.reader(io.StringIO(text)))
    while records and not any(cell.strip() for cell in records[-1]):
        records.pop()
    attributes = None
    first = 0
    if header:
        if not records:
            raise HeaderError(1, "missing header row")
        attributes = records[0][1:] if row_names else records[0]
        first = 1
    width = None if attributes is None else len(attributes)
    objects: list[str] = []
    table = []
    for i, rec in enumerate(records[first:], start=first + 1):
        if row_names:
            if not rec:
                raise DimensionError(i, "empty row")
            objects.append(rec[0])
            rec = rec[1:]
        if width is None:
            width = len(rec)
        if len(rec) != width:
            raise DimensionError(i, f"row has {len(rec)} cells, expected {width}")
        row = []
        for a, cell in enumerate(rec):
            cell = cell.strip()
            if cell not in ("0", "1"):
                raise CellError(i, f"illegal cell {cell!r} in column {a + 1}")
            row.append(cell == "1")
        table.append(row)
    width = width or 0
    arr = np.array(table, dtype=bool).reshape(len(table), width)
    return FormalContext(
        arr,
        objects if row_names else None,
        attributes,
        word_bits=word_bits,
    )


def serialize_csv(ctx: FormalContext, header: bool = True, row_names: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(([""] if row_names else []) + list(ctx.attribute_names))
    for name, row in zip(ctx.object_names, ctx.incidence):
        cells = ["1" if v else "0" for v in row]
        writer.writerow(([name] if row_names else []) + cells)
    return buf.getvalue()


# ------------------------------------------------------------ concepts


def concept_to_dict(c: FormalConcept) -> dict:
    return {"extent": c.extent.to_indices(), "intent": c.intent.to_indices()}


def concept_to_text(ctx: FormalContext, c: FormalConcept) -> str:
    ext = ",".join(ctx.object_names[g] for g in c.extent)
    intent = ",".join(ctx.attribute_names[a] for a in c.intent)
    return f"{{{ext}}} / {{{intent}}}"


def concepts_to_jsonl(concepts: Iterable[FormalConcept]) -> str:
    return "".join(json.dumps(concept_to_dict(c)) + "\n" for c in concepts)


def concepts_from_jsonl(ctx: FormalContext, text: str) -> list[FormalConcept]:
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            c = FormalConcept(ctx.obj_set(rec["extent"]), ctx.attr_set(rec["intent"]))
        except (ValueError, KeyError, TypeError) as exc:
            raise DimensionError(i, f"bad concept record: {exc}") from None
        out.append(c)
    return out


def read_extents(ctx: FormalContext, text: str) -> list:
    """Extents from JSON lines, each either an index array or a concept record."""
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            if isinstance(rec, dict):
                rec = rec["extent"]
            out.append(ctx.obj_set([int(g) for g in rec]))
        except (ValueError, KeyError, TypeError) as exc:
            raise DimensionError(i, f"bad extent record: {exc}") from None
    return out


# -------------------------------------------------------- classification


def classification_to_json(result: Mapping[FormalConcept, object]) -> dict:
    from .concept_reduction import ConceptClass

    out: dict[str, list] = {cls.value: [] for cls in ConceptClass}
    for c in sorted(result, key=lambda c: c.extent.to_int()):
        out[ConceptClass(result[c]).value].append(concept_to_dict(c))
    return out


def classification_to_tsv(ctx: FormalContext, result: Mapping[FormalConcept, object]) -> str:
    from .concept_reduction import ConceptClass

    lines = ["class\textent\tintent"]
    for c in sorted(result, key=lambda c: c.extent.to_int()):
        ext = ",".join(ctx.object_names[g] for g in c.extent)
        intent = ",".join(ctx.attribute_names[a] for a in c.intent)
        lines.append(f"{ConceptClass(result[c]).value}\t{ext}\t{intent}")
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(",", ":"))


def names_of(ctx: FormalContext, indices: Sequence[int], attributes: bool = True) -> list[str]:
    table = ctx.attribute_names if attributes else ctx.object_names
    return [table[i] for i in indices]
