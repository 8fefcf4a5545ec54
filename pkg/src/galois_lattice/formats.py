"""File formats: context parsers and lattice writers.

Three input formats are understood, all plain text:

* ``cxt`` -- the Burmeister cross-table: a ``B`` header, an optional title
  line, object and attribute counts, the two name lists, then one row of
  ``X``/``.`` cells per object.
* ``fimi`` -- transaction lists as used by itemset-mining benchmarks: one
  whitespace-separated list of decimal item ids per line.
* ``csv`` -- a spreadsheet cross-table: header row of attribute names,
  first column of object names, incidence cells.

Parsers fail with :class:`ParseError` naming the offending line.  Writers
are deterministic: the same lattice always serializes to the same bytes
(no timestamps, fixed orderings), so outputs are directly comparable and
golden-testable.  Output is UTF-8 with LF line endings.
"""
from __future__ import annotations

import csv as _csv
import json
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .builders import ConceptLattice
from .context import Context

__all__ = [
    "ParseError", "ContextFormat", "parse_context", "parse_cxt",
    "parse_fimi", "parse_csv", "write_context", "LatticeDocument",
    "lattice_document", "write_lattice", "join_names",
]


class ParseError(ValueError):
    """Malformed input; ``line`` is the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ContextFormat(Enum):
    """Input format selector."""

    CROSS_TABLE = "cxt"
    FIMI = "fimi"
    CSV = "csv"


def _as_format(fmt) -> ContextFormat:
    if isinstance(fmt, ContextFormat):
        return fmt
    try:
        return ContextFormat(str(fmt))
    except ValueError:
        raise ValueError(f"unknown context format {fmt!r} (expected one of "
                         f"{[f.value for f in ContextFormat]})") from None


def parse_context(text: str, fmt) -> Context:
    """Parse ``text`` in the given format (enum or its string value)."""
    fmt = _as_format(fmt)
    if fmt is ContextFormat.CROSS_TABLE:
        return parse_cxt(text)
    if fmt is ContextFormat.FIMI:
        return parse_fimi(text)
    return parse_csv(text)


# ---------------------------------------------------------------------------
# cross-table (Burmeister)
# ---------------------------------------------------------------------------

def _split_lines(text: str) -> List[str]:
    lines = text.split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    return [ln.rstrip("\r") for ln in lines]


def _parse_cxt_at(lines: List[str], start: int) -> Context:
    """Parse counts/names/rows beginning at ``lines[start]`` (0-based)."""

    def need(idx: int, what: str) -> str:
        if idx >= len(lines):
            raise ParseError(len(lines) + 1, f"unexpected end of input, "
                                             f"expected {what}")
        return lines[idx]

    def integer(idx: int, what: str) -> int:
        raw = need(idx, what).strip()
        if not raw.lstrip("+").isdigit():
            raise ParseError(idx + 1, f"expected {what} (an integer), "
                                      f"got {raw!r}")
        return int(raw)

    n = integer(start, "object count")
    m = integer(start + 1, "attribute count")
    names_at = start + 2
    object_names = [need(names_at + k, f"object name {k}")
                    for k in range(n)]
    attr_names = [need(names_at + n + i, f"attribute name {i}")
                  for i in range(m)]
    rows_at = names_at + n + m
    incidence: List[List[int]] = []
    for k in range(n):
        raw = need(rows_at + k, f"incidence row {k}")
        if len(raw) != m:
            raise ParseError(rows_at + k + 1,
                             f"row has {len(raw)} cells, expected {m}")
        row = []
        for i, ch in enumerate(raw):
            if ch in "Xx":
                row.append(i)
            elif ch != ".":
                raise ParseError(rows_at + k + 1,
                                 f"bad cell {ch!r} at column {i + 1} "
                                 "(expected '.', 'X' or 'x')")
        incidence.append(row)
    tail = rows_at + n
    if tail < len(lines) and any(ln.strip() for ln in lines[tail:]):
        raise ParseError(tail + 1, "unexpected trailing content")
    return Context(n, m, incidence, object_names, attr_names)


def parse_cxt(text: str) -> Context:
    """Parse a Burmeister cross-table.

    The line after the ``B`` header is normally a title (often empty) and
    is ignored; files that omit it and start the counts right away are
    accepted too -- whichever reading validates end to end wins, title
    first.
    """
    lines = _split_lines(text)
    if not lines or lines[0].strip() != "B":
        raise ParseError(1, "expected literal 'B' header")
    try:
        return _parse_cxt_at(lines, 2)        # with title line
    except ParseError as err_with_title:
        try:
            return _parse_cxt_at(lines, 1)    # without title line
        except ParseError:
            raise err_with_title from None


def write_context(ctx: Context) -> str:
    """Serialize a context as a cross-table (inverse of :func:`parse_cxt`)."""
    out = ["B", "", str(ctx.n), str(ctx.m)]
    out.extend(ctx.object_names)
    out.extend(ctx.attr_names)
    for row in ctx.rows:
        marks = set(row)
        out.append("".join("X" if i in marks else "."
                           for i in range(ctx.m)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# FIMI transactions
# ---------------------------------------------------------------------------

def parse_fimi(text: str, num_attrs: Optional[int] = None) -> Context:
    """Parse transaction lines: whitespace-separated decimal item ids.

    Object ``k`` (the k-th line) is named ``t<k>``; attributes are named by
    their ids.  The attribute universe is ``max id + 1`` unless
    ``num_attrs`` overrides it (useful when trailing items never occur).
    An item repeated within one transaction is an error.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    incidence: List[List[int]] = []
    top = -1
    for k, raw in enumerate(lines):
        items = []
        seen = set()
        for tok in raw.split():
            if not tok.lstrip("+").isdigit():
                raise ParseError(k + 1, f"non-numeric item id {tok!r}")
            item = int(tok)
            if item in seen:
                raise ParseError(k + 1, f"duplicate item {item} "
                                        "in transaction")
            seen.add(item)
            items.append(item)
            if item > top:
                top = item
        incidence.append(items)
    m = top + 1
    if num_attrs is not None:
        if num_attrs < m:
            raise ParseError(1, f"num_attrs={num_attrs} smaller than "
                                f"largest item id {top}")
        m = num_attrs
    names = [f"t{k}" for k in range(len(incidence))]
    return Context(len(incidence), m, incidence, names,
                   [str(i) for i in range(m)])


# ---------------------------------------------------------------------------
# CSV cross-table
# ---------------------------------------------------------------------------

_CSV_TRUE = {"1", "X", "x"}
_CSV_FALSE = {"0", ""}


def parse_csv(text: str) -> Context:
    """Parse a spreadsheet cross-table.

    Header row: corner cell (ignored) then attribute names.  Every other
    row: object name then incidence cells, ``1``/``X``/``x`` meaning
    incident and ``0``/empty meaning absent.
    """
    rows = list(_csv.reader(text.splitlines()))
    if not rows:
        raise ParseError(1, "empty input, expected a header row")
    header = rows[0]
    if not header:
        raise ParseError(1, "empty header row")
    attr_names = [c.strip() for c in header[1:]]
    m = len(attr_names)
    object_names: List[str] = []
    incidence: List[List[int]] = []
    for k, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != m + 1:
            raise ParseError(k, f"row has {len(row)} cells, "
                                f"expected {m + 1}")
        object_names.append(row[0].strip())
        items = []
        for i, cell in enumerate(row[1:]):
            val = cell.strip()
            if val in _CSV_TRUE:
                items.append(i)
            elif val not in _CSV_FALSE:
                raise ParseError(k, f"bad cell {cell!r} at column {i + 2} "
                                    "(expected 1/0/X/x/empty)")
        incidence.append(items)
    return Context(len(incidence), m, incidence, object_names, attr_names)


# ---------------------------------------------------------------------------
# lattice documents and writers
# ---------------------------------------------------------------------------

def join_names(names: Sequence[str]) -> str:
    """Compact display form of a name set.

    Single-character names concatenate (``abc``); anything longer joins
    with commas; the empty set renders as ``∅``.
    """
    if not names:
        return "∅"
    if all(len(s) == 1 for s in names):
        return "".join(names)
    return ",".join(names)


class LatticeDocument:
    """A lattice resolved to names, ready for serialization.

    ``concepts`` holds one record per concept -- id, extent names, intent
    names, support; ``edges`` are (predecessor, successor) id pairs sorted
    lexicographically; ``meta`` carries context shape, the algorithm used,
    the bottom mode and optional build statistics.
    """

    __slots__ = ("concepts", "edges", "top_id", "bottom_id", "meta")

    def __init__(self, concepts: List[dict], edges: List[Tuple[int, int]],
                 top_id: Optional[int], bottom_id: Optional[int],
                 meta: Dict):
        self.concepts = concepts
        self.edges = edges
        self.top_id = top_id
        self.bottom_id = bottom_id
        self.meta = meta


def lattice_document(lat: ConceptLattice, ctx: Context,
                     algorithm: str = "condensed",
                     stats: Optional[dict] = None,
                     include_edges: bool = True) -> LatticeDocument:
    """Resolve a lattice against its context's names."""
    concepts = []
    for i in range(len(lat)):
        concepts.append({
            "id": i,
            "extent_names": [ctx.object_names[g] for g in lat.extent(i)],
            "intent_names": [ctx.attr_names[a] for a in lat.intent(i)],
            "support": lat.support(i),
        })
    edges = sorted(lat.edges) if include_edges else []
    meta = {
        "n": ctx.n,
        "m": ctx.m,
        "algorithm": algorithm,
        "bottom_mode": lat.bottom_mode,
        "stats": stats,
    }
    return LatticeDocument(concepts, edges, lat.top_id, lat.bottom_id, meta)


def _write_text(doc: LatticeDocument) -> str:
    recs = sorted(doc.concepts,
                  key=lambda r: (-r["support"], r["intent_names"]))
    lines = [f"{join_names(r['extent_names'])} | "
             f"{join_names(r['intent_names'])} | {r['support']}"
             for r in recs]
    return "\n".join(lines) + ("\n" if lines else "")


def _write_json(doc: LatticeDocument) -> str:
    payload = {
        "concepts": doc.concepts,
        "edges": [list(e) for e in doc.edges],
        "top_id": doc.top_id,
        "bottom_id": doc.bottom_id,
        "meta": doc.meta,
    }
    return json.dumps(payload, ensure_ascii=False, indent=2,
                      sort_keys=False) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _write_dot(doc: LatticeDocument) -> str:
    lines = ["digraph lattice {", "  rankdir=TB;",
             '  node [shape=box, fontname="Helvetica"];']
    for r in doc.concepts:
        label = (f"{join_names(r['extent_names'])}|"
                 f"{join_names(r['intent_names'])}")
        lines.append(f'  c{r["id"]} [label="{_dot_escape(label)}"];')
    for u, v in doc.edges:
        lines.append(f"  c{u} -> c{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_WRITERS = {"text": _write_text, "json": _write_json, "dot": _write_dot}


def write_lattice(doc: LatticeDocument, kind: str) -> str:
    """Serialize a document as ``text``, ``json`` or ``dot``.

    Text mode lists ``extent | intent | support`` one concept per line,
    sorted by descending support then intent; json and dot list concepts by
    id.  All writers are deterministic.
    """
    try:
        writer = _WRITERS[kind]
    except KeyError:
        raise ValueError(f"unknown output kind {kind!r} "
                         f"(expected one of {sorted(_WRITERS)})") from None
    return writer(doc)
