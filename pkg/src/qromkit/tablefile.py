"""Text format for lookup tables.

First non-comment line is ``N b``; each of the next N lines holds one entry,
decimal or hexadecimal with an ``0x`` prefix, below 2^b. ``#`` starts a
comment.
"""
from __future__ import annotations

from .gatefile import ParseError
from .qrom import LookupTable

__all__ = ["parse_table_text", "load_table_file", "format_table"]


def parse_table_text(text: str) -> LookupTable:
    header: tuple[int, int] | None = None
    entries: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(lineno, "expected header: <N> <b>")
            try:
                n, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"bad header {line!r}") from None
            if n < 1 or b < 1:
                raise ParseError(lineno, "N and b must be positive")
            header = (n, b)
            continue
        if len(entries) >= header[0]:
            raise ParseError(lineno, f"more than N = {header[0]} data lines")
        try:
            value = int(line, 0)
        except ValueError:
            raise ParseError(lineno, f"bad entry {line!r}") from None
        if not 0 <= value < 1 << header[1]:
            raise ParseError(lineno, f"entry {value} does not fit in {header[1]} bits")
        entries.append(value)

    if header is None:
        raise ParseError(1, "missing header line")
    if len(entries) != header[0]:
        raise ParseError(
            len(text.splitlines()) or 1,
            f"expected {header[0]} data lines, found {len(entries)}",
        )
    return LookupTable(tuple(entries), header[1])


def load_table_file(path: str) -> LookupTable:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_table_text(handle.read())


def format_table(table: LookupTable) -> str:
    lines = [f"{table.n_entries} {table.bit_width}"]
    lines.extend(str(value) for value in table.entries)
    return "\n".join(lines) + "\n"
