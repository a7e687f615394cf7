"""Text formats for Ramsey and Schur witnesses.

Ramsey::

    ramsey-witness N=<int> n=<int>
    i j c            (one line per edge, 0 <= i < j < N)

Schur::

    schur-witness N=<int> n=<int>
    v b              (one line per integer 1..N)

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import re

from .errors import DomainError, FormatError
from .oracles import EdgeColoring, SchurPartition

_HEADER = re.compile(r"^(ramsey|schur)-witness\s+N=(\d+)\s+n=(\d+)$")


def _records(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _header(records):
    try:
        lineno, line = next(records)
    except StopIteration:
        raise FormatError("empty witness file") from None
    m = _HEADER.match(line)
    if not m:
        raise FormatError(f"bad header {line!r}", lineno)
    return m.group(1), int(m.group(2)), int(m.group(3))


def _ints(line, count, lineno):
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"expected {count} integers, got {line!r}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"non-integer field in {line!r}", lineno) from None


def witness_kind(text):
    return _header(_records(text))[0]


def parse_ramsey_witness(text):
    records = _records(text)
    kind, N, n = _header(records)
    if kind != "ramsey":
        raise FormatError(f"expected a ramsey-witness, got {kind}-witness", 1)
    colors = {}
    for lineno, line in records:
        i, j, c = _ints(line, 3, lineno)
        if not 0 <= i < j < N:
            raise FormatError(f"edge ({i}, {j}) is not a pair i < j < {N}", lineno)
        if not 0 <= c < n:
            raise FormatError(f"color {c} outside [0, {n})", lineno)
        if (i, j) in colors:
            raise FormatError(f"duplicate edge ({i}, {j})", lineno)
        colors[(i, j)] = c
    missing = [(i, j) for j in range(N) for i in range(j) if (i, j) not in colors]
    if missing:
        raise FormatError(f"{len(missing)} edges missing, first {missing[0]}")
    try:
        return EdgeColoring(N, n, colors)
    except DomainError as exc:
        raise FormatError(str(exc)) from None


def parse_schur_witness(text):
    records = _records(text)
    kind, N, n = _header(records)
    if kind != "schur":
        raise FormatError(f"expected a schur-witness, got {kind}-witness", 1)
    blocks = {}
    for lineno, line in records:
        v, b = _ints(line, 2, lineno)
        if not 1 <= v <= N:
            raise FormatError(f"integer {v} outside [1, {N}]", lineno)
        if not 0 <= b < n:
            raise FormatError(f"block {b} outside [0, {n})", lineno)
        if v in blocks:
            raise FormatError(f"duplicate integer {v}", lineno)
        blocks[v] = b
    missing = [v for v in range(1, N + 1) if v not in blocks]
    if missing:
        raise FormatError(f"{len(missing)} integers missing, first {missing[0]}")
    return SchurPartition(N, n, blocks)


def format_ramsey_witness(coloring):
    lines = [f"ramsey-witness N={coloring.N} n={coloring.n}"]
    lines += [f"{i} {j} {c}" for (i, j), c in sorted(coloring.colors.items())]
    return "\n".join(lines) + "\n"


def format_schur_witness(partition):
    lines = [f"schur-witness N={partition.N} n={partition.n}"]
    lines += [f"{v} {b}" for v, b in partition.blocks.items()]
    return "\n".join(lines) + "\n"
