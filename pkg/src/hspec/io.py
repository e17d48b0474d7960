"""Text formats for tensors and hypergraphs.

Tensor files:      header ``tensor <k> <n>``, then one orbit per line,
                   ``<i1> ... <ik> <value>`` with 1-based sorted indices.
Hypergraph files:  header ``hypergraph <k> <n>``, then one edge per line,
                   ``<v1> ... <vk>`` with 1-based distinct vertices.

``#`` starts a comment anywhere on a line; values parse as decimals or
rationals ``p/q``.  Serialization writes full-precision reprs so that a
parse -> format -> parse round trip is exact.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .hypergraph import Hypergraph, build_hypergraph
from .tensor import SymmetricTensor, build_tensor


def _clean_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_value(token: str, lineno: int) -> float:
    try:
        if "/" in token:
            return float(Fraction(token))
        return float(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"line {lineno}: bad value {token!r}") from exc


def _parse_header(line: str, lineno: int, kind: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 3 or parts[0] != kind:
        raise ParseError(f"line {lineno}: expected header '{kind} <k> <n>', got {line!r}")
    try:
        k, n = int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ParseError(f"line {lineno}: non-integer header fields in {line!r}") from exc
    return k, n


def parse_tensor(text: str) -> SymmetricTensor:
    lines = list(_clean_lines(text))
    if not lines:
        raise ParseError("empty tensor file")
    lineno, header = lines[0]
    k, n = _parse_header(header, lineno, "tensor")
    entries = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != k + 1:
            raise ParseError(
                f"line {lineno}: expected {k} indices and a value, got {line!r}"
            )
        try:
            idx = tuple(int(p) for p in parts[:k])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer index in {line!r}") from exc
        entries.append((idx, _parse_value(parts[k], lineno)))
    try:
        return build_tensor(k, n, entries)
    except Exception as exc:
        raise ParseError(f"invalid tensor data: {exc}") from exc


def parse_hypergraph(text: str) -> Hypergraph:
    lines = list(_clean_lines(text))
    if not lines:
        raise ParseError("empty hypergraph file")
    lineno, header = lines[0]
    k, n = _parse_header(header, lineno, "hypergraph")
    edges = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != k:
            raise ParseError(f"line {lineno}: expected {k} vertices, got {line!r}")
        try:
            edges.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer vertex in {line!r}") from exc
    try:
        return build_hypergraph(k, n, edges)
    except Exception as exc:
        raise ParseError(f"invalid hypergraph data: {exc}") from exc


def load_instance(path: str | Path) -> SymmetricTensor | Hypergraph:
    """Parse a file as a tensor or hypergraph based on its header."""
    text = Path(path).read_text()
    for _, line in _clean_lines(text):
        head = line.split()[0]
        if head == "tensor":
            return parse_tensor(text)
        if head == "hypergraph":
            return parse_hypergraph(text)
        raise ParseError(f"{path}: unknown header {head!r}")
    raise ParseError(f"{path}: empty file")


def format_tensor(T: SymmetricTensor) -> str:
    lines = [f"tensor {T.order} {T.dim}"]
    for idx in sorted(T.orbits):
        lines.append(" ".join(str(i) for i in idx) + f" {T.orbits[idx]!r}")
    return "\n".join(lines) + "\n"


def format_hypergraph(G: Hypergraph) -> str:
    lines = [f"hypergraph {G.k} {G.n}"]
    for e in G.sorted_edges:
        lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"
