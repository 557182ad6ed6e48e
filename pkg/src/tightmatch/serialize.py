"""Text and JSON formats for coloured k-graphs.

Text format: a header line ``k n`` followed by one line per edge,
``R|B v_1 ... v_k`` with strictly ascending vertex indices.  Blank lines
and ``#`` comments are ignored.  The JSON mirror is
``{"k": ..., "n": ..., "edges": [{"v": [...], "c": "R"}]}``.

Parsers reject duplicate edges, wrong arity, repeated or out-of-range
vertices, with line-precise diagnostics.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .errors import ParseError
from .hypercore import Colour, ColouredKGraph


def to_text(H: ColouredKGraph) -> str:
    lines = [f"{H.k} {H.n}"]
    for e, c in H.edges.items():
        lines.append(c.letter + " " + " ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> ColouredKGraph:
    header = None
    edges = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: header must be 'k n'")
            try:
                k, n = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: header must be two integers") from None
            if k < 1 or n < 0:
                raise ParseError(f"line {lineno}: header values k={k} n={n} invalid")
            header = (k, n)
            continue
        k, n = header
        if parts[0] not in ("R", "B"):
            raise ParseError(f"line {lineno}: colour must be R or B, got {parts[0]!r}")
        if len(parts) != k + 1:
            raise ParseError(f"line {lineno}: expected {k} vertices, got {len(parts) - 1}")
        try:
            vs = tuple(int(p) for p in parts[1:])
        except ValueError:
            raise ParseError(f"line {lineno}: vertex indices must be integers") from None
        if len(set(vs)) != len(vs):
            raise ParseError(f"line {lineno}: duplicate vertex in edge {vs}")
        if any(v != w for v, w in zip(vs, sorted(vs))):
            raise ParseError(f"line {lineno}: vertices must be ascending in {vs}")
        if vs and (vs[0] < 0 or vs[-1] >= n):
            raise ParseError(f"line {lineno}: vertex outside [0, {n}) in {vs}")
        if vs in edges:
            raise ParseError(f"line {lineno}: duplicate edge {vs}")
        edges[vs] = Colour.from_letter(parts[0])
    if header is None:
        raise ParseError("empty input: missing 'k n' header")
    return ColouredKGraph(header[0], header[1], edges)


def to_json_obj(H: ColouredKGraph) -> dict:
    return {
        "k": H.k,
        "n": H.n,
        "edges": [{"v": list(e), "c": c.letter} for e, c in H.edges.items()],
    }


def from_json_obj(obj: dict) -> ColouredKGraph:
    try:
        k, n = int(obj["k"]), int(obj["n"])
        raw = obj["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph object: {exc}") from None
    edges = {}
    for idx, item in enumerate(raw):
        try:
            vs = tuple(int(v) for v in item["v"])
            c = Colour.from_letter(item["c"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"edge #{idx}: {exc}") from None
        if len(vs) != k:
            raise ParseError(f"edge #{idx}: expected {k} vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise ParseError(f"edge #{idx}: duplicate vertex in {vs}")
        if tuple(sorted(vs)) != vs:
            raise ParseError(f"edge #{idx}: vertices must be ascending in {vs}")
        if vs and (vs[0] < 0 or vs[-1] >= n):
            raise ParseError(f"edge #{idx}: vertex outside [0, {n}) in {vs}")
        if vs in edges:
            raise ParseError(f"edge #{idx}: duplicate edge {vs}")
        edges[vs] = c
    return ColouredKGraph(k, n, edges)


def to_json(H: ColouredKGraph) -> str:
    return json.dumps(to_json_obj(H), separators=(",", ":")) + "\n"


def parse_json(text: str) -> ColouredKGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_json_obj(obj)


def save(H: ColouredKGraph, path: Union[str, Path]) -> None:
    path = Path(path)
    text = to_json(H) if path.suffix == ".json" else to_text(H)
    path.write_text(text)


def load(path: Union[str, Path]) -> ColouredKGraph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    stripped = text.lstrip()
    if path.suffix == ".json" or stripped.startswith("{"):
        return parse_json(text)
    return parse_text(text)
