"""Readers for ``.sft`` and ``.dsys`` text files.

``.sft``::

    sft matrix            sft edges
    2                     states: a b
    1 1                   a b
    1 0                   b a
    states: a b           perm: 1 0
    perm: 1 0

``.dsys``::

    p 2
    e 1
    vertex x^2+x+1
    edge y+x^2

``#`` starts a comment in both.  Errors carry 1-based line numbers.
"""

from __future__ import annotations

import math

from . import ff
from .bridge import DifferenceSystem
from .errors import (
    InputSyntaxError,
    NotPrime,
    ParseError,
    ScanLimitExceeded,
    SemanticError,
    SymdynError,
)
from .sft import MultiGraph, Sft, edge_to_vertex, from_edges, from_matrix


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise InputSyntaxError(f"expected an integer for {what}, got {tok!r}", no) from None


def detect_kind(text: str) -> str:
    """'sft' or 'dsys', from the first meaningful line."""
    for _, line in _lines(text):
        return "sft" if line.split()[0].lower() == "sft" else "dsys"
    raise InputSyntaxError("empty input", 1)


def parse_sft_file(text: str):
    """Parse ``.sft`` text into (Sft, permutation or None)."""
    lines = list(_lines(text))
    if not lines:
        raise InputSyntaxError("empty input", 1)
    no, header = lines[0]
    words = header.split()
    if len(words) != 2 or words[0] != "sft" or words[1] not in ("matrix", "edges"):
        raise InputSyntaxError("first line must be 'sft matrix' or 'sft edges'", no)
    states = perm = None
    body = []
    for no, line in lines[1:]:
        key = line.split(":", 1)[0].strip() if ":" in line else None
        if key in ("states", "perm"):
            value = line.split(":", 1)[1].split()
            if key == "states":
                if states is not None:
                    raise InputSyntaxError("duplicate 'states:' line", no)
                states = (value, no)
            else:
                if perm is not None:
                    raise InputSyntaxError("duplicate 'perm:' line", no)
                perm = ([_int(v, no, "perm entry") for v in value], no)
        elif ":" in line:
            raise InputSyntaxError(f"unknown key {key!r}", no)
        else:
            body.append((no, line))

    try:
        if words[1] == "matrix":
            x = _matrix_body(body, states, lines[0][0])
        else:
            x = _edges_body(body, states, lines[0][0])
    except ParseError:
        raise
    except SymdynError as err:
        line = states[1] if states is not None else lines[0][0]
        raise SemanticError(f"{type(err).__name__}: {err}", line) from None

    if perm is not None:
        values, pno = perm
        if len(values) != x.n:
            raise SemanticError(f"perm has {len(values)} entries for {x.n} states", pno)
        return x, tuple(values)
    return x, None


def _matrix_body(body, states, header_no) -> Sft:
    if not body:
        raise InputSyntaxError("missing matrix size", header_no + 1)
    no, size_line = body[0]
    parts = size_line.split()
    if len(parts) != 1:
        raise InputSyntaxError("expected the matrix size on its own line", no)
    n = _int(parts[0], no, "matrix size")
    if n < 0:
        raise InputSyntaxError("matrix size must be nonnegative", no)
    rows = body[1:]
    if len(rows) != n:
        last = rows[-1][0] if rows else no
        raise InputSyntaxError(f"expected {n} matrix rows, found {len(rows)}", last)
    matrix = []
    for rno, line in rows:
        row = [_int(tok, rno, "matrix entry") for tok in line.split()]
        if len(row) != n:
            raise InputSyntaxError(f"row has {len(row)} entries, expected {n}", rno)
        for v in row:
            if v not in (0, 1):
                raise InputSyntaxError(f"entry {v} is not 0 or 1", rno)
        matrix.append(row)
    if states is None:
        labels = [str(i) for i in range(n)]
    else:
        labels, sno = states
        if len(labels) != n:
            raise SemanticError(f"{len(labels)} state labels for {n} states", sno)
    return from_matrix(labels, matrix)


def _edges_body(body, states, header_no) -> Sft:
    if states is None:
        raise SemanticError("'sft edges' needs a 'states:' line", header_no)
    labels, sno = states
    if len(set(labels)) != len(labels):
        raise SemanticError("duplicate state labels", sno)
    index = {s: i for i, s in enumerate(labels)}
    edges = []
    for no, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise InputSyntaxError("edge lines must be 'src dst'", no)
        for s in parts:
            if s not in index:
                raise SemanticError(f"unknown state {s!r}", no)
        edges.append((index[parts[0]], index[parts[1]]))
    if len(set(edges)) != len(edges):
        return edge_to_vertex(MultiGraph(tuple(labels), tuple((a, b, None) for a, b in edges)))
    return from_edges(labels, edges)


_DSYS_KEYS = ("p", "e", "modulus", "vertex", "edge")


def parse_dsys_file(text: str, scan_limit: int | None = None) -> DifferenceSystem:
    seen = {}
    edges = []
    for no, line in _lines(text):
        parts = line.split(None, 1)
        key = parts[0]
        if key not in _DSYS_KEYS:
            raise InputSyntaxError(f"unknown keyword {key!r}", no)
        if len(parts) < 2:
            raise InputSyntaxError(f"'{key}' needs a value", no)
        if key == "edge":
            edges.append((no, parts[1]))
        elif key in seen:
            raise InputSyntaxError(f"duplicate '{key}' line", no)
        else:
            seen[key] = (no, parts[1].strip())
    if "p" not in seen:
        raise SemanticError("missing 'p' line")
    if "vertex" not in seen:
        raise SemanticError("missing 'vertex' line")
    if not edges:
        raise SemanticError("at least one 'edge' line is required")

    pno, ptext = seen["p"]
    p = _int(ptext, pno, "p")
    eno, etext = seen.get("e", (pno, "1"))
    e = _int(etext, eno, "e")
    if e < 1:
        raise SemanticError("e must be at least 1", eno)
    limit = ff.DEFAULT_SCAN_LIMIT if scan_limit is None else scan_limit
    # size check before primality: trial division of a huge p would hang
    if p >= 2 and e * math.log(p) > math.log(max(limit, 1)) + 1e-9:
        raise ScanLimitExceeded(f"field of size {p}^{e} exceeds scan limit {limit}")
    if not ff.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if "modulus" in seen:
        mno, mtext = seen["modulus"]
        coeffs = _wrap_poly(lambda: ff.parse_int_poly(mtext, p, "t"), mno)
        if len(coeffs) - 1 != e:
            raise SemanticError(f"modulus has degree {len(coeffs) - 1}, expected {e}", mno)
        try:
            ctx = ff.field_with_modulus(p, coeffs)
        except SymdynError as err:
            raise SemanticError(str(err), mno) from None
    else:
        ctx = ff.build_field(p, e, scan_limit)

    vno, vtext = seen["vertex"]
    g = _wrap_poly(lambda: ff.parse_poly(vtext, ctx), vno)
    if g.degree < 1:
        raise SemanticError("vertex polynomial must be nonconstant", vno)
    constraints = tuple(_wrap_poly(lambda t=t: ff.parse_bipoly(t, ctx), no) for no, t in edges)
    return DifferenceSystem(ctx, g, constraints)


def _wrap_poly(thunk, no):
    try:
        return thunk()
    except InputSyntaxError as err:
        raise InputSyntaxError(err.message, no) from None


def load(text: str, scan_limit: int | None = None):
    """Parse either format: ('sft', (Sft, perm)) or ('dsys', DifferenceSystem)."""
    kind = detect_kind(text)
    if kind == "sft":
        return kind, parse_sft_file(text)
    return kind, parse_dsys_file(text, scan_limit)


def format_sft(x: Sft, perm=None) -> str:
    lines = ["sft matrix", str(x.n)]
    lines += [" ".join(map(str, row)) for row in x.transition]
    if x.n:
        lines.append("states: " + " ".join(x.states))
    if perm is not None:
        lines.append("perm: " + " ".join(map(str, perm)))
    return "\n".join(lines) + "\n"
