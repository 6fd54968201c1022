"""Aldebaran (.aut) text format and Graphviz DOT output."""

from __future__ import annotations

import re

from .core import Lts, ModelError


class AutFormatError(ModelError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_aut(lts: Lts) -> str:
    lines = [f"des (0, {lts.num_transitions}, {lts.num_states})"]
    lines.extend(f"({s}, {_quote(l)}, {d})" for s, l, d in lts.triples())
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"^\s*des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_EDGE = re.compile(r'^\s*\(\s*(\d+)\s*,\s*(?:"((?:[^"\\]|\\.)*)"|([^,"]*?))\s*,\s*(\d+)\s*\)\s*$')


def import_aut(text: str) -> Lts:
    """Parse AUT text; the initial state must be 0."""
    rows = [(k + 1, l) for k, l in enumerate(text.splitlines()) if l.strip()]
    if not rows:
        raise AutFormatError(1, "missing 'des' header")
    m = _HEADER.match(rows[0][1])
    if not m:
        raise AutFormatError(rows[0][0], "malformed 'des' header")
    init, ntrans, nstates = map(int, m.groups())
    if init != 0:
        raise AutFormatError(rows[0][0], "initial state must be 0")
    triples = []
    for lineno, line in rows[1:]:
        e = _EDGE.match(line)
        if not e:
            raise AutFormatError(lineno, "malformed transition")
        s, d = int(e[1]), int(e[4])
        label = re.sub(r"\\(.)", r"\1", e[2]) if e[2] is not None else e[3]
        if not (0 <= s < nstates and 0 <= d < nstates):
            raise AutFormatError(lineno, f"state out of range 0..{nstates - 1}")
        triples.append((s, label, d))
    if len(triples) != ntrans:
        raise AutFormatError(rows[0][0], f"header announces {ntrans} transitions, found {len(triples)}")
    return Lts.from_triples(nstates, triples)


def export_dot(lts: Lts, name: str = "lts") -> str:
    lines = [f"digraph {_quote(name)} {{", "  node [shape=circle];", "  0 [style=bold];"]
    lines.extend(f"  {s};" for s in range(1, lts.num_states))
    lines.extend(f"  {s} -> {d} [label={_quote(l)}];" for s, l, d in lts.triples())
    lines.append("}")
    return "\n".join(lines) + "\n"
