"""Plain-text abstract reduction systems.

Format::

    # comment
    states: A B C
    a: A -> B
    a: B -> C
    b:            # declares b with no edges

The states line comes first.  Each further line adds one edge to the named
relation.  State names are whitespace-free tokens; relation names are
identifiers.  Reports refer to states by name, internally they are indices in
declaration order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import KatdError
from .rel import FiniteRelation, StateSet

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_EDGE = re.compile(r"^(\S+)\s*->\s*(\S+)$")


class ArsParseError(KatdError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class ArsDocument:
    states: list[str]
    relations: dict[str, list[tuple[str, str]]] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.states)

    def index(self, state: str) -> int:
        return self.states.index(state)

    def relation(self, name: str) -> FiniteRelation:
        if name not in self.relations:
            raise KeyError(f"no relation named {name!r}")
        pos = {s: k for k, s in enumerate(self.states)}
        return FiniteRelation.of(self.n, ((pos[x], pos[y]) for x, y in self.relations[name]))

    def names_of(self, states: StateSet) -> list[str]:
        return [self.states[k] for k in states]

    def edges_of(self, rel: FiniteRelation) -> list[list[str]]:
        return [[self.states[x], self.states[y]] for x, y in rel.pairs()]

    def to_text(self) -> str:
        lines = ["states: " + " ".join(self.states)]
        for name, edges in self.relations.items():
            if not edges:
                lines.append(f"{name}:")
            lines.extend(f"{name}: {x} -> {y}" for x, y in edges)
        return "\n".join(lines) + "\n"


def parse_ars(text: str) -> ArsDocument:
    doc = None
    seen_states: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        head, rest = head.strip(), rest.strip()
        if not sep:
            raise ArsParseError(lineno, f"expected 'name: src -> dst', got {line!r}")
        if head == "states":
            if doc is not None:
                raise ArsParseError(lineno, "duplicate states line")
            names = rest.split()
            if not names:
                raise ArsParseError(lineno, "states line declares no states")
            for s in names:
                if s in seen_states:
                    raise ArsParseError(lineno, f"state {s!r} declared twice")
                seen_states.add(s)
            doc = ArsDocument(names)
            continue
        if doc is None:
            raise ArsParseError(lineno, "the states line must come first")
        if not _NAME.fullmatch(head):
            raise ArsParseError(lineno, f"bad relation name {head!r}")
        edges = doc.relations.setdefault(head, [])
        if not rest:
            continue
        m = _EDGE.match(rest)
        if not m:
            raise ArsParseError(lineno, f"malformed edge {rest!r}")
        src, dst = m.groups()
        for s in (src, dst):
            if s not in seen_states:
                raise ArsParseError(lineno, f"unknown state {s!r}")
        if (src, dst) not in edges:
            edges.append((src, dst))
    if doc is None:
        raise ArsParseError(1, "missing states line")
    return doc
