"""Finite posets stored as up-set bitmasks, with Hasse/DOT/JSON export."""

from __future__ import annotations

from .errors import InternalConsistencyError


class Poset:
    """A relation on ``range(n)``; bit ``j`` of ``up[i]`` means ``i <= j``."""

    def __init__(self, labels, up):
        self.labels = list(labels)
        self.up = list(up)
        self.n = len(self.labels)

    @classmethod
    def from_relation(cls, labels, leq):
        labels = list(labels)
        up = []
        for i in range(len(labels)):
            mask = 0
            for j in range(len(labels)):
                if leq(i, j):
                    mask |= 1 << j
            up.append(mask)
        return cls(labels, up)

    def leq(self, i, j):
        return bool(self.up[i] >> j & 1)

    def down(self, j):
        return [i for i in range(self.n) if self.leq(i, j)]

    def check_partial_order(self):
        """Raise InternalConsistencyError unless the relation is a partial order."""
        for i in range(self.n):
            if not self.up[i] >> i & 1:
                raise InternalConsistencyError(f"not reflexive at {self.labels[i]}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.leq(i, j) and self.leq(j, i):
                    raise InternalConsistencyError(
                        f"not antisymmetric: {self.labels[i]} and {self.labels[j]}"
                    )
        for i in range(self.n):
            ui = self.up[i]
            for j in _bits(ui):
                if self.up[j] & ~ui:
                    k = next(_bits(self.up[j] & ~ui))
                    raise InternalConsistencyError(
                        f"not transitive: {self.labels[i]} <= {self.labels[j]} <= "
                        f"{self.labels[k]}"
                    )

    def maximal(self):
        return [i for i in range(self.n) if self.up[i] == 1 << i]

    def minimal(self):
        return [j for j in range(self.n) if not any(i != j and self.leq(i, j) for i in range(self.n))]

    def relations(self):
        """All pairs ``(i, j)`` with ``i <= j`` and ``i != j``."""
        return [(i, j) for i in range(self.n) for j in _bits(self.up[i]) if i != j]

    def covers(self):
        """Covering pairs ``(i, j)``: ``i < j`` with nothing strictly between."""
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            for j in _bits(strict):
                between = strict & ~(1 << j)
                if not any(self.leq(k, j) for k in _bits(between)):
                    out.append((i, j))
        return out

    def to_dot(self, name="poset", node_label=None):
        node_label = node_label or (lambda i: str(self.labels[i]))
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i in range(self.n):
            text = node_label(i).replace('"', '\\"')
            lines.append(f'  n{i} [label="{text}"];')
        for i, j in self.covers():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def parse_dot_edges(text):
    """Edge set ``{(i, j)}`` of a DOT file written by ``Poset.to_dot``."""
    import re

    if not re.search(r"digraph\s+\w+\s*\{", text) or not text.rstrip().endswith("}"):
        raise ValueError("not a digraph")
    return {(int(a), int(b)) for a, b in re.findall(r"n(\d+)\s*->\s*n(\d+)\s*;", text)}
