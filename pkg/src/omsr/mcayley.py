"""Connection matrices over a finite group and the block digraphs they generate.

Vertices come in m blocks of |G|: vertex g_i (group element g in block i) has
index i*|G| + g, and each connection set T[i][j] contributes the arcs
(g_i, (t*g)_j) for every g in G and t in T[i][j].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .digraphs import Digraph
from .groups import FiniteGroup
from .perms import PermGroup, Permutation

__all__ = [
    "ConnectionMatrix",
    "MCayleyDigraph",
    "build",
    "connection_is_oriented",
    "valency_profile",
    "right_translation",
    "regular_action_group",
]


@dataclass(frozen=True)
class ConnectionMatrix:
    """m x m matrix of subsets of group element indices."""

    m: int
    sets: tuple[tuple[frozenset[int], ...], ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if len(self.sets) != self.m or any(len(row) != self.m for row in self.sets):
            raise ValueError(f"sets must form an {self.m}x{self.m} matrix")
        for row in self.sets:
            for cell in row:
                if any(e < 0 for e in cell):
                    raise ValueError("negative element index in connection set")

    @classmethod
    def from_entries(
        cls, m: int, entries: Mapping[tuple[int, int], Iterable[int]]
    ) -> "ConnectionMatrix":
        rows = [[frozenset() for _ in range(m)] for _ in range(m)]
        for (i, j), elems in entries.items():
            if not (0 <= i < m and 0 <= j < m):
                raise ValueError(f"cell ({i},{j}) out of range for m={m}")
            rows[i][j] = frozenset(elems)
        return cls(m, tuple(tuple(r) for r in rows))

    def entry(self, i: int, j: int) -> frozenset[int]:
        return self.sets[i][j]

    def max_element(self) -> int:
        best = -1
        for row in self.sets:
            for cell in row:
                if cell:
                    best = max(best, max(cell))
        return best

    def to_json(self) -> dict:
        cells = {}
        for i, row in enumerate(self.sets):
            for j, cell in enumerate(row):
                if cell:
                    cells[f"{i},{j}"] = sorted(cell)
        return {"m": self.m, "sets": cells}

    @classmethod
    def from_json(cls, obj: dict) -> "ConnectionMatrix":
        m = int(obj["m"])
        entries: dict[tuple[int, int], list[int]] = {}
        for key, elems in obj.get("sets", {}).items():
            i_s, j_s = key.split(",")
            entries[(int(i_s), int(j_s))] = [int(e) for e in elems]
        return cls.from_entries(m, entries)

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")


@dataclass(frozen=True)
class MCayleyDigraph:
    group: FiniteGroup
    conn: ConnectionMatrix
    graph: Digraph

    @property
    def m(self) -> int:
        return self.conn.m

    def vertex_of(self, g: int, i: int) -> int:
        return i * self.group.n + g

    def label_of(self, v: int) -> tuple[int, int]:
        """Vertex index -> (group element, block)."""
        return v % self.group.n, v // self.group.n

    def block_of(self, v: int) -> int:
        return v // self.group.n

    def dot_labels(self) -> tuple[str, ...]:
        n = self.group.n
        return tuple(f"{self.group.names[v % n]}_{v // n}" for v in range(self.graph.nv))


def _check_conn(group: FiniteGroup, conn: ConnectionMatrix) -> None:
    if conn.max_element() >= group.n:
        raise ValueError(
            f"connection set references element {conn.max_element()} "
            f"but |{group.name}| = {group.n}"
        )


def build(group: FiniteGroup, conn: ConnectionMatrix) -> MCayleyDigraph:
    """Digraph on m*|G| vertices with arcs (g_i, (t*g)_j) for t in T[i][j]."""
    _check_conn(group, conn)
    n = group.n
    mult = group.mult
    rows: list[list[int]] = [[] for _ in range(conn.m * n)]
    for i, row in enumerate(conn.sets):
        for j, cell in enumerate(row):
            if not cell:
                continue
            ts = sorted(cell)
            for g in range(n):
                base = i * n + g
                rows[base].extend(j * n + mult[t][g] for t in ts)
    return MCayleyDigraph(group, conn, Digraph(conn.m * n, rows))


def connection_is_oriented(group: FiniteGroup, conn: ConnectionMatrix) -> bool:
    """No t in T[i][j] with t^-1 in T[j][i], for every ordered pair including i=j."""
    _check_conn(group, conn)
    inv = group.inv
    for i in range(conn.m):
        for j in range(conn.m):
            back = conn.sets[j][i]
            if any(inv[t] in back for t in conn.sets[i][j]):
                return False
    return True


def valency_profile(group: FiniteGroup, conn: ConnectionMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(row sums, column sums) of connection-set sizes; out- and in-valencies."""
    _check_conn(group, conn)
    rows = tuple(sum(len(cell) for cell in row) for row in conn.sets)
    cols = tuple(sum(len(conn.sets[i][j]) for i in range(conn.m)) for j in range(conn.m))
    return rows, cols


def right_translation(gamma: MCayleyDigraph, g: int) -> Permutation:
    """The automorphism x_i -> (x*g)_i induced by right-multiplying by g."""
    n = gamma.group.n
    if not 0 <= g < n:
        raise ValueError(f"element {g} out of range for {gamma.group.name!r}")
    mult = gamma.group.mult
    images = [0] * gamma.graph.nv
    for i in range(gamma.m):
        base = i * n
        for x in range(n):
            images[base + x] = base + mult[x][g]
    return Permutation(images)


def regular_action_group(gamma: MCayleyDigraph) -> PermGroup:
    """The group of all right translations; semiregular of order |G|."""
    gens = [right_translation(gamma, g) for g in range(1, gamma.group.n)]
    return PermGroup(gamma.graph.nv, gens)
