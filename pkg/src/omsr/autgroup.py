"""Digraph automorphism groups via equitable partition refinement and backtracking."""

from __future__ import annotations

from collections import deque
from itertools import permutations
from typing import Iterable, Sequence

from .digraphs import Digraph, is_weakly_connected
from .perms import PermGroup, Permutation, _Chain

__all__ = [
    "OrderedPartition",
    "refine",
    "is_equitable",
    "automorphism_group",
    "brute_force_automorphisms",
    "is_automorphism",
    "check_prop21_hypotheses",
]

BRUTE_FORCE_MAX = 10


class OrderedPartition:
    """Ordered list of disjoint cells covering 0..nv-1; cell order is significant."""

    __slots__ = ("cells",)

    def __init__(self, cells: Iterable[Iterable[int]]):
        self.cells: tuple[tuple[int, ...], ...] = tuple(tuple(c) for c in cells)

    @classmethod
    def unit(cls, nv: int) -> "OrderedPartition":
        return cls((tuple(range(nv)),))

    @classmethod
    def checked(cls, cells: Iterable[Iterable[int]], nv: int) -> "OrderedPartition":
        part = cls(cells)
        seen: list[int] = []
        for c in part.cells:
            if not c:
                raise ValueError("empty cell")
            seen.extend(c)
        if sorted(seen) != list(range(nv)):
            raise ValueError(f"cells do not partition 0..{nv - 1}")
        return part

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.cells)

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.cells)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OrderedPartition) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        inner = " | ".join(" ".join(str(v) for v in c) for c in self.cells)
        return f"[{inner}]"


def refine(graph: Digraph, partition: OrderedPartition) -> OrderedPartition:
    """Coarsest equitable refinement of the partition.

    Every cell is scored against a worklist of splitter cells by the pair
    (out-arcs into splitter, in-arcs from splitter); cells splitting are
    replaced in position by their fragments in ascending score order, and
    all fragments join the worklist. The result does not depend on anything
    except the graph and the input cell order, so repeated calls are stable.
    """
    nv = graph.nv
    cells: dict[int, list[int]] = {}
    order: list[int] = []
    cell_of = [0] * nv
    for key, cell in enumerate(partition.cells):
        members = sorted(cell)
        cells[key] = members
        order.append(key)
        for v in members:
            cell_of[v] = key
    next_key = len(order)
    pos = {k: i for i, k in enumerate(order)}
    queue: deque[int] = deque(order)

    while queue:
        wkey = queue.popleft()
        members_w = cells.get(wkey)
        if members_w is None:
            continue
        cnt_out: dict[int, int] = {}
        cnt_in: dict[int, int] = {}
        for w in members_w:
            for u in graph.in_adj[w]:
                cnt_out[u] = cnt_out.get(u, 0) + 1
            for u in graph.out_adj[w]:
                cnt_in[u] = cnt_in.get(u, 0) + 1
        touched = {cell_of[u] for u in cnt_out}
        touched.update(cell_of[u] for u in cnt_in)
        for ckey in sorted(touched, key=pos.__getitem__):
            members = cells[ckey]
            if len(members) == 1:
                continue
            buckets: dict[tuple[int, int], list[int]] = {}
            for v in members:
                buckets.setdefault((cnt_out.get(v, 0), cnt_in.get(v, 0)), []).append(v)
            if len(buckets) == 1:
                continue
            new_keys = []
            for _, frag in sorted(buckets.items()):
                cells[next_key] = frag
                for v in frag:
                    cell_of[v] = next_key
                new_keys.append(next_key)
                next_key += 1
            del cells[ckey]
            p = pos[ckey]
            order[p : p + 1] = new_keys
            pos = {k: i for i, k in enumerate(order)}
            queue.extend(new_keys)
    return OrderedPartition(tuple(cells[k]) for k in order)


def is_equitable(graph: Digraph, partition: OrderedPartition) -> bool:
    """Direct count check: within a cell, all vertices agree on per-cell arc counts."""
    cell_of = {}
    for idx, cell in enumerate(partition.cells):
        for v in cell:
            cell_of[v] = idx
    k = len(partition.cells)
    for cell in partition.cells:
        ref: list[tuple[int, int]] | None = None
        for v in cell:
            score = [[0, 0] for _ in range(k)]
            for w in graph.out_adj[v]:
                score[cell_of[w]][0] += 1
            for w in graph.in_adj[v]:
                score[cell_of[w]][1] += 1
            flat = [tuple(s) for s in score]
            if ref is None:
                ref = flat
            elif flat != ref:
                return False
    return True


def is_automorphism(graph: Digraph, perm: Permutation) -> bool:
    if perm.degree != graph.nv:
        raise ValueError(f"degree {perm.degree} vs nv {graph.nv}")
    return _preserves_arcs(graph, perm.images)


def _preserves_arcs(graph: Digraph, img: tuple[int, ...]) -> bool:
    masks = graph.out_masks
    for u, row in enumerate(graph.out_adj):
        acc = 0
        for v in row:
            acc |= 1 << img[v]
        if acc != masks[img[u]]:
            return False
    return True


def _individualize(part: OrderedPartition, idx: int, v: int) -> OrderedPartition:
    cell = part.cells[idx]
    rest = tuple(u for u in cell if u != v)
    return OrderedPartition(part.cells[:idx] + ((v,), rest) + part.cells[idx + 1 :])


def automorphism_group(
    graph: Digraph,
    colors: OrderedPartition | None = None,
    *,
    stop_order_above: int | None = None,
) -> PermGroup:
    """Automorphism group of the digraph, optionally respecting an initial coloring.

    Individualization-refinement search: the first (leftmost) leaf of the tree
    fixes a reference labeling, every other discrete leaf proposes the bijection
    onto the reference and is kept when it preserves arcs. Branches are pruned
    when their refined cell-size profile disagrees with the reference path at
    the same depth, and at the root by orbits of the generators found so far.
    With stop_order_above set, the search aborts once the found subgroup's
    order exceeds the bound and returns that subgroup (a certified lower bound,
    sound for threshold tests because it only ever finds true automorphisms).
    """
    nv = graph.nv
    if colors is None:
        start = OrderedPartition.unit(nv)
    else:
        start = OrderedPartition.checked(colors.cells, nv)
    identity = tuple(range(nv))
    chain = _Chain(nv)
    gens: list[tuple[int, ...]] = []
    first_leaf: list[int] | None = None
    path_shapes: list[tuple[int, ...]] = []
    state = {"aborted": False}

    def orbit_hits(v: int, targets: set[int]) -> bool:
        seen = {v}
        queue = [v]
        while queue:
            u = queue.pop()
            if u in targets:
                return True
            for g in gens:
                w = g[u]
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return False

    def descend(part: OrderedPartition, depth: int) -> None:
        nonlocal first_leaf
        if state["aborted"]:
            return
        cells = part.cells
        shape = tuple(len(c) for c in cells)
        if first_leaf is None:
            path_shapes.append(shape)
        elif depth >= len(path_shapes) or shape != path_shapes[depth]:
            return
        target = -1
        best = 1
        for idx, c in enumerate(cells):
            if len(c) > best:
                best = len(c)
                target = idx
        if target < 0:
            seq = [c[0] for c in cells]
            if first_leaf is None:
                first_leaf = seq
                return
            img = [0] * nv
            for a, b in zip(first_leaf, seq):
                img[a] = b
            cand = tuple(img)
            if cand == identity or not _preserves_arcs(graph, cand):
                return
            if not chain.contains(cand):
                chain.extend(cand)
                gens.append(cand)
                if stop_order_above is not None and chain.order() > stop_order_above:
                    state["aborted"] = True
            return
        cell = cells[target]
        processed: set[int] = set()
        for v in cell:
            if state["aborted"]:
                return
            if depth == 0 and processed and orbit_hits(v, processed):
                continue
            descend(refine(graph, _individualize(part, target, v)), depth + 1)
            processed.add(v)

    descend(refine(graph, start), 0)
    return PermGroup(nv, [Permutation(g) for g in gens])


def brute_force_automorphisms(graph: Digraph) -> PermGroup:
    """Exact automorphism group by checking all nv! permutations (nv <= 10)."""
    nv = graph.nv
    if nv > BRUTE_FORCE_MAX:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_MAX} vertices, got {nv}")
    found = [
        Permutation(p) for p in permutations(range(nv)) if _preserves_arcs(graph, p)
    ]
    return PermGroup(nv, found)


def check_prop21_hypotheses(gamma, aut: PermGroup, reps: Sequence[int]) -> bool:
    """Test the two hypotheses forcing Aut = R(G) on a connected block digraph.

    (a) every generator maps each block onto itself, and (b) for each supplied
    block representative u, the stabilizer of u fixes every out-neighbor of u
    pointwise. When both hold the automorphism group must be exactly the right
    translations, so the order is cross-checked against |G|.
    """
    from .mcayley import right_translation

    graph: Digraph = gamma.graph
    n = gamma.group.n
    m = gamma.m
    if aut.degree != graph.nv:
        raise ValueError(f"degree {aut.degree} vs nv {graph.nv}")
    if not is_weakly_connected(graph):
        raise ValueError("hypothesis check requires a weakly connected digraph")
    if sorted(v // n for v in reps) != list(range(m)):
        raise ValueError(f"need exactly one representative per block, got {list(reps)}")
    if any(not aut.is_member(right_translation(gamma, g)) for g in range(n)):
        raise ValueError("supplied group must contain every right translation")
    for p in aut.generators:
        for v in range(graph.nv):
            if p.images[v] // n != v // n:
                return False
    for u in reps:
        stab = aut.stabilizer(u)
        for p in stab.generators:
            if any(p.images[w] != w for w in graph.out_adj[u]):
                return False
    if aut.order() != n:
        raise RuntimeError(
            f"hypotheses hold but |Aut| = {aut.order()} != |G| = {n}; engine inconsistency"
        )
    return True
