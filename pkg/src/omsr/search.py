"""Exhaustive search over connection matrices and rigid-digraph exploration.

The matrix search certifies non-existence results: it enumerates every
connection matrix of a :class:`SearchSpace` depth-first by rows, prunes on
column sums and the oriented condition, and evaluates the automorphism order
of each completed candidate.  The rigid-digraph search hunts for k-regular
digraphs with trivial automorphism group; its results are exploratory and
carry no ground-truth claim.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .autgroup import automorphism_group
from .digraphs import Digraph, is_weakly_connected
from .groups import FiniteGroup
from .mcayley import ConnectionMatrix, build

DEFAULT_BUDGET = 10**8


class BudgetExceeded(Exception):
    """The estimated or actual work exceeds the configured budget."""


@dataclass(frozen=True)
class SearchSpace:
    """One (group, m, valency) problem instance for the matrix search."""

    group: FiniteGroup
    m: int
    k: int = 3
    require_oriented: bool = True
    require_connected: bool = False

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be positive")
        if self.k < 0:
            raise ValueError("valency must be nonnegative")

    def descriptor(self) -> dict:
        return {
            "group": self.group.name,
            "group_order": self.group.n,
            "m": self.m,
            "k": self.k,
            "require_oriented": self.require_oriented,
            "require_connected": self.require_connected,
        }


@dataclass
class SearchOutcome:
    status: str  # "FOUND" or "EXHAUSTED"
    witness: ConnectionMatrix | None
    candidates_tested: int
    aut_order_histogram: dict[int, int]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "status": self.status,
            "witness": None if self.witness is None else self.witness.to_json(),
            "candidates_tested": self.candidates_tested,
            "aut_order_histogram": {
                str(order): count
                for order, count in sorted(self.aut_order_histogram.items())
            },
        }


def _inverse_masks(group: FiniteGroup) -> list[int]:
    # inv_mask[M] = bitmask of inverses of the elements selected by M
    n = group.n
    table = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        table[mask] = table[mask & (mask - 1)] | (1 << group.inv[low])
    return table


def enumerate_rows(
    group: FiniteGroup, m: int, k: int, row: int, oriented: bool = True
) -> list[tuple[int, ...]]:
    """All assignments of one matrix row, as per-cell element bitmasks.

    Each result places exactly ``k`` elements across the ``m`` cells of the
    row, and the diagonal cell never meets its own inverse set when
    ``oriented`` is set.  Rows come out in lexicographic order with cells
    compared as numeric bitmasks, so the enumeration is reproducible.
    """
    if not 0 <= row < m:
        raise ValueError(f"row {row} outside 0..{m - 1}")
    n = group.n
    inv_mask = _inverse_masks(group) if oriented else None
    by_size: dict[int, list[int]] = {}
    for mask in range(1 << n):
        by_size.setdefault(bin(mask).count("1"), []).append(mask)

    rows: list[tuple[int, ...]] = []
    cells: list[int] = []

    def place(cell: int, remaining: int) -> None:
        if cell == m:
            if remaining == 0:
                rows.append(tuple(cells))
            return
        sizes = range(remaining + 1) if cell < m - 1 else (remaining,)
        for size in sizes:
            for mask in by_size.get(size, ()):
                if cell == row and inv_mask is not None and mask & inv_mask[mask]:
                    continue
                cells.append(mask)
                place(cell + 1, remaining - size)
                cells.pop()
        return

    # Rebuild in strict numeric order per cell: small sizes do not sort
    # before large masks, so sort the final list lexicographically.
    place(0, k)
    rows.sort()
    return rows


def _mask_elements(mask: int) -> tuple[int, ...]:
    elems = []
    while mask:
        low = (mask & -mask).bit_length() - 1
        elems.append(low)
        mask &= mask - 1
    return tuple(elems)


def _matrix_from_rows(m: int, chosen: list[tuple[int, ...]]) -> ConnectionMatrix:
    cells = {
        (i, j): _mask_elements(chosen[i][j])
        for i in range(m)
        for j in range(m)
        if chosen[i][j]
    }
    return ConnectionMatrix.from_entries(m, cells)


def _evaluate_candidate(
    space: SearchSpace,
    conn: ConnectionMatrix,
    exact_histogram: bool,
) -> tuple[bool, int | None]:
    """Return (is_witness, histogram_order or None when filtered out)."""
    gamma = build(space.group, conn)
    if space.require_connected and not is_weakly_connected(gamma.graph):
        return False, None
    order_bound = automorphism_group(
        gamma.graph, stop_order_above=space.group.n
    ).order()
    if order_bound <= space.group.n:
        # The engine ran to completion, so the order is exact; it can never
        # be below |G| because the right translations are automorphisms.
        return True, order_bound
    if exact_histogram:
        return False, automorphism_group(gamma.graph).order()
    return False, order_bound


def _search_branches(
    space: SearchSpace,
    branches: list[int],
    budget: int,
    exact_histogram: bool,
    checkpoint_path: str | None = None,
    tested_start: int = 0,
    histogram_start: dict[int, int] | None = None,
) -> tuple[ConnectionMatrix | None, int, dict[int, int], int]:
    m, k = space.m, space.k
    rows = [
        enumerate_rows(space.group, m, k, i, space.require_oriented)
        for i in range(m)
    ]
    inv_mask = _inverse_masks(space.group)
    tested = tested_start
    histogram: dict[int, int] = dict(histogram_start or {})
    witness: ConnectionMatrix | None = None
    chosen: list[tuple[int, ...]] = [()] * m
    col_sums = [0] * m
    last_branch = -1

    def row_fits(i: int, candidate: tuple[int, ...]) -> bool:
        left = m - 1 - i
        for j in range(m):
            size = bin(candidate[j]).count("1")
            total = col_sums[j] + size
            if total > k or k - total > left * k:
                return False
        if space.require_oriented:
            for j in range(i):
                if candidate[j] & inv_mask[chosen[j][i]]:
                    return False
        return True

    def descend(i: int) -> bool:
        nonlocal tested, witness
        for candidate in rows[i]:
            if not row_fits(i, candidate):
                continue
            chosen[i] = candidate
            for j in range(m):
                col_sums[j] += bin(candidate[j]).count("1")
            try:
                if i == m - 1:
                    conn = _matrix_from_rows(m, chosen)
                    tested += 1
                    hit, order = _evaluate_candidate(space, conn, exact_histogram)
                    if order is not None:
                        histogram[order] = histogram.get(order, 0) + 1
                    if hit:
                        witness = conn
                        return True
                elif descend(i + 1):
                    return True
            finally:
                for j in range(m):
                    col_sums[j] -= bin(candidate[j]).count("1")
        return False

    for branch in branches:
        candidate = rows[0][branch]
        if row_fits(0, candidate):
            chosen[0] = candidate
            for j in range(m):
                col_sums[j] += bin(candidate[j]).count("1")
            found = descend(1) if m > 1 else False
            if m == 1:
                conn = _matrix_from_rows(m, chosen)
                tested += 1
                hit, order = _evaluate_candidate(space, conn, exact_histogram)
                if order is not None:
                    histogram[order] = histogram.get(order, 0) + 1
                found = hit
                if hit:
                    witness = conn
            for j in range(m):
                col_sums[j] -= bin(candidate[j]).count("1")
            if found:
                return witness, tested, histogram, branch
        last_branch = branch
        if checkpoint_path is not None:
            _write_checkpoint(
                checkpoint_path, space, last_branch, tested, histogram
            )
    return None, tested, histogram, last_branch


def _write_checkpoint(
    path: str,
    space: SearchSpace,
    branch: int,
    tested: int,
    histogram: dict[int, int],
) -> None:
    payload = {
        "schema": 1,
        "space": space.descriptor(),
        "last_completed_branch": branch,
        "candidates_tested": tested,
        "aut_order_histogram": {str(o): c for o, c in sorted(histogram.items())},
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def _read_checkpoint(path: str, space: SearchSpace) -> tuple[int, int, dict[int, int]]:
    file = Path(path)
    if not file.exists():
        return -1, 0, {}
    payload = json.loads(file.read_text())
    if payload.get("space") != space.descriptor():
        return -1, 0, {}
    histogram = {
        int(order): count
        for order, count in payload.get("aut_order_histogram", {}).items()
    }
    return payload["last_completed_branch"], payload["candidates_tested"], histogram


def _branch_worker(
    args: tuple[SearchSpace, int, bool]
) -> tuple[ConnectionMatrix | None, int, dict[int, int]]:
    space, branch, exact_histogram = args
    witness, tested, histogram, _ = _search_branches(
        space, [branch], DEFAULT_BUDGET, exact_histogram
    )
    return witness, tested, histogram


def exhaustive_search(
    space: SearchSpace,
    budget: int = DEFAULT_BUDGET,
    exact_histogram: bool = True,
    checkpoint_path: str | None = None,
    jobs: int = 1,
) -> SearchOutcome:
    """Search every matrix in ``space`` for |Aut| = |G|.

    Returns FOUND with the first witness in depth-first order, or EXHAUSTED
    with a histogram of the automorphism orders of every completed candidate.
    Raises :class:`BudgetExceeded` before starting when the row-combination
    count ``(#rows)^m`` exceeds ``budget``.  With ``jobs > 1`` the depth-1
    subtrees run in parallel and ``checkpoint_path`` is ignored; resumable
    runs need single-job mode.
    """
    row_count = len(enumerate_rows(space.group, space.m, space.k, 0, space.require_oriented))
    estimate = row_count**space.m
    if estimate > budget:
        raise BudgetExceeded(
            f"row-combination estimate {estimate} exceeds budget {budget}"
        )
    branches = list(range(row_count))
    if jobs > 1 and row_count > 1:
        witness: ConnectionMatrix | None = None
        tested = 0
        histogram: dict[int, int] = {}
        pool = ProcessPoolExecutor(max_workers=jobs)
        futures = [
            pool.submit(_branch_worker, (space, b, exact_histogram))
            for b in branches
        ]
        try:
            for future in as_completed(futures):
                w, t, h = future.result()
                tested += t
                for order, count in h.items():
                    histogram[order] = histogram.get(order, 0) + count
                if w is not None:
                    witness = w
                    break
        finally:
            # queued branches are dropped; running ones finish and are small
            pool.shutdown(wait=True, cancel_futures=True)
        if witness is not None:
            return SearchOutcome("FOUND", witness, tested, histogram)
        return SearchOutcome("EXHAUSTED", None, tested, histogram)

    start_branch, tested0, hist0 = (
        _read_checkpoint(checkpoint_path, space)
        if checkpoint_path is not None
        else (-1, 0, {})
    )
    witness, tested, histogram, _ = _search_branches(
        space,
        branches[start_branch + 1 :],
        budget,
        exact_histogram,
        checkpoint_path,
        tested0,
        hist0,
    )
    if witness is not None:
        return SearchOutcome("FOUND", witness, tested, histogram)
    return SearchOutcome("EXHAUSTED", None, tested, histogram)


def nonexistence_instances() -> list[tuple[str, FiniteGroup, int]]:
    from .groups import klein_four, make_cyclic

    z2, _ = make_cyclic(2)
    z3, _ = make_cyclic(3)
    z4, _ = make_cyclic(4)
    klein, _ = klein_four()
    return [
        ("Z2", z2, 2),
        ("Z2", z2, 3),
        ("Z2", z2, 4),
        ("Z3", z3, 2),
        ("Z4", z4, 2),
        ("Z2xZ2", klein, 2),
    ]


def verify_nonexistence_suite(budget: int = DEFAULT_BUDGET) -> list[dict]:
    """Exhaust the six excluded (group, m) instances and report the evidence.

    Raises RuntimeError if any instance unexpectedly yields a witness, since
    that would overturn the non-existence results the suite certifies.
    """
    reports = []
    for name, group, m in nonexistence_instances():
        outcome = exhaustive_search(SearchSpace(group, m), budget=budget)
        if outcome.status != "EXHAUSTED":
            raise RuntimeError(
                f"({name}, m={m}) produced a witness; expected exhaustion"
            )
        reports.append(
            {
                "group": name,
                "m": m,
                "status": outcome.status,
                "candidates_tested": outcome.candidates_tested,
                "aut_order_histogram": {
                    str(o): c
                    for o, c in sorted(outcome.aut_order_histogram.items())
                },
            }
        )
    return reports


# ---------------------------------------------------------------------------
# Rigid digraphs (trivial automorphism group): exploratory searches.
# ---------------------------------------------------------------------------

@dataclass
class RigidSearchOutcome:
    status: str  # "FOUND", "EXHAUSTED", or "BUDGET"
    witness: Digraph | None
    candidates_tested: int

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "exploratory": True,
            "status": self.status,
            "witness": None if self.witness is None else self.witness.to_json(),
            "candidates_tested": self.candidates_tested,
        }


def _is_rigid(graph: Digraph) -> bool:
    return automorphism_group(graph, stop_order_above=1).order() == 1


def _exhaustive_rigid(
    n: int, k: int, oriented: bool, budget: int
) -> RigidSearchOutcome:
    tested = 0
    steps = 0
    out_rows: list[tuple[int, ...]] = []
    indeg = [0] * n
    witness: Digraph | None = None

    def allowed(v: int, row: tuple[int, ...]) -> bool:
        for w in row:
            if indeg[w] >= k:
                return False
            if oriented and w < v and v in out_rows[w]:
                return False
        # every later row adds at most one arc into each vertex
        left = n - 1 - v
        for w in range(n):
            extra = 1 if w in row else 0
            if k - indeg[w] - extra > left:
                return False
        return True

    def rows_for(v: int):
        if v == 0:
            # leader normalization: relabel any digraph so vertex 0 points
            # at 1..k, sound because some labeling always achieves it
            yield tuple(range(1, k + 1))
            return
        others = [w for w in range(n) if w != v]
        yield from combinations(others, k)

    def descend(v: int) -> bool:
        nonlocal tested, steps, witness
        if v == n:
            tested += 1
            graph = Digraph(n, tuple(out_rows))
            if _is_rigid(graph):
                witness = graph
                return True
            return False
        for row in rows_for(v):
            steps += 1
            if steps + tested > budget:
                raise BudgetExceeded(f"exceeded {budget} search steps")
            if not allowed(v, row):
                continue
            out_rows.append(row)
            for w in row:
                indeg[w] += 1
            if descend(v + 1):
                return True
            out_rows.pop()
            for w in row:
                indeg[w] -= 1
        return False

    try:
        if descend(0):
            return RigidSearchOutcome("FOUND", witness, tested)
        return RigidSearchOutcome("EXHAUSTED", None, tested)
    except BudgetExceeded:
        return RigidSearchOutcome("BUDGET", None, tested)


def _circulant(n: int, k: int) -> tuple[set[tuple[int, int]], list[set[int]], list[set[int]]]:
    arcs = {(v, (v + d) % n) for v in range(n) for d in range(1, k + 1)}
    outs: list[set[int]] = [set() for _ in range(n)]
    ins: list[set[int]] = [set() for _ in range(n)]
    for a, b in arcs:
        outs[a].add(b)
        ins[b].add(a)
    return arcs, outs, ins


def _randomized_rigid(
    n: int, k: int, oriented: bool, budget: int, seed: int, switches: int
) -> RigidSearchOutcome:
    rng = random.Random(seed)
    arcs, outs, ins = _circulant(n, k)
    arc_list = sorted(arcs)

    def try_switch() -> None:
        (a, b), (c, d) = rng.sample(arc_list, 2)
        if a == c or b == d or a == d or c == b:
            return
        if d in outs[a] or b in outs[c]:
            return
        if oriented and (a in outs[d] or c in outs[b]):
            return
        for idx, arc in enumerate(arc_list):
            if arc == (a, b):
                arc_list[idx] = (a, d)
            elif arc == (c, d):
                arc_list[idx] = (c, b)
        arcs.discard((a, b))
        arcs.discard((c, d))
        arcs.update({(a, d), (c, b)})
        outs[a].discard(b)
        outs[c].discard(d)
        outs[a].add(d)
        outs[c].add(b)
        ins[b].discard(a)
        ins[d].discard(c)
        ins[d].add(a)
        ins[b].add(c)

    tested = 0
    while tested < budget:
        for _ in range(switches):
            try_switch()
        tested += 1
        graph = Digraph.from_arcs(n, sorted(arcs))
        if _is_rigid(graph):
            return RigidSearchOutcome("FOUND", graph, tested)
    return RigidSearchOutcome("BUDGET", None, tested)


def search_trivial_aut_digraph(
    n: int,
    k: int,
    oriented: bool = True,
    mode: str = "exhaustive",
    budget: int = 10**6,
    seed: int = 0,
    switches: int | None = None,
) -> RigidSearchOutcome:
    """Look for a loop-free k-regular digraph on n vertices with |Aut| = 1.

    Exploratory: a FOUND witness is verified rigid, but EXHAUSTED/BUDGET for
    one parameter choice settles nothing about the general question.
    Exhaustive mode enumerates out-neighbor rows depth-first with in-degree
    pruning and first-row leader normalization; randomized mode runs a
    degree-preserving arc-switch chain from a circulant seed and tests every
    ``switches`` swaps (default 3nk).
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if k >= n:
        return RigidSearchOutcome("EXHAUSTED", None, 0)
    if oriented and n < 2 * k + 1:
        # out- and in-neighborhoods are disjoint k-sets avoiding the vertex
        return RigidSearchOutcome("EXHAUSTED", None, 0)
    if mode == "exhaustive" or k == 0:
        # k = 0 admits a single digraph, so the chain has nothing to walk
        return _exhaustive_rigid(n, k, oriented, budget)
    if mode == "randomized":
        return _randomized_rigid(
            n, k, oriented, budget, seed, switches or 3 * n * k
        )
    raise ValueError(f"unknown mode {mode!r}")
