"""Acceptance grid: eleven numbered checks covering every shipped claim.

Each criterion returns a CriterionResult with a pass/fail flag, a one-line
detail, and its runtime measured against the stated limit. A criterion
passes only if both the logical check and the time limit hold, so a run on
badly overloaded hardware fails loudly rather than silently.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from .autgroup import (
    automorphism_group,
    brute_force_automorphisms,
    check_prop21_hypotheses,
    is_automorphism,
)
from .constructions import (
    Z2_UNREPAIRED_CLAIMS,
    claims_to_matrix,
    cyclic_general,
    cyclic_general_claims,
    cyclic_m2,
    klein_general,
    klein_m3,
    klein_m4,
    two_generated,
    two_generated_claims,
    validate_claims,
    z2_general,
    z2_tables,
)
from .digraphs import Digraph, is_k_regular, is_oriented, is_weakly_connected
from .groups import FiniteGroup, klein_four, make_cyclic, standard_two_generated
from .mcayley import (
    ConnectionMatrix,
    build,
    connection_is_oriented,
    regular_action_group,
    right_translation,
    valency_profile,
)
from .search import search_trivial_aut_digraph, verify_nonexistence_suite

TWO_GENERATED_NAMES = ("S3", "D4", "D5", "Q8", "Z2xZ4", "A4")


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed_seconds: float
    limit_seconds: float | None

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        if self.limit_seconds is None:
            timing = f"{self.elapsed_seconds:7.2f}s"
        else:
            timing = f"{self.elapsed_seconds:7.2f}s < {self.limit_seconds:g}s"
        return f"{verdict}  {self.number:>2}  {self.name:<24} {timing}  {self.detail}"


def _timed(
    number: int, name: str, limit: float | None, body: Callable[[], tuple[bool, str]]
) -> CriterionResult:
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; exceeded {limit:g}s limit"
    return CriterionResult(number, name, ok, detail, elapsed, limit)


def z4_block_example() -> tuple[FiniteGroup, ConnectionMatrix]:
    """Two-block matrix over Z4 whose digraph has 8 automorphisms, not 4.

    The interesting part is that it satisfies every local constraint
    (oriented, 3-regular, connected) yet still fails to pin Aut down to the
    translations, so it exercises the NOT-OMSR verdict path.
    """
    group, _ = make_cyclic(4)
    conn = ConnectionMatrix.from_entries(2, {(0, 0): {1}, (0, 1): {0, 1}, (1, 0): {1, 2}, (1, 1): {1}})
    return group, conn


def z2_grid() -> Iterator[tuple[str, FiniteGroup, ConnectionMatrix, int]]:
    group, _ = make_cyclic(2)
    for m in range(5, 11):
        yield f"z2-table m={m}", group, z2_tables(m), 2
    for m in range(11, 41):
        yield f"z2-general m={m}", group, z2_general(m), 2


def cyclic_grid() -> Iterator[tuple[str, FiniteGroup, ConnectionMatrix, int]]:
    for n in range(5, 13):
        group, _ = make_cyclic(n)
        yield f"cyclic-m2 n={n}", group, cyclic_m2(group), n
    for n in range(3, 11):
        group, _ = make_cyclic(n)
        for m in range(3, 9):
            yield f"cyclic-general n={n} m={m}", group, cyclic_general(group, m), n


def klein_grid() -> Iterator[tuple[str, FiniteGroup, ConnectionMatrix, int]]:
    group, _ = klein_four()
    yield "klein-m3", group, klein_m3(), 4
    yield "klein-m4", group, klein_m4(), 4
    for m in range(5, 13):
        yield f"klein-general m={m}", group, klein_general(m), 4


def two_generated_grid() -> Iterator[tuple[str, FiniteGroup, ConnectionMatrix, int]]:
    for name in TWO_GENERATED_NAMES:
        group, spec = standard_two_generated(name)
        for m in range(2, 7):
            yield f"two-gen {name} m={m}", group, two_generated(group, spec, m), group.n


def family_grid() -> Iterator[tuple[str, FiniteGroup, ConnectionMatrix, int]]:
    """Every constructed instance the acceptance grid certifies."""
    yield from z2_grid()
    yield from cyclic_grid()
    yield from klein_grid()
    yield from two_generated_grid()


def _check_grid(
    grid: Iterator[tuple[str, FiniteGroup, ConnectionMatrix, int]],
    require_structure: bool = False,
) -> tuple[bool, str]:
    count = 0
    for label, group, conn, expected in grid:
        count += 1
        graph = build(group, conn).graph
        if require_structure:
            if not is_oriented(graph):
                return False, f"{label}: not oriented"
            if not is_k_regular(graph, 3):
                return False, f"{label}: not 3-regular"
            if not is_weakly_connected(graph):
                return False, f"{label}: not connected"
        got = automorphism_group(graph).order()
        if got != expected:
            return False, f"{label}: |Aut| = {got}, expected {expected}"
    return True, f"{count} instances, every |Aut| as expected"


def criterion_1() -> CriterionResult:
    def body() -> tuple[bool, str]:
        group, conn = z4_block_example()
        order = automorphism_group(build(group, conn).graph).order()
        return order == 8, f"|Aut| = {order} (expected 8 > |G| = 4)"

    return _timed(1, "z4-block-example", 1.0, body)


def criterion_2() -> CriterionResult:
    return _timed(2, "z2-families", 30.0, lambda: _check_grid(z2_grid()))


def criterion_3() -> CriterionResult:
    return _timed(
        3,
        "cyclic-families",
        60.0,
        lambda: _check_grid(cyclic_grid(), require_structure=True),
    )


def criterion_4() -> CriterionResult:
    return _timed(4, "klein-families", 30.0, lambda: _check_grid(klein_grid()))


def criterion_5() -> CriterionResult:
    return _timed(5, "two-generated-families", 120.0, lambda: _check_grid(two_generated_grid()))


def criterion_6() -> CriterionResult:
    def body() -> tuple[bool, str]:
        reports = verify_nonexistence_suite()
        if any(r["status"] != "EXHAUSTED" for r in reports):
            return False, "some instance did not exhaust"
        for r in reports:
            if (r["group"], r["m"]) in (("Z2", 4), ("Z4", 2)):
                hist = {int(k): v for k, v in r["aut_order_histogram"].items()}
                bound = 2 if r["group"] == "Z2" else 4
                if not hist:
                    return False, f"({r['group']}, m={r['m']}): empty histogram"
                if min(hist) <= bound:
                    return False, (
                        f"({r['group']}, m={r['m']}): candidate with |Aut| <= {bound}"
                    )
        tested = sum(r["candidates_tested"] for r in reports)
        return True, f"6 instances exhausted, {tested} candidates, histograms all above |G|"

    return _timed(6, "nonexistence-suite", 600.0, body)


def _random_digraph(rng: random.Random, nv: int, p: float) -> Digraph:
    arcs = [
        (u, v) for u in range(nv) for v in range(nv) if u != v and rng.random() < p
    ]
    return Digraph.from_arcs(nv, arcs)


def criterion_7() -> CriterionResult:
    def body() -> tuple[bool, str]:
        rng = random.Random(74207281)
        for trial in range(200):
            nv = rng.randrange(4, 9)
            graph = _random_digraph(rng, nv, rng.uniform(0.15, 0.6))
            fast = automorphism_group(graph).order()
            slow = brute_force_automorphisms(graph).order()
            if fast != slow:
                return False, f"trial {trial}: engine {fast} vs brute force {slow}"
        return True, "200 random digraphs, engine matches brute force"

    return _timed(7, "oracle-equivalence", 60.0, body)


_SMALL_GROUPS: list[Callable[[], tuple[FiniteGroup, object]]] = [
    lambda: make_cyclic(1),
    lambda: make_cyclic(2),
    lambda: make_cyclic(3),
    lambda: make_cyclic(4),
    lambda: make_cyclic(5),
    lambda: make_cyclic(6),
    lambda: make_cyclic(7),
    lambda: make_cyclic(8),
    klein_four,
    lambda: standard_two_generated("S3"),
    lambda: standard_two_generated("D4"),
    lambda: standard_two_generated("Q8"),
    lambda: standard_two_generated("Z2xZ4"),
]


def criterion_8() -> CriterionResult:
    def body() -> tuple[bool, str]:
        rng = random.Random(82589933)
        for trial in range(500):
            group = rng.choice(_SMALL_GROUPS)()[0]
            n = group.n
            m = rng.randrange(1, 5)
            p = rng.uniform(0.1, 0.5)
            entries = {
                (i, j): {g for g in range(n) if rng.random() < p}
                for i in range(m)
                for j in range(m)
            }
            conn = ConnectionMatrix.from_entries(m, entries)
            gamma = build(group, conn)
            graph = gamma.graph
            tag = f"trial {trial} ({group.name}, m={m})"
            if connection_is_oriented(group, conn) != is_oriented(graph):
                return False, f"{tag}: oriented mismatch"
            outs, ins = valency_profile(group, conn)
            for k in range(max(outs) + max(ins) + 2):
                conn_level = all(s == k for s in outs) and all(s == k for s in ins)
                if conn_level != is_k_regular(graph, k):
                    return False, f"{tag}: regularity mismatch at k={k}"
            for g in range(n):
                if not is_automorphism(graph, right_translation(gamma, g)):
                    return False, f"{tag}: translation by {g} not an automorphism"
            action = regular_action_group(gamma)
            orbits = {frozenset(o) for o in action.orbits()}
            blocks = {frozenset(range(i * n, (i + 1) * n)) for i in range(m)}
            if orbits != blocks:
                return False, f"{tag}: orbits differ from blocks"
            if not action.is_semiregular():
                return False, f"{tag}: action not semiregular"
        return True, "500 random (G, T) samples, all five properties hold"

    return _timed(8, "structural-properties", 60.0, body)


def criterion_9() -> CriterionResult:
    def body() -> tuple[bool, str]:
        count = 0
        for label, group, conn, _expected in family_grid():
            count += 1
            gamma = build(group, conn)
            aut = automorphism_group(gamma.graph)
            reps = [gamma.vertex_of(0, i) for i in range(gamma.m)]
            if not check_prop21_hypotheses(gamma, aut, reps):
                return False, f"{label}: hypotheses fail"
            if aut.order() != group.n:
                return False, f"{label}: |Aut| = {aut.order()} != {group.n}"
        group, conn = z4_block_example()
        gamma = build(group, conn)
        aut = automorphism_group(gamma.graph)
        if check_prop21_hypotheses(gamma, aut, [gamma.vertex_of(0, i) for i in range(2)]):
            return False, "z4 example: hypotheses unexpectedly hold"
        return True, f"{count} instances force Aut onto the translations; z4 example does not"

    return _timed(9, "translation-hypotheses", None, body)


def _clearing_retargets(
    group: FiniteGroup, m: int, claims: tuple
) -> list[tuple[int, tuple[int, int]]]:
    """Single-claim cell moves after which the table has no violations."""
    found = []
    for idx, (ci, cj, elements) in enumerate(claims):
        for i in range(m):
            for j in range(m):
                if (i, j) == (ci, cj):
                    continue
                cand = list(claims)
                cand[idx] = (i, j, elements)
                if not validate_claims(group, m, tuple(cand)):
                    found.append((idx, (i, j)))
    return found


def criterion_10() -> CriterionResult:
    def body() -> tuple[bool, str]:
        z2, _ = make_cyclic(2)
        literal = Z2_UNREPAIRED_CLAIMS[6]
        if not validate_claims(z2, 6, literal):
            return False, "literal m=6 table reports no violations"
        fixes = _clearing_retargets(z2, 6, literal)
        # the two clearing moves are the duplicate (1,0) occurrences, and
        # both land on the same vacant cell, so the repair is forced up to
        # which duplicate travels
        if fixes != [(0, (0, 1)), (10, (0, 1))]:
            return False, f"m=6 clearing moves {fixes}"
        repaired = z2_tables(6)
        if automorphism_group(build(z2, repaired).graph).order() != 2:
            return False, "repaired m=6 table misses |Aut| = 2"

        z5, _ = make_cyclic(5)
        literal = cyclic_general_claims(z5, 3, repaired=False)
        if not validate_claims(z5, 3, literal):
            return False, "literal cyclic table reports no violations"
        fixes = _clearing_retargets(z5, 3, literal)
        if fixes != [(5, (2, 0))]:
            return False, f"cyclic clearing moves {fixes}"
        if automorphism_group(build(z5, cyclic_general(z5, 3)).graph).order() != 5:
            return False, "repaired cyclic table misses |Aut| = 5"

        s3, spec = standard_two_generated("S3")
        literal = two_generated_claims(s3, spec, 3, repaired=False)
        if not validate_claims(s3, 3, literal):
            return False, "literal two-generated table reports no violations"
        fixes = _clearing_retargets(s3, 3, literal)
        if fixes != [(5, (2, 0))]:
            return False, f"two-generated clearing moves {fixes}"
        if automorphism_group(build(s3, two_generated(s3, spec, 3)).graph).order() != 6:
            return False, "repaired two-generated table misses |Aut| = 6"
        return True, "all three repairs forced by single-move enumeration"

    return _timed(10, "repair-forcing", 10.0, body)


def criterion_11() -> CriterionResult:
    def body() -> tuple[bool, str]:
        outcome = search_trivial_aut_digraph(
            10, 3, oriented=True, mode="randomized", budget=50, seed=0
        )
        if outcome.status != "FOUND":
            return True, f"exploratory run ended {outcome.status}; nothing to certify"
        witness = outcome.witness
        assert witness is not None
        if not is_oriented(witness):
            return False, "witness not oriented"
        engine = automorphism_group(witness).order()
        if engine != 1:
            return False, f"engine reports |Aut| = {engine}"
        if witness.nv <= 10:
            brute = brute_force_automorphisms(witness).order()
            if brute != 1:
                return False, f"brute force reports |Aut| = {brute}"
        return True, (
            f"rigid oriented 3-regular witness on {witness.nv} vertices, "
            f"|Aut| = 1 under both engines"
        )

    return _timed(11, "rigid-explorer", None, body)


CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
)


def run_all(numbers: tuple[int, ...] | None = None) -> list[CriterionResult]:
    selected = numbers or tuple(range(1, len(CRITERIA) + 1))
    return [CRITERIA[i - 1]() for i in selected]
