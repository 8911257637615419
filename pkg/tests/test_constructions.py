from __future__ import annotations

import itertools

import pytest

from omsr.autgroup import automorphism_group
from omsr.constructions import (
    FAMILIES,
    Z2_TABLE_REPAIRS,
    Z2_UNREPAIRED_CLAIMS,
    ExceptionVerdict,
    FamilyError,
    applicable_family,
    apply_repairs,
    claims_to_matrix,
    construct_omsr,
    cyclic_general,
    cyclic_general_claims,
    cyclic_m2,
    klein_general,
    klein_m3,
    klein_m4,
    normalized_pair,
    two_generated,
    two_generated_claims,
    validate_claims,
    validate_table,
    z2_general,
    z2_table_claims,
    z2_tables,
)
from omsr.digraphs import (
    is_k_regular,
    is_oriented,
    is_weakly_connected,
    iterated_out_neighborhood,
)
from omsr.groups import (
    GeneratorSpec,
    element_order,
    klein_four,
    make_cyclic,
    standard_two_generated,
)
from omsr.mcayley import build

Z2, _ = make_cyclic(2)


def _aut_order(group, conn) -> int:
    return automorphism_group(build(group, conn).graph).order()


def _out_neighbors(gamma, g: int, i: int) -> set[int]:
    return set(gamma.graph.out_adj[gamma.vertex_of(g, i)])


# ---------------------------------------------------------------------------
# Claims model.
# ---------------------------------------------------------------------------

def test_claims_to_matrix_rejects_contradictions() -> None:
    with pytest.raises(ValueError):
        claims_to_matrix(2, ((0, 1, (0,)), (0, 1, (1,))))


def test_validate_claims_stages() -> None:
    # out-of-range cell reported before anything else
    bad_cell = ((0, 5, (0,)),)
    msgs = validate_claims(Z2, 2, bad_cell)
    assert any("cell" in msg for msg in msgs)

    # contradictory cell stops sum checking from being trusted
    dup = ((0, 1, (0,)), (0, 1, (1,)))
    msgs = validate_claims(Z2, 2, dup)
    assert any("cell (0,1)" in msg for msg in msgs)

    # bad sums on an unambiguous matrix
    msgs = validate_claims(Z2, 2, ((0, 1, (0, 1)),))
    assert any("row" in msg for msg in msgs)
    assert any("column" in msg for msg in msgs)


def test_validate_claims_reports_oriented_and_connectivity() -> None:
    group, _ = make_cyclic(6)
    # 3-regular both ways, but T(0,0) contains a mutually inverse pair
    msgs = validate_claims(group, 1, ((0, 0, (1, 2, 5)),))
    assert any("oriented" in msg for msg in msgs)

    group7, _ = make_cyclic(7)
    msgs = validate_claims(group7, 1, ((0, 0, (1, 2, 3)),))
    assert msgs == []  # oriented, 3-regular, connected

    # 3-regular and oriented, but the two blocks never connect
    two_loops = ((0, 0, (1, 2, 3)), (1, 1, (1, 2, 3)))
    msgs = validate_claims(group7, 2, two_loops)
    assert any("connected" in msg for msg in msgs)


def test_validate_table_wraps_matrices() -> None:
    conn = z2_tables(7)
    assert validate_table(Z2, conn) == []


# ---------------------------------------------------------------------------
# Order-two tables and their repairs.
# ---------------------------------------------------------------------------

def _clearing_single_moves(group, m: int, claims) -> list[tuple[int, tuple[int, int]]]:
    fixes = []
    for idx, (ci, cj, elements) in enumerate(claims):
        for i in range(m):
            for j in range(m):
                if (i, j) == (ci, cj):
                    continue
                cand = list(claims)
                cand[idx] = (i, j, elements)
                if not validate_claims(group, m, tuple(cand)):
                    fixes.append((idx, (i, j)))
    return fixes


def test_unrepaired_tables_report_violations() -> None:
    for m in (5, 6, 9):
        assert validate_claims(Z2, m, Z2_UNREPAIRED_CLAIMS[m]) != []
    for m in (7, 8, 10):
        assert validate_claims(Z2, m, Z2_UNREPAIRED_CLAIMS[m]) == []


def test_m6_repair_forced_to_the_vacant_cell() -> None:
    claims = Z2_UNREPAIRED_CLAIMS[6]
    # the two claims naming cell (1,0) are indices 0 and 10; moving either
    # one to (0,1) is the only single move that clears every violation
    assert claims[0] == (1, 0, (0,))
    assert claims[10] == (1, 0, (1,))
    assert _clearing_single_moves(Z2, 6, claims) == [(0, (0, 1)), (10, (0, 1))]
    for idx in (0, 10):
        fixed = apply_repairs(claims, ((idx, (0, 1)),))
        assert _aut_order(Z2, claims_to_matrix(6, fixed)) == 2
    assert Z2_TABLE_REPAIRS[6] == ((0, (0, 1)),)


def test_m9_repair_unique_up_to_column_pattern() -> None:
    claims = Z2_UNREPAIRED_CLAIMS[9]
    fixes = _clearing_single_moves(Z2, 9, claims)
    assert fixes == [(0, (0, 4)), (2, (2, 4)), (13, (8, 4))]
    for idx, cell in fixes:
        fixed = apply_repairs(claims, ((idx, cell),))
        assert _aut_order(Z2, claims_to_matrix(9, fixed)) == 2
    # the adopted move rewrites the last row, matching the (m-1, 4) cell
    # the neighboring tables share
    assert Z2_TABLE_REPAIRS[9] == ((13, (8, 4)),)
    assert claims[13] == (8, 1, (0,))


def test_m5_needs_two_moves() -> None:
    claims = Z2_UNREPAIRED_CLAIMS[5]
    assert _clearing_single_moves(Z2, 5, claims) == []

    cells = [(i, j) for i in range(5) for j in range(5)]
    clearing = []
    for a, b in itertools.combinations(range(len(claims)), 2):
        for ca in cells:
            if ca == claims[a][:2]:
                continue
            for cb in cells:
                if cb == claims[b][:2]:
                    continue
                cand = apply_repairs(claims, ((a, ca), (b, cb)))
                if not validate_claims(Z2, 5, cand):
                    aut = _aut_order(Z2, claims_to_matrix(5, cand))
                    clearing.append(((a, ca), (b, cb), aut))
    assert clearing == [
        ((5, (0, 4)), (12, (3, 0)), 2),
        ((8, (4, 0)), (10, (0, 2)), 2),
        ((8, (0, 4)), (12, (4, 0)), 72),
        ((8, (4, 0)), (12, (0, 4)), 2),
    ]
    # adopted: the only pair that keeps every column-1 and row-1 claim the
    # other tables share while restoring |Aut| = 2
    assert Z2_TABLE_REPAIRS[5] == ((8, (4, 0)), (12, (0, 4)))


def test_z2_tables_all_reach_aut_two() -> None:
    for m in range(5, 11):
        conn = z2_tables(m)
        assert validate_table(Z2, conn) == []
        assert _aut_order(Z2, conn) == 2


def test_z2_table_claims_range() -> None:
    with pytest.raises(FamilyError):
        z2_table_claims(11)
    with pytest.raises(FamilyError):
        z2_table_claims(4)


def test_z2_general_structure_and_aut() -> None:
    conn = z2_general(11)
    gamma = build(Z2, conn)
    graph = gamma.graph
    assert is_oriented(graph) and is_k_regular(graph, 3) and is_weakly_connected(graph)
    # out-neighbors of 1_0: the one-cell at (0,1) and the {1,x}-cell at (0,9)
    assert _out_neighbors(gamma, 0, 0) == {
        gamma.vertex_of(0, 1),
        gamma.vertex_of(0, 9),
        gamma.vertex_of(1, 9),
    }
    assert _aut_order(Z2, conn) == 2
    with pytest.raises(FamilyError):
        z2_general(10)


# ---------------------------------------------------------------------------
# Cyclic families.
# ---------------------------------------------------------------------------

def test_cyclic_m2_neighborhoods() -> None:
    group, _ = make_cyclic(7)
    conn = cyclic_m2(group)
    gamma = build(group, conn)
    x, n = 1, 7

    def v(power: int, block: int) -> int:
        return gamma.vertex_of(power % n, block)

    assert _out_neighbors(gamma, 0, 0) == {v(1, 0), v(2, 0), v(0, 1)}
    assert _out_neighbors(gamma, 0, 1) == {v(-1, 1), v(-2, 1), v(1, 0)}
    assert iterated_out_neighborhood(gamma.graph, gamma.vertex_of(0, 0), 2) == frozenset(
        {v(1, 0), v(2, 0), v(3, 0), v(4, 0), v(1, 1), v(-1, 1), v(2, 1), v(-2, 1)}
    )
    assert iterated_out_neighborhood(gamma.graph, gamma.vertex_of(0, 1), 2) == frozenset(
        {v(0, 0), v(-1, 0), v(2, 0), v(3, 0), v(1, 1), v(-2, 1), v(-3, 1), v(-4, 1)}
    )
    assert _aut_order(group, conn) == 7


def test_cyclic_m2_preconditions() -> None:
    for n in (3, 4):
        with pytest.raises(FamilyError):
            cyclic_m2(make_cyclic(n)[0])
    with pytest.raises(FamilyError):
        cyclic_m2(klein_four()[0])


def test_cyclic_general_neighborhoods() -> None:
    group, _ = make_cyclic(5)
    m = 4
    conn = cyclic_general(group, m)
    gamma = build(group, conn)

    def v(power: int, block: int) -> int:
        return gamma.vertex_of(power % 5, block)

    assert _out_neighbors(gamma, 0, 0) == {v(1, 0), v(0, 1), v(-1, 1)}
    for i in range(1, m - 1):
        assert _out_neighbors(gamma, 0, i) == {v(-1, i), v(0, i + 1), v(-1, i + 1)}
    assert _out_neighbors(gamma, 0, m - 1) == {v(-1, m - 1), v(1, 0), v(-1, 0)}
    assert _aut_order(group, conn) == 5


def test_cyclic_general_unrepaired_column_fails() -> None:
    group, _ = make_cyclic(5)
    literal = cyclic_general_claims(group, 3, repaired=False)
    msgs = validate_claims(group, 3, literal)
    assert any("column" in msg for msg in msgs)
    assert _clearing_single_moves(group, 3, literal) == [(5, (2, 0))]


def test_cyclic_general_preconditions() -> None:
    group, _ = make_cyclic(6)
    with pytest.raises(FamilyError):
        cyclic_general(group, 2)
    with pytest.raises(FamilyError):
        cyclic_general(make_cyclic(2)[0], 4)
    with pytest.raises(FamilyError):
        cyclic_general(klein_four()[0], 4)


# ---------------------------------------------------------------------------
# Klein four-group families.
# ---------------------------------------------------------------------------

def test_klein_m3_neighborhoods() -> None:
    group, _ = klein_four()
    one, y, x, xy = 0, 1, 2, 3
    conn = klein_m3()
    gamma = build(group, conn)
    assert _out_neighbors(gamma, one, 0) == {
        gamma.vertex_of(one, 1),
        gamma.vertex_of(x, 2),
        gamma.vertex_of(xy, 2),
    }
    assert _out_neighbors(gamma, one, 1) == {
        gamma.vertex_of(one, 2),
        gamma.vertex_of(x, 0),
        gamma.vertex_of(y, 0),
    }
    assert _out_neighbors(gamma, one, 2) == {
        gamma.vertex_of(y, 0),
        gamma.vertex_of(x, 1),
        gamma.vertex_of(y, 1),
    }
    start = gamma.vertex_of(one, 0)
    two_step = iterated_out_neighborhood(gamma.graph, start, 2)
    # beyond the direct out-neighborhood, two steps reach exactly seven
    # vertices: everything except the start and its mates in block 2
    assert two_step - frozenset(gamma.graph.out_adj[start]) == frozenset(
        {
            gamma.vertex_of(one, 2),
            gamma.vertex_of(x, 0),
            gamma.vertex_of(y, 0),
            gamma.vertex_of(xy, 0),
            gamma.vertex_of(xy, 1),
            gamma.vertex_of(y, 1),
            gamma.vertex_of(x, 1),
        }
    )
    assert _aut_order(group, conn) == 4


def test_klein_m4_is_omsr() -> None:
    group, _ = klein_four()
    conn = klein_m4()
    graph = build(group, conn).graph
    assert is_oriented(graph) and is_k_regular(graph, 3) and is_weakly_connected(graph)
    assert _aut_order(group, conn) == 4


def test_klein_general_neighborhoods() -> None:
    group, _ = klein_four()
    one, y, x = 0, 1, 2
    m = 6
    conn = klein_general(m)
    gamma = build(group, conn)
    assert _out_neighbors(gamma, one, 0) == {
        gamma.vertex_of(y, 1),
        gamma.vertex_of(one, m - 2),
        gamma.vertex_of(x, m - 2),
    }
    assert _aut_order(group, conn) == 4
    with pytest.raises(FamilyError):
        klein_general(4)


# ---------------------------------------------------------------------------
# Two-generated family.
# ---------------------------------------------------------------------------

def test_two_generated_neighborhoods() -> None:
    group, spec = standard_two_generated("S3")
    m = 3
    conn = two_generated(group, spec, m)
    gamma = build(group, conn)
    x, y = spec.x, spec.y
    for i in range(m - 1):
        assert _out_neighbors(gamma, 0, i) == {
            gamma.vertex_of(x, i),
            gamma.vertex_of(0, i + 1),
            gamma.vertex_of(x, i + 1),
        }
    assert _out_neighbors(gamma, 0, m - 1) == {
        gamma.vertex_of(x, m - 1),
        gamma.vertex_of(x, 0),
        gamma.vertex_of(y, 0),
    }
    assert _aut_order(group, conn) == 6


def test_two_generated_unrepaired_column_fails() -> None:
    group, spec = standard_two_generated("S3")
    literal = two_generated_claims(group, spec, 3, repaired=False)
    assert validate_claims(group, 3, literal) != []
    assert _clearing_single_moves(group, 3, literal) == [(5, (2, 0))]
    # at m = 2 the unrepaired cell collides with the diagonal claim
    literal = two_generated_claims(group, spec, 2, repaired=False)
    msgs = validate_claims(group, 2, literal)
    assert any("cell (1,1)" in msg for msg in msgs)


def test_two_generated_preconditions() -> None:
    s3, spec = standard_two_generated("S3")
    with pytest.raises(FamilyError):
        two_generated(s3, GeneratorSpec(x=spec.x, y=None), 3)
    z6, _ = make_cyclic(6)
    with pytest.raises(FamilyError):
        two_generated(z6, GeneratorSpec(x=1, y=2), 3)  # x alone generates
    with pytest.raises(FamilyError):
        two_generated(s3, spec, 1)


def test_normalized_pair() -> None:
    s3, spec = standard_two_generated("S3")
    assert normalized_pair(s3, spec) == spec

    # swap when only y has order >= 3
    swapped = normalized_pair(s3, GeneratorSpec(x=spec.y, y=spec.x))
    assert element_order(s3, swapped.x) >= 3

    # two involutions in S3: x*y has order 3
    refl1 = spec.y
    refl2 = s3.mul(spec.x, spec.y)
    assert element_order(s3, refl1) == 2 and element_order(s3, refl2) == 2
    fixed = normalized_pair(s3, GeneratorSpec(x=refl1, y=refl2))
    assert element_order(s3, fixed.x) >= 3

    kl, klspec = klein_four()
    with pytest.raises(FamilyError):
        normalized_pair(kl, klspec)


def test_two_generated_from_involution_pair() -> None:
    s3, spec = standard_two_generated("S3")
    refl1 = spec.y
    refl2 = s3.mul(spec.x, spec.y)
    fixed = normalized_pair(s3, GeneratorSpec(x=refl1, y=refl2))
    conn = two_generated(s3, fixed, 4)
    assert _aut_order(s3, conn) == 6


# ---------------------------------------------------------------------------
# Dispatcher.
# ---------------------------------------------------------------------------

def test_applicable_family_routing() -> None:
    z2spec = GeneratorSpec(x=1)
    assert applicable_family(Z2, z2spec, 5) == "z2-table"
    assert applicable_family(Z2, z2spec, 10) == "z2-table"
    assert applicable_family(Z2, z2spec, 11) == "z2-general"

    kl, klspec = klein_four()
    assert applicable_family(kl, klspec, 3) == "klein-m3"
    assert applicable_family(kl, klspec, 4) == "klein-m4"
    assert applicable_family(kl, klspec, 7) == "klein-general"

    z7, z7spec = make_cyclic(7)
    assert applicable_family(z7, z7spec, 2) == "cyclic-m2"
    assert applicable_family(z7, z7spec, 3) == "cyclic-general"

    s3, s3spec = standard_two_generated("S3")
    assert applicable_family(s3, s3spec, 2) == "two-gen"


def test_applicable_family_exceptions() -> None:
    z1, _ = make_cyclic(1)
    verdict = applicable_family(z1, GeneratorSpec(x=0), 3)
    assert isinstance(verdict, ExceptionVerdict)
    assert verdict.status == "open"
    assert verdict.clause == "trivial-group-needs-rigid-digraph"

    z2spec = GeneratorSpec(x=1)
    for m in (2, 3, 4):
        verdict = applicable_family(Z2, z2spec, m)
        assert isinstance(verdict, ExceptionVerdict)
        assert verdict.status == "impossible"
        assert verdict.clause == "order-two-group-with-at-most-four-blocks"

    kl, klspec = klein_four()
    verdict = applicable_family(kl, klspec, 2)
    assert isinstance(verdict, ExceptionVerdict)
    assert verdict.clause == "klein-group-with-two-blocks"

    for n in (3, 4):
        group, spec = make_cyclic(n)
        verdict = applicable_family(group, spec, 2)
        assert isinstance(verdict, ExceptionVerdict)
        assert verdict.clause == "cyclic-group-of-order-three-or-four-with-two-blocks"


def test_applicable_family_input_errors() -> None:
    z7, z7spec = make_cyclic(7)
    with pytest.raises(ValueError):
        applicable_family(z7, z7spec, 1)
    s3, _ = standard_two_generated("S3")
    with pytest.raises(ValueError):
        applicable_family(s3, GeneratorSpec(x=0), 3)


def test_construct_omsr_returns_matrices_or_verdicts() -> None:
    z7, z7spec = make_cyclic(7)
    conn = construct_omsr(z7, z7spec, 2)
    assert _aut_order(z7, conn) == 7

    z3, z3spec = make_cyclic(3)
    verdict = construct_omsr(z3, z3spec, 2)
    assert isinstance(verdict, ExceptionVerdict)


def test_every_family_emitter_validates_preconditions() -> None:
    z7, z7spec = make_cyclic(7)
    with pytest.raises(FamilyError):
        FAMILIES["z2-table"].emit(z7, z7spec, 5)
    with pytest.raises(FamilyError):
        FAMILIES["klein-m3"].emit(z7, z7spec, 3)
    with pytest.raises(FamilyError):
        FAMILIES["two-gen"].emit(z7, z7spec, 3)
