from itertools import permutations
from math import factorial, prod

import pytest

from cellres import (
    PreconditionError,
    Rectangle2D,
    cellular_complex,
    compose,
    cycle_constant,
    differentiate,
    form_term,
    fundamental_cycle_check,
    minimize,
    multiplicity,
    partial_only,
    permutation_cycle_check,
    pure_power_exponents,
    reoriented,
    staircase_corners_2d,
    staircase_partition_2d,
)
from cellres.cycle import FormMatrix, FormMonomial
from conftest import embedded_hull, random_generic_ideal_3, random_staircase_ideal
from oracles import staircase_lattice_points


def test_cycle_constant_values():
    assert [cycle_constant(n) for n in (1, 2, 3, 4)] == [-1, -1, 1, 1]


def test_form_term_canonicalization():
    assert form_term(2, (1, 0), (1, 0)) == FormMonomial(-2, (1, 0), (0, 1))
    assert form_term(1, (0, 0), (0, 0)) is None
    assert form_term(0, (1, 1), (0,)) is None
    assert form_term(3, (2,), (0,)) == FormMonomial(3, (2,), (0,))


def test_differentiate_entries():
    M = minimize([(3, 0), (1, 2), (0, 4)])
    X = embedded_hull(M)
    F = cellular_complex(X)
    d1 = differentiate(F, 1)
    # the column of the first edge starts with -w^{b_2-b_1}: derivative
    # -(b_2-b_1) w^{b_2-b_1-1} dw
    col = F.basis(1).index((0, 1))
    row = F.basis(0).index((0,))
    assert d1.entries[row][col] == (FormMonomial(-2, (0, 1), (1,)),)
    d0 = differentiate(F, 0)
    # vertex (1,2): z w^2 -> w^2 dz + 2 z w dw
    vcol = F.basis(0).index((1,))
    assert d0.entries[0][vcol] == (
        FormMonomial(1, (0, 2), (0,)),
        FormMonomial(2, (1, 1), (1,)),
    )


def test_differentiate_constant_entry_is_zero(ex61_embedded):
    # the inner edge and triangle share a label, so the boundary entry is a
    # unit with vanishing differential
    F = cellular_complex(ex61_embedded)
    row = F.basis(1).index((1, 2))
    col = F.basis(2).index((1, 2, 4))
    cell = F.matrix(2)[row][col]
    assert cell.sign != 0 and cell.exp == (0, 0, 0)
    assert differentiate(F, 2).entries[row][col] == ()


def test_compose_antisymmetry():
    dz = FormMatrix(1, 1, (((FormMonomial(1, (0, 0), (0,)),),),))
    dw = FormMatrix(1, 1, (((FormMonomial(1, (0, 0), (1,)),),),))
    forward = compose([dz, dw]).entries[0][0]
    backward = compose([dw, dz]).entries[0][0]
    assert forward == (FormMonomial(1, (0, 0), (0, 1)),)
    assert backward == (FormMonomial(-1, (0, 0), (0, 1)),)
    assert compose([dz, dz]).entries[0][0] == ()


def test_staircase_product_matches_formula(rng):
    # -d_z(phi_0) o d_w(phi_1) has sigma_i entry Vol(P_i) z^{a_i} w^{b_{i+1}}
    # dz/z ^ dw/w
    for _ in range(5):
        M = random_staircase_ideal(rng)
        X = embedded_hull(M)
        F = cellular_complex(X)
        corners = staircase_corners_2d(M)
        composed = compose([partial_only(F, 0, 0), partial_only(F, 1, 1)])
        for i in range(len(corners) - 1):
            a_i, _ = corners[i]
            _, b_next = corners[i + 1]
            vol = a_i * (b_next - corners[i][1])
            col = F.basis(1).index((i, i + 1))
            assert composed.entries[0][col] == (
                FormMonomial(-vol, (a_i - 1, b_next - 1), (0, 1)),
            )


@pytest.mark.parametrize("b", [(3,), (2, 3), (2, 3, 4), (2, 1, 3, 2)])
def test_fundamental_cycle_complete_intersection(b):
    n = len(b)
    gens = [tuple(b[i] if j == i else 0 for j in range(n)) for i in range(n)]
    M = minimize(gens)
    X = embedded_hull(M)
    result = fundamental_cycle_check(X, M)
    assert result["ok"]
    assert result["lhs"] == factorial(n) * prod(b)


def test_fundamental_cycle_small_staircase():
    M = minimize([(2, 0), (1, 1), (0, 2)])
    X = embedded_hull(M)
    result = fundamental_cycle_check(X, M)
    assert result == {"lhs": 6, "rhs": 6, "ok": True}


def test_fundamental_cycle_ex61(ex61_ideal, ex61_embedded):
    result = fundamental_cycle_check(ex61_embedded, ex61_ideal)
    assert result == {"lhs": 24, "rhs": 24, "ok": True}


def test_permutation_checks_n2_match_partition_volumes(rng):
    for _ in range(5):
        M = random_staircase_ideal(rng)
        X = embedded_hull(M)
        m = multiplicity(M)
        tops = X.faces_of_dim(1)
        for s, order in (((1, 2), "P"), ((2, 1), "Q")):
            result = permutation_cycle_check(X, M, s)
            assert result["ok"]
            assert result["lhs"] == -m  # the two-variable constant is -1
            areas = [r.area for r in staircase_partition_2d(M, order)]
            assert [-result["per_face"][fid] for fid in tops] == areas


def test_permutation_check_n1():
    M = minimize([(5,)])
    X = embedded_hull(M)
    result = permutation_cycle_check(X, M, (1,))
    assert result["ok"]
    assert result["lhs"] == cycle_constant(1) * 5 == -5


def test_permutation_checks_n3_generic(rng):
    M = random_generic_ideal_3(rng)
    X = embedded_hull(M)
    m = multiplicity(M)
    for s in permutations((1, 2, 3)):
        result = permutation_cycle_check(X, M, s)
        assert result["ok"]
        assert result["lhs"] == cycle_constant(3) * m == m


def test_permutation_check_requires_generic(ex61_ideal, ex61_embedded):
    with pytest.raises(PreconditionError):
        permutation_cycle_check(ex61_embedded, ex61_ideal, (1, 2, 3))
    result = permutation_cycle_check(
        ex61_embedded, ex61_ideal, (1, 2, 3), allow_nongeneric=True
    )
    assert result["lhs"] == result["expected"]


def test_permutation_sum_recovers_full_differential(rng, ex61_ideal, ex61_embedded):
    # multilinearity: the per-permutation masses add up to the full mass,
    # which differs from the full-check lhs by the cycle constant
    cases = [(ex61_ideal, ex61_embedded)]
    M = random_staircase_ideal(rng)
    cases.append((M, embedded_hull(M)))
    for M, X in cases:
        n = M.n
        full = fundamental_cycle_check(X, M)
        total = sum(
            permutation_cycle_check(X, M, s, allow_nongeneric=True)["lhs"]
            for s in permutations(range(1, n + 1))
        )
        assert total == cycle_constant(n) * full["lhs"]


def test_fundamental_cycle_invariant_under_lower_reorientation(
    rng, ex61_ideal, ex61_embedded
):
    lower = [fid for fid, f in ex61_embedded.faces.items() if 1 <= f.dim < 2]
    flips = {fid for fid in lower if rng.random() < 0.5}
    X = reoriented(ex61_embedded, flips)
    assert fundamental_cycle_check(X, ex61_ideal)["lhs"] == 24


def test_four_variable_squared_maximal_ideal():
    # four-dimensional hull with an inner cell; exercises every module at
    # once in a regime the random pools do not reach
    from itertools import combinations

    from cellres import duality_check, residue_current, residue_via_chain_maps

    gens = [tuple(2 if j == i else 0 for j in range(4)) for i in range(4)]
    gens += [
        tuple(1 if j in pair else 0 for j in range(4))
        for pair in combinations(range(4), 2)
    ]
    M = minimize(gens)
    b = (2, 2, 2, 2)
    X = embedded_hull(M)
    assert [len(X.faces_of_dim(k)) for k in range(4)] == [10, 24, 20, 5]
    R = residue_current(X, b)
    assert len(R.entries) == 5
    assert all(c.sign == 1 for c in R.entries.values())
    assert (1, 1, 1, 1) in {c.alpha for c in R.entries.values()}
    assert residue_via_chain_maps(X, b).entries == R.entries
    assert duality_check(R, M)
    assert multiplicity(M) == 5
    result = fundamental_cycle_check(X, M, R=R)
    assert result["ok"] and result["lhs"] == 120
    sub = permutation_cycle_check(X, M, (2, 4, 1, 3), allow_nongeneric=True, R=R)
    assert sub["ok"] and sub["lhs"] == cycle_constant(4) * 5 == 5


def test_partition_examples():
    M = minimize([(2, 0), (1, 1), (0, 2)])
    assert staircase_partition_2d(M, "P") == [
        Rectangle2D(0, 2, 0, 1),
        Rectangle2D(0, 1, 1, 2),
    ]
    assert staircase_partition_2d(M, "Q") == [
        Rectangle2D(1, 2, 0, 1),
        Rectangle2D(0, 1, 0, 2),
    ]
    ci = minimize([(3, 0), (0, 4)])
    assert staircase_partition_2d(ci, "P") == [Rectangle2D(0, 3, 0, 4)]


def test_partition_covers_staircase(rng):
    for _ in range(8):
        M = random_staircase_ideal(rng)
        box = pure_power_exponents(M)
        points = staircase_lattice_points(M.generators, box)
        m = multiplicity(M)
        for order in ("P", "Q"):
            rects = staircase_partition_2d(M, order)
            assert sum(r.area for r in rects) == m == len(points)
            for x, y in points:
                assert sum(1 for r in rects if r.contains(x, y)) == 1


def test_partition_rejects_higher_dimensions():
    with pytest.raises(PreconditionError):
        staircase_partition_2d(minimize([(1, 0, 0), (0, 1, 0), (0, 0, 1)]), "P")
    with pytest.raises(PreconditionError):
        staircase_partition_2d(minimize([(2, 0), (0, 2)]), "R")
