import pytest

from pgcover import formats
from pgcover.constructions import (ConstructionError, ConstructionRecipe, build,
                                   dual_construction, example16_construct,
                                   generalized_example16, pencil, remark9_construct)
from pgcover.covers import (holes, holes_collinear, holes_in_common_hyperplane,
                            is_blocking_set, is_cover, tangent_counts)
from pgcover.galois import field_new, field_of_order
from pgcover.projective import space

from test_covers import brute_holes


def test_pencil_examples(gf5):
    P = space(2, gf5)
    cov = pencil(2, gf5, P.subspace([(0, 0, 1)]))
    assert sorted(h.coeffs for h in cov) == sorted([(0, 1, 0)] + [(1, b, 0) for b in range(5)])
    assert is_cover(cov)
    assert len(pencil(3, field_new(3))) == 4
    with pytest.raises(ConstructionError):
        pencil(3, field_new(3), space(3, field_new(3)).subspace([(1, 0, 0, 0)]))


@pytest.mark.parametrize("n, q, a, expected", [
    (2, 5, 0, 5), (2, 5, 1, 4), (3, 3, 1, 6),
])
def test_remark9_examples(n, q, a, expected):
    con = remark9_construct(n, field_of_order(q), a, seed=11)
    H = holes(con.cover)
    assert len(con.cover) == q + a
    assert len(H) == expected
    assert set(H.indices) == brute_holes(con.cover)
    dropped = con.cover.space.hyperplane(con.recipe.provenance["dropped"])
    assert H.mask & ~con.cover.space.masks[dropped.index] == 0


def feasible_params(max_points=1000):
    for n, qs in [(2, [2, 3, 4, 5, 7, 8, 9, 11]), (3, [2, 3, 4, 5, 7]), (4, [2, 3])]:
        for q in qs:
            if space(n, field_of_order(q)).size > max_points:
                continue
            top = q - 1 if n == 2 else q
            for a in range(top + 1):
                yield n, q, a


@pytest.mark.parametrize("n, q, a", list(feasible_params()))
def test_remark9_exact_hole_count_all_feasible(n, q, a):
    con = remark9_construct(n, field_of_order(q), a, seed=n * 100 + q + a)
    cov = con.cover
    P = cov.space
    H = holes(cov)
    assert len(cov) == q + a
    assert len(H) == q ** (n - 1) - a * q ** (n - 2)
    dropped = P.index_of(con.recipe.provenance["dropped"])
    axis = P.subspace(con.recipe.provenance["axis"])
    assert H.mask & ~P.masks[dropped] == 0
    assert H.mask & axis.mask == 0


def test_remark9_infeasible():
    with pytest.raises(ConstructionError):
        remark9_construct(2, field_new(5), 5)
    with pytest.raises(ConstructionError):
        remark9_construct(3, field_new(3), 4)
    with pytest.raises(ConstructionError):
        remark9_construct(2, field_new(5), -1)


def test_remark9_holes_in_pg35_lie_in_dropped_plane():
    con = remark9_construct(3, field_new(5), 2, seed=4)
    w = holes_in_common_hyperplane(holes(con.cover))
    assert list(w.coeffs) == con.recipe.provenance["dropped"]


@pytest.mark.parametrize("q", [5, 8, 11, 17])
def test_example16(q):
    con = example16_construct(field_of_order(q), seed=1)
    a = (q - 2) // 3
    H = holes(con.cover)
    assert len(con.cover) == q + a
    assert len(H) == q + a == 2 * (q - a - 1)
    assert not holes_collinear(H)
    P = con.cover.space
    m1, m2 = (P.index_of(v) for v in con.recipe.provenance["omitted"])
    assert (H.mask & P.masks[m1]).bit_count() == q - a - 1
    assert (H.mask & P.masks[m2]).bit_count() == q - a - 1
    assert H.mask & ~(P.masks[m1] | P.masks[m2]) == 0


def test_example16_needs_q_2_mod_3():
    for q in (4, 7, 9):
        with pytest.raises(ConstructionError):
            example16_construct(field_of_order(q))


@pytest.mark.parametrize("q, a, expected", [(5, 3, 2), (7, 0, 12), (5, 0, 8), (8, 6, 2)])
def test_generalized_example16(q, a, expected):
    con = generalized_example16(field_of_order(q), a, seed=2)
    H = holes(con.cover)
    assert len(con.cover) == q + a
    assert len(H) == expected == 2 * (q - a - 1)
    assert set(H.indices) == brute_holes(con.cover)


def test_generalized_example16_range():
    with pytest.raises(ConstructionError):
        generalized_example16(field_new(5), 4)


def test_replay_is_bit_identical():
    for recipe in [ConstructionRecipe("remark9", 3, field_new(5), 3, 99),
                   ConstructionRecipe("example16", 2, field_new(11), 3, 5),
                   ConstructionRecipe("generalized_example16", 2, field_new(7), 2, 8)]:
        first = build(recipe)
        again = build(ConstructionRecipe.from_json(first.recipe.to_json()))
        assert formats.dumps(first.cover) == formats.dumps(again.cover)
        assert first.recipe.to_json() == again.recipe.to_json()


def test_seed_changes_choice():
    covers = {remark9_construct(2, field_new(11), 4, seed=s).cover.indices for s in range(10)}
    assert len(covers) > 1


@pytest.mark.parametrize("n, q, a, size", [(2, 5, 1, 7), (3, 3, 1, 5), (2, 5, 0, 6)])
def test_dual_construction(n, q, a, size):
    con = remark9_construct(n, field_of_order(q), a, seed=3)
    B = dual_construction(con)
    assert len(B) == size == q + a + 1
    assert is_blocking_set(B)
    P = B.space
    mu = P.index_of(con.recipe.provenance["dropped"])
    assert tangent_counts(B)[mu] > 0


def test_dual_of_full_pencil_is_a_line(gf5):
    B = dual_construction(remark9_construct(2, gf5, 0))
    P = B.space
    assert any(B.mask == P.masks[j] for j in range(P.size))


def test_dual_construction_rejects_two_lines():
    with pytest.raises(ConstructionError):
        dual_construction(example16_construct(field_new(5)))
