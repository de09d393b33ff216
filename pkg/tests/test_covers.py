from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from pgcover.covers import (CoverError, PartialCover, PointSet, covering_multiplicity,
                            dualize_cover, dualize_points, essential_hyperplanes, holes,
                            holes_collinear, holes_in_common_hyperplane, is_blocking_set,
                            is_cover, is_essential_point, is_partial_cover, is_trivial,
                            minimal_reduce, random_policy, tangent_counts, tangent_hyperplanes)
from pgcover.projective import dot, theta

from conftest import pg


def brute_holes(cover):
    """Holes by direct dot products, independent of the bitmask table."""
    P = cover.space
    hs = [P.coords[j] for j in cover.indices]
    return {i for i, v in enumerate(P.coords) if all(dot(P.spec, v, h) != 0 for h in hs)}


def pencil_through(P, center_coords):
    return PartialCover.of(P, P.hyperplane_indices_through(P.subspace(center_coords)))


@pytest.fixture
def pencil5(plane5):
    return pencil_through(plane5, [(0, 0, 1)])


def test_multiplicity_on_pencil(plane5, pencil5):
    R = plane5.point((0, 0, 1))
    assert covering_multiplicity(pencil5, R) == 6
    assert covering_multiplicity(pencil5, plane5.point((1, 2, 3))) == 1
    assert covering_multiplicity(PartialCover(plane5, ()), R) == 0


def test_holes_five_concurrent_lines(plane5):
    lines = [(0, 1, 0)] + [(1, b, 0) for b in range(1, 5)]   # all [a,b,0] except [1,0,0]
    S = PartialCover.of(plane5, lines)
    H = holes(S)
    assert {p.coords for p in H} == {(0, 1, c) for c in range(5)}
    assert set(H.indices) == brute_holes(S)


def test_pencil_has_no_holes(plane5, pg33, pencil5):
    assert len(holes(pencil5)) == 0
    assert len(holes(pencil_through(pg33, [(0, 0, 1, 0), (0, 0, 0, 1)]))) == 0


def test_pencil_minus_one(plane5, pencil5):
    for drop in pencil5.indices:
        S = pencil5.without(drop)
        H = holes(S)
        assert len(H) == 5
        assert set(H.indices) == brute_holes(S)
        assert all(plane5.masks[drop] >> i & 1 for i in H.indices)
        assert is_partial_cover(S)


def test_cover_predicates(plane5, pencil5):
    assert is_cover(pencil5)
    assert is_cover(PartialCover(plane5, tuple(range(plane5.size))))
    assert not is_cover(pencil5.without(pencil5.indices[0]))


def test_essential_pencil(plane5, pencil5):
    assert len(essential_hyperplanes(pencil5)) == 6
    extra = plane5.hyperplane((1, 1, 1))
    C = pencil5.with_added(extra)
    assert extra not in essential_hyperplanes(C)
    assert essential_hyperplanes(PartialCover(plane5, tuple(range(plane5.size)))) == []


def all_reduction_outcomes(C):
    """Every minimal cover reachable by any sequence of removals (exhaustive search)."""
    masks = C.space.masks
    full = C.space.full_mask

    def covers(s):
        m = 0
        for i in s:
            m |= masks[i]
        return m == full

    @lru_cache(maxsize=None)
    def walk(state):
        nxt = [i for i in state if covers(state - {i})]
        if not nxt:
            return frozenset([state])
        out = set()
        for i in nxt:
            out |= walk(state - {i})
        return frozenset(out)

    return walk(frozenset(C.indices))


def test_minimal_reduce_pencil_plus_three(plane5, pencil5):
    extras = [(1, 1, 1), (1, 2, 4), (0, 1, 3)]   # pairwise meet off the centre: not concurrent
    C = pencil5.with_added(*extras)
    assert len(C) == 9
    outcomes = all_reduction_outcomes(C)
    assert outcomes == {frozenset(pencil5.indices)}
    red = minimal_reduce(C)
    assert red.cover == pencil5
    assert red.uniqueness_guaranteed
    for seed in range(20):
        assert minimal_reduce(C, random_policy(seed)).cover == pencil5


def test_minimal_reduce_fixed_point(pencil5):
    red = minimal_reduce(pencil5)
    assert red.cover == pencil5 and red.removed == ()


def test_minimal_reduce_above_bound(plane5, pencil5):
    others = [i for i in range(plane5.size) if i not in pencil5.indices][:5]
    C = pencil5.with_added(*others)   # 11 = 2q + 1 lines
    red = minimal_reduce(C)
    assert not red.uniqueness_guaranteed
    assert is_cover(red.cover)
    assert set(red.cover.indices) <= set(C.indices)
    assert len(essential_hyperplanes(red.cover)) == len(red.cover)


def test_minimal_reduce_requires_cover(pencil5):
    with pytest.raises(CoverError):
        minimal_reduce(pencil5.without(pencil5.indices[0]))


def test_is_trivial(pg33):
    L = pg33.subspace([(0, 0, 1, 0), (0, 0, 0, 1)])
    pen = PartialCover.of(pg33, pg33.hyperplane_indices_through(L))
    assert is_trivial(pen) == L
    assert is_trivial(pen.without(pen.indices[0])) is None
    more = pen.with_added(pg33.hyperplane((1, 1, 1, 1)), pg33.hyperplane((0, 1, 2, 0)))
    assert is_trivial(more) == L


def test_dualize_examples(plane5, pencil5):
    S = PartialCover.of(plane5, [(1, 0, 0), (0, 1, 0)])
    assert {p.coords for p in dualize_cover(S)} == {(1, 0, 0), (0, 1, 0)}
    assert dualize_points(dualize_cover(S)) == S
    B = dualize_cover(pencil5)
    # dual of the pencil through R is the line with coefficients R
    line = {i for i, v in enumerate(plane5.coords) if dot(plane5.spec, v, (0, 0, 1)) == 0}
    assert set(B.indices) == line


def test_full_line_blocking_set(plane5):
    B = PointSet.from_mask(plane5, plane5.masks[plane5.index_of((0, 0, 1))])
    assert len(B) == 6 and is_blocking_set(B)
    for P in B:
        tangents = tangent_hyperplanes(B, P)
        assert len(tangents) == 5 == 5 ** 1 - 0 * 5 ** 0
        assert is_essential_point(B, P)
    assert set(tangent_counts(B).values()) == {5}


def test_line_minus_point_not_blocking(plane5):
    B = PointSet.from_mask(plane5, plane5.masks[plane5.index_of((0, 0, 1))])
    missing = B.indices[0]
    assert not is_blocking_set(PointSet(plane5, B.indices[1:]))
    with pytest.raises(CoverError):
        tangent_hyperplanes(PointSet(plane5, B.indices[1:]), plane5.point_at(missing))


def test_holes_geometry(plane5, pg33):
    H = PointSet.of(plane5, [(0, 1, c) for c in range(5)])
    assert holes_collinear(H)
    assert holes_in_common_hyperplane(H).coeffs == (1, 0, 0)
    T = PointSet.of(plane5, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert not holes_collinear(T)
    assert holes_in_common_hyperplane(T) is None
    with pytest.raises(CoverError):
        holes_collinear(PointSet(plane5, ()))
    # a single point in PG(3,3): smallest-index plane through it
    one = PointSet.of(pg33, [(1, 0, 0, 0)])
    assert holes_in_common_hyperplane(one).coeffs == (0, 0, 0, 1)


# -- properties ---------------------------------------------------------------

SPACES = [(2, 3), (2, 4), (2, 5), (3, 2), (3, 3)]


@st.composite
def hyperplane_sets(draw):
    n, q = draw(st.sampled_from(SPACES))
    P = pg(n, q)
    idx = draw(st.sets(st.integers(0, P.size - 1), max_size=2 * q + 2))
    return PartialCover.of(P, idx)


@settings(max_examples=150, deadline=None)
@given(hyperplane_sets())
def test_partition_and_double_counting(S):
    P = S.space
    mult = [covering_multiplicity(S, p) for p in P.all_points()]
    assert sum(1 for m in mult if m == 0) + sum(1 for m in mult if m >= 1) == theta(P.n, P.q)
    assert sum(mult) == len(S) * theta(P.n - 1, P.q)
    assert set(holes(S).indices) == {i for i, m in enumerate(mult) if m == 0}
    assert set(holes(S).indices) == brute_holes(S)
    assert is_cover(S) != is_partial_cover(S)


@settings(max_examples=150, deadline=None)
@given(hyperplane_sets(), st.data())
def test_adding_a_hyperplane_never_adds_holes(S, data):
    j = data.draw(st.integers(0, S.space.size - 1))
    assert set(holes(S.with_added(j)).indices) <= set(holes(S).indices)


@settings(max_examples=100, deadline=None)
@given(hyperplane_sets())
def test_duality_transport(S):
    B = dualize_cover(S)
    assert dualize_points(B) == S
    assert is_cover(S) == is_blocking_set(B)
    if len(S) and is_cover(S):
        ess = {h.index for h in essential_hyperplanes(S)}
        counts = tangent_counts(B)
        assert ess == {i for i, c in counts.items() if c > 0}
        # tangents at the dual point = points privately covered by the hyperplane
        for h in S.indices:
            private = S.space.masks[h]
            for k in S.indices:
                if k != h:
                    private &= ~S.space.masks[k]
            assert counts[h] == private.bit_count()


@settings(max_examples=60, deadline=None)
@given(hyperplane_sets())
def test_minimal_reduce_output(S):
    if not is_cover(S):
        return
    red = minimal_reduce(S)
    assert is_cover(red.cover)
    assert set(red.cover.indices) <= set(S.indices)
    assert len(essential_hyperplanes(red.cover)) == len(red.cover)
