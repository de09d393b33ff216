import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pgcover.galois import field_new
from pgcover.projective import (GeometryError, bits, dot, incident, line_through, normalize,
                                space, theta)

from conftest import pg


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("n, q, expected", [(2, 5, 31), (1, 7, 8), (3, 2, 15)])
def test_theta(n, q, expected):
    assert theta(n, q) == expected


def test_normalize(gf5, gf4):
    assert normalize(gf5, (0, 2, 4)) == (0, 1, 2)
    assert normalize(gf5, (1, 3, 0)) == (1, 3, 0)
    assert normalize(gf4, (2, 2, 0)) == (1, 1, 0)
    with pytest.raises(GeometryError):
        normalize(gf5, (0, 0, 0))


@pytest.mark.parametrize("n, q", [(2, 5), (3, 3), (2, 4), (2, 8), (3, 2), (4, 2)])
def test_enumeration_sorted_and_indexed(n, q):
    P = pg(n, q)
    pts = P.all_points()
    assert len(pts) == len(P.all_hyperplanes()) == theta(n, q)
    coords = [p.coords for p in pts]
    assert coords == sorted(coords)
    assert len(set(coords)) == len(coords)
    assert all(p.index == i and P.index_of(p.coords) == i for i, p in enumerate(pts))
    assert all(next(c for c in v if c) == 1 for v in coords)


@pytest.mark.parametrize("n, q", [(2, 5), (3, 3), (2, 4), (3, 4), (2, 7), (3, 2)])
def test_masks_against_dot_products(n, q):
    P = pg(n, q)
    spec = P.spec
    for j, h in enumerate(P.coords):
        expected = {i for i, v in enumerate(P.coords) if dot(spec, v, h) == 0}
        assert set(bits(P.masks[j])) == expected


@pytest.mark.parametrize("n, q", [(2, q) for q in (2, 3, 4, 5, 7)] + [(3, q) for q in (2, 3, 4, 5, 7)])
def test_each_hyperplane_has_theta_n_minus_1_points(n, q):
    P = pg(n, q)
    t = theta(n - 1, q)
    assert all(m.bit_count() == t for m in P.masks)
    # symmetric table: each point lies on the same number of hyperplanes
    on = [0] * P.size
    for m in P.masks:
        for i in bits(m):
            on[i] += 1
    assert set(on) == {t}


def test_incident_examples(plane5):
    P = plane5
    assert incident(P.point((1, 0, 0)), P.hyperplane((0, 1, 0)))
    assert not incident(P.point((1, 0, 0)), P.hyperplane((1, 0, 0)))
    assert incident(P.point((1, 2, 3)), P.hyperplane((1, 1, 4)))


def test_incident_mismatch(plane5, pg33):
    with pytest.raises(GeometryError):
        incident(plane5.point((1, 0, 0)), pg33.hyperplane((1, 0, 0, 0)))


def test_duality_symmetry(plane5):
    P = plane5
    for i, j in itertools.product(range(P.size), repeat=2):
        a = incident(P.point_at(i), P.hyperplane_at(j))
        b = incident(P.point(P.coords[j]), P.hyperplane(P.coords[i]))
        assert a == b


def test_line_through_examples(plane5):
    P = plane5
    line = line_through(P.point((1, 0, 0)), P.point((0, 1, 0)))
    assert [p.coords for p in line] == [(0, 1, 0), (1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0), (1, 4, 0)]
    P3 = pg(3, 2)
    assert len(line_through(P3.point((1, 0, 0, 0)), P3.point((0, 0, 0, 1)))) == 3
    with pytest.raises(GeometryError):
        line_through(P.point((1, 0, 0)), P.point((2, 0, 0)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 5), (2, 4), (3, 3), (2, 7)]), st.data())
def test_line_through_properties(nq, data):
    P = pg(*nq)
    i, j = data.draw(st.lists(st.integers(0, P.size - 1), min_size=2, max_size=2, unique=True))
    A, B = P.point_at(i), P.point_at(j)
    line = line_through(A, B)
    assert len(line) == P.q + 1
    assert {p.index for p in line} == {p.index for p in line_through(B, A)}
    span = P.span(A, B)
    for X, Y in itertools.combinations(line, 2):
        assert P.span(X, Y) == span


def test_span_intersect_rank(plane5, pg33):
    assert plane5.span((1, 0, 0), (0, 1, 0)).dim == 1
    a = pg33.subspace([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    b = pg33.subspace([(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    assert pg33.intersect(a, b).dim == 1
    assert plane5.rank([(1, 0, 0), (2, 0, 0)]) == 1


def test_subspace_containment_and_mask(pg33):
    L = pg33.subspace([(0, 0, 1, 0), (0, 0, 0, 1)])
    assert L.mask.bit_count() == 4
    assert all(L.contains(p) for p in L.points())
    assert not L.contains(pg33.point((1, 0, 0, 0)))
    assert pg33.empty().mask == 0
    assert pg33.whole().mask == pg33.full_mask


def test_subspaces_through_examples(plane5, pg33):
    R = plane5.subspace([(0, 0, 1)])
    assert len(plane5.subspaces_through(R, 1)) == 6
    L = pg33.subspace([(0, 0, 1, 0), (0, 0, 0, 1)])
    assert len(pg33.subspaces_through(L, 2)) == 4
    assert len(pg33.hyperplanes_through(L)) == 4
    with pytest.raises(GeometryError):
        pg33.subspaces_through(L, 1)


@pytest.mark.parametrize("n, q", [(2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_subspace_counts_match_gaussian_binomials(n, q):
    P = pg(n, q)
    for k in range(-1, n + 1):
        subs = P.subspaces_through(P.empty(), k) if k >= 0 else [P.empty()]
        assert len(subs) == gaussian_binomial(n + 1, k + 1, q)
        assert len(set(subs)) == len(subs)
        assert all(S.dim == k for S in subs)
        assert [S.sort_key() for S in subs] == sorted(S.sort_key() for S in subs)


def test_subspaces_through_contain_base(pg33):
    P = pg33
    base = P.subspace([(1, 2, 0, 1)])
    planes = P.subspaces_through(base, 2)
    assert len(planes) == gaussian_binomial(3, 2, 3)
    assert all(S.contains(base) for S in planes)


def test_hyperplane_subspace_roundtrip(pg33):
    for h in pg33.all_hyperplanes():
        S = pg33.hyperplane_subspace(h)
        assert S.dim == 2
        assert pg33.subspace_hyperplane(S) == h
        assert S.mask == pg33.masks[h.index]


def test_size_limit():
    with pytest.raises(GeometryError, match="limit"):
        space(2, field_new(4099))
