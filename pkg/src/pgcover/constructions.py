"""Generators for the extremal configurations: pencils, the sharp partial cover
with ``q**(n-1) - a*q**(n-2)`` holes, and the two-line boundary configuration
in the plane.

Every generator is driven by a :class:`ConstructionRecipe`. Random choices come
from a Philox generator keyed by the recipe's seed, so replaying a recipe gives
the same cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .covers import PartialCover, PointSet, dualize_cover, hole_mask, holes, holes_in_common_hyperplane
from .galois import FieldSpec
from .projective import PG, Subspace, bits, space

KINDS = ("pencil", "pencil_minus_one", "remark9", "example16", "generalized_example16")


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionRecipe:
    kind: str
    n: int
    spec: FieldSpec
    a: int = 0
    seed: int = 0
    provenance: dict[str, Any] = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "field": self.spec.to_json(),
                "a": self.a, "seed": self.seed, "provenance": self.provenance}

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionRecipe":
        try:
            return cls(data["kind"], int(data["n"]), FieldSpec.from_json(data["field"]),
                       int(data.get("a", 0)), int(data.get("seed", 0)))
        except (KeyError, TypeError) as exc:
            raise ConstructionError(f"malformed recipe: {exc}") from exc


@dataclass(frozen=True)
class Construction:
    cover: PartialCover
    recipe: ConstructionRecipe


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def _pick(rng: np.random.Generator, options: list[int], k: int) -> list[int]:
    chosen = rng.choice(len(options), size=k, replace=False)
    return sorted(options[int(i)] for i in chosen)


def _unit_span(pg: PG, coords: range) -> Subspace:
    rows = []
    for c in coords:
        v = [0] * (pg.n + 1)
        v[c] = 1
        rows.append(v)
    return pg.subspace(rows)


def default_axis(pg: PG) -> Subspace:
    """The (n-2)-space x_0 = x_1 = 0 (for n = 2 the point (0,0,1))."""
    return _unit_span(pg, range(2, pg.n + 1))


def default_dropped(pg: PG) -> int:
    """Index of the hyperplane x_0 = 0, the pencil member left out by default."""
    return pg.index_of([1] + [0] * pg.n)


def _basis(S: Subspace) -> list[list[int]]:
    return [list(r) for r in S.basis]


def pencil(n: int, spec: FieldSpec, center: Subspace | None = None) -> PartialCover:
    """All q + 1 hyperplanes through an (n-2)-space."""
    pg = space(n, spec)
    center = default_axis(pg) if center is None else center
    if center.dim != n - 2:
        raise ConstructionError(f"pencil center must have dimension {n - 2}, got {center.dim}")
    return PartialCover(pg, tuple(pg.hyperplane_indices_through(center)))


def _pencil_minus_one(recipe: ConstructionRecipe) -> Construction:
    pg = space(recipe.n, recipe.spec)
    axis = default_axis(pg)
    dropped = default_dropped(pg)
    members = [i for i in pg.hyperplane_indices_through(axis) if i != dropped]
    prov = {"axis": _basis(axis), "dropped": list(pg.coords[dropped])}
    return Construction(PartialCover(pg, tuple(members)), _with(recipe, prov))


def _with(recipe: ConstructionRecipe, prov: dict) -> ConstructionRecipe:
    return ConstructionRecipe(recipe.kind, recipe.n, recipe.spec, recipe.a, recipe.seed, prov)


def _remark9(recipe: ConstructionRecipe) -> Construction:
    n, a = recipe.n, recipe.a
    pg = space(n, recipe.spec)
    q = pg.q
    axis = default_axis(pg)
    dropped = default_dropped(pg)
    H = pg.hyperplane_subspace(pg.hyperplane_at(dropped))
    members = [i for i in pg.hyperplane_indices_through(axis) if i != dropped]

    # sigma: smallest (n-3)-space of the axis; empty when n = 2
    sigma = pg.subspaces_between(pg.empty(), axis, n - 3)[0]
    taus = [t for t in pg.subspaces_between(sigma, H, n - 2) if t != axis]
    limit = len(taus) if n > 2 else min(len(taus), q - 1)
    if not 0 <= a <= limit:
        raise ConstructionError(f"a={a} is infeasible here; need 0 <= a <= {limit}")

    rng = _rng(recipe.seed)
    extras = []
    for tau in taus[:a]:
        options = [j for j in pg.hyperplane_indices_through(tau) if j != dropped]
        extras.extend(_pick(rng, options, 1))
    prov = {"axis": _basis(axis), "dropped": list(pg.coords[dropped]),
            "sigma": _basis(sigma), "taus": [_basis(t) for t in taus[:a]],
            "extras": [list(pg.coords[j]) for j in extras]}
    return Construction(PartialCover(pg, tuple(sorted(members + extras))), _with(recipe, prov))


def _two_lines(recipe: ConstructionRecipe) -> Construction:
    spec, a = recipe.spec, recipe.a
    if recipe.n != 2:
        raise ConstructionError("this construction lives in the plane (n = 2)")
    pg = space(2, spec)
    q = pg.q
    if not 0 <= a <= q - 2:
        raise ConstructionError(f"a={a} out of range; need 0 <= a <= {q - 2}")
    P = pg.point([0, 0, 1])
    through_P = pg.hyperplane_indices_through(pg.subspace([P.coords]))
    m1, m2, *kept = through_P
    l1 = kept[0]
    Q = next(i for i in bits(pg.masks[l1]) if i != P.index)
    options = [j for j in bits(pg.masks[Q]) if j != l1]
    rng = _rng(recipe.seed)
    extras = _pick(rng, options, a + 1)
    prov = {"center": list(P.coords), "omitted": [list(pg.coords[m1]), list(pg.coords[m2])],
            "pivot_line": list(pg.coords[l1]), "fixed_point": list(pg.coords[Q]),
            "extras": [list(pg.coords[j]) for j in extras]}
    return Construction(PartialCover(pg, tuple(sorted(kept + extras))), _with(recipe, prov))


def build(recipe: ConstructionRecipe) -> Construction:
    """Run (or replay) a recipe."""
    kind = recipe.kind
    if kind == "pencil":
        pg = space(recipe.n, recipe.spec)
        cover = pencil(recipe.n, recipe.spec)
        return Construction(cover, _with(recipe, {"axis": _basis(default_axis(pg))}))
    if kind == "pencil_minus_one":
        return _pencil_minus_one(recipe)
    if kind == "remark9":
        return _remark9(recipe)
    if kind == "example16":
        q = recipe.spec.q
        if q % 3 != 2 or q < 5:
            raise ConstructionError(f"needs q = 2 mod 3 and q >= 5, got q={q}")
        if recipe.a != (q - 2) // 3:
            raise ConstructionError(f"a is fixed to (q-2)/3 = {(q - 2) // 3}")
        return _two_lines(recipe)
    if kind == "generalized_example16":
        return _two_lines(recipe)
    raise ConstructionError(f"unknown construction kind {kind!r}; expected one of {KINDS}")


def remark9_construct(n: int, spec: FieldSpec, a: int, seed: int = 0) -> Construction:
    """q hyperplanes of a pencil plus a hyperplanes meeting the missing one in
    distinct (n-2)-spaces through a common (n-3)-space of the axis."""
    if n < 2:
        raise ConstructionError("n must be at least 2")
    return build(ConstructionRecipe("remark9", n, spec, a, seed))


def example16_construct(spec: FieldSpec, seed: int = 0) -> Construction:
    """q - 1 concurrent lines plus (q-2)/3 + 1 lines through a point of one of them."""
    q = spec.q
    return build(ConstructionRecipe("example16", 2, spec, (q - 2) // 3 if q % 3 == 2 else -1, seed))


def generalized_example16(spec: FieldSpec, a: int, seed: int = 0) -> Construction:
    return build(ConstructionRecipe("generalized_example16", 2, spec, a, seed))


def dual_construction(recipe: ConstructionRecipe | Construction) -> PointSet:
    """Close the cover with the hyperplane holding its holes and dualize.

    The result is a blocking set of size q + a + 1 in which the dual of that
    hyperplane is an essential point.
    """
    con = recipe if isinstance(recipe, Construction) else build(recipe)
    cover = con.cover
    if not hole_mask(cover.space, cover.indices):
        raise ConstructionError("the construction has no holes to close")
    mu = holes_in_common_hyperplane(holes(cover))
    if mu is None:
        raise ConstructionError("the holes are not contained in one hyperplane")
    return dualize_cover(cover.with_added(mu.index))
