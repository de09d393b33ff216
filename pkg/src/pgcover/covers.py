"""Hyperplane sets, their holes, and point sets (blocking sets).

A :class:`PartialCover` is any set of distinct hyperplanes; whether it covers
the space is a predicate (:func:`is_cover`), not a separate type. A
:class:`PointSet` holds hole sets and blocking sets. Both are stored as sorted
index tuples into their :class:`~pgcover.projective.PG`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .projective import (PG, GeometryError, Hyperplane, ProjPoint, Subspace,
                         bits)


class CoverError(ValueError):
    pass


def _indices(space: PG, items: Iterable, kind: type) -> tuple[int, ...]:
    out = set()
    for it in items:
        if isinstance(it, int):
            if not 0 <= it < space.size:
                raise GeometryError(f"index {it} out of range for {space!r}")
            out.add(it)
        elif isinstance(it, kind):
            space.check_same(it)
            out.add(it.index)
        else:
            out.add(space.index_of(it))
    return tuple(sorted(out))


@dataclass(frozen=True)
class PartialCover:
    """A set of distinct hyperplanes of one PG(n, q)."""

    space: PG = field(repr=False)
    indices: tuple[int, ...]

    @classmethod
    def of(cls, space: PG, hyperplanes: Iterable) -> "PartialCover":
        """Build from Hyperplane objects, indices or raw coefficient vectors."""
        return cls(space, _indices(space, hyperplanes, Hyperplane))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.hyperplanes)

    @property
    def hyperplanes(self) -> list[Hyperplane]:
        return [self.space.hyperplane_at(i) for i in self.indices]

    @property
    def masks(self) -> list[int]:
        m = self.space.masks
        return [m[i] for i in self.indices]

    def with_added(self, *items) -> "PartialCover":
        return PartialCover.of(self.space, list(self.indices) + list(items))

    def without(self, *items) -> "PartialCover":
        drop = set(_indices(self.space, items, Hyperplane))
        return PartialCover(self.space, tuple(i for i in self.indices if i not in drop))


@dataclass(frozen=True)
class PointSet:
    space: PG = field(repr=False)
    indices: tuple[int, ...]

    @classmethod
    def of(cls, space: PG, points: Iterable) -> "PointSet":
        return cls(space, _indices(space, points, ProjPoint))

    @classmethod
    def from_mask(cls, space: PG, mask: int) -> "PointSet":
        return cls(space, tuple(bits(mask)))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, P: ProjPoint) -> bool:
        return P.space == self.space and P.index in set(self.indices)

    @property
    def points(self) -> list[ProjPoint]:
        return [self.space.point_at(i) for i in self.indices]

    @property
    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << i
        return m


# -- bitmask kernels ------------------------------------------------------------

def union_mask(masks: Iterable[int]) -> int:
    m = 0
    for x in masks:
        m |= x
    return m


def once_mask(masks: Iterable[int]) -> int:
    """Bits set in exactly one of ``masks``."""
    once = more = 0
    for x in masks:
        more |= once & x
        once = (once | x) & ~more
    return once


def hole_mask(space: PG, indices: Iterable[int]) -> int:
    masks = space.masks
    m = 0
    for i in indices:
        m |= masks[i]
    return space.full_mask & ~m


# -- covers ---------------------------------------------------------------------

def covering_multiplicity(S: PartialCover, P: ProjPoint) -> int:
    S.space.check_same(P)
    bit = 1 << P.index
    return sum(1 for m in S.masks if m & bit)


def holes(S: PartialCover) -> PointSet:
    return PointSet.from_mask(S.space, hole_mask(S.space, S.indices))


def is_cover(S: PartialCover) -> bool:
    return hole_mask(S.space, S.indices) == 0


def is_partial_cover(S: PartialCover) -> bool:
    return not is_cover(S)


def essential_hyperplanes(C: PartialCover) -> list[Hyperplane]:
    once = once_mask(C.masks)
    return [h for h, m in zip(C.hyperplanes, C.masks) if m & once]


def uniqueness_guaranteed(n: int, q: int, size: int) -> bool:
    """Whether a cover of this size reduces to a unique minimal cover."""
    return size <= 2 * q if n == 2 else size < 2 * q


@dataclass(frozen=True)
class Reduction:
    cover: PartialCover
    removed: tuple[int, ...]
    uniqueness_guaranteed: bool


def minimal_reduce(C: PartialCover,
                   choose: Callable[[list[int]], int] | None = None) -> Reduction:
    """Strip non-essential hyperplanes one at a time until the cover is minimal.

    ``choose`` picks which removable hyperplane index goes next; the default
    takes the smallest index. A seeded choice can be built with
    :func:`random_policy`.
    """
    if not is_cover(C):
        raise CoverError("minimal_reduce needs a cover; this set leaves holes")
    space = C.space
    masks = space.masks
    current = list(C.indices)
    removed = []
    while True:
        once = once_mask(masks[i] for i in current)
        removable = [i for i in current if not masks[i] & once]
        if not removable:
            break
        pick = removable[0] if choose is None else choose(removable)
        current.remove(pick)
        removed.append(pick)
    return Reduction(PartialCover(space, tuple(current)), tuple(removed),
                     uniqueness_guaranteed(space.n, space.q, len(C)))


def random_policy(seed: int) -> Callable[[list[int]], int]:
    rng = random.Random(seed)
    return lambda removable: rng.choice(removable)


def pencil_centers(C: PartialCover, members: int) -> list[tuple[int, list[int]]]:
    """(n-2)-spaces lying on exactly ``members`` hyperplanes of C.

    Returned as (point mask of the (n-2)-space, hyperplane indices through it),
    one entry per distinct (n-2)-space. Every (n-2)-space on two or more
    hyperplanes of C is the meet of some pair, so pairs are enough.
    """
    masks = C.masks
    seen: dict[int, list[int]] = {}
    for a, b in itertools.combinations(range(len(masks)), 2):
        center = masks[a] & masks[b]
        if center in seen:
            continue
        seen[center] = [C.indices[k] for k, m in enumerate(masks) if m & center == center]
    return [(c, through) for c, through in seen.items() if len(through) == members]


def center_subspace(space: PG, h1: int, h2: int) -> Subspace:
    a = space.hyperplane_subspace(space.hyperplane_at(h1))
    b = space.hyperplane_subspace(space.hyperplane_at(h2))
    return space.intersect(a, b)


def is_trivial(C: PartialCover) -> Subspace | None:
    """The (n-2)-space whose full pencil lies in C, if there is one."""
    found = [center_subspace(C.space, through[0], through[1])
             for _, through in pencil_centers(C, C.space.q + 1)]
    return min(found, key=Subspace.sort_key) if found else None


# -- duality and blocking sets -------------------------------------------------

def dualize_cover(S: PartialCover) -> PointSet:
    return PointSet(S.space, S.indices)


def dualize_points(B: PointSet) -> PartialCover:
    return PartialCover(B.space, B.indices)


def is_blocking_set(B: PointSet) -> bool:
    bm = B.mask
    return all(m & bm for m in B.space.masks)


def _require_member(B: PointSet, P: ProjPoint) -> None:
    B.space.check_same(P)
    if P not in B:
        raise CoverError(f"{P.coords} is not a point of the set")


def tangent_hyperplanes(B: PointSet, P: ProjPoint) -> list[Hyperplane]:
    _require_member(B, P)
    space = B.space
    others = B.mask & ~(1 << P.index)
    # by symmetry of the incidence table, masks[P] lists the hyperplanes through P
    return [space.hyperplane_at(j) for j in bits(space.masks[P.index])
            if not space.masks[j] & others]


def is_essential_point(B: PointSet, P: ProjPoint) -> bool:
    return bool(tangent_hyperplanes(B, P))


def tangent_counts(B: PointSet) -> dict[int, int]:
    """Number of tangent hyperplanes at every point of B (one pass over all hyperplanes)."""
    bm = B.mask
    counts = dict.fromkeys(B.indices, 0)
    for m in B.space.masks:
        meet = m & bm
        if meet and not meet & (meet - 1):
            counts[meet.bit_length() - 1] += 1
    return counts


# -- hole geometry -------------------------------------------------------------

def _hole_rank(H: PointSet) -> int:
    if not H.indices:
        raise CoverError("the hole set is empty")
    return H.space.rank(H.space.coords[i] for i in H.indices)


def holes_collinear(H: PointSet) -> bool:
    return _hole_rank(H) <= 2


def holes_in_common_hyperplane(H: PointSet) -> Hyperplane | None:
    """A hyperplane containing every point of H; the smallest-index one if several."""
    r = _hole_rank(H)
    space = H.space
    if r > space.n:
        return None
    S = space.subspace(space.coords[i] for i in H.indices)
    # hyperplanes through S are the points of its annihilator, already index-sorted
    return space.hyperplane_at(space.hyperplane_indices_through(S)[0])
