"""Points, hyperplanes and subspaces of PG(n, q).

Points and hyperplanes share one canonical form: a coordinate tuple of field
reps whose leftmost nonzero entry is 1. Both are indexed by the
lexicographic order of those tuples, so the i-th point and the i-th
hyperplane have the same coordinates. Incidence is precomputed per space as
one Python int bitmask per hyperplane (bit i set iff point i is on it); the
matrix is symmetric, so the same masks give the hyperplanes through a point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .galois import FieldSpec

Vector = tuple[int, ...]

MAX_POINTS = 1 << 24


class GeometryError(ValueError):
    pass


def theta(n: int, q: int) -> int:
    """Number of points of PG(n, q); theta(-1, q) == 0."""
    if q < 2:
        raise GeometryError("q must be at least 2")
    if n < -1:
        raise GeometryError("n must be at least -1")
    return (q ** (n + 1) - 1) // (q - 1)


def normalize(spec: FieldSpec, raw: Sequence[int]) -> Vector:
    """Scale ``raw`` so that its leftmost nonzero coordinate is 1."""
    for c in raw:
        if c:
            if c == 1:
                return tuple(raw)
            s = spec.inv(c)
            return tuple(spec.mul(s, x) for x in raw)
    raise GeometryError("the zero vector is not a projective point")


def dot(spec: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = spec.add(acc, spec.mul(a, b))
    return acc


# -- linear algebra over GF(q) ------------------------------------------------

def rref(spec: FieldSpec, rows: Iterable[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            s = spec.inv(lead)
            m[r] = [spec.mul(s, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = spec.neg(m[i][c])
                m[i] = [spec.add(x, spec.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(spec: FieldSpec, rows: Iterable[Sequence[int]]) -> int:
    return len(rref(spec, rows)[0])


def kernel(spec: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : r . v = 0 for every row r}."""
    red, pivots = rref(spec, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = spec.neg(row[f])
        basis.append(v)
    return basis


def _rref_matrices(spec: FieldSpec, r: int, c: int) -> Iterator[list[list[int]]]:
    """Every r x c matrix in reduced row echelon form of full rank r."""
    q = spec.q
    for pivots in itertools.combinations(range(c), r):
        pset = set(pivots)
        slots = [(i, j) for i, pc in enumerate(pivots)
                 for j in range(pc + 1, c) if j not in pset]
        for values in itertools.product(range(q), repeat=len(slots)):
            m = [[0] * c for _ in range(r)]
            for i, pc in enumerate(pivots):
                m[i][pc] = 1
            for (i, j), v in zip(slots, values):
                m[i][j] = v
            yield m


# -- geometry objects -----------------------------------------------------------

@dataclass(frozen=True)
class ProjPoint:
    space: "PG" = field(repr=False)
    coords: Vector
    index: int = field(compare=False)


@dataclass(frozen=True)
class Hyperplane:
    space: "PG" = field(repr=False)
    coeffs: Vector
    index: int = field(compare=False)


@dataclass(frozen=True)
class Subspace:
    """Projective subspace of dimension ``dim`` given by its RREF basis."""

    space: "PG" = field(repr=False)
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def sort_key(self) -> tuple:
        return (len(self.basis), self.basis)

    @cached_property
    def annihilator(self) -> list[list[int]]:
        sp = self.space
        if not self.basis:
            return [list(r) for r in np.eye(sp.n + 1, dtype=int).tolist()]
        return kernel(sp.spec, self.basis, sp.n + 1)

    def contains(self, item: "ProjPoint | Hyperplane | Subspace | Sequence[int]") -> bool:
        """Whether a point (or a whole subspace / hyperplane) lies in this subspace."""
        spec = self.space.spec
        if isinstance(item, Subspace):
            vecs = item.basis
        elif isinstance(item, Hyperplane):
            vecs = self.space.hyperplane_subspace(item).basis
        elif isinstance(item, ProjPoint):
            vecs = (item.coords,)
        else:
            vecs = (tuple(item),)
        return all(dot(spec, a, v) == 0 for a in self.annihilator for v in vecs)

    @cached_property
    def mask(self) -> int:
        sp = self.space
        m = sp.full_mask
        for row in self.annihilator:
            m &= sp.masks[sp.index_of(row)]
        return m

    def points(self) -> list[ProjPoint]:
        return [self.space.point_at(i) for i in bits(self.mask)]

    def to_text(self) -> str:
        return "\n".join(" ".join(map(str, row)) for row in self.basis)


def bits(mask: int) -> list[int]:
    """Indices of set bits in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class PG:
    """The projective space PG(n, q) over a given field.

    Use :func:`space` to get a cached instance so the incidence table is built
    once per (n, field).
    """

    def __init__(self, n: int, spec: FieldSpec):
        if n < 1:
            raise GeometryError("n must be at least 1")
        self.n = n
        self.spec = spec
        self.q = spec.q
        self.size = theta(n, spec.q)
        if self.size > MAX_POINTS:
            raise GeometryError(
                f"PG({n},{spec.q}) has {self.size} points, above the limit of {MAX_POINTS}")
        self.full_mask = (1 << self.size) - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PG) and (self.n, self.spec) == (other.n, other.spec)

    def __hash__(self) -> int:
        return hash((self.n, self.spec))

    def __repr__(self) -> str:
        return f"PG({self.n},{self.q})"

    # coordinates and indices

    @cached_property
    def coords(self) -> list[Vector]:
        q, n = self.q, self.n
        out: list[Vector] = []
        for lead in range(n, -1, -1):
            head = (0,) * lead + (1,)
            for tail in itertools.product(range(q), repeat=n - lead):
                out.append(head + tail)
        return out

    @cached_property
    def coord_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64).reshape(self.size, self.n + 1)

    def index_of(self, raw: Sequence[int]) -> int:
        if len(raw) != self.n + 1:
            raise GeometryError(f"expected {self.n + 1} coordinates, got {len(raw)}")
        for c in raw:
            if not 0 <= c < self.q:
                raise GeometryError(f"coordinate {c} is not an element of GF({self.q})")
        v = normalize(self.spec, raw)
        lead = next(i for i, c in enumerate(v) if c)
        idx = 0
        for c in v[lead + 1:]:
            idx = idx * self.q + c
        return theta(self.n - lead - 1, self.q) + idx

    def point(self, raw: Sequence[int]) -> ProjPoint:
        i = self.index_of(raw)
        return ProjPoint(self, self.coords[i], i)

    def hyperplane(self, raw: Sequence[int]) -> Hyperplane:
        i = self.index_of(raw)
        return Hyperplane(self, self.coords[i], i)

    def point_at(self, i: int) -> ProjPoint:
        return ProjPoint(self, self.coords[i], i)

    def hyperplane_at(self, i: int) -> Hyperplane:
        return Hyperplane(self, self.coords[i], i)

    def all_points(self) -> list[ProjPoint]:
        return [ProjPoint(self, c, i) for i, c in enumerate(self.coords)]

    def all_hyperplanes(self) -> list[Hyperplane]:
        return [Hyperplane(self, c, i) for i, c in enumerate(self.coords)]

    # incidence

    @cached_property
    def masks(self) -> list[int]:
        """masks[j] has bit i set iff point i lies on hyperplane j."""
        spec = self.spec
        add, mul = spec.add_table, spec.mul_table
        pts = self.coord_array
        block = max(1, min(self.size, (1 << 22) // self.size))
        out: list[int] = []
        for start in range(0, self.size, block):
            hs = pts[start:start + block]
            acc = np.zeros((len(hs), self.size), dtype=np.int32)
            for k in range(self.n + 1):
                acc = add[acc, mul[hs[:, k][:, None], pts[None, :, k]]]
            packed = np.packbits(acc == 0, axis=1, bitorder="little")
            out.extend(int.from_bytes(row.tobytes(), "little") for row in packed)
        return out

    def check_same(self, *items) -> None:
        for it in items:
            if it.space != self:
                raise GeometryError(f"{it!r} does not belong to {self!r}")

    def incident(self, P: ProjPoint, pi: Hyperplane) -> bool:
        self.check_same(P, pi)
        return dot(self.spec, P.coords, pi.coeffs) == 0

    # lines and subspaces

    def line_through(self, P: ProjPoint, Q: ProjPoint) -> list[ProjPoint]:
        self.check_same(P, Q)
        if P == Q:
            raise GeometryError("a line needs two distinct points")
        spec = self.spec
        idx = {Q.index}
        for t in range(self.q):
            v = [spec.add(a, spec.mul(t, b)) for a, b in zip(P.coords, Q.coords)]
            idx.add(self.index_of(v))
        return [self.point_at(i) for i in sorted(idx)]

    def subspace(self, vectors: Iterable[Sequence[int]]) -> Subspace:
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != self.n + 1:
                raise GeometryError(f"expected {self.n + 1} coordinates, got {len(v)}")
        red, _ = rref(self.spec, vecs)
        return Subspace(self, tuple(tuple(r) for r in red))

    def empty(self) -> Subspace:
        return Subspace(self, ())

    def whole(self) -> Subspace:
        return self.subspace(np.eye(self.n + 1, dtype=int).tolist())

    def span(self, *items: "ProjPoint | Hyperplane | Subspace | Sequence[int]") -> Subspace:
        vecs: list[Sequence[int]] = []
        for it in items:
            if isinstance(it, Subspace):
                self.check_same(it)
                vecs.extend(it.basis)
            elif isinstance(it, ProjPoint):
                self.check_same(it)
                vecs.append(it.coords)
            elif isinstance(it, Hyperplane):
                self.check_same(it)
                vecs.extend(self.hyperplane_subspace(it).basis)
            else:
                vecs.append(tuple(it))
        return self.subspace(vecs)

    def intersect(self, a: Subspace, b: Subspace) -> Subspace:
        self.check_same(a, b)
        ann = a.annihilator + b.annihilator
        if not ann:
            return self.whole()
        return self.subspace(kernel(self.spec, ann, self.n + 1))

    def rank(self, vectors: Iterable[Sequence[int]]) -> int:
        return rank(self.spec, [tuple(v) for v in vectors])

    def hyperplane_subspace(self, pi: Hyperplane) -> Subspace:
        self.check_same(pi)
        return self.subspace(kernel(self.spec, [pi.coeffs], self.n + 1))

    def subspace_hyperplane(self, S: Subspace) -> Hyperplane:
        if S.dim != self.n - 1:
            raise GeometryError(f"a hyperplane has dimension {self.n - 1}, got {S.dim}")
        (row,) = S.annihilator
        return self.hyperplane(row)

    def subspaces_between(self, lower: Subspace, upper: Subspace, k: int) -> list[Subspace]:
        """All k-dimensional subspaces S with lower <= S <= upper, sorted."""
        self.check_same(lower, upper)
        if not upper.contains(lower):
            raise GeometryError("lower subspace is not contained in upper subspace")
        if not lower.dim <= k <= upper.dim:
            raise GeometryError(f"k={k} outside [{lower.dim}, {upper.dim}]")
        spec = self.spec
        m = len(upper.basis)
        _, upivots = rref(spec, upper.basis)
        # coordinates relative to the RREF basis of `upper` are read off its pivot columns
        low = [[v[c] for c in upivots] for v in lower.basis]
        low_red, low_piv = rref(spec, low)
        comp = [c for c in range(m) if c not in low_piv]
        out = []
        for extra in _rref_matrices(spec, k - lower.dim, len(comp)):
            rows = [list(r) for r in low_red]
            for r in extra:
                v = [0] * m
                for c, val in zip(comp, r):
                    v[c] = val
                rows.append(v)
            amb = []
            for x in rows:
                acc = [0] * (self.n + 1)
                for coef, urow in zip(x, upper.basis):
                    if coef:
                        acc = [spec.add(a, spec.mul(coef, b)) for a, b in zip(acc, urow)]
                amb.append(acc)
            out.append(self.subspace(amb))
        out.sort(key=Subspace.sort_key)
        return out

    def subspaces_through(self, S: Subspace, k: int) -> list[Subspace]:
        if not S.dim < k <= self.n:
            raise GeometryError(f"k={k} must satisfy {S.dim} < k <= {self.n}")
        return self.subspaces_between(S, self.whole(), k)

    def hyperplanes_through(self, S: Subspace) -> list[Hyperplane]:
        """Hyperplanes containing S, by index."""
        return [self.hyperplane_at(j) for j in self.hyperplane_indices_through(S)]

    def hyperplane_indices_through(self, S: Subspace) -> list[int]:
        self.check_same(S)
        # hyperplanes through S are the points of its annihilator
        return bits(self.subspace(S.annihilator).mask)


@lru_cache(maxsize=64)
def space(n: int, spec: FieldSpec) -> PG:
    return PG(n, spec)


def all_points(n: int, spec: FieldSpec) -> list[ProjPoint]:
    return space(n, spec).all_points()


def all_hyperplanes(n: int, spec: FieldSpec) -> list[Hyperplane]:
    return space(n, spec).all_hyperplanes()


def incident(P: ProjPoint, pi: Hyperplane) -> bool:
    return P.space.incident(P, pi)


def line_through(P: ProjPoint, Q: ProjPoint) -> list[ProjPoint]:
    return P.space.line_through(P, Q)
