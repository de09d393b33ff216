"""Checking the hole, structure, tangent and reducibility statements by enumeration.

Exhaustive runs walk every k-subset of hyperplane indices in lexicographic
order. The rank range ``[0, C(N, k))`` is cut into contiguous chunks that can
be handed to worker processes and merged back in chunk order, so reports do
not depend on the number of workers. Sampled runs draw subset ``i`` from a
Philox generator keyed by the seed with counter ``i``; they are chunked the
same way.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Any, Iterator

import numpy as np

from . import formats
from .covers import (PartialCover, PointSet, hole_mask, is_blocking_set, is_cover,
                     minimal_reduce, pencil_centers, random_policy, tangent_counts)
from .galois import FieldSpec
from .projective import PG, Subspace, bits, space

DEFAULT_BUDGET = 10 ** 9
MAX_STORED = 100


class VerifyError(ValueError):
    """Parameters a verifier cannot run with (budget, hypothesis, input)."""


# -- combinations --------------------------------------------------------------

def rank_combination(c: tuple[int, ...], N: int) -> int:
    """Lexicographic rank of the sorted k-subset ``c`` of range(N)."""
    k = len(c)
    r, prev = 0, -1
    for i, x in enumerate(c):
        for y in range(prev + 1, x):
            r += comb(N - y - 1, k - i - 1)
        prev = x
    return r


def unrank_combination(r: int, N: int, k: int) -> tuple[int, ...]:
    if not 0 <= r < comb(N, k):
        raise ValueError(f"rank {r} out of range for C({N},{k})")
    out = []
    x = 0
    for i in range(k):
        while True:
            block = comb(N - x - 1, k - i - 1)
            if r < block:
                break
            r -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def combinations_from(N: int, k: int, start: int, count: int) -> Iterator[tuple[int, ...]]:
    """``count`` consecutive k-subsets of range(N) in lexicographic order, from rank ``start``."""
    if count <= 0:
        return
    c = list(unrank_combination(start, N, k))
    yield tuple(c)
    for _ in range(count - 1):
        i = k - 1
        while c[i] == N - k + i:
            i -= 1
        c[i] += 1
        for j in range(i + 1, k):
            c[j] = c[j - 1] + 1
        yield tuple(c)


def sample_subset(seed: int, i: int, N: int, k: int) -> tuple[int, ...]:
    rng = np.random.Generator(np.random.Philox(key=seed, counter=i))
    return tuple(sorted(int(x) for x in rng.choice(N, size=k, replace=False)))


def _chunks(total: int, pieces: int) -> list[tuple[int, int]]:
    pieces = max(1, min(pieces, total))
    step, extra = divmod(total, pieces)
    out, start = [], 0
    for p in range(pieces):
        size = step + (1 if p < extra else 0)
        out.append((start, size))
        start += size
    return out


def sample_pencil_perturbed(pg: PG, seed: int, i: int, k: int) -> tuple[int, ...]:
    """A random pencil with 1 to 3 members removed, topped up with uniform
    random hyperplanes to size k. Concentrates samples near the sharp case."""
    rng = np.random.Generator(np.random.Philox(key=seed, counter=i))
    members = pg.hyperplane_indices_through(_random_axis(pg, rng))
    drop = int(rng.integers(1, 4))
    keep = rng.choice(len(members), size=min(k, len(members) - drop), replace=False)
    chosen = {members[int(j)] for j in keep}
    while len(chosen) < k:
        chosen.add(int(rng.integers(0, pg.size)))
    return tuple(sorted(chosen))


SAMPLERS = ("uniform", "pencil_perturbed")


def _index_stream(pg: PG, k: int, mode: str, seed: int, start: int, count: int,
                  sampler: str = "uniform"):
    if mode == "exhaustive":
        return combinations_from(pg.size, k, start, count)
    if sampler == "uniform":
        return (sample_subset(seed, i, pg.size, k) for i in range(start, start + count))
    if sampler == "pencil_perturbed":
        return (sample_pencil_perturbed(pg, seed, i, k) for i in range(start, start + count))
    raise VerifyError(f"unknown sampler {sampler!r}; expected one of {SAMPLERS}")


def enumerate_covers(n: int, spec: FieldSpec, size: int, mode: str = "exhaustive",
                     seed: int = 0, budget: int = DEFAULT_BUDGET, samples: int = 0,
                     sampler: str = "uniform") -> Iterator[PartialCover]:
    """Every size-subset of hyperplanes (exhaustive) or ``samples`` seeded random ones."""
    pg = space(n, spec)
    total = instance_count(pg, size, mode, budget, samples)
    for idx in _index_stream(pg, size, mode, seed, 0, total, sampler):
        yield PartialCover(pg, idx)


def instance_count(pg: PG, size: int, mode: str, budget: int, samples: int) -> int:
    if not 0 <= size <= pg.size:
        raise VerifyError(f"size {size} out of range for {pg!r}")
    if mode == "exhaustive":
        total = comb(pg.size, size)
        if total > budget:
            raise VerifyError(f"exhaustive enumeration of C({pg.size},{size}) = {total} "
                              f"subsets exceeds the budget of {budget}")
        return total
    if mode == "sampled":
        if samples < 1:
            raise VerifyError("sampled mode needs a positive sample count")
        return samples
    raise VerifyError(f"unknown mode {mode!r}")


# -- reports -------------------------------------------------------------------

@dataclass
class VerifyReport:
    theorem: str
    parameters: dict[str, Any]
    hypothesis_met: bool = True
    instances_checked: int = 0
    hypothesis_met_count: int = 0
    violation_count: int = 0
    violations: list[dict] = field(default_factory=list)
    witness_count: int = 0
    witnesses: list[dict] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def verdict(self) -> str:
        if self.violation_count:
            return "FAIL"
        return "PASS" if self.hypothesis_met else "HYPOTHESIS_NOT_MET"

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["verdict"] = self.verdict
        return out

    def summary(self) -> str:
        return (f"{self.theorem}: {self.verdict}, {self.instances_checked} instances, "
                f"{self.hypothesis_met_count} in hypothesis, {self.violation_count} violations"
                + (f", {self.witness_count} boundary witnesses" if self.witness_count else ""))


def _record(store: list, obj, cap: int) -> None:
    if len(store) < cap:
        store.append(formats.to_json(obj))


def _workers(threads: int | None) -> int:
    return threads if threads and threads > 0 else (os.cpu_count() or 1)


def hypothesis_holds(q: int, a: int) -> bool:
    """a < (q - 2) / 3."""
    return 3 * a < q - 2


def hole_bound(n: int, q: int, a: int) -> int:
    return q ** (n - 1) - a * q ** (n - 2)


# -- hole theorem kernel ---------------------------------------------------------

def _common_hyperplane_mask(masks: list[int], hm: int) -> int:
    """Hyperplanes through every hole (incidence symmetry: masks[P] = hyperplanes on P)."""
    common = -1
    for i in bits(hm):
        common &= masks[i]
        if not common:
            break
    return common


def _scan_holes(args) -> dict:
    n, field_json, size, mode, sampler, seed, start, count, a, cap, check = args
    spec = FieldSpec.from_json(field_json)
    pg = space(n, spec)
    q, masks, full = pg.q, pg.masks, pg.full_mask
    bound = hole_bound(n, q, a)
    upper = q + a if n == 2 else q ** (n - 1)
    out = {"checked": 0, "covers": 0, "qualifying": 0, "failures": 0, "stored": [],
           "hole_histogram": {}}
    hist = out["hole_histogram"]
    for idx in _index_stream(pg, size, mode, seed, start, count, sampler):
        out["checked"] += 1
        m = 0
        for i in idx:
            m |= masks[i]
        hm = full & ~m
        h = hm.bit_count()
        if h == 0:
            out["covers"] += 1
            continue
        if h > upper:
            continue
        out["qualifying"] += 1
        hist[h] = hist.get(h, 0) + 1
        if check == "holes":
            ok = h >= bound and _common_hyperplane_mask(masks, hm) != 0
            if n == 2:
                ok = ok and h <= q
        else:
            ok = detect_pencil_structure(PartialCover(pg, idx)) is not None
        if not ok:
            out["failures"] += 1
            if len(out["stored"]) < cap:
                out["stored"].append(formats.to_json(PartialCover(pg, idx)))
    return out


def _run_scan(theorem: str, check: str, n: int, spec: FieldSpec, a: int, mode: str, seed: int,
              samples: int, budget: int, threads: int | None, max_stored: int,
              sampler: str) -> VerifyReport:
    t0 = time.perf_counter()
    pg = space(n, spec)
    q = pg.q
    size = q + a
    total = instance_count(pg, size, mode, budget, samples)
    report = VerifyReport(theorem, {"n": n, "field": spec.to_json(), "q": q, "a": a,
                                    "mode": mode, "sample_count": samples if mode == "sampled" else None,
                                    "sampler": sampler if mode == "sampled" else None,
                                    "seed": seed, "size": size, "budget": budget},
                          hypothesis_met=hypothesis_holds(q, a))
    workers = _workers(threads)
    pieces = workers * 4 if workers > 1 else 1
    if mode == "sampled" and sampler not in SAMPLERS:
        raise VerifyError(f"unknown sampler {sampler!r}; expected one of {SAMPLERS}")
    jobs = [(n, spec.to_json(), size, mode, sampler, seed, s, c, a, max_stored, check)
            for s, c in _chunks(total, pieces)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_holes, jobs))
    else:
        results = [_scan_holes(j) for j in jobs]

    hist: dict[int, int] = {}
    stored: list[dict] = []
    failures = covers = 0
    for r in results:
        report.instances_checked += r["checked"]
        report.hypothesis_met_count += r["qualifying"]
        failures += r["failures"]
        covers += r["covers"]
        for h, c in r["hole_histogram"].items():
            hist[h] = hist.get(h, 0) + c
        stored.extend(r["stored"][:max_stored - len(stored)])
    if report.hypothesis_met:
        report.violation_count, report.violations = failures, stored
    else:
        report.witness_count, report.witnesses = failures, stored
    report.details = {"covers": covers,
                      "qualifying_hole_counts": {str(h): hist[h] for h in sorted(hist)},
                      "hole_lower_bound": hole_bound(n, q, a)}
    report.wall_time = time.perf_counter() - t0
    return report


def verify_hole_theorem(n: int, spec: FieldSpec, a: int, mode: str = "exhaustive",
                        seed: int = 0, samples: int = 0, budget: int = DEFAULT_BUDGET,
                        threads: int | None = 1, max_stored: int = MAX_STORED,
                        sampler: str = "uniform") -> VerifyReport:
    """Check every partial (q+a)-cover with few holes.

    Qualifying instances have 1 <= holes <= q^(n-1), or 1 <= holes <= q + a
    in the plane. Each must have at least q^(n-1) - a*q^(n-2) holes, all in
    one hyperplane; in the plane also at most q holes.
    """
    if a < 0:
        raise VerifyError("a must be non-negative")
    return _run_scan("holes", "holes", n, spec, a, mode, seed, samples, budget, threads,
                     max_stored, sampler)


def verify_structure_theorem(n: int, spec: FieldSpec, a: int, mode: str = "exhaustive",
                             seed: int = 0, samples: int = 0, budget: int = DEFAULT_BUDGET,
                             threads: int | None = 1,
                             max_stored: int = MAX_STORED,
                             sampler: str = "uniform") -> VerifyReport:
    """Every qualifying partial (q+a)-cover over a prime field is q hyperplanes
    of a pencil plus a hyperplanes off its axis."""
    if spec.h != 1:
        raise VerifyError(f"q={spec.q} is not prime")
    if a < 0:
        raise VerifyError("a must be non-negative")
    return _run_scan("structure", "structure", n, spec, a, mode, seed, samples, budget,
                     threads, max_stored, sampler)


# -- pencil structure ------------------------------------------------------------

@dataclass(frozen=True)
class PencilStructure:
    center: Subspace
    pencil_members: tuple[int, ...]
    extras: tuple[int, ...]


def detect_pencil_structure(S: PartialCover) -> PencilStructure | None:
    """Split S into exactly q hyperplanes through one (n-2)-space plus the rest."""
    pg = S.space
    q = pg.q
    if len(S) < q:
        return None
    found = []
    for center_mask, through in pencil_centers(S, q):
        h1, h2 = through[0], through[1]
        a = pg.hyperplane_subspace(pg.hyperplane_at(h1))
        b = pg.hyperplane_subspace(pg.hyperplane_at(h2))
        center = pg.intersect(a, b)
        extras = tuple(i for i in S.indices if i not in set(through))
        found.append(PencilStructure(center, tuple(through), extras))
    if not found:
        return None
    return min(found, key=lambda ps: ps.center.sort_key())


# -- tangent bound ----------------------------------------------------------------

def verify_tangent_bound(B: PointSet) -> VerifyReport:
    """Every essential point of a blocking set of size q+a+1 <= 2q lies on at
    least q^(n-1) - a*q^(n-2) tangent hyperplanes."""
    t0 = time.perf_counter()
    pg = B.space
    q, n = pg.q, pg.n
    if len(B) > 2 * q:
        raise VerifyError(f"|B| = {len(B)} exceeds 2q = {2 * q}")
    if not is_blocking_set(B):
        raise VerifyError("the point set is not a blocking set")
    a = len(B) - q - 1
    bound = hole_bound(n, q, a)
    counts = tangent_counts(B)
    report = VerifyReport("tangents", {"n": n, "field": pg.spec.to_json(), "q": q, "a": a,
                                       "size": len(B), "mode": "exhaustive"})
    essential = {i: c for i, c in counts.items() if c > 0}
    report.instances_checked = len(B)
    report.hypothesis_met_count = len(essential)
    for i, c in sorted(essential.items()):
        if c < bound:
            report.violation_count += 1
            report.violations.append({"point": list(pg.coords[i]), "tangents": c})
    report.details = {"bound": bound,
                      "tangent_counts": [{"point": list(pg.coords[i]), "tangents": counts[i]}
                                         for i in sorted(counts)],
                      "min_tangents": min(essential.values()) if essential else None}
    report.wall_time = time.perf_counter() - t0
    return report


# -- reduction uniqueness --------------------------------------------------------------

def _random_axis(pg: PG, rng: np.random.Generator) -> Subspace:
    while True:
        rows = rng.integers(0, pg.q, size=(pg.n - 1, pg.n + 1)).tolist()
        S = pg.subspace(rows)
        if S.dim == pg.n - 2:
            return S


def random_small_cover(pg: PG, rng: np.random.Generator, max_size: int,
                       attempts: int = 50) -> PartialCover:
    """A cover of size <= max_size grown from a (possibly damaged) random pencil."""
    for attempt in range(attempts):
        members = pg.hyperplane_indices_through(_random_axis(pg, rng))
        drop = int(rng.integers(0, 3)) if attempt < attempts - 1 else 0
        if drop:
            keep = rng.choice(len(members), size=len(members) - drop, replace=False)
            chosen = {members[int(k)] for k in keep}
        else:
            chosen = set(members)
        while hole_mask(pg, chosen) and len(chosen) < max_size:
            chosen.add(int(rng.integers(0, pg.size)))
        if hole_mask(pg, chosen):
            continue
        room = max_size - len(chosen)
        for _ in range(int(rng.integers(0, room + 1))):
            chosen.add(int(rng.integers(0, pg.size)))
        return PartialCover(pg, tuple(sorted(chosen)))
    raise VerifyError("could not grow a cover within the size bound")  # pragma: no cover


def verify_reduction_uniqueness(n: int, spec: FieldSpec, trials: int = 200, seed: int = 0,
                                orders: int = 20, max_stored: int = MAX_STORED) -> VerifyReport:
    """Reduce random covers below the uniqueness bound under many removal orders."""
    t0 = time.perf_counter()
    pg = space(n, spec)
    q = pg.q
    max_size = 2 * q if n == 2 else 2 * q - 1
    report = VerifyReport("reduction", {"n": n, "field": spec.to_json(), "q": q,
                                        "trials": trials, "orders": orders, "seed": seed,
                                        "max_size": max_size})
    sizes: dict[int, int] = {}
    minimal_sizes: dict[int, int] = {}
    for t in range(trials):
        rng = np.random.Generator(np.random.Philox(key=seed, counter=t))
        C = random_small_cover(pg, rng, max_size)
        assert is_cover(C)
        sizes[len(C)] = sizes.get(len(C), 0) + 1
        policy_seeds = rng.integers(0, 2 ** 63, size=orders)
        results = {minimal_reduce(C, random_policy(int(s))).cover.indices for s in policy_seeds}
        results.add(minimal_reduce(C).cover.indices)
        report.instances_checked += 1
        report.hypothesis_met_count += 1
        if len(results) != 1:
            report.violation_count += 1
            _record(report.violations, C, max_stored)
        else:
            (m,) = results
            minimal_sizes[len(m)] = minimal_sizes.get(len(m), 0) + 1
    report.details = {"cover_sizes": {str(k): sizes[k] for k in sorted(sizes)},
                      "minimal_sizes": {str(k): minimal_sizes[k] for k in sorted(minimal_sizes)}}
    report.wall_time = time.perf_counter() - t0
    return report
