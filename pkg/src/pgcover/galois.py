"""Arithmetic in GF(p^h).

Elements are integers in ``[0, q)``. The integer ``c_0 + c_1*p + ... +
c_{h-1}*p^(h-1)`` stands for the polynomial ``sum c_i x^i`` reduced modulo
the field's defining polynomial. All operations go through a
:class:`FieldSpec`, which is immutable and safe to share.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, h)`` with ``q == p**h`` or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            h = 0
            while q % p == 0:
                q //= p
                h += 1
            return (p, h) if q == 1 else None
    return None


# -- polynomials over GF(p), coefficient lists low degree first ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p: int, degree: int) -> Iterator[tuple[int, ...]]:
    # low-degree-first lexicographic order on (c_0, ..., c_{d-1}, 1)
    for tail in itertools.product(range(p), repeat=degree):
        yield tuple(reversed(tail)) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def smallest_irreducible(p: int, h: int) -> tuple[int, ...]:
    for cand in _monic_polys(p, h):
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {h} over GF({p})")  # pragma: no cover


# -- field ---------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^h) with a fixed monic irreducible ``modulus`` (c_0..c_h)."""

    p: int
    h: int
    modulus: tuple[int, ...]
    q: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"p={self.p} is not prime")
        if self.h < 1:
            raise FieldError(f"h={self.h} must be positive")
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != self.h + 1:
            raise FieldError(
                f"modulus has degree {len(mod) - 1}, expected {self.h}")
        if any(not 0 <= c < self.p for c in mod):
            raise FieldError("modulus coefficients must lie in [0, p)")
        if mod[-1] != 1:
            raise FieldError("modulus must be monic")
        if not is_irreducible(mod, self.p):
            raise FieldError(f"modulus {list(mod)} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "q", self.p ** self.h)

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, h={self.h}, modulus={list(self.modulus)})"

    # encoding

    def decode(self, rep: int) -> tuple[int, ...]:
        self._check(rep)
        out = []
        for _ in range(self.h):
            rep, c = divmod(rep, self.p)
            out.append(c)
        return tuple(out)

    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.h:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        rep = 0
        for c in reversed(list(coeffs)):
            rep = rep * self.p + c % self.p
        return rep

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of GF({self.q})")

    # tables

    def _mul_poly(self, a: int, b: int) -> int:
        prod = _poly_mul(self.decode(a), self.decode(b), self.p)
        return self.encode(_poly_mod(prod, self.modulus, self.p))

    @cached_property
    def _exp_log(self) -> tuple[list[int], list[int]]:
        q = self.q
        if q == 2:
            return [1, 1], [0, 0]
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._mul_poly(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for k, v in enumerate(exp):
                    log[v] = k
                return exp + exp, log
        raise FieldError("no primitive element found")  # pragma: no cover

    @cached_property
    def mul_table(self) -> np.ndarray:
        """Dense q x q multiplication table (for vectorized kernels)."""
        exp, log = self._exp_log
        exp_a = np.array(exp, dtype=np.int64)
        log_a = np.array(log, dtype=np.int64)
        r = np.arange(1, self.q)
        table = np.zeros((self.q, self.q), dtype=np.int32)
        table[1:, 1:] = exp_a[(log_a[r][:, None] + log_a[r][None, :]) % (self.q - 1)]
        return table

    @cached_property
    def add_table(self) -> np.ndarray:
        """Dense q x q addition table."""
        r = np.arange(self.q)
        if self.h == 1:
            return ((r[:, None] + r[None, :]) % self.p).astype(np.int32)
        digits = np.stack([(r // self.p ** i) % self.p for i in range(self.h)])
        out = np.zeros((self.q, self.q), dtype=np.int64)
        for i in range(self.h):
            out += ((digits[i][:, None] + digits[i][None, :]) % self.p) * self.p ** i
        return out.astype(np.int32)

    # arithmetic on reps

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.h == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out, scale = 0, 1
        for _ in range(self.h):
            a, x = divmod(a, self.p)
            b, y = divmod(b, self.p)
            out += ((x + y) % self.p) * scale
            scale *= self.p
        return out

    def neg(self, a: int) -> int:
        self._check(a)
        if self.h == 1:
            return (-a) % self.p
        return self.encode([(-c) % self.p for c in self.decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if a == 0 or b == 0:
            return 0
        if self.h == 1:
            return a * b % self.p
        exp, log = self._exp_log
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.h == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._exp_log
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        self._check(a)
        if k < 0:
            a, k = self.inv(a), -k
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def element(self, rep: int) -> "FieldElement":
        self._check(rep)
        return FieldElement(self, rep)

    def to_json(self) -> dict:
        return {"p": self.p, "h": self.h, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        try:
            p, h = int(data["p"]), int(data["h"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FieldError(f"bad field description: {data!r}") from exc
        modulus = data.get("modulus")
        return field_new(p, h, modulus)


def field_new(p: int, h: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^h). Without a modulus, the lexicographically smallest monic
    irreducible of degree h is used (for h = 1 that is ``x``)."""
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if h < 1:
        raise FieldError(f"h={h} must be positive")
    if modulus is None:
        modulus = smallest_irreducible(p, h)
    return FieldSpec(p, h, tuple(modulus))


def field_of_order(q: int) -> FieldSpec:
    pp = prime_power(q)
    if pp is None:
        raise FieldError(f"{q} is not a prime power")
    return field_new(*pp)


def elements(spec: FieldSpec) -> list["FieldElement"]:
    return [FieldElement(spec, r) for r in range(spec.q)]


@dataclass(frozen=True)
class FieldElement:
    """Convenience wrapper pairing a rep with its field; kernels use bare ints."""

    spec: FieldSpec
    rep: int

    def _other(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("elements belong to different fields")
            return other.rep
        return other

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.rep, self._other(other)))

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.rep, self._other(other)))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.rep, self._other(other)))

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self.rep, self._other(other)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.rep))

    def __pow__(self, k: int):
        return FieldElement(self.spec, self.spec.pow(self.rep, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.rep))

    def __int__(self) -> int:
        return self.rep

    def __repr__(self) -> str:
        return f"GF({self.spec.q})({self.rep})"
