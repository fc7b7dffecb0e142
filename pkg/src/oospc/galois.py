"""GF(p^2) arithmetic, linear fractional maps, and inversive planes.

Field elements are ints ``a + b*p`` standing for ``a + b*theta`` with
``theta^2 = r``, r the least quadratic non-residue mod p. The projective
point at infinity is ``None``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from collections import Counter

import numpy as np

from .design import DesignInstance, Oospc
from .errors import ConstructionError, ParameterError
from .groups import Block, canonical

MAX_P = 13


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _check_p(p):
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ParameterError(f"p must be an odd prime, got {p}")
    if p > MAX_P:
        raise ParameterError(f"p={p} exceeds the desk-scale ceiling {MAX_P}")


def least_nonresidue(p: int) -> int:
    squares = {(x * x) % p for x in range(1, p)}
    return next(r for r in range(2, p) if r not in squares)


@dataclass(frozen=True)
class FieldElem:
    a: int
    b: int


class GF:
    """The field GF(p^2) with lookup tables for + and *."""

    def __init__(self, p: int):
        _check_p(p)
        self.p = p
        self.q = p * p
        self.r = least_nonresidue(p)
        a = np.arange(self.q) % p
        b = np.arange(self.q) // p
        self.add_t = ((a[:, None] + a[None, :]) % p) + ((b[:, None] + b[None, :]) % p) * p
        ra = (a[:, None] * a[None, :] + self.r * b[:, None] * b[None, :]) % p
        rb = (a[:, None] * b[None, :] + b[:, None] * a[None, :]) % p
        self.mul_t = ra + rb * p
        self.neg_t = ((-a) % p) + ((-b) % p) * p
        inv = np.zeros(self.q, dtype=np.int64)
        for x in range(1, self.q):
            inv[x] = int(np.nonzero(self.mul_t[x] == 1)[0][0])
        self.inv_t = inv

    def elem(self, a: int, b: int = 0) -> int:
        return (a % self.p) + (b % self.p) * self.p

    def coords(self, x: int) -> FieldElem:
        return FieldElem(x % self.p, x // self.p)

    def add(self, x, y):
        return int(self.add_t[x, y])

    def mul(self, x, y):
        return int(self.mul_t[x, y])

    def neg(self, x):
        return int(self.neg_t[x])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv_t[x])

    def subfield(self) -> list[int]:
        """GF(p) inside GF(p^2): the elements with zero theta-coordinate."""
        return list(range(self.p))


@lru_cache(maxsize=None)
def field(p: int) -> GF:
    return GF(p)


@dataclass(frozen=True)
class LinearFractional:
    """x -> (ax + b)/(cx + d), scaled so the first nonzero coefficient is 1."""

    a: int
    b: int
    c: int
    d: int


def normalize(F: GF, a, b, c, d) -> LinearFractional:
    det = F.sub(F.mul(a, d), F.mul(b, c))
    if det == 0:
        raise ParameterError("the determinant ad - bc must be nonzero")
    lead = next(x for x in (a, b, c, d) if x)
    s = F.inv(lead)
    return LinearFractional(F.mul(a, s), F.mul(b, s), F.mul(c, s), F.mul(d, s))


def apply(F: GF, f: LinearFractional, x):
    """Image of x (field element or None for infinity) under f."""
    if x is None:
        return None if f.c == 0 else F.mul(f.a, F.inv(f.c))
    num = F.add(F.mul(f.a, x), f.b)
    den = F.add(F.mul(f.c, x), f.d)
    if den == 0:
        return None
    return F.mul(num, F.inv(den))


def canonical_maps(F: GF):
    """Coefficient arrays (a, b, c, d) of all q^3 - q canonical maps."""
    q = F.q
    x = np.arange(q)
    out = []
    # a = 1
    b, c, d = np.meshgrid(x, x, x, indexing="ij")
    b, c, d = b.ravel(), c.ravel(), d.ravel()
    keep = F.add_t[d, F.neg_t[F.mul_t[b, c]]] != 0
    out.append(np.stack([np.ones(keep.sum(), int), b[keep], c[keep], d[keep]], axis=1))
    # a = 0, b = 1: det = -c
    c, d = np.meshgrid(x, x, indexing="ij")
    c, d = c.ravel(), d.ravel()
    keep = c != 0
    n = keep.sum()
    out.append(np.stack([np.zeros(n, int), np.ones(n, int), c[keep], d[keep]], axis=1))
    # a = b = 0 is singular
    return np.concatenate(out)


def apply_all(F: GF, maps: np.ndarray, pts) -> np.ndarray:
    """Images of ``pts`` under every map; infinity is encoded as q."""
    q = F.q
    a, b, c, d = (maps[:, i:i + 1] for i in range(4))
    out = np.empty((len(maps), len(pts)), dtype=np.int64)
    for j, x in enumerate(pts):
        if x is None:
            cc = c[:, 0]
            img = np.full(len(maps), q)
            nz = cc != 0
            img[nz] = F.mul_t[a[nz, 0], F.inv_t[cc[nz]]]
        else:
            num = F.add_t[F.mul_t[a[:, 0], x], b[:, 0]]
            den = F.add_t[F.mul_t[c[:, 0], x], d[:, 0]]
            img = np.full(len(maps), q)
            nz = den != 0
            img[nz] = F.mul_t[num[nz], F.inv_t[den[nz]]]
        out[:, j] = img
    return out


def inversive_plane(p: int, check: bool = True) -> list[tuple]:
    """Circles of the inversive plane of order p on GF(p^2) u {inf}.

    Each circle is a sorted tuple of field elements, with ``None`` last when
    it passes through infinity.
    """
    F = field(p)
    q = F.q
    base = F.subfield() + [None]
    imgs = np.sort(apply_all(F, canonical_maps(F), base), axis=1)
    circles = np.unique(imgs, axis=0)
    out = [tuple(int(x) if x < q else None for x in row) for row in circles]
    if check:
        cnt = Counter()
        for row in circles:
            for t in combinations(row.tolist(), 3):
                cnt[t] += 1
        total = (q + 1) * q * (q - 1) // 6
        if len(cnt) != total or any(v != 1 for v in cnt.values()):
            raise ConstructionError("circle set is not a Steiner 3-design", "inversive")
    return out


def inversive_to_oospc(p: int, check: bool = True):
    """Optimal (p, p, p+1, 2) code from the circles avoiding infinity.

    Returns ``(code, packing)`` over Z_p x Z_p via a + b*theta -> (a, b).
    """
    circles = [c for c in inversive_plane(p, check) if c[-1] is not None]
    if len(circles) != p * p * (p - 1):
        raise ConstructionError(f"expected {p * p * (p - 1)} circles, got {len(circles)}",
                                "inversive")
    reps = sorted({canonical(Block(p, p, tuple((x % p, x // p) for x in c)))
                   for c in circles})
    packing = DesignInstance(p, p, "packing", 3, (p + 1,), reps)
    code = Oospc(p, p, p + 1, 2, reps)
    if check:
        from .verify import verify_oospc, verify_packing
        rep = verify_packing(packing, require_strict=True)
        if not rep.valid or len(reps) != p - 1:
            raise ConstructionError("circle packing does not verify", "inversive", rep)
        rep = verify_oospc(code)
        if not rep.valid:
            raise ConstructionError("code does not verify", "inversive", rep)
    return code, packing
