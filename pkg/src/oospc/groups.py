"""Translation action of Z_m x Z_n on points and blocks.

Points are plain ``(row, col)`` tuples. A :class:`Block` carries its ambient
moduli so that blocks over different groups can never be mixed silently.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AmbientMismatchError, ParameterError

Point = tuple[int, int]


@dataclass(frozen=True, order=True)
class Block:
    """A set of distinct points of Z_m x Z_n, kept sorted lexicographically."""

    m: int
    n: int
    points: tuple[Point, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ParameterError(f"moduli must be positive, got ({self.m}, {self.n})")
        pts = tuple(sorted((int(r), int(c)) for r, c in self.points))
        for r, c in pts:
            if not (0 <= r < self.m and 0 <= c < self.n):
                raise AmbientMismatchError(
                    f"point ({r}, {c}) outside Z_{self.m} x Z_{self.n}")
        if len(set(pts)) != len(pts):
            raise ParameterError(f"block has repeated points: {pts}")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in self.points

    @property
    def ambient(self) -> tuple[int, int]:
        return (self.m, self.n)

    def indices(self) -> list[int]:
        """Flat indices ``row * n + col``, sorted."""
        return [r * self.n + c for r, c in self.points]

    @classmethod
    def from_indices(cls, m, n, idx: Iterable[int]) -> "Block":
        return cls(m, n, tuple(divmod(int(i), n) for i in idx))

    def __repr__(self):
        body = ",".join(f"({r},{c})" for r, c in self.points)
        return f"Block[Z{self.m}xZ{self.n}]{{{body}}}"


@dataclass(frozen=True)
class Orbit:
    representative: Block
    length: int
    stabilizer: tuple[Point, ...]


def check_ambient(*blocks: Block) -> tuple[int, int]:
    """Return the shared ambient of ``blocks`` or raise."""
    amb = None
    for b in blocks:
        if amb is None:
            amb = b.ambient
        elif b.ambient != amb:
            raise AmbientMismatchError(f"ambient {b.ambient} differs from {amb}")
    return amb


def elements(m: int, n: int) -> list[Point]:
    return [(r, c) for r in range(m) for c in range(n)]


def add(p: Point, q: Point, m: int, n: int) -> Point:
    return ((p[0] + q[0]) % m, (p[1] + q[1]) % n)


def neg(p: Point, m: int, n: int) -> Point:
    return ((-p[0]) % m, (-p[1]) % n)


def translate(block: Block, delta: Point) -> Block:
    m, n = block.ambient
    dr, dc = delta
    if not (0 <= dr < m and 0 <= dc < n):
        raise AmbientMismatchError(f"translation ({dr}, {dc}) is not in Z_{m} x Z_{n}")
    return Block(m, n, tuple(((r + dr) % m, (c + dc) % n) for r, c in block.points))


def stabilizer(block: Block) -> list[Point]:
    if not block.points:
        raise ParameterError("stabilizer of the empty block is the whole group")
    m, n = block.ambient
    pts = set(block.points)
    r0, c0 = block.points[0]
    # any stabilizing translation maps the first point onto some point of the block
    out = []
    for r, c in block.points:
        d = ((r - r0) % m, (c - c0) % n)
        if all(add(p, d, m, n) in pts for p in block.points):
            out.append(d)
    return sorted(out)


def canonical(block: Block) -> Block:
    """Lexicographically least translate of ``block``.

    The least translate starts with (0, 0), so only the |B| translates that
    move a point of the block to the origin need to be compared.
    """
    m, n = block.ambient
    if not block.points:
        return block
    best = None
    for r0, c0 in block.points:
        cand = tuple(sorted(((r - r0) % m, (c - c0) % n) for r, c in block.points))
        if best is None or cand < best:
            best = cand
    return Block(m, n, best)


def orbit_of(block: Block) -> Orbit:
    stab = stabilizer(block)
    m, n = block.ambient
    return Orbit(canonical(block), (m * n) // len(stab), tuple(stab))


def orbit_blocks(block: Block) -> list[Block]:
    """All distinct translates of ``block`` in lexicographic order."""
    m, n = block.ambient
    seen = {translate(block, d) for d in elements(m, n)}
    return sorted(seen)


def develop(base_blocks: Sequence[Block]) -> list[Block]:
    """Concatenate the orbits of the base blocks (one orbit per base block).

    Blocks shared by two orbits are kept twice so that a verifier can see them.
    """
    if not base_blocks:
        return []
    check_ambient(*base_blocks)
    out = []
    for b in base_blocks:
        out.extend(orbit_blocks(b))
    return out


def duplicates(blocks: Iterable[Block]) -> dict[Block, int]:
    return {b: k for b, k in Counter(blocks).items() if k > 1}


# ---------------------------------------------------------------------------
# vectorised development over flat point indices


def translation_table(m: int, n: int, action: str = "full") -> np.ndarray:
    """Permutation table ``T[g, x]`` = image of flat point x under translation g.

    ``action="semi-cyclic"`` keeps only the column shifts (0, j).
    """
    rows = np.arange(m).repeat(n)
    cols = np.tile(np.arange(n), m)
    if action == "full":
        shifts = [(dr, dc) for dr in range(m) for dc in range(n)]
    elif action == "semi-cyclic":
        shifts = [(0, dc) for dc in range(n)]
    else:
        raise ParameterError(f"unknown action {action!r}")
    sh = np.array(shifts, dtype=np.int64)
    r = (rows[None, :] + sh[:, :1]) % m
    c = (cols[None, :] + sh[:, 1:]) % n
    return r * n + c


def develop_array(base_idx: np.ndarray, table: np.ndarray):
    """Develop same-size base blocks given as an index array of shape (B, k).

    Returns ``(blocks, owner, lengths)``: the distinct translates of every base
    block as a sorted (N, k) array, the base-block index of each developed
    row, and the orbit length of every base block.
    """
    base_idx = np.asarray(base_idx, dtype=np.int64)
    nb, k = base_idx.shape
    g = table.shape[0]
    if nb == 0:
        return np.empty((0, k), np.int64), np.empty(0, np.int64), np.empty(0, np.int64)
    img = np.sort(table[:, base_idx], axis=-1)          # (G, B, k)
    img = np.transpose(img, (1, 0, 2))                   # (B, G, k)
    v = table.shape[1]
    key = np.zeros((nb, g), dtype=np.int64)
    for j in range(k):
        key = key * v + img[:, :, j]
    order = np.argsort(key, axis=1, kind="stable")
    skey = np.take_along_axis(key, order, axis=1)
    first = np.ones_like(skey, dtype=bool)
    first[:, 1:] = skey[:, 1:] != skey[:, :-1]
    lengths = first.sum(axis=1)
    simg = np.take_along_axis(img, order[:, :, None], axis=1)
    blocks = simg[first]
    owner = np.repeat(np.arange(nb), lengths)
    return blocks, owner, lengths
