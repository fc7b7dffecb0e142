"""Data model for designs and codes, group partitions, and the design-file format.

Design files are UTF-8 JSON. Base blocks are lists of ``[row, col]`` pairs.
The canonical form sorts the points of every block and the blocks of every
list lexicographically, and writes one block per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from math import gcd
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import AmbientMismatchError, ParameterError, ParseError
from .groups import Block, Point

KINDS = ("packing", "steiner", "g-design", "h-design", "g-star", "cyclic-g-star")
GROUPED_KINDS = ("g-design", "h-design", "g-star", "cyclic-g-star")
ACTIONS = ("full", "semi-cyclic")
INF = "inf"


# ---------------------------------------------------------------------------
# group partitions


@dataclass(frozen=True)
class GroupPartition:
    """Cosets of the subgroup a*Z_m x b*Z_n of Z_m x Z_n.

    A point (r, c) lies in group ``(r mod a) * b + (c mod b)``.
    """

    m: int
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.m % self.a or self.b < 1 or self.n % self.b:
            raise ParameterError(
                f"group moduli ({self.a}, {self.b}) must divide ({self.m}, {self.n})")

    @classmethod
    def from_e(cls, m: int, n: int, e: int) -> "GroupPartition":
        """Partition selected by the group parameter ``e``.

        e < m:  groups {i, i+m/e, ...} x Z_n  (m/e groups of size e*n)
        e = m:  groups {i} x Z_n              (m groups of size n)
        m = 1:  groups i + e*Z_n inside Z_n    (e groups of size n/e)
        """
        if m == 1:
            if e < 1 or n % e:
                raise ParameterError(f"e={e} must divide n={n} for a cyclic design")
            return cls(1, n, 1, e)
        if e < 1 or m % e:
            raise ParameterError(f"e={e} does not divide m={m}")
        return cls(m, n, m if e == m else m // e, 1)

    @property
    def count(self) -> int:
        return self.a * self.b

    @property
    def size(self) -> int:
        return (self.m // self.a) * (self.n // self.b)

    def index(self, p: Point) -> int:
        return (p[0] % self.a) * self.b + (p[1] % self.b)

    def index_array(self) -> np.ndarray:
        """Group index of every flat point ``r * n + c``."""
        r = np.arange(self.m).repeat(self.n)
        c = np.tile(np.arange(self.n), self.m)
        return (r % self.a) * self.b + (c % self.b)

    def groups(self) -> list[list[Point]]:
        out = [[] for _ in range(self.count)]
        for r in range(self.m):
            for c in range(self.n):
                out[self.index((r, c))].append((r, c))
        return out

    def contains_subgroup(self) -> set[Point]:
        """The subgroup a*Z_m x b*Z_n (the group through the origin)."""
        return {(r, c) for r in range(0, self.m, self.a) for c in range(0, self.n, self.b)}


def group_index(p: Point, e: int, m: int) -> int:
    """Row-based group index: the row itself when e = m, else row mod (m/e)."""
    if e < 1 or m % e:
        raise ParameterError(f"e={e} does not divide m={m}")
    if e == m:
        return p[0]
    return p[0] % (m // e)


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class DesignInstance:
    m: int
    n: int
    kind: str
    t: int
    k: tuple[int, ...]
    base_blocks: tuple[Block, ...]
    e: Optional[int] = None
    lam: Optional[int] = None
    action: str = "full"
    groups: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown design kind {self.kind!r}")
        if self.action not in ACTIONS:
            raise ParameterError(f"unknown action {self.action!r}")
        object.__setattr__(self, "k", tuple(sorted(set(self.k))))
        object.__setattr__(self, "base_blocks", tuple(self.base_blocks))
        for b in self.base_blocks:
            if b.ambient != (self.m, self.n):
                raise AmbientMismatchError(f"{b!r} not over Z_{self.m} x Z_{self.n}")
        if self.kind in GROUPED_KINDS and self.e is None and self.groups is None:
            raise ParameterError(f"kind {self.kind} needs a group parameter e")
        if self.groups is not None:
            object.__setattr__(self, "groups", tuple(self.groups))

    @property
    def v(self) -> int:
        return self.m * self.n

    def partition(self) -> Optional[GroupPartition]:
        if self.groups is not None:
            return GroupPartition(self.m, self.n, *self.groups)
        if self.e is None:
            return None
        return GroupPartition.from_e(self.m, self.n, self.e)

    def with_blocks(self, blocks, **kw) -> "DesignInstance":
        return replace(self, base_blocks=tuple(blocks), **kw)


@dataclass(frozen=True)
class FanDesign:
    """A 1-fan design: B0 strength-2 H-design, B0 u B1 strength-3 G-design."""

    m: int
    n: int
    k0: tuple[int, ...]
    k1: tuple[int, ...]
    b0: tuple[Block, ...]
    b1: tuple[Block, ...]
    e: Optional[int] = None
    groups: Optional[tuple[int, int]] = None
    action: str = "full"
    strict: bool = True

    def __post_init__(self):
        for name in ("k0", "k1"):
            object.__setattr__(self, name, tuple(sorted(set(getattr(self, name)))))
        for name in ("b0", "b1"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        for b in self.b0 + self.b1:
            if b.ambient != (self.m, self.n):
                raise AmbientMismatchError(f"{b!r} not over Z_{self.m} x Z_{self.n}")
        if self.groups is not None:
            object.__setattr__(self, "groups", tuple(self.groups))
        if self.e is None and self.groups is None:
            raise ParameterError("a fan design needs a group parameter")

    @property
    def v(self) -> int:
        return self.m * self.n

    def partition(self) -> GroupPartition:
        if self.groups is not None:
            return GroupPartition(self.m, self.n, *self.groups)
        return GroupPartition.from_e(self.m, self.n, self.e)

    def union(self) -> DesignInstance:
        """B0 u B1 as a strength-3 G-design record."""
        return DesignInstance(self.m, self.n, "g-design", 3, self.k0 + self.k1,
                              self.b0 + self.b1, e=self.e, groups=self.groups,
                              action=self.action)


@dataclass(frozen=True)
class Oospc:
    m: int
    n: int
    w: int
    lam: int
    codewords: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "codewords", tuple(self.codewords))
        if not (self.m * self.n > self.w >= self.lam):
            raise ParameterError(f"need mn > w >= lambda, got mn={self.m * self.n} "
                                 f"w={self.w} lambda={self.lam}")
        for c in self.codewords:
            if c.ambient != (self.m, self.n):
                raise AmbientMismatchError(f"{c!r} not over Z_{self.m} x Z_{self.n}")
            if len(c) != self.w:
                raise ParameterError(f"codeword {c!r} does not have weight {self.w}")

    @property
    def size(self) -> int:
        return len(self.codewords)


@dataclass(frozen=True)
class RotationalDesign:
    """Blocks on Z_m u {inf}, invariant under i -> i+1 with inf fixed.

    Points are ints in [0, m) or ``None`` for the fixed point. ``base_blocks``
    are orbit representatives under Z_m.
    """

    m: int
    k: int
    base_blocks: tuple[tuple, ...]

    def __post_init__(self):
        canon = []
        for blk in self.base_blocks:
            fin = sorted(int(x) for x in blk if x is not None)
            if any(not 0 <= x < self.m for x in fin):
                raise ParameterError(f"point outside Z_{self.m} in {blk}")
            has_inf = any(x is None for x in blk)
            b = tuple(fin) + ((None,) if has_inf else ())
            if len(set(b)) != len(b) or len(b) != len(blk):
                raise ParameterError(f"block has repeated points: {blk}")
            canon.append(b)
        object.__setattr__(self, "base_blocks", tuple(canon))

    @property
    def v(self) -> int:
        return self.m + 1


@dataclass
class VerificationReport:
    kind: str
    valid: bool
    violations: list = field(default_factory=list)
    violation_count: int = 0
    base_block_count: int = 0
    orbit_lengths: dict = field(default_factory=dict)
    strict: bool = True
    optimal: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "valid": self.valid,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "base_block_count": self.base_block_count,
            "orbit_lengths": {str(k): v for k, v in sorted(self.orbit_lengths.items())},
            "strict": self.strict,
            "optimal": self.optimal,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False, default=_jsonable)


def _jsonable(x):
    if isinstance(x, Block):
        return [list(p) for p in x.points]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (tuple, set, frozenset)):
        return list(x)
    raise TypeError(f"not serialisable: {type(x)}")


# ---------------------------------------------------------------------------
# matrices


def to_matrix(block: Block) -> np.ndarray:
    mat = np.zeros((block.m, block.n), dtype=np.uint8)
    for r, c in block.points:
        mat[r, c] = 1
    return mat


def from_matrix(matrix) -> Block:
    mat = np.asarray(matrix)
    if mat.ndim != 2:
        raise ParameterError("matrix must be two-dimensional")
    if not np.isin(mat, (0, 1)).all():
        raise ParameterError("matrix entries must be 0 or 1")
    rows, cols = np.nonzero(mat)
    return Block(mat.shape[0], mat.shape[1], tuple(zip(rows.tolist(), cols.tolist())))


def matrix_text(codewords) -> str:
    """m lines of n '0'/'1' characters per codeword, codewords separated by a blank line."""
    chunks = []
    for cw in codewords:
        mat = to_matrix(cw)
        chunks.append("\n".join("".join("1" if x else "0" for x in row) for row in mat))
    return "\n\n".join(chunks) + ("\n" if chunks else "")


def parse_matrix_text(text: str, m: int, n: int) -> list[Block]:
    out = []
    for chunk in text.strip("\n").split("\n\n"):
        if not chunk:
            continue
        rows = chunk.split("\n")
        if len(rows) != m or any(len(r) != n for r in rows):
            raise ParseError(f"expected {m} rows of {n} characters")
        out.append(from_matrix([[int(ch) for ch in r] for r in rows]))
    return out


def design_codewords(d) -> list[Block]:
    if isinstance(d, Oospc):
        return list(d.codewords)
    if isinstance(d, DesignInstance):
        return list(d.base_blocks)
    if isinstance(d, FanDesign):
        return list(d.b0 + d.b1)
    raise ParameterError(f"{type(d).__name__} has no codewords")


# ---------------------------------------------------------------------------
# isomorphisms between ambient groups


def partition_kwargs(m: int, n: int, a: int, b: int) -> dict:
    """Keyword arguments (``e`` or ``groups``) that select the partition (a, b)."""
    if m == 1 and a == 1:
        return {"e": b, "groups": None}
    if b == 1 and a > 1:
        return {"e": m if a == m else m // a, "groups": None}
    return {"e": None, "groups": (a, b)}


def swap_axes(d):
    """Transport a design along Z_m x Z_n -> Z_n x Z_m, (r, c) -> (c, r)."""
    def sw(blocks):
        return tuple(Block(d.n, d.m, tuple((c, r) for r, c in b.points)) for b in blocks)

    if isinstance(d, Oospc):
        return replace(d, m=d.n, n=d.m, codewords=sw(d.codewords))
    if d.action != "full":
        raise ParameterError("only fully translation-invariant designs can be transposed")
    part = d.partition()
    kw = partition_kwargs(d.n, d.m, part.b, part.a) if part is not None else {}
    if isinstance(d, FanDesign):
        return replace(d, m=d.n, n=d.m, b0=sw(d.b0), b1=sw(d.b1), **kw)
    return replace(d, m=d.n, n=d.m, base_blocks=sw(d.base_blocks), **kw)


def crt_split(d: DesignInstance, m1: int, m2: int) -> DesignInstance:
    """Transport a cyclic design on Z_{m1 m2} (stored m = 1) to Z_m1 x Z_m2.

    Requires gcd(m1, m2) = 1; x -> (x mod m1, x mod m2).
    """
    if d.m != 1 or d.n != m1 * m2 or gcd(m1, m2) != 1:
        raise ParameterError(f"cannot split Z_{d.n} as Z_{m1} x Z_{m2}")
    blocks = [Block(m1, m2, tuple((x % m1, x % m2) for _, x in b.points))
              for b in d.base_blocks]
    part = d.partition()
    kw = {}
    if part is not None:
        # subgroup b*Z_v maps to (b*Z_m1) x (b*Z_m2)
        kw = partition_kwargs(m1, m2, gcd(part.b, m1), gcd(part.b, m2))
    return replace(d, m=m1, n=m2, base_blocks=tuple(blocks), **kw)


def crt_join(d: DesignInstance) -> DesignInstance:
    """Inverse of :func:`crt_split`: Z_m x Z_n -> Z_{mn} for coprime m, n."""
    m, n = d.m, d.n
    if gcd(m, n) != 1:
        raise ParameterError(f"Z_{m} x Z_{n} is not cyclic")
    v = m * n
    lift = {}
    for x in range(v):
        lift[(x % m, x % n)] = x
    blocks = [Block(1, v, tuple((0, lift[p]) for p in b.points)) for b in d.base_blocks]
    part = d.partition()
    kw = {}
    if part is not None:
        # (a*Z_m) x (b*Z_n) is the subgroup of index a*b
        kw = partition_kwargs(1, v, 1, part.a * part.b)
    return replace(d, m=1, n=v, base_blocks=tuple(blocks), **kw)


def regroup(d: DesignInstance, m2: int, n2: int) -> DesignInstance:
    """Transport between two coordinatizations of the same cyclic group."""
    if d.m * d.n != m2 * n2:
        raise ParameterError(f"Z_{d.m} x Z_{d.n} and Z_{m2} x Z_{n2} differ in order")
    flat = d if d.m == 1 else crt_join(d)
    return flat if m2 == 1 else crt_split(flat, m2, n2)


# ---------------------------------------------------------------------------
# design files

_FIELD_ORDER = ("m", "n", "kind", "t", "k", "e", "lambda", "action", "groups", "strict")


def _block_json(b) -> str:
    return json.dumps([list(p) for p in b.points], separators=(",", ":"))


def _rot_block_json(b) -> str:
    pts = [[0, x] if x is not None else INF for x in b]
    return json.dumps(pts, separators=(",", ":"))


def _block_list(lines, indent) -> str:
    if not lines:
        return "[]"
    pad = " " * indent
    return "[\n" + ",\n".join(pad + "  " + s for s in lines) + "\n" + pad + "]"


def design_to_dict(d) -> dict:
    """Canonical JSON object (blocks sorted) for any supported record."""
    if isinstance(d, DesignInstance):
        out = {"m": d.m, "n": d.n, "kind": d.kind, "t": d.t, "k": list(d.k)}
        if d.e is not None:
            out["e"] = d.e
        if d.lam is not None:
            out["lambda"] = d.lam
        if d.action != "full":
            out["action"] = d.action
        if d.groups is not None:
            out["groups"] = list(d.groups)
        out["base_blocks"] = sorted(d.base_blocks)
        return out
    if isinstance(d, FanDesign):
        out = {"m": d.m, "n": d.n, "kind": "fan", "t": 3, "k": sorted(set(d.k0 + d.k1))}
        if d.e is not None:
            out["e"] = d.e
        if d.action != "full":
            out["action"] = d.action
        if d.groups is not None:
            out["groups"] = list(d.groups)
        if not d.strict:
            out["strict"] = False
        out["fan"] = {"k0": list(d.k0), "k1": list(d.k1),
                      "b0": sorted(d.b0), "b1": sorted(d.b1)}
        return out
    if isinstance(d, Oospc):
        return {"m": d.m, "n": d.n, "kind": "oospc", "k": [d.w], "lambda": d.lam,
                "base_blocks": sorted(d.codewords)}
    if isinstance(d, RotationalDesign):
        return {"m": 1, "n": d.m, "kind": "rosqs", "t": 3, "k": [d.k],
                "base_blocks": sorted(d.base_blocks, key=_rot_key)}
    raise ParameterError(f"cannot serialise {type(d).__name__}")


def _rot_key(b):
    return tuple(x if x is not None else 1 << 30 for x in b)


def dumps(d) -> str:
    obj = design_to_dict(d)
    rot = isinstance(d, RotationalDesign)
    enc = _rot_block_json if rot else _block_json
    parts = []
    for key in _FIELD_ORDER:
        if key in obj:
            parts.append(f'  "{key}": {json.dumps(obj[key], separators=(", ", ": "))}')
    if "fan" in obj:
        f = obj["fan"]
        inner = [f'    "k0": {json.dumps(f["k0"])}', f'    "k1": {json.dumps(f["k1"])}',
                 f'    "b0": {_block_list([enc(b) for b in f["b0"]], 4)}',
                 f'    "b1": {_block_list([enc(b) for b in f["b1"]], 4)}']
        parts.append('  "fan": {\n' + ",\n".join(inner) + "\n  }")
    else:
        parts.append(f'  "base_blocks": {_block_list([enc(b) for b in obj["base_blocks"]], 2)}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def write_design(d, path) -> None:
    Path(path).write_text(dumps(d), encoding="utf-8")


def _need(obj, key, typ, path=""):
    if key not in obj:
        raise ParseError(f"missing field {key!r}", f"{path}/{key}")
    val = obj[key]
    if typ is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ParseError(f"expected integer, got {val!r}", f"{path}/{key}")
    if typ is not int and not isinstance(val, typ):
        raise ParseError(f"expected {typ.__name__}, got {val!r}", f"{path}/{key}")
    return val


def _parse_blocks(raw, m, n, path):
    if not isinstance(raw, list):
        raise ParseError("expected a list of blocks", path)
    blocks = []
    for i, blk in enumerate(raw):
        if not isinstance(blk, list):
            raise ParseError("expected a list of points", f"{path}/{i}")
        pts = []
        for j, p in enumerate(blk):
            where = f"{path}/{i}/{j}"
            if (not isinstance(p, list) or len(p) != 2
                    or any(isinstance(x, bool) or not isinstance(x, int) for x in p)):
                raise ParseError(f"expected [row, col] integers, got {p!r}", where)
            if not (0 <= p[0] < m and 0 <= p[1] < n):
                raise ParseError(f"residue {p} outside Z_{m} x Z_{n}", where)
            pts.append(tuple(p))
        if len(set(pts)) != len(pts):
            raise ParseError("duplicate point in block", f"{path}/{i}")
        blocks.append(Block(m, n, tuple(pts)))
    seen = set()
    for i, b in enumerate(blocks):
        if b in seen:
            raise ParseError("duplicate base block", f"{path}/{i}")
        seen.add(b)
    return tuple(sorted(blocks))


def _parse_rot_blocks(raw, m, path):
    if not isinstance(raw, list):
        raise ParseError("expected a list of blocks", path)
    out = []
    for i, blk in enumerate(raw):
        pts = []
        for j, p in enumerate(blk):
            where = f"{path}/{i}/{j}"
            if p == INF:
                pts.append(None)
            elif isinstance(p, list) and len(p) == 2 and p[0] == 0 and isinstance(p[1], int):
                if not 0 <= p[1] < m:
                    raise ParseError(f"residue {p} outside Z_{m}", where)
                pts.append(p[1])
            else:
                raise ParseError(f"expected [0, x] or \"inf\", got {p!r}", where)
        if len(set(pts)) != len(pts):
            raise ParseError("duplicate point in block", f"{path}/{i}")
        out.append(pts)
    return out


def design_from_dict(obj: dict):
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object", "")
    m = _need(obj, "m", int)
    n = _need(obj, "n", int)
    if m < 1 or n < 1:
        raise ParseError("moduli must be positive", "/m")
    kind = _need(obj, "kind", str)
    k = _need(obj, "k", list)
    if not k or any(isinstance(x, bool) or not isinstance(x, int) or x < 1 for x in k):
        raise ParseError("block sizes must be positive integers", "/k")
    e = obj.get("e")
    if e is not None and (isinstance(e, bool) or not isinstance(e, int) or e < 1):
        raise ParseError("group parameter must be a positive integer", "/e")
    groups = obj.get("groups")
    if groups is not None:
        if (not isinstance(groups, list) or len(groups) != 2
                or any(not isinstance(x, int) for x in groups)):
            raise ParseError("groups must be [a, b]", "/groups")
        if groups[0] < 1 or m % groups[0] or groups[1] < 1 or n % groups[1]:
            raise ParseError(f"groups {groups} must divide ({m}, {n})", "/groups")
        groups = tuple(groups)
    action = obj.get("action", "full")
    if action not in ACTIONS:
        raise ParseError(f"unknown action {action!r}", "/action")
    if e is not None and groups is None:
        if m == 1 and n % e:
            raise ParseError(f"e={e} does not divide n={n}", "/e")
        if m > 1 and m % e:
            raise ParseError(f"e={e} does not divide m={m}", "/e")

    try:
        if kind == "oospc":
            lam = _need(obj, "lambda", int)
            if len(k) != 1:
                raise ParseError("an OOSPC has a single weight", "/k")
            blocks = _parse_blocks(_need(obj, "base_blocks", list), m, n, "/base_blocks")
            return Oospc(m, n, k[0], lam, blocks)
        if kind == "rosqs":
            if m != 1:
                raise ParseError("rotational designs are stored with m = 1", "/m")
            raw = _parse_rot_blocks(_need(obj, "base_blocks", list), n, "/base_blocks")
            return RotationalDesign(n, k[0], tuple(tuple(b) for b in raw))
        t = _need(obj, "t", int)
        if kind == "fan":
            fan = _need(obj, "fan", dict)
            k0 = _need(fan, "k0", list, "/fan")
            k1 = _need(fan, "k1", list, "/fan")
            b0 = _parse_blocks(_need(fan, "b0", list, "/fan"), m, n, "/fan/b0")
            b1 = _parse_blocks(_need(fan, "b1", list, "/fan"), m, n, "/fan/b1")
            _check_sizes(b0, k0, "/fan/b0")
            _check_sizes(b1, k1, "/fan/b1")
            strict = obj.get("strict", True)
            return FanDesign(m, n, tuple(k0), tuple(k1), b0, b1, e=e, groups=groups,
                             action=action, strict=bool(strict))
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}", "/kind")
        if t not in (2, 3):
            raise ParseError(f"strength must be 2 or 3, got {t}", "/t")
        lam = obj.get("lambda")
        blocks = _parse_blocks(_need(obj, "base_blocks", list), m, n, "/base_blocks")
        _check_sizes(blocks, k, "/base_blocks")
        if kind in GROUPED_KINDS and e is None and groups is None:
            raise ParseError(f"kind {kind} requires e or groups", "/e")
        return DesignInstance(m, n, kind, t, tuple(k), blocks, e=e, lam=lam,
                              action=action, groups=groups)
    except ParameterError as exc:
        raise ParseError(str(exc), "") from exc


def _check_sizes(blocks, sizes, path):
    for i, b in enumerate(blocks):
        if len(b) not in sizes:
            raise ParseError(f"block size {len(b)} not in {sorted(sizes)}", f"{path}/{i}")


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from exc
    return design_from_dict(obj)


def read_design(path):
    return loads(Path(path).read_text(encoding="utf-8"))
