"""Complete backtracking search for small invariant designs.

The search works on orbits. Candidates are the lexicographically least
members of block orbits; t-subsets (and, for fan designs, pairs) are grouped
into orbits that become the columns of an exact-cover or packing problem.
An orbit of blocks covers a column at most once, so a selection is valid iff
the column sets of its members are disjoint.

Packings are searched with a slack budget: every column is either covered or
declared part of the leave, and the leave may not exceed the triples left
over by ``target`` full orbits. Hence an exhausted search proves that no
packing of the target size exists.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from . import bounds
from .design import DesignInstance, FanDesign, GroupPartition, RotationalDesign
from .errors import ParameterError
from .groups import Block, translation_table

MAX_SEARCH_POINTS = 64
DEFAULT_BUDGET = 60.0
BUDGET_ENV = "OOSPC_SEARCH_BUDGET"

KINDS = ("packing", "steiner", "g-design", "h-design", "g-star", "cyclic-g-star",
         "rosqs", "fan")


@dataclass
class SearchProblem:
    m: int
    n: int
    k: tuple = (4,)
    t: int = 3
    target: Optional[int] = None
    kind: str = "packing"
    e: Optional[int] = None
    action: str = "full"
    strict: bool = True
    s_cyclic: bool = False
    fixed: tuple = ()
    forbidden: tuple = ()
    k0: tuple = ()
    budget: Optional[float] = None
    max_nodes: Optional[int] = None

    def __post_init__(self):
        if isinstance(self.k, int):
            self.k = (self.k,)
        self.k = tuple(sorted(set(self.k)))
        self.k0 = tuple(sorted(set(self.k0)))
        if self.kind not in KINDS:
            raise ParameterError(f"unknown search kind {self.kind!r}")
        v = self.m * self.n
        if v > MAX_SEARCH_POINTS:
            raise ParameterError(f"mn={v} exceeds the search ceiling {MAX_SEARCH_POINTS}")
        if self.kind == "rosqs" and self.m != 1:
            raise ParameterError("rotational search is over Z_1 x Z_v (plus infinity)")
        if self.kind == "packing":
            if len(self.k) != 1:
                raise ParameterError("packing search needs a single block size")
            if self.target is None:
                raise ParameterError("packing search needs a target size")
            if not self.strict:
                raise ParameterError("packing search is for strictly invariant packings")
            j = bounds.johnson_bound(self.m, self.n, self.k[0], self.t - 1)
            if self.target > j:
                raise ParameterError(f"target {self.target} exceeds the Johnson bound {j}")
        if self.kind in ("g-design", "h-design", "g-star", "cyclic-g-star", "fan") \
                and self.e is None:
            raise ParameterError(f"kind {self.kind} needs e")
        if self.kind == "fan" and not self.k0:
            raise ParameterError("fan search needs the transversal block sizes k0")

    def resolved_budget(self) -> float:
        if self.budget is not None:
            return float(self.budget)
        return float(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


@dataclass
class SearchResult:
    design: object
    found: bool
    exhausted: bool
    best_size: int
    nodes: int
    elapsed: float
    best: object = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"found": self.found, "exhausted": self.exhausted, "best_size": self.best_size,
                "nodes": self.nodes, "elapsed": round(self.elapsed, 3), **self.details}


# ---------------------------------------------------------------------------
# permutation actions


class _Perm:
    """A permutation group given by a table G x V, with one anchor per point orbit."""

    def __init__(self, table: np.ndarray):
        self.table = np.asarray(table, dtype=np.int64)
        self.order, self.v = self.table.shape
        orbit_min = self.table.min(axis=0)
        self.anchors = sorted(set(orbit_min.tolist()))

    def canon(self, rows: np.ndarray):
        """Least images and orbit lengths of sorted index rows of shape (N, s)."""
        rows = np.asarray(rows, dtype=np.int64)
        imgs = np.sort(self.table[:, rows], axis=-1)          # (G, N, s)
        key = _rank(imgs, self.v)
        best = key.min(axis=0)
        stab = (key == best[None, :]).sum(axis=0)
        arg = key.argmin(axis=0)
        rep = imgs[arg, np.arange(rows.shape[0])]
        return best, rep, self.order // stab


def _rank(rows: np.ndarray, v: int) -> np.ndarray:
    """Injective integer key of sorted index tuples (base-v digits)."""
    key = np.zeros(rows.shape[:-1], dtype=np.int64)
    for j in range(rows.shape[-1]):
        key = key * v + rows[..., j]
    return key


def _action(p: SearchProblem) -> _Perm:
    if p.kind == "rosqs":
        v = p.n
        g = np.arange(v)
        tab = np.concatenate([(np.arange(v)[None, :] + g[:, None]) % v,
                              np.full((v, 1), v)], axis=1)
        return _Perm(tab)
    return _Perm(translation_table(p.m, p.n, p.action))


def _subsets(perm: _Perm, size: int) -> np.ndarray:
    """All size-subsets whose least point is an anchor."""
    out = []
    for a in perm.anchors:
        rest = range(a + 1, perm.v)
        for c in combinations(rest, size - 1):
            out.append((a,) + c)
    return np.array(out, dtype=np.int64).reshape(-1, size)


def _all_subsets(v: int, size: int) -> np.ndarray:
    return np.array(list(combinations(range(v), size)), dtype=np.int64).reshape(-1, size)


# ---------------------------------------------------------------------------
# problem assembly


class _Columns:
    """Orbits of t-subsets (and pairs for fans) indexed 0..N-1."""

    def __init__(self):
        self.index = {}
        self.weight = []
        self.required = []

    def add(self, key, weight, required):
        if key not in self.index:
            self.index[key] = len(self.weight)
            self.weight.append(weight)
            self.required.append(required)
        return self.index[key]


def _group_ids(p: SearchProblem, v: int):
    if p.kind in ("packing", "steiner", "rosqs"):
        return None
    part = GroupPartition.from_e(p.m, p.n, p.e)
    return part.index_array()


def _build(p: SearchProblem, perm: _Perm):
    v = perm.v
    gid = _group_ids(p, v)
    cols = _Columns()
    tag_sizes = [(p.t, "t")]
    if p.kind == "fan":
        tag_sizes.append((2, "pair"))
    lookup = {}
    for size, tag in tag_sizes:
        subs = _all_subsets(v, size)
        keys, reps, lens = perm.canon(subs)
        if gid is None:
            ok = np.ones(len(subs), dtype=bool)
        else:
            g = np.sort(gid[subs], axis=1)
            distinct = (g[:, 1:] != g[:, :-1]).all(axis=1)
            ok = ~(g == g[:, :1]).all(axis=1) if tag == "t" and p.kind != "h-design" \
                else distinct
        for key, length, good in sorted(set(zip(keys.tolist(), lens.tolist(),
                                                ok.tolist()))):
            if good:
                lookup[(tag, key)] = cols.add((tag, key), length, True)
            else:
                lookup[(tag, key)] = None
    sizes = sorted(set(p.k) | set(p.k0))
    cands = []
    for size in sizes:
        subs = _subsets(perm, size)
        keys, reps, lens = perm.canon(subs)
        is_rep = (reps == subs).all(axis=1)
        for row, length in zip(subs[is_rep], lens[is_rep]):
            cands.append((tuple(row.tolist()), int(length)))
    cands.sort()
    return cols, lookup, cands, gid


def _candidate_mask(p, perm, block, length, lookup, cols, gid):
    """Column bitmask of a block orbit, or None when it is not admissible."""
    row = np.array(block, dtype=np.int64)
    size = len(block)
    if p.kind == "h-design" or (p.kind == "fan" and size in p.k0):
        g = gid[row]
        if len(set(g.tolist())) != size:
            return None
    if p.strict and length != perm.order and p.kind in ("packing",):
        return None
    tags = []
    if p.kind == "fan" and size in p.k0:
        tags.append((2, "pair"))
    if size >= p.t:
        tags.append((p.t, "t"))
    mask = 0
    for s, tag in tags:
        subs = np.array(list(combinations(block, s)), dtype=np.int64)
        keys, _, olen = perm.canon(subs)
        hits = {}
        for key, ol in zip(keys.tolist(), olen.tolist()):
            col = lookup.get((tag, key))
            if col is None:
                return None
            hits[col] = hits.get(col, 0) + 1
        for col, cnt in hits.items():
            # blocks of the orbit through a fixed member of the column orbit
            if cnt * length != cols.weight[col]:
                return None
            mask |= 1 << col
    return mask


def _s_cyclic(p, block):
    if p.kind == "rosqs":
        return True
    m, n = p.m, p.n
    b = Block.from_indices(m, n, block)
    nb = Block(m, n, tuple(((-r) % m, (-c) % n) for r, c in b.points))
    from .groups import canonical
    return canonical(b) == canonical(nb)


def _to_rep(p, perm, block):
    if p.kind == "rosqs":
        pts = sorted(p.n if x is None else x for x in block)
    else:
        pts = sorted(r * p.n + c for r, c in block)
    _, rep, _ = perm.canon(np.array([pts]))
    return tuple(rep[0].tolist())


# ---------------------------------------------------------------------------
# search


class _Budget(Exception):
    pass


def search(p: SearchProblem) -> SearchResult:
    perm = _action(p)
    cols, lookup, cands, gid = _build(p, perm)
    fixed = {_to_rep(p, perm, b) for b in p.fixed}
    forbidden = {_to_rep(p, perm, b) for b in p.forbidden}
    masks, blocks, lengths = [], [], []
    for blk, length in cands:
        if blk in forbidden and blk not in fixed:
            continue
        if p.s_cyclic and not _s_cyclic(p, blk):
            continue
        if p.strict and length != perm.order and p.kind != "rosqs" and blk not in fixed:
            continue
        mk = _candidate_mask(p, perm, blk, length, lookup, cols, gid)
        if mk is None:
            if blk in fixed:
                raise ParameterError(f"fixed block {blk} is not admissible")
            continue
        masks.append(mk)
        blocks.append(blk)
        lengths.append(length)
    ncols = len(cols.weight)
    by_col = [[] for _ in range(ncols)]
    for i, mk in enumerate(masks):
        x = mk
        while x:
            low = x & -x
            by_col[low.bit_length() - 1].append(i)
            x ^= low

    budget = p.resolved_budget()
    start = time.monotonic()
    state = {"nodes": 0, "best": [], "solution": None}
    exact = p.kind != "packing"
    target = p.target
    full = (1 << ncols) - 1

    if exact:
        slack0 = 0
    else:
        total = sum(cols.weight)
        per = comb(p.k[0], p.t) * perm.order
        slack0 = total - per * target

    def tick():
        state["nodes"] += 1
        if p.max_nodes is not None and state["nodes"] > p.max_nodes:
            raise _Budget
        if state["nodes"] % 2048 == 0 and time.monotonic() - start > budget:
            raise _Budget

    def accept(chosen):
        d = _design(p, [blocks[i] for i in chosen])
        if p.kind in ("g-star", "cyclic-g-star"):
            from .verify import verify_g_star
            if not verify_g_star(d).valid:
                return False
        state["solution"] = d
        return True

    def dfs(covered, chosen, slack):
        tick()
        if len(chosen) > len(state["best"]):
            state["best"] = list(chosen)
        if not exact and len(chosen) >= target:
            return accept(chosen)
        if covered == full:
            if exact and (target is None or len(chosen) == target):
                return accept(chosen)
            return False
        if exact and target is not None and len(chosen) >= target:
            return False
        # column with the fewest compatible candidates
        best_col, best_opts = -1, None
        free = full & ~covered
        x = free
        while x:
            low = x & -x
            c = low.bit_length() - 1
            x ^= low
            opts = [i for i in by_col[c] if not masks[i] & covered]
            if best_opts is None or len(opts) < len(best_opts):
                best_col, best_opts = c, opts
                if not opts:
                    if exact or cols.weight[c] > slack:
                        return False
                    break
                if len(opts) == 1 and exact:
                    break
        for i in best_opts:
            chosen.append(i)
            if dfs(covered | masks[i], chosen, slack):
                return True
            chosen.pop()
        w = cols.weight[best_col]
        if not exact and w <= slack:
            return dfs(covered | (1 << best_col), chosen, slack - w)
        return False

    start_cov = 0
    chosen0 = []
    fixed_idx = [blocks.index(b) for b in sorted(fixed)]
    for i in fixed_idx:
        if masks[i] & start_cov:
            raise ParameterError("fixed blocks overlap")
        start_cov |= masks[i]
        chosen0.append(i)

    exhausted = True
    found = False
    try:
        found = dfs(start_cov, chosen0, slack0) if slack0 >= 0 else False
    except _Budget:
        exhausted = False
    elapsed = time.monotonic() - start
    best_blocks = [blocks[i] for i in state["best"]]
    best = _design(p, best_blocks) if best_blocks else None
    design = state["solution"]
    return SearchResult(design=design, found=found, exhausted=exhausted or found,
                        best_size=len(design_blocks(design)) if found else len(best_blocks),
                        nodes=state["nodes"], elapsed=elapsed, best=best,
                        details={"candidates": len(masks), "columns": ncols})


def design_blocks(d):
    if isinstance(d, FanDesign):
        return d.b0 + d.b1
    if isinstance(d, RotationalDesign):
        return d.base_blocks
    return d.base_blocks


def _design(p: SearchProblem, reps):
    m, n = p.m, p.n
    if p.kind == "rosqs":
        return RotationalDesign(n, p.k[0], tuple(
            tuple(None if x == n else x for x in b) for b in reps))
    blocks = [Block.from_indices(m, n, b) for b in reps]
    if p.kind == "fan":
        b0 = [b for b in blocks if len(b) in p.k0]
        b1 = [b for b in blocks if len(b) not in p.k0]
        return FanDesign(m, n, p.k0, p.k, b0, b1, e=p.e, action=p.action,
                         strict=p.strict)
    lam = p.t - 1 if p.kind == "packing" else None
    return DesignInstance(m, n, p.kind, p.t, p.k, blocks, e=p.e, lam=lam, action=p.action)
