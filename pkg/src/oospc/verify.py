"""Exhaustive certification of designs and codes.

Coverage is checked orbit-wise. Every block orbit is developed only as far
as the blocks through an *anchor* point (one representative per point orbit
of the acting group). Because multiplicities are constant along orbits of
t-subsets, counting the t-subsets that contain an anchor decides coverage for
all t-subsets. The brute-force scan over every developed block lives in the
test suite as an oracle for this routine.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from . import bounds
from .design import (DesignInstance, FanDesign, GroupPartition, Oospc,
                     VerificationReport)
from .errors import HypothesisError, ParameterError
from .groups import Block, translation_table

MAX_WITNESSES = 32
MAX_POINTS = 2000


# ---------------------------------------------------------------------------
# action helpers


class Action:
    """Translations of Z_m x Z_n (all of them, or column shifts only) on flat indices."""

    def __init__(self, m: int, n: int, kind: str = "full"):
        if m * n > MAX_POINTS:
            raise ParameterError(f"{m * n} points exceeds the verification ceiling {MAX_POINTS}")
        self.m, self.n, self.kind = m, n, kind
        self.v = m * n
        self.table = translation_table(m, n, kind)
        self.order = self.table.shape[0]
        if kind == "full":
            self.anchors = np.array([0])
        else:
            self.anchors = np.arange(m) * n

    def to_anchor(self, x):
        """Index of the translation taking flat point(s) x to their anchor."""
        x = np.asarray(x)
        r, c = np.divmod(x, self.n)
        if self.kind == "full":
            return ((-r) % self.m) * self.n + (-c) % self.n
        return (-c) % self.n

    def canonical(self, idx):
        """(representative tuple, orbit length) of a sorted index tuple."""
        idx = np.asarray(idx, dtype=np.int64)
        shifts = np.unique(self.to_anchor(idx))
        imgs = np.sort(self.table[shifts][:, idx], axis=1)
        keys = [tuple(row) for row in imgs.tolist()]
        rep = min(keys)
        stab = sum(1 for k in keys if k == rep)
        return rep, self.order // stab

    def points(self, idx):
        return [list(divmod(int(i), self.n)) for i in idx]


def _rank(sub: np.ndarray) -> np.ndarray:
    """Colex rank of sorted index rows (any t)."""
    r = np.zeros(sub.shape[0], dtype=np.int64)
    for j in range(sub.shape[1]):
        col = sub[:, j].astype(np.int64)
        term = np.ones_like(col)
        for q in range(j + 1):
            term = term * (col - q) // (q + 1)
        r += term
    return r


def _block_arrays(blocks):
    """Group blocks by size into (indices, original position) arrays."""
    by_size = {}
    for pos, b in enumerate(blocks):
        by_size.setdefault(len(b), []).append((b.indices(), pos))
    out = {}
    for k, rows in by_size.items():
        out[k] = (np.array([r for r, _ in rows], dtype=np.int64).reshape(len(rows), k),
                  np.array([p for _, p in rows], dtype=np.int64))
    return out


@dataclass
class _Coverage:
    keys: np.ndarray        # sorted ranks of anchored t-subsets that are covered
    counts: np.ndarray      # multiplicity of each
    subsets: np.ndarray     # (len(keys), t) index rows
    owner: np.ndarray       # base-block position of one covering block
    block: np.ndarray       # (len(keys), k_max) one covering block (padded with -1)


def _anchored_coverage(act: Action, blocks, t: int) -> _Coverage:
    keys, subs, owners, covering = [], [], [], []
    kmax = max((len(b) for b in blocks), default=t)
    anchor_set = set(act.anchors.tolist())
    for k, (arr, pos) in _block_arrays(blocks).items():
        if k < t:
            continue
        nb = arr.shape[0]
        g = act.to_anchor(arr)                                   # (nb, k)
        imgs = np.sort(act.table[g[:, :, None], arr[:, None, :]], axis=2)   # (nb, k, k)
        flat = imgs.reshape(nb * k, k)
        own = np.repeat(np.arange(nb), k)
        # keep each anchored block once per base block
        comp = np.concatenate([own[:, None], flat], axis=1)
        _, first = np.unique(comp, axis=0, return_index=True)
        flat, own = flat[first], own[first]
        combos = np.array(list(combinations(range(k), t)), dtype=np.int64)
        sub = flat[:, combos]                                    # (N, C, t)
        has_anchor = np.isin(sub, list(anchor_set)).any(axis=2)
        rows, cols = np.nonzero(has_anchor)
        s = sub[rows, cols]
        subs.append(s)
        keys.append(_rank(s))
        owners.append(pos[own[rows]])
        padded = np.full((len(rows), kmax), -1, dtype=np.int64)
        padded[:, :k] = flat[rows]
        covering.append(padded)
    if not keys:
        e = np.empty(0, dtype=np.int64)
        return _Coverage(e, e, np.empty((0, t), np.int64), e, np.empty((0, kmax), np.int64))
    keys = np.concatenate(keys)
    subs = np.concatenate(subs)
    owners = np.concatenate(owners)
    covering = np.concatenate(covering)
    uk, first, counts = np.unique(keys, return_index=True, return_counts=True)
    return _Coverage(uk, counts, subs[first], owners[first], covering[first])


def _all_anchored(act: Action, t: int) -> np.ndarray:
    """Every t-subset (sorted index rows) containing at least one anchor."""
    rows = []
    for a in act.anchors.tolist():
        others = [x for x in range(act.v) if x != a]
        c = np.array(list(combinations(others, t - 1)), dtype=np.int64).reshape(-1, t - 1)
        full = np.sort(np.concatenate([np.full((len(c), 1), a), c], axis=1), axis=1)
        rows.append(full)
    allrows = np.concatenate(rows)
    _, idx = np.unique(_rank(allrows), return_index=True)
    return allrows[np.sort(idx)]


def _group_ids(part: GroupPartition | None, v: int) -> np.ndarray:
    if part is None:
        return np.arange(v)
    return part.index_array()


class _Collector:
    def __init__(self, act: Action):
        self.act = act
        self.witnesses = []
        self.count = 0
        self._seen_orbits = set()

    def add(self, record):
        self.count += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(record)

    def add_subsets(self, kind, rows, mult=None, extra=None):
        """Record violated t-subsets, counting distinct subsets exactly via orbits."""
        for i, row in enumerate(rows):
            rep, length = self.act.canonical(row)
            tag = (kind, rep)
            if tag in self._seen_orbits:
                continue
            self._seen_orbits.add(tag)
            self.count += length
            if len(self.witnesses) < MAX_WITNESSES:
                rec = {"type": kind, "subset": self.act.points(row), "orbit_size": length}
                if mult is not None:
                    rec["multiplicity"] = int(mult[i])
                if extra is not None:
                    rec.update(extra(i))
                self.witnesses.append(rec)


def _orbit_stats(act: Action, blocks):
    lengths = []
    canon = {}
    dup = []
    for pos, b in enumerate(blocks):
        rep, length = act.canonical(b.indices())
        lengths.append(length)
        if rep in canon:
            dup.append((canon[rep], pos))
        else:
            canon[rep] = pos
    return lengths, dup


def _check_blocks(coll: _Collector, act: Action, blocks, require_strict: bool):
    lengths, dup = _orbit_stats(act, blocks)
    for a, b in dup:
        coll.add({"type": "duplicate-orbit", "blocks": [a, b],
                  "block": act.points(blocks[b].indices())})
    strict = all(x == act.order for x in lengths)
    if require_strict:
        for pos, x in enumerate(lengths):
            if x != act.order:
                coll.add({"type": "short-orbit", "block_index": pos,
                          "block": act.points(blocks[pos].indices()), "orbit_length": x})
    return lengths, strict


def _coverage_checks(coll, act, blocks, t, part, mode):
    """mode: 'packing' (<= 1), 'steiner' (== 1), 'g' (cross-group == 1, within 0),
    'h' (t distinct groups == 1, others 0)."""
    cov = _anchored_coverage(act, blocks, t)
    over = cov.counts > 1
    if over.any():
        coll.add_subsets("over-covered", cov.subsets[over], cov.counts[over])
    if mode == "packing":
        return cov
    gid = _group_ids(part, act.v)
    allsub = _all_anchored(act, t)
    g = gid[allsub]
    if mode == "steiner":
        admissible = np.ones(len(allsub), dtype=bool)
    elif mode == "g":
        admissible = ~(g == g[:, :1]).all(axis=1)
    elif mode == "h":
        gs = np.sort(g, axis=1)
        admissible = (gs[:, 1:] != gs[:, :-1]).all(axis=1)
    else:
        raise ValueError(mode)
    ranks = _rank(allsub)
    covered = np.isin(ranks, cov.keys)
    missing = admissible & ~covered
    if missing.any():
        coll.add_subsets("uncovered", allsub[missing])
    if mode in ("g", "h"):
        cg = gid[cov.subsets]
        if mode == "g":
            bad = (cg == cg[:, :1]).all(axis=1)
            label = "within-group-covered"
        else:
            cs = np.sort(cg, axis=1)
            bad = ~(cs[:, 1:] != cs[:, :-1]).all(axis=1)
            label = "non-transversal-covered"
        if bad.any():
            coll.add_subsets(label, cov.subsets[bad], cov.counts[bad])
    return cov


def _finish(kind, coll, blocks, lengths, strict, details=None, optimal=None):
    hist = Counter(lengths)
    return VerificationReport(kind=kind, valid=coll.count == 0, violations=coll.witnesses,
                              violation_count=coll.count, base_block_count=len(blocks),
                              orbit_lengths=dict(hist), strict=strict, optimal=optimal,
                              details=details or {})


# ---------------------------------------------------------------------------
# public verifiers


def verify_packing(d: DesignInstance, require_strict: bool = False) -> VerificationReport:
    """t-(mn, K, 1) packing (or Steiner system) invariant under the design's action."""
    if d.kind not in ("packing", "steiner"):
        raise ParameterError(f"verify_packing expects packing or steiner, got {d.kind}")
    act = Action(d.m, d.n, d.action)
    coll = _Collector(act)
    blocks = list(d.base_blocks)
    lengths, strict = _check_blocks(coll, act, blocks, require_strict)
    mode = "steiner" if d.kind == "steiner" else "packing"
    _coverage_checks(coll, act, blocks, d.t, None, mode)
    optimal = None
    if d.t == 3 and len(d.k) == 1 and d.action == "full" and d.v > d.k[0] > 2:
        if coll.count == 0 and strict:
            optimal = bounds.optimality(len(blocks), d.m, d.n, d.k[0], 2)
        else:
            b = bounds.upper_bound(d.m, d.n, d.k[0], 2)
            optimal = {"size": len(blocks), "bound": b.improved, "rule": b.rule,
                       "meets_bound": False}
    return _finish(d.kind, coll, blocks, lengths, strict, optimal=optimal)


def verify_group_design(d: DesignInstance, require_strict: bool = True) -> VerificationReport:
    if d.kind not in ("g-design", "h-design", "g-star", "cyclic-g-star"):
        raise ParameterError(f"verify_group_design expects a grouped kind, got {d.kind}")
    part = d.partition()
    act = Action(d.m, d.n, d.action)
    coll = _Collector(act)
    blocks = list(d.base_blocks)
    lengths, strict = _check_blocks(coll, act, blocks, require_strict)
    if d.kind == "h-design":
        for pos, b in enumerate(blocks):
            gids = [part.index(p) for p in b.points]
            if len(set(gids)) != len(gids):
                coll.add({"type": "non-transversal-block", "block_index": pos,
                          "block": [list(p) for p in b.points]})
    mode = "h" if d.kind == "h-design" else "g"
    _coverage_checks(coll, act, blocks, d.t, part, mode)
    details = {"groups": part.count, "group_size": part.size}
    if d.t == 3 and d.k == (4,) and d.action == "full" and part.b == 1 and d.kind != "h-design":
        try:
            details["expected_base_blocks"] = bounds.expected_g_base_count(
                d.m, d.n, d.m // part.a, 4)
        except ParameterError:
            pass
    return _finish(d.kind, coll, blocks, lengths, strict, details=details)


def _half(d):
    """The order-2 element h used by symmetric blocks."""
    if d.n % 2:
        raise HypothesisError(f"n={d.n} must be even")
    return (0, d.n // 2)


def gstar_hypotheses(d: DesignInstance):
    """Raise HypothesisError unless the parity conditions of a G* design hold."""
    part = d.partition()
    if d.kind == "cyclic-g-star":
        if d.m != 1 or part.a != 1:
            raise HypothesisError("cyclic G* designs are stored over Z_1 x Z_v")
        groups, size = part.b, d.n // part.b
        if size % 2 or (groups * size - size) % 4:
            raise HypothesisError(
                f"cyclic G*({groups},{size}) needs even group size and mn = n (mod 4)")
    else:
        if part.b != 1 or d.n % 2:
            raise HypothesisError("G* designs need row-coset groups and even n")
        e = d.m // part.a
        if (d.m - e) % 2:
            raise HypothesisError(f"m - e = {d.m - e} must be even")


def is_symmetric_block(b: Block, part: GroupPartition) -> bool:
    """Is b = {c, c+a, c-a, c+h} with h = (0, n/2) and a outside the origin's group?"""
    if len(b) != 4:
        return False
    m, n = b.ambient
    pts = set(b.points)
    for c in b.points:
        ch = (c[0], (c[1] + n // 2) % n)
        if ch not in pts or ch == c:
            continue
        p, q = [x for x in b.points if x != c and x != ch]
        if ((p[0] + q[0] - 2 * c[0]) % m, (p[1] + q[1] - 2 * c[1]) % n) != (0, 0):
            continue
        arm = ((p[0] - c[0]) % m, (p[1] - c[1]) % n)
        if part.index(arm) != part.index((0, 0)):
            return True
    return False


def symmetric_triples(d: DesignInstance):
    """Anchored representatives {0, x, -x} and {0, z, h} of the symmetric shapes."""
    m, n = d.m, d.n
    part = d.partition()
    h = _half(d)
    origin = part.index((0, 0))
    out = set()
    for r in range(m):
        for c in range(n):
            x = (r, c)
            if part.index(x) == origin:
                continue
            nx = ((-r) % m, (-c) % n)
            if nx != x:
                out.add(tuple(sorted([(0, 0), x, nx])))
            out.add(tuple(sorted([(0, 0), x, h])))
    return sorted(out)


def verify_g_star(d: DesignInstance) -> VerificationReport:
    if d.kind not in ("g-star", "cyclic-g-star"):
        raise ParameterError(f"verify_g_star expects g-star or cyclic-g-star, got {d.kind}")
    gstar_hypotheses(d)
    report = verify_group_design(d)
    part = d.partition()
    act = Action(d.m, d.n, d.action)
    cov = _anchored_coverage(act, list(d.base_blocks), 3)
    lookup = {int(k): i for i, k in enumerate(cov.keys)}
    coll = _Collector(act)
    shapes = 0
    for tri in symmetric_triples(d):
        shapes += 1
        idx = np.array([[r * d.n + c for r, c in tri]])
        key = int(_rank(idx)[0])
        pos = lookup.get(key)
        if pos is None:
            continue  # reported as uncovered by the G-design check
        blk_idx = [int(x) for x in cov.block[pos] if x >= 0]
        blk = Block.from_indices(d.m, d.n, blk_idx)
        if not is_symmetric_block(blk, part):
            coll.add_subsets("asymmetric-cover", idx, extra=lambda i, b=blk: {
                "covering_block": [list(p) for p in b.points]})
    report.violations = (report.violations + coll.witnesses)[:MAX_WITNESSES]
    report.violation_count += coll.count
    report.valid = report.violation_count == 0
    report.kind = d.kind
    report.details["symmetric_triples"] = shapes
    return report


def verify_fan(f: FanDesign) -> VerificationReport:
    """B0 a strength-2 H-design and B0 u B1 a strength-3 G-design on the same groups."""
    part = f.partition()
    act = Action(f.m, f.n, f.action)
    coll = _Collector(act)
    b0, b1 = list(f.b0), list(f.b1)
    for pos, b in enumerate(b0):
        gids = [part.index(p) for p in b.points]
        if len(set(gids)) != len(gids):
            coll.add({"type": "non-transversal-block", "part": "b0", "block_index": pos,
                      "block": [list(p) for p in b.points]})
    lengths0, strict0 = _check_blocks(coll, act, b0, f.strict)
    _coverage_checks(coll, act, b0, 2, part, "h")
    lengths1, strict1 = _check_blocks(coll, act, b1, True)
    _coverage_checks(coll, act, b0 + b1, 3, part, "g")
    # the same orbit must not appear in both parts
    _, dup = _orbit_stats(act, b0 + b1)
    for a, b in dup:
        if a < len(b0) <= b:
            coll.add({"type": "duplicate-orbit", "blocks": [a, b]})
    details = {"groups": part.count, "group_size": part.size,
               "b0": len(b0), "b1": len(b1), "b0_strict": strict0}
    return _finish("fan", coll, b0 + b1, lengths0 + lengths1, strict0 and strict1,
                   details=details)


def _diff_codes(codewords, m, n):
    arr = np.array([c.indices() for c in codewords], dtype=np.int64)
    r, c = np.divmod(arr, n)
    return r, c


def verify_oospc(c: Oospc) -> VerificationReport:
    """Auto- and cross-correlation of every codeword pair are at most lambda.

    |X n (Y + s)| equals the number of ways s = x - y with x in X, y in Y.
    """
    m, n, w = c.m, c.n, c.w
    v = m * n
    coll = _Collector(None)
    N = len(c.codewords)
    maxcorr = 0
    if N:
        r, col = _diff_codes(c.codewords, m, n)
        # differences for all ordered codeword pairs, chunked over the first index
        chunk = max(1, 4_000_000 // max(1, N * w * w))
        for s in range(0, N, chunk):
            e = min(N, s + chunk)
            dr = (r[s:e, None, :, None] - r[None, :, None, :]) % m
            dc = (col[s:e, None, :, None] - col[None, :, None, :]) % n
            shift = dr * n + dc                                   # (B, N, w, w)
            pair = (np.arange(s, e)[:, None] * N + np.arange(N)[None, :])
            key = (pair[:, :, None, None] * v + shift).ravel()
            uk, cnt = np.unique(key, return_counts=True)
            p, sh = np.divmod(uk, v)
            i, j = np.divmod(p, N)
            auto_zero = (i == j) & (sh == 0)
            live = ~auto_zero
            if live.any():
                maxcorr = max(maxcorr, int(cnt[live].max()))
            bad = live & (cnt > c.lam)
            for ii, jj, ss, cc in zip(i[bad], j[bad], sh[bad], cnt[bad]):
                coll.add({"type": "auto-correlation" if ii == jj else "cross-correlation",
                          "codewords": [int(ii), int(jj)],
                          "shift": list(divmod(int(ss), n)), "overlap": int(cc)})
    lengths = []
    strict = True
    optimal = None
    if coll.count == 0 and c.lam == 2 and v > w > 2:
        optimal = bounds.optimality(N, m, n, w, 2)
    return VerificationReport(kind="oospc", valid=coll.count == 0, violations=coll.witnesses,
                              violation_count=coll.count, base_block_count=N,
                              orbit_lengths=dict(Counter(lengths)), strict=strict,
                              optimal=optimal, details={"max_correlation": maxcorr})


# ---------------------------------------------------------------------------
# leaves and cyclic orbit classes


@dataclass(frozen=True)
class LeaveSet:
    m: int
    n: int
    triples: tuple[Block, ...]      # orbit representatives
    lengths: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.lengths)

    def expand(self) -> list[Block]:
        from .groups import orbit_blocks
        out = []
        for b in self.triples:
            out.extend(orbit_blocks(b))
        return out


def compute_leave(d: DesignInstance) -> LeaveSet:
    """All triples covered by no developed block, as translation-orbit representatives."""
    if d.t != 3:
        raise ParameterError("leaves are defined here for t = 3")
    if d.action != "full":
        raise ParameterError("leaves are computed for the full translation action")
    act = Action(d.m, d.n, d.action)
    cov = _anchored_coverage(act, list(d.base_blocks), 3)
    allsub = _all_anchored(act, 3)
    missing = allsub[~np.isin(_rank(allsub), cov.keys)]
    reps = {}
    for row in missing:
        rep, length = act.canonical(row)
        reps[rep] = length
    keys = sorted(reps)
    return LeaveSet(d.m, d.n, tuple(Block.from_indices(d.m, d.n, k) for k in keys),
                    tuple(reps[k] for k in keys))


def is_steiner_triple_system(triples, v: int) -> bool:
    """Does every pair of {0..v-1} lie in exactly one triple?"""
    seen = Counter()
    for t in triples:
        for p in combinations(sorted(t), 2):
            seen[p] += 1
    return len(seen) == comb(v, 2) and all(x == 1 for x in seen.values())


def classify_orbit(block: Block) -> str:
    if block.m != 1:
        raise ParameterError("orbit classes are defined over Z_1 x Z_v")
    if len(block) != 4:
        raise ParameterError("orbit classes are defined for 4-subsets")
    v = block.n
    xs = [c for _, c in block.points]
    translates = {tuple(sorted((x + s) % v for x in xs)) for s in range(v)}
    if v % 4 == 0 and (0, v // 4, v // 2, 3 * v // 4) in translates:
        return "quarter"
    if v % 2 == 0:
        h = v // 2
        for i in range(1, (v + 3) // 4):
            if 4 * i < v and tuple(sorted((0, i, h, h + i))) in translates:
                return "half"
    return "full"


def verify_rotational(d) -> VerificationReport:
    """Is the development of ``d`` under x -> x+1 (inf fixed) a Steiner 3-design?"""
    m, k = d.m, d.k
    if m + 1 > MAX_POINTS:
        raise ParameterError(f"{m + 1} points exceeds the verification ceiling {MAX_POINTS}")
    inf = m
    coll = _Collector(None)
    cover = Counter()
    lengths = []
    seen = {}
    for pos, blk in enumerate(d.base_blocks):
        if len(blk) != k:
            coll.add({"type": "wrong-size", "block_index": pos})
            continue
        orbit = set()
        for s in range(m):
            orbit.add(tuple(sorted(inf if x is None else (x + s) % m for x in blk)))
        lengths.append(len(orbit))
        rep = min(orbit)
        if rep in seen:
            coll.add({"type": "duplicate-orbit", "blocks": [seen[rep], pos]})
            continue
        seen[rep] = pos
        for b in orbit:
            for tri in combinations(b, 3):
                cover[tri] += 1
    for tri in combinations(range(m + 1), 3):
        c = cover.get(tri, 0)
        if c != 1:
            coll.add({"type": "uncovered" if c == 0 else "over-covered",
                      "subset": ["inf" if x == inf else x for x in tri], "count": c})
    return VerificationReport(kind="rosqs", valid=coll.count == 0, violations=coll.witnesses,
                              violation_count=coll.count, base_block_count=len(d.base_blocks),
                              orbit_lengths=dict(Counter(lengths)), strict=all(
                                  x == m for x in lengths))


# ---------------------------------------------------------------------------
# dispatch


def verify(obj, kind: str | None = None) -> VerificationReport:
    """Run the verifier that matches ``obj`` (or ``kind`` when given)."""
    if isinstance(obj, Oospc):
        return verify_oospc(obj)
    if isinstance(obj, FanDesign):
        return verify_fan(obj)
    from .design import RotationalDesign
    if isinstance(obj, RotationalDesign):
        return verify_rotational(obj)
    if not isinstance(obj, DesignInstance):
        raise ParameterError(f"cannot verify {type(obj).__name__}")
    k = kind or obj.kind
    if k != obj.kind:
        from dataclasses import replace
        obj = replace(obj, kind=k)
    if k in ("packing", "steiner"):
        return verify_packing(obj, require_strict=False)
    if k in ("g-star", "cyclic-g-star"):
        return verify_g_star(obj)
    return verify_group_design(obj)
