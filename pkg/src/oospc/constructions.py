"""Constructive operations on designs.

Every operation verifies its inputs and its output unless called with
``check=False``. A failing input raises :class:`HypothesisError` or
:class:`ParameterError`; a failing output raises :class:`ConstructionError`
carrying the stage name and the verification report.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Optional, Union

from . import bounds
from .design import (DesignInstance, FanDesign, Oospc, RotationalDesign,
                     partition_kwargs)
from .errors import ConstructionError, HypothesisError, ParameterError
from .groups import Block, orbit_blocks
from .verify import (compute_leave, gstar_hypotheses, is_steiner_triple_system,
                     is_symmetric_block, verify_fan, verify_g_star, verify_group_design,
                     verify_packing, verify_rotational)


def _require(report, stage, what):
    if not report.valid:
        raise ConstructionError(f"{what} does not verify "
                                f"({report.violation_count} violations)", stage, report)
    return report


def _input(report, what):
    if not report.valid:
        raise HypothesisError(f"{what} does not verify ({report.violation_count} violations)")
    return report


def _dedupe(blocks):
    """Drop repeated blocks, keeping first occurrences in order."""
    seen = set()
    out = []
    for b in blocks:
        if b not in seen:
            seen.add(b)
            out.append(b)
    return out


def _blk(m, n, pts):
    return Block(m, n, tuple((r % m, c % n) for r, c in pts))


# ---------------------------------------------------------------------------
# codec between packings and codes


def packing_to_oospc(d: DesignInstance) -> Oospc:
    if d.kind not in ("packing", "steiner") or len(d.k) != 1:
        raise ParameterError("only uniform packings correspond to codes")
    return Oospc(d.m, d.n, d.k[0], d.t - 1, d.base_blocks)


def oospc_to_packing(c: Oospc) -> DesignInstance:
    return DesignInstance(c.m, c.n, "packing", c.lam + 1, (c.w,), c.codewords)


# ---------------------------------------------------------------------------
# basic ingredients


def semicyclic_h4(n: int) -> DesignInstance:
    """H(4, n, 4, 3) on rows 0..3 of Z_4 x Z_n, invariant under column shifts."""
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    blocks = [Block(4, n, ((0, 0), (1, y), (2, z), (3, (y + z) % n)))
              for y in range(n) for z in range(n)]
    return DesignInstance(4, n, "h-design", 3, (4,), blocks, e=4, action="semi-cyclic")


def fill(g: DesignInstance, sub: DesignInstance, check: bool = True) -> DesignInstance:
    """Embed a packing on the origin's group and union it with a G-design."""
    part = g.partition()
    if part is None:
        raise ParameterError("the G-design has no group partition")
    sm, sn = g.m // part.a, g.n // part.b
    if (sub.m, sub.n) != (sm, sn):
        raise ParameterError(
            f"sub-packing must be over Z_{sm} x Z_{sn}, got Z_{sub.m} x Z_{sub.n}")
    if check:
        _input(verify_group_design(g), "G-design")
        _input(verify_packing(sub, require_strict=True), "sub-packing")
    emb = [Block(g.m, g.n, tuple((r * part.a, c * part.b) for r, c in b.points))
           for b in sub.base_blocks]
    out = DesignInstance(g.m, g.n, "packing", 3, tuple(set(g.k) | set(sub.k)),
                         tuple(emb) + tuple(g.base_blocks))
    if len(set(out.base_blocks)) != len(out.base_blocks):
        raise ConstructionError("embedded sub-packing collides with a G-design block", "fill")
    if check:
        _require(verify_packing(out, require_strict=True), "fill", "filled packing")
    return out


# ---------------------------------------------------------------------------
# cyclic SQS x G(2, n)


def _normal_form(block: Block):
    """Labelled points (x, y, z, w) of a cyclic 4-block and its orbit class."""
    v = block.n
    xs = [c for _, c in block.points]
    s = set(xs)
    if v % 4 == 0:
        q = v // 4
        for j in xs:
            if {j, (j + q) % v, (j + 2 * q) % v, (j + 3 * q) % v} == s:
                return "quarter", (j, (j + q) % v, (j + 2 * q) % v, (j + 3 * q) % v)
    if v % 2 == 0:
        h = v // 2
        for j in xs:
            for i in range(1, (v + 3) // 4):
                if 4 * i >= v:
                    break
                if {j, (j + i) % v, (j + h) % v, (j + i + h) % v} == s:
                    return "half", (j, (j + i) % v, (j + h) % v, (j + i + h) % v)
    return "full", tuple(xs)


def _sqs_h2(sqs: DesignInstance):
    """Step one: an H(m, 2, 4, 3) over Z_m x Z_2 from the base blocks of a cyclic SQS(m)."""
    out = []
    for b in sqs.base_blocks:
        cls, (x, y, z, w) = _normal_form(b)
        fam = [((x, 0), (y, 0), (z, 0), (w, 1)), ((x, 0), (y, 0), (z, 1), (w, 0)),
               ((x, 0), (y, 1), (z, 0), (w, 0)), ((x, 1), (y, 0), (z, 0), (w, 0))]
        take = {"full": 4, "half": 2, "quarter": 1}[cls]
        # keep the labelled order for the inflation step
        out.extend(fam[:take])
    return out


def csqs_g_product(sqs: DesignInstance, g2n: DesignInstance, check: bool = True,
                   stop_after: Optional[int] = None) -> DesignInstance:
    """G(m/2, 2n, 4, 3) over Z_m x Z_n from a cyclic SQS(m) and a semi-cyclic G(2, n, 4, 3).

    ``stop_after`` in {1, 2} returns the intermediate H-design of that step.
    """
    if sqs.m != 1:
        raise ParameterError("the cyclic SQS must be stored over Z_1 x Z_m")
    m, n = sqs.n, g2n.n
    if m % 2 or m < 4:
        raise ParameterError(f"m={m} must be even and at least 4")
    if g2n.m != 2 or n % 2 or n < 2:
        raise ParameterError("the G(2, n) ingredient must be over Z_2 x Z_n with n even")
    if check:
        sq = replace(sqs, kind="steiner", t=3)
        _input(verify_packing(sq), "cyclic SQS")
        _input(verify_group_design(g2n, require_strict=True), "G(2, n) ingredient")
        part = g2n.partition()
        if (part.a, part.b) != (2, 1):
            raise HypothesisError("the G(2, n) ingredient must have the two rows as groups")

    labelled = _sqs_h2(sqs)
    step1 = DesignInstance(m, 2, "h-design", 3, (4,),
                           [_blk(m, 2, a) for a in labelled], e=m)
    if check:
        _require(verify_group_design(step1), "step-1", "H(m, 2) design")
    if stop_after == 1:
        return step1

    if n > 2:
        half = n // 2
        blocks = []
        for a in labelled:
            for y in range(half):
                for z in range(half):
                    ks = (0, y, z, (y + z) % half)
                    # interleave: (i, l, k) -> (i, l + 2k)
                    blocks.append(_blk(m, n, [(p[0], p[1] + 2 * k) for p, k in zip(a, ks)]))
        step2 = DesignInstance(m, n, "h-design", 3, (4,), blocks, e=m)
    else:
        step2 = step1
    if check and n > 2:
        _require(verify_group_design(step2), "step-2", "H(m, n) design")
    if stop_after == 2:
        return step2

    blocks = list(step2.base_blocks)
    for i in range(1, m // 2):
        for b in g2n.base_blocks:
            blocks.append(Block(m, n, tuple((0 if r == 0 else i, c) for r, c in b.points)))
    out = DesignInstance(m, n, "g-design", 3, (4,), blocks, e=2)
    if check:
        _require(verify_group_design(out), "step-3", "G(m/2, 2n) design")
    return out


# ---------------------------------------------------------------------------
# G* expansions


def _check_g(g):
    if not isinstance(g, int) or g < 3 or g % 2 == 0:
        raise ParameterError(f"g must be an odd integer >= 3, got {g}")


def _split_symmetric(d: DesignInstance, expected: int):
    part = d.partition()
    f1, f2 = [], []
    for b in d.base_blocks:
        (f1 if is_symmetric_block(b, part) else f2).append(b)
    if len(f1) != expected:
        raise HypothesisError(
            f"expected {expected} symmetric base blocks, found {len(f1)}")
    return f1, f2


def _gstar_input(d: DesignInstance, g, check):
    _check_g(g)
    if d.kind != "g-star":
        raise ParameterError(f"expected a g-star design, got {d.kind}")
    gstar_hypotheses(d)
    if check:
        _input(verify_g_star(d), "G* design")
    part = d.partition()
    m, n = d.m, d.n
    e = m // part.a
    a = part.a
    index = [i for i in range(1, m // 2 + 1) if i % a]
    f1, f2 = _split_symmetric(d, n * (m - e) // 4)
    return m, n, e, a, index, f1, f2


@dataclass
class FamilyCounts:
    """Sizes of the emitted block families, in emission order."""

    sizes: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.sizes.values())


def gstar_expand_cols(d: DesignInstance, g: int, check: bool = True,
                      counts: Optional[FamilyCounts] = None) -> DesignInstance:
    """G* over Z_m x Z_n -> G* over Z_m x Z_{ng} (families C1..C4)."""
    m, n, e, a, index, f1, f2 = _gstar_input(d, g, check)
    N = n * g
    h = n // 2
    fam = {"C1": [], "C2": [], "C3": [], "C4": []}
    for b in f2:
        (i0, j0), (i1, j1), (i2, j2), (i3, j3) = b.points
        for k1 in range(g):
            for k2 in range(g):
                fam["C1"].append(_blk(m, N, [(i0, j0), (i1, j1 + k1 * n), (i2, j2 + k2 * n),
                                             (i3, j3 + (k1 + k2) * n)]))
    for i in index:
        for j in range(N // 2):
            fam["C2"].append(_blk(m, N, [(0, 0), (i, j), (-i, -j), (0, N // 2)]))
        for j in range(n):
            for l1, l2 in combinations(range(g), 2):
                fam["C3"].append(_blk(m, N, [(0, 0), (i, j + l1 * n), (i, j + l2 * n),
                                             (2 * i, 2 * j + (l1 + l2) * n)]))
        for j in range(h):
            for l in range((g - 1) // 2):
                for l2 in range(g):
                    fam["C4"].append(_blk(m, N, [(0, 0), (0, h + l * n), (i, j + l2 * n),
                                                 (i, j + h + (l + l2) * n)]))
    return _emit_gstar(fam, m, N, partition_kwargs(m, N, a, 1), check, "gstar-cols", counts)


def gstar_expand_rows(d: DesignInstance, g: int, check: bool = True,
                      counts: Optional[FamilyCounts] = None) -> DesignInstance:
    """G* over Z_m x Z_n -> G* over Z_{mg} x Z_n (families D1..D4)."""
    m, n, e, a, index, f1, f2 = _gstar_input(d, g, check)
    M = m * g
    h = n // 2
    fam = {"D1": [], "D2": [], "D3": [], "D4": []}
    for b in f2:
        (i0, j0), (i1, j1), (i2, j2), (i3, j3) = b.points
        for k1 in range(g):
            for k2 in range(g):
                fam["D1"].append(_blk(M, n, [(i0, j0), (i1 + k1 * m, j1), (i2 + k2 * m, j2),
                                             (i3 + (k1 + k2) * m, j3)]))
    for i in index:
        for j in range(h):
            for l in range(g):
                fam["D2"].append(_blk(M, n, [(0, 0), (i + l * m, j), (-i - l * m, -j),
                                             (0, h)]))
        for j in range(n):
            for l1, l2 in combinations(range(g), 2):
                fam["D3"].append(_blk(M, n, [(0, 0), (i + l1 * m, j), (i + l2 * m, j),
                                             (2 * i + (l1 + l2) * m, 2 * j)]))
        for j in range(h):
            for l in range(1, (g - 1) // 2 + 1):
                for l2 in range(g):
                    fam["D4"].append(_blk(M, n, [(0, 0), (l * m, h), (i + l2 * m, j),
                                                 (i + (l + l2) * m, h + j)]))
    return _emit_gstar(fam, M, n, partition_kwargs(M, n, a, 1), check, "gstar-rows", counts)


def _emit_gstar(fam, m, n, kw, check, stage, counts, kind="g-star"):
    blocks = []
    for name, blks in fam.items():
        blocks.extend(blks)
        if counts is not None:
            counts.sizes[name] = len(blks)
    if len(set(blocks)) != len(blocks):
        raise ConstructionError("families emitted a repeated block", stage)
    out = DesignInstance(m, n, kind, 3, (4,), blocks, **kw)
    if check:
        _require(verify_g_star(out), stage, "expanded G* design")
    return out


def cyclic_gstar_expand(d: DesignInstance, g: int, check: bool = True,
                        counts: Optional[FamilyCounts] = None) -> DesignInstance:
    """Cyclic G*(m, n) on Z_{mn} -> cyclic G*(m, ng) on Z_{mng}."""
    _check_g(g)
    if d.kind != "cyclic-g-star":
        raise ParameterError(f"expected a cyclic-g-star design, got {d.kind}")
    gstar_hypotheses(d)
    if check:
        _input(verify_g_star(d), "cyclic G* design")
    part = d.partition()
    mg = part.b                # number of groups, also their spacing
    v = d.n
    V = v * g
    f1, f2 = _split_symmetric(d, sum(1 for i in range(1, v // 4 + 1) if i % mg))

    def blk(xs):
        return Block(1, V, tuple((0, x % V) for x in xs))

    fam = {"D1": [], "D2": [], "D3": [], "D4": []}
    for b in f2:
        i0, i1, i2, i3 = (c for _, c in b.points)
        for k1 in range(g):
            for k2 in range(g):
                fam["D1"].append(blk([i0, i1 + k1 * v, i2 + k2 * v, i3 + (k1 + k2) * v]))
    for i in range(1, V // 4 + 1):
        if i % mg:
            fam["D2"].append(blk([0, i, -i, V // 2]))
    for i in range(1, v // 2 + 1):
        if i % mg:
            for l1, l2 in combinations(range(g), 2):
                fam["D3"].append(blk([0, i + l1 * v, i + l2 * v, 2 * i + (l1 + l2) * v]))
    for i in range(1, v // 4 + 1):
        if i % mg:
            for l in range((g - 1) // 2):
                for l2 in range(g):
                    fam["D4"].append(blk([0, v // 2 + l * v, i + l2 * v,
                                          i + v // 2 + (l + l2) * v]))
    return _emit_gstar(fam, 1, V, {"e": mg}, check, "cyclic-gstar", counts,
                       kind="cyclic-g-star")


def cyclic_sqs_to_gstar(sqs: DesignInstance, groups: int) -> DesignInstance:
    """Cyclic SQS(v) -> cyclic G-design with groups x + groups*Z_v (blocks inside a group dropped)."""
    if sqs.m != 1 or sqs.n % groups:
        raise ParameterError(f"cannot group Z_{sqs.n} by spacing {groups}")
    keep = [b for b in sqs.base_blocks if len({c % groups for _, c in b.points}) > 1]
    return DesignInstance(1, sqs.n, "cyclic-g-star", 3, (4,), keep, e=groups)


# ---------------------------------------------------------------------------
# fan designs


def _order_two_ok(m, n, a, b):
    for r in {0, m // 2} if m % 2 == 0 else {0}:
        for c in {0, n // 2} if n % 2 == 0 else {0}:
            if (r, c) != (0, 0) and (r % a or c % b):
                return False
    return True


def gdesign_to_1fg(d: DesignInstance, check: bool = True) -> FanDesign:
    """Adjoin the pair orbits {(0,0), (i,j)} to a G-design, giving a 1-fan design."""
    part = d.partition()
    if part is None or part.b != 1:
        raise ParameterError("expected a G-design with row-coset groups")
    m, n, a = d.m, d.n, part.a
    if not _order_two_ok(m, n, a, 1):
        raise HypothesisError(
            f"an element of order 2 lies outside {a}Z_{m} x Z_{n}")
    if check:
        _input(verify_group_design(d), "G-design")
    b0 = [Block(m, n, ((0, 0), (i, j))) for i in range(1, m // 2 + 1) if i % a
          for j in range(n)]
    out = FanDesign(m, n, (2,), d.k, b0, d.base_blocks, e=d.e, groups=d.groups)
    if check:
        _require(verify_fan(out), "g-to-1fg", "1-fan design")
    return out


def rosqs_to_1fg(d: RotationalDesign, check: bool = True) -> FanDesign:
    """Split a rotational SQS(m+1) into the triples through inf and the rest."""
    m = d.m
    if m % 6 not in (1, 3):
        raise ParameterError(f"m={m} must be 1 or 3 mod 6")
    if d.k != 4:
        raise ParameterError("expected a quadruple system")
    if check:
        _input(verify_rotational(d), "rotational SQS")
    b0, b1 = [], []
    for blk in d.base_blocks:
        fin = [x for x in blk if x is not None]
        if None in blk:
            if m % 3 == 0 and {(x - fin[0]) % m for x in fin} == {0, m // 3, 2 * m // 3}:
                continue  # these triples are the groups
            b0.append(Block(1, m, tuple((0, x) for x in fin)))
        else:
            b1.append(Block(1, m, tuple((0, x) for x in fin)))
    e = m if m % 6 == 1 else m // 3
    out = FanDesign(1, m, (3,), (4,), b0, b1, e=e)
    if check:
        _require(verify_fan(out), "rosqs-to-1fg", "1-fan design")
    return out


def leave_to_1fg(p: DesignInstance, check: bool = True) -> FanDesign:
    """Packing of size J on mn = 1, 3 (mod 6) points plus its leave, as a 1-fan design."""
    v = p.v
    if v % 6 not in (1, 3):
        raise ParameterError(f"mn={v} must be 1 or 3 mod 6")
    if p.k != (4,) or p.t != 3:
        raise ParameterError("expected a 3-(mn, 4, 1) packing")
    rep = verify_packing(p, require_strict=True)
    if not rep.valid:
        raise HypothesisError("input is not a strictly invariant packing")
    j = bounds.johnson_bound(p.m, p.n, 4, 2)
    if len(p.base_blocks) != j:
        raise HypothesisError(f"packing has {len(p.base_blocks)} base blocks, need J = {j}")
    leave = compute_leave(p)
    triples = [tuple(b.indices()) for b in leave.expand()]
    if not is_steiner_triple_system(triples, v):
        raise ConstructionError("leave is not a Steiner triple system", "leave-to-1fg",
                                {"leave": [b.points for b in leave.triples],
                                 "lengths": list(leave.lengths)})
    strict = all(x == v for x in leave.lengths)
    out = FanDesign(p.m, p.n, (3,), (4,), leave.triples, p.base_blocks,
                    groups=(p.m, p.n), strict=strict)
    if check:
        _require(verify_fan(out), "leave-to-1fg", "1-fan design")
    return out


def fan_to_packing(f: FanDesign) -> DesignInstance:
    """B1 of a type 1^{mn} 1-fan design as a packing."""
    part = f.partition()
    if part.size != 1:
        raise ParameterError("only fan designs of type 1^{mn} give packings")
    return DesignInstance(f.m, f.n, "packing", 3, f.k1, f.b1)


def fill_fan(master: FanDesign, sub: FanDesign, check: bool = True) -> FanDesign:
    """Fill the origin's group of a 1-fan design with a smaller 1-fan design."""
    part = master.partition()
    sm, sn = master.m // part.a, master.n // part.b
    if (sub.m, sub.n) != (sm, sn):
        raise ParameterError(f"sub design must be over Z_{sm} x Z_{sn}")
    sp = sub.partition()

    def emb(blocks):
        return tuple(Block(master.m, master.n, tuple((r * part.a, c * part.b) for r, c in b))
                     for b in blocks)

    kw = partition_kwargs(master.m, master.n, part.a * sp.a, part.b * sp.b)
    out = FanDesign(master.m, master.n, tuple(set(master.k0) | set(sub.k0)),
                    tuple(set(master.k1) | set(sub.k1)), master.b0 + emb(sub.b0),
                    master.b1 + emb(sub.b1), strict=master.strict and sub.strict, **kw)
    if check:
        _require(verify_fan(out), "fan-fill", "filled 1-fan design")
    return out


@dataclass
class IngredientSet:
    """Externally supplied designs keyed by the master block size they inflate.

    ``k0[k]`` is a semi-cyclic G-design of type g^k over Z_k x Z_g (or a
    semi-cyclic 1-fan design); ``k1[k]`` is a semi-cyclic H(k, g) over Z_k x Z_g.
    """

    g: int
    k0: dict = field(default_factory=dict)
    k1: dict = field(default_factory=dict)

    def check(self, master: FanDesign):
        for k in master.k0:
            if k not in self.k0:
                raise ParameterError(f"missing ingredient for block size {k} in K0")
        for k in master.k1:
            if k not in self.k1:
                if k == 4:
                    self.k1[4] = semicyclic_h4(self.g)
                else:
                    raise ParameterError(f"missing ingredient for block size {k} in K1")
        s = {isinstance(self.k0[k], FanDesign) for k in master.k0}
        if len(s) > 1:
            raise ParameterError("K0 ingredients mix G-designs and fan designs")
        for k, d in list(self.k0.items()) + list(self.k1.items()):
            if (d.m, d.n) != (k, self.g) or d.action != "semi-cyclic":
                raise ParameterError(
                    f"ingredient for size {k} must be semi-cyclic over Z_{k} x Z_{self.g}")
            part = d.partition()
            if (part.a, part.b) != (k, 1):
                raise ParameterError(f"ingredient for size {k} must have the rows as groups")


@dataclass
class FanProduct:
    cols: Union[DesignInstance, FanDesign]     # over Z_m x Z_{ng}
    rows: Union[DesignInstance, FanDesign]     # over Z_{mg} x Z_n


def fan_product(master: FanDesign, ingredients: IngredientSet,
                check: bool = True) -> FanProduct:
    """Inflate every master base block by an ingredient on B x Z_g and map the result
    into Z_m x Z_{ng} by (x, y, z) -> (x, y + zn) and into Z_{mg} x Z_n by
    (x, y, z) -> (x + zm, y)."""
    g = ingredients.g
    if g < 1:
        raise ParameterError("g must be positive")
    ingredients.check(master)
    part = master.partition()
    if part.b != 1:
        raise ParameterError("master groups must be row cosets")
    if check:
        _input(verify_fan(master), "master design")
        if not verify_fan(master).strict:
            raise HypothesisError("master design must be strictly invariant")
        for k, d in ingredients.k0.items():
            rep = verify_fan(d) if isinstance(d, FanDesign) else verify_group_design(d)
            _input(rep, f"K0 ingredient for size {k}")
        for k, d in ingredients.k1.items():
            _input(verify_group_design(d, require_strict=False), f"K1 ingredient for size {k}")
    m, n = master.m, master.n
    fan_out = any(isinstance(ingredients.k0[k], FanDesign) for k in master.k0)

    a0, a1 = [], []                  # lists of blocks in (x, y, z) coordinates

    def lift(B, blocks, into):
        pts = B.points
        for b in blocks:
            into.append(tuple((pts[r][0], pts[r][1], z) for r, z in b.points))

    for B in master.b0:
        ing = ingredients.k0[len(B)]
        if isinstance(ing, FanDesign):
            lift(B, ing.b0, a0)
            lift(B, ing.b1, a1)
        else:
            lift(B, ing.base_blocks, a1)
    for B in master.b1:
        lift(B, ingredients.k1[len(B)].base_blocks, a1)

    def tau(blocks):
        return [Block(m, n * g, tuple((x, y + z * n) for x, y, z in b)) for b in blocks]

    def phi(blocks):
        return [Block(m * g, n, tuple((x + z * m, y) for x, y, z in b)) for b in blocks]

    outs = []
    for M, N, fn, stage in ((m, n * g, tau, "fan-product-cols"),
                            (m * g, n, phi, "fan-product-rows")):
        kw = partition_kwargs(M, N, part.a, 1)
        if fan_out:
            k0 = sorted({k for d in ingredients.k0.values() for k in d.k0})
            k1 = sorted({k for d in ingredients.k0.values() for k in d.k1}
                        | set(master.k1))
            d = FanDesign(M, N, k0, k1, fn(a0), fn(a1), **kw)
            if check:
                _require(verify_fan(d), stage, "product 1-fan design")
        else:
            ks = sorted({len(b) for b in a1})
            d = DesignInstance(M, N, "g-design", 3, ks, fn(a1), **kw)
            if check:
                _require(verify_group_design(d), stage, "product G-design")
        outs.append(d)
    return FanProduct(*outs)


def project_tau(block: Block, n: int):
    """Inverse of (x, y, z) -> (x, y + zn) on the points of ``block``."""
    return [(x, y % n, y // n) for x, y in block.points]


# ---------------------------------------------------------------------------
# orbit-level utilities


def develop_rotational(d: RotationalDesign):
    """All blocks of a rotational design, with inf written as m."""
    m = d.m
    out = set()
    for blk in d.base_blocks:
        for s in range(m):
            out.add(tuple(sorted(m if x is None else (x + s) % m for x in blk)))
    return sorted(out)


def orbit_union_size(blocks) -> int:
    return sum(len(orbit_blocks(b)) for b in blocks)


def expected_family_total(m: int, n: int, e: int, g: int) -> int:
    """|C1| + |C2| + |C3| + |C4| = ng(m-e)(mng + eng - 3)/24."""
    num = n * g * (m - e) * (m * n * g + e * n * g - 3)
    if num % 24:
        raise ParameterError("family total is not an integer")
    return num // 24


def f1_f2_counts(m: int, n: int, e: int) -> tuple[int, int]:
    """Counts of symmetric and remaining base blocks of a G* design."""
    return n * (m - e) // 4, n * (m - e) * (m * n + e * n - 9) // 24
