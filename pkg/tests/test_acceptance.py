"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import replace
from itertools import combinations

from oospc import bounds
from oospc.constructions import (FamilyCounts, IngredientSet, csqs_g_product,
                                 cyclic_gstar_expand, cyclic_sqs_to_gstar,
                                 expected_family_total, fan_product, fill, gdesign_to_1fg,
                                 gstar_expand_cols, gstar_expand_rows, leave_to_1fg,
                                 packing_to_oospc, rosqs_to_1fg)
from oospc.data import load_builtin
from oospc.galois import inversive_plane, inversive_to_oospc
from oospc.groups import Block, orbit_of, stabilizer
from oospc.pipelines import as_packing, trivial_sqs4
from oospc.design import swap_axes
from oospc.search import SearchProblem, search
from oospc.verify import (compute_leave, is_steiner_triple_system, verify_fan, verify_g_star,
                          verify_group_design, verify_oospc, verify_packing)

RESULTS = []


@contextmanager
def criterion(num, title, limit=None):
    t0 = time.perf_counter()
    try:
        yield
        dt = time.perf_counter() - t0
        if limit is not None:
            assert dt < limit, f"took {dt:.1f}s, limit {limit}s"
    except BaseException as ex:
        dt = time.perf_counter() - t0
        RESULTS.append(f"FAIL [{num}] {title} ({dt:.2f}s): {ex}")
        raise
    RESULTS.append(f"PASS [{num}] {title} ({dt:.2f}s)")


def ds(key):
    return load_builtin(key).design


def test_01_pqs36_dataset():
    with criterion(1, "6x6 dataset: strict PQS(36), 48 blocks, bound 48, optimal", 5):
        d = ds("ex-2.3")
        rep = verify_packing(d, require_strict=True)
        assert rep.valid and rep.strict and rep.base_block_count == 48
        assert bounds.oospc_upper_bound(6, 6).improved == 48
        assert rep.optimal["meets_bound"] is True


def test_02_z3_z12_dataset():
    with criterion(2, "Z3 x Z12 dataset: 48 blocks, valid, strict, optimal", 5):
        d = ds("lem-6.13")
        rep = verify_packing(d, require_strict=True)
        assert rep.valid and rep.strict and rep.base_block_count == 48
        assert rep.optimal["bound"] == 48 and rep.optimal["meets_bound"] is True


def test_03_g5_4():
    with criterion(3, "G(5,4,4,3): strict, G*, and a 14-block PQS(20)"):
        d = ds("ex-3.1")
        rep = verify_group_design(d)
        assert rep.valid and rep.strict and rep.base_block_count == 14
        part = d.partition()
        assert (part.count, part.size) == (5, 4)
        assert verify_g_star(replace(d, kind="g-star")).valid
        pk = verify_packing(as_packing(d), require_strict=True)
        assert pk.valid and pk.base_block_count == 14 == bounds.johnson_bound(10, 2, 4, 2)


def test_04_csqs_fill_pipeline():
    with criterion(4, "SQS(4) x G(2,8) -> 30, search PQS(16)=8, fill -> 38, corr <= 2", 60):
        g = csqs_g_product(trivial_sqs4(), ds("ex-3.5-g28"))
        assert len(g.base_blocks) == 30
        assert len(csqs_g_product(trivial_sqs4(), ds("ex-3.5-g28"), stop_after=2)
                   .base_blocks) == 16
        r = search(SearchProblem(2, 8, target=8))
        assert r.found and len(r.design.base_blocks) == 8 == bounds.johnson_bound(2, 8, 4, 2)
        sub = verify_packing(r.design, require_strict=True)
        assert sub.valid and sub.strict
        p = fill(g, r.design)
        rep = verify_packing(p, require_strict=True)
        assert rep.valid and rep.strict
        assert len(p.base_blocks) == 38 == bounds.johnson_bound(4, 8, 4, 2)
        code = verify_oospc(packing_to_oospc(p))
        assert code.valid and code.details["max_correlation"] <= 2


def test_05_gstar_cols_fill():
    with criterion(5, "G* expand cols g=5 -> 390, fill -> 404 strict", 120):
        ex = ds("ex-3.1")
        g = gstar_expand_cols(replace(ex, kind="g-star"), 5)
        assert len(g.base_blocks) == 390 and verify_g_star(g).valid
        part = g.partition()
        assert (g.m, g.n, part.count, part.size) == (10, 10, 5, 20)
        p = fill(g, swap_axes(as_packing(ex)))
        rep = verify_packing(p, require_strict=True)
        assert rep.valid and rep.strict
        assert len(p.base_blocks) == 404 == bounds.johnson_bound(10, 10, 4, 2)


def test_06_gstar_rows_count():
    with criterion(6, "G* expand rows g=3 -> 138 = family sum = closed form"):
        counts = FamilyCounts()
        out = gstar_expand_rows(replace(ds("ex-3.1"), kind="g-star"), 3, counts=counts)
        rep = verify_g_star(out)
        assert rep.valid and len(out.base_blocks) == 138
        assert counts.total == sum(counts.sizes.values()) == 138
        assert counts.total == expected_family_total(10, 2, 2, 3)
        assert 138 == bounds.expected_g_base_count(30, 2, 6)


def test_07_cyclic_gstar():
    with criterion(7, "S-cyclic SQS(10) -> cyclic G*(5,2) -> cyclic G*(5,6), 33 blocks", 60):
        r = search(SearchProblem(1, 10, kind="steiner", strict=False, s_cyclic=True,
                                 target=3))
        assert r.found and len(r.design.base_blocks) == 3
        assert verify_packing(r.design).valid
        base = cyclic_sqs_to_gstar(r.design, 5)
        assert verify_g_star(base).valid
        counts = FamilyCounts()
        out = cyclic_gstar_expand(base, 3, counts=counts)
        assert verify_g_star(out).valid and out.n == 30
        assert counts.sizes == {"D1": 9, "D2": 6, "D3": 12, "D4": 6}
        assert len(out.base_blocks) == 33


def steiner_exact(circles, v):
    cnt = Counter()
    for c in circles:
        key = [v - 1 if x is None else x for x in c]
        for t in combinations(sorted(key), 3):
            cnt[t] += 1
    return len(cnt) == v * (v - 1) * (v - 2) // 6 and set(cnt.values()) == {1}


def test_08_inversive():
    with criterion(8, "inversive planes p=3,5,7: p-1 codewords, exact S(3,p+1,p^2+1)", 120):
        for p in (3, 5, 7):
            circles = inversive_plane(p)
            assert len(circles) == p ** 3 + p and steiner_exact(circles, p * p + 1)
            code, packing = inversive_to_oospc(p)
            assert len(code.codewords) == p - 1 == bounds.johnson_bound(p, p, p + 1, 2)
            rep = verify_packing(packing, require_strict=True)
            assert rep.valid and rep.strict
            assert verify_oospc(code).valid


def test_09_fan_product():
    with criterion(9, "fan product g=8: Z10 x Z16 and Z80 x Z2, 1008 blocks each", 600):
        master = gdesign_to_1fg(ds("ex-3.1"))
        out = fan_product(master, IngredientSet(8, {2: ds("ex-3.5-g28")}))
        for d, amb in ((out.cols, (10, 16)), (out.rows, (80, 2))):
            rep = verify_group_design(d)
            assert (d.m, d.n) == amb and rep.valid and rep.strict
            part = d.partition()
            assert (part.count, part.size) == (5, 32)
            assert len(d.base_blocks) == 1008 == (159 * 158 - 31 * 30) // 24


def test_10_fan_round_trips():
    with criterion(10, "RoSQS(8) -> 1-FG verifies; p=3 leave -> 1-FG with STS(9) leave"):
        r = search(SearchProblem(1, 7, kind="rosqs", target=2))
        assert r.found
        assert verify_fan(rosqs_to_1fg(r.design)).valid
        _, p = inversive_to_oospc(3)
        f = leave_to_1fg(p)
        rep = verify_fan(f)
        assert rep.valid and f.partition().size == 1 and f.partition().count == 9
        assert set(f.k0) == {3} and set(f.k1) == {4}
        leave = compute_leave(p)
        assert is_steiner_triple_system([b.indices() for b in leave.expand()], 9)


def test_11a_orbit_stabilizer():
    with criterion("11a", "orbit-stabilizer identity on 1000 random blocks"):
        import random
        rng = random.Random(20240611)
        for _ in range(1000):
            m, n = rng.randint(1, 12), rng.randint(1, 12)
            k = rng.randint(1, min(6, m * n))
            b = Block.from_indices(m, n, rng.sample(range(m * n), k))
            assert orbit_of(b).length * len(stabilizer(b)) == m * n


def built_packings():
    out = {"ex-2.3": ds("ex-2.3"), "lem-6.13": ds("lem-6.13"),
           "ex-3.1-as-pqs": as_packing(ds("ex-3.1"))}
    out["pqs16"] = search(SearchProblem(2, 8, target=8)).design
    g = csqs_g_product(trivial_sqs4(), ds("ex-3.5-g28"))
    out["pqs32"] = fill(g, out["pqs16"])
    ex = ds("ex-3.1")
    out["pqs100"] = fill(gstar_expand_cols(replace(ex, kind="g-star"), 5),
                         swap_axes(as_packing(ex)))
    for p in (3, 5, 7):
        out[f"inversive-{p}"] = inversive_to_oospc(p)[1]
    return out


def test_11b_equivalence():
    with criterion("11b", "packing-valid <=> correlation-valid on built designs, mn <= 100"):
        checked = 0
        for name, d in built_packings().items():
            assert d.v <= 100
            variants = [d, replace(d, base_blocks=d.base_blocks + d.base_blocks[:1]),
                        replace(d, base_blocks=d.base_blocks[:1] + tuple(
                            Block(d.m, d.n, tuple(((r + 1) % d.m, (c + 1) % d.n)
                                                  for r, c in b.points))
                            for b in d.base_blocks[:1]))]
            for i, x in enumerate(variants):
                pk = verify_packing(x, require_strict=True)
                ok = pk.valid and pk.strict
                corr = verify_oospc(packing_to_oospc(x)).valid
                assert ok == corr, f"{name} variant {i}"
                assert ok == (i == 0), f"{name} variant {i}"
                checked += 1
        assert checked == 27


def test_11c_mutations():
    with criterion("11c", "every single-point mutation of the 6x6 dataset is rejected"):
        d = ds("ex-2.3")
        pts = [(r, c) for r in range(6) for c in range(6)]
        total = rejected = 0
        for i, b in enumerate(d.base_blocks):
            for p in b.points:
                for q in pts:
                    if q in b.points:
                        continue
                    nb = Block(6, 6, tuple(x for x in b.points if x != p) + (q,))
                    md = replace(d, base_blocks=d.base_blocks[:i] + (nb,) + d.base_blocks[i + 1:])
                    total += 1
                    rep = verify_packing(md, require_strict=True)
                    if not (rep.valid and rep.strict):
                        rejected += 1
                    elif not verify_oospc(packing_to_oospc(md)).valid:
                        rejected += 1
        assert total == 48 * 4 * 32
        assert rejected == total, f"{total - rejected} mutations accepted"


def test_11d_search_exhaustion():
    with criterion("11d", "(1,9,4,3) target 2 exhausts with best 1"):
        r = search(SearchProblem(1, 9, target=2))
        assert r.exhausted and not r.found and r.best_size == 1
        assert bounds.johnson_bound(1, 9, 4, 2) == 2


if __name__ == "__main__":
    import sys
    tests = [(k, v) for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for name, fn in tests:
        try:
            fn()
        except BaseException:
            failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
