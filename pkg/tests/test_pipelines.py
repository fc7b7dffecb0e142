import pytest

import oracle
from oospc import bounds, pipelines as P
from oospc.design import DesignInstance
from oospc.errors import ParameterError
from oospc.search import SearchProblem, search
from oospc.verify import compute_leave, verify_g_star, verify_oospc, verify_packing


def test_pqs32_from_sqs4():
    r = P.pqs32_from_sqs4()
    assert len(r.stages["g-design"].base_blocks) == 30
    assert len(r.stages["sub"].base_blocks) == 8
    assert len(r.stages["packing"].base_blocks) == 38 == bounds.johnson_bound(4, 8, 4, 2)
    assert r.notes["max_correlation"] <= 2
    assert oracle.max_correlation(4, 8, [c.points for c in r.final.codewords]) <= 2


def test_pqs100_from_gstar():
    r = P.pqs100_from_gstar()
    assert r.notes["families"] == {"C1": 250, "C2": 20, "C3": 80, "C4": 40}
    assert r.notes["optimal"]["meets_bound"] and r.notes["optimal"]["size"] == 404


def test_cyclic_gstar_demo():
    r = P.cyclic_gstar_demo()
    assert len(r.final.base_blocks) == 33 and verify_g_star(r.final).valid


def test_pair_fan_product():
    r = P.pair_fan_product()
    assert len(r.stages["cols"].base_blocks) == len(r.stages["rows"].base_blocks) == 1008
    with pytest.raises(ParameterError):
        P.pair_fan_product(g=4)


def test_scyclic_oospc_both_shapes():
    sqs = search(SearchProblem(1, 10, kind="steiner", strict=False, s_cyclic=True,
                               target=3)).design
    empty = DesignInstance(1, 6, "packing", 3, (4,), [])    # J(1, 6, 4, 2) = 0
    r = P.scyclic_oospc(sqs, sqs, empty, 5, 5, 3)
    cols, rows = r.final
    assert (cols.m, cols.n) == (5, 30) and (rows.m, rows.n) == (15, 10)
    for p in (cols, rows):
        rep = verify_packing(p, require_strict=True)
        assert rep.valid and rep.optimal["meets_bound"]
        assert len(p.base_blocks) == 918 == bounds.johnson_bound(p.m, p.n, 4, 2)


def test_scyclic_oospc_checks_orders():
    sqs = search(SearchProblem(1, 10, kind="steiner", strict=False, s_cyclic=True,
                               target=3)).design
    with pytest.raises(ParameterError):
        P.scyclic_oospc(sqs, sqs, DesignInstance(1, 6, "packing", 3, (4,), []), 5, 5, 4)


def test_rosqs_oospc_degenerate_groups():
    from oospc.design import FanDesign
    from oospc.groups import Block
    ro = search(SearchProblem(1, 7, kind="rosqs", target=2)).design
    ing = FanDesign(3, 1, (3,), (4,), [Block(3, 1, ((0, 0), (1, 0), (2, 0)))], [], e=3,
                    action="semi-cyclic")
    r = P.rosqs_oospc(ro, None, ing)
    assert verify_oospc(r.final).valid and r.notes["optimal"]["meets_bound"]


def test_large_outputs_agree_with_oracle():
    p = P.pqs100_from_gstar().stages["packing"]
    b = [x.points for x in p.base_blocks]
    assert oracle.packing_violations(10, 10, b) == 0 and oracle.is_strict(10, 10, b)
    covered = set(oracle.coverage(10, 10, b))
    assert compute_leave(p).total == 100 * 99 * 98 // 6 - len(covered)
    g = P.pair_fan_product().stages["cols"]
    part = g.partition()
    assert oracle.group_design_violations(g.m, g.n, [x.points for x in g.base_blocks],
                                          part.index) == 0
