import pytest

from oospc.errors import ParameterError
from oospc.search import SearchProblem, search
from oospc.verify import classify_orbit, verify


def test_pqs16_found_and_verified():
    r = search(SearchProblem(2, 8, target=8))
    assert r.found and len(r.design.base_blocks) == 8
    rep = verify(r.design)
    assert rep.valid and rep.strict


def test_nine_point_exception_exhausts():
    r = search(SearchProblem(1, 9, target=2))
    assert not r.found and r.exhausted and r.best_size == 1


def test_twelve_points_exhausts_at_three():
    assert search(SearchProblem(1, 12, target=3)).found
    r = search(SearchProblem(1, 12, target=4))
    assert r.exhausted and r.best_size == 3


def test_s_cyclic_sqs10():
    r = search(SearchProblem(1, 10, kind="steiner", strict=False, s_cyclic=True, target=3))
    assert r.found
    for b in r.design.base_blocks:
        xs = {c for _, c in b.points}
        assert any({(-x) % 10 for x in xs} == {(x + a) % 10 for x in xs} for a in range(10))
    assert [classify_orbit(b) for b in r.design.base_blocks] == ["full"] * 3


@pytest.mark.parametrize("v", [8, 14, 16])
def test_no_cyclic_sqs(v):
    r = search(SearchProblem(1, v, kind="steiner", strict=False))
    assert not r.found and r.exhausted


def test_rotational_sqs8():
    r = search(SearchProblem(1, 7, kind="rosqs", target=2))
    assert r.found and verify(r.design).valid


def test_semicyclic_g34_does_not_exist():
    r = search(SearchProblem(3, 4, kind="g-design", e=3, action="semi-cyclic"))
    assert r.exhausted and not r.found


def test_determinism():
    a = search(SearchProblem(2, 8, target=8))
    b = search(SearchProblem(2, 8, target=8))
    assert a.design == b.design and a.nodes == b.nodes


def test_node_cap_truncates():
    r = search(SearchProblem(2, 8, target=8, max_nodes=3))
    assert not r.found and not r.exhausted


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("OOSPC_SEARCH_BUDGET", "7.5")
    assert SearchProblem(1, 9, target=1).resolved_budget() == 7.5
    assert SearchProblem(1, 9, target=1, budget=2).resolved_budget() == 2


@pytest.mark.parametrize("kw", [dict(m=9, n=9, target=1), dict(m=1, n=9, target=3),
                                dict(m=1, n=9), dict(m=2, n=4, kind="g-design"),
                                dict(m=1, n=9, target=1, kind="nope")])
def test_rejects_bad_problems(kw):
    with pytest.raises(ParameterError):
        SearchProblem(**kw)
