import json

import pytest

from oospc.data import KEYS, raw_text
from oospc.design import (DesignInstance, FanDesign, GroupPartition, Oospc, RotationalDesign,
                          crt_join, crt_split, dumps, from_matrix, loads, matrix_text,
                          parse_matrix_text, regroup, swap_axes, to_matrix)
from oospc.errors import ParameterError, ParseError
from oospc.groups import Block


def test_partition_conventions():
    assert (GroupPartition.from_e(10, 2, 2).a, GroupPartition.from_e(10, 2, 2).b) == (5, 1)
    assert GroupPartition.from_e(10, 2, 2).size == 4
    rows = GroupPartition.from_e(3, 7, 3)
    assert (rows.a, rows.b, rows.size) == (3, 1, 7)
    cyc = GroupPartition.from_e(1, 10, 5)
    assert cyc.count == 5 and cyc.index((0, 7)) == 2
    with pytest.raises(ParameterError):
        GroupPartition.from_e(10, 2, 3)
    with pytest.raises(ParameterError):
        GroupPartition(4, 4, 3, 1)


def test_partition_groups_cover_points():
    part = GroupPartition(6, 4, 3, 2)
    groups = part.groups()
    assert len(groups) == 6 and all(len(g) == 4 for g in groups)
    assert set(groups[0]) == part.contains_subgroup()


@pytest.mark.parametrize("key", KEYS)
def test_bundled_files_round_trip_byte_exact(key):
    text = raw_text(key)
    assert dumps(loads(text)) == text


def test_rotational_round_trip():
    d = RotationalDesign(7, 4, ((0, 1, 2, 4), (0, 1, 5, None)))
    again = loads(dumps(d))
    assert again == d
    assert '"inf"' in dumps(d)


def test_oospc_round_trip():
    c = Oospc(3, 3, 4, 2, [Block(3, 3, ((0, 0), (0, 1), (1, 0), (2, 2)))])
    assert loads(dumps(c)) == c


BASE = {"m": 2, "n": 3, "kind": "packing", "t": 3, "k": [4],
        "base_blocks": [[[0, 0], [0, 1], [1, 0], [1, 2]]]}


def mutate(**kw):
    obj = json.loads(json.dumps(BASE))
    obj.update(kw)
    return json.dumps(obj)


@pytest.mark.parametrize("text,where", [
    ("{", "line"),
    (mutate(m=0), "/m"),
    (mutate(m="2"), "/m"),
    (mutate(kind="bogus"), "/kind"),
    (mutate(t=4), "/t"),
    (mutate(k=[]), "/k"),
    (mutate(base_blocks=[[[0, 0], [0, 3], [1, 0], [1, 2]]]), "/base_blocks/0/1"),
    (mutate(base_blocks=[[[0, 0], [0, 0], [1, 0], [1, 2]]]), "/base_blocks/0"),
    (mutate(base_blocks=[[[0, 0], [0, 1], [1, 0]]]), "/base_blocks/0"),
    (mutate(base_blocks=[[[0, 0], [0, 1], [1, 0], [1, 2]]] * 2), "/base_blocks/1"),
    (mutate(kind="g-design"), "/e"),
    (mutate(kind="g-design", e=3), "/e"),
    (mutate(groups=[2, 2]), "/groups"),
    (mutate(action="sideways"), "/action"),
])
def test_parse_errors_name_location(text, where):
    with pytest.raises(ParseError) as info:
        loads(text)
    assert info.value.path.startswith(where)


def test_matrix_round_trip():
    b = Block(3, 4, ((0, 0), (1, 3), (2, 1)))
    assert from_matrix(to_matrix(b)) == b
    text = matrix_text([b, b])
    assert text == "1000\n0001\n0100\n\n1000\n0001\n0100\n"
    assert parse_matrix_text(text, 3, 4) == [b, b]
    with pytest.raises(ParseError):
        parse_matrix_text("10\n01\n", 3, 4)
    with pytest.raises(ParameterError):
        from_matrix([[0, 2]])


def test_crt_round_trip_preserves_groups():
    d = DesignInstance(1, 15, "g-design", 3, (4,),
                       [Block(1, 15, ((0, 0), (0, 1), (0, 2), (0, 4)))], e=5)
    s = crt_split(d, 3, 5)
    assert (s.m, s.n) == (3, 5)
    part = s.partition()
    assert (part.a, part.b) == (1, 5)
    back = crt_join(s)
    assert back.base_blocks == d.base_blocks and back.partition().b == 5
    assert regroup(s, 5, 3).partition().size == 3
    with pytest.raises(ParameterError):
        crt_split(d, 5, 5)


def test_swap_axes():
    d = DesignInstance(2, 3, "g-design", 3, (4,),
                       [Block(2, 3, ((0, 0), (0, 1), (1, 0), (1, 2)))], e=2)
    s = swap_axes(d)
    assert (s.m, s.n) == (3, 2)
    assert s.base_blocks[0].points == ((0, 0), (0, 1), (1, 0), (2, 1))
    assert (s.partition().a, s.partition().b) == (1, 2)
    assert swap_axes(s) == d
    semi = DesignInstance(2, 3, "g-design", 3, (4,), d.base_blocks, e=2, action="semi-cyclic")
    with pytest.raises(ParameterError):
        swap_axes(semi)


def test_fan_needs_groups():
    with pytest.raises(ParameterError):
        FanDesign(3, 3, (3,), (4,), (), ())
