import math
import random

import pytest

from covmod import (
    DomainMismatchError,
    GroupFunction,
    NormalityError,
    ValidationError,
    enumerate_characters,
    random_function,
    t_xi,
)
from covmod.jsonio import (
    character_from_json,
    character_to_json,
    covariant_from_json,
    covariant_to_json,
    dumps,
    function_from_json,
    function_to_json,
    group_from_json,
    group_id,
    group_to_json,
    subgroup_from_json,
    subgroup_id,
    subgroup_to_json,
)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [True, None, "x"]}) == '{"b":1,"a":[true,null,"x"]}'
    assert dumps({"x": 0.1}) == '{"x":0.1}'
    assert dumps({"x": 1 / 3}) == '{"x":0.3333333333333333}'
    assert float("0.3333333333333333") == 1 / 3


def test_dumps_rejects_non_finite():
    with pytest.raises(ValidationError):
        dumps({"x": math.inf})


def test_group_round_trip(s3):
    doc = group_to_json(s3)
    back = group_from_json(doc)
    assert back.mul == s3.mul
    assert back.labels == s3.labels
    assert group_id(back) == group_id(s3)


def test_group_id_is_stable(z4):
    assert group_id(z4) == "4e53267e8f572239"


def test_group_from_json_rejects_order_mismatch(z4):
    doc = group_to_json(z4)
    doc["order"] = 5
    with pytest.raises(ValidationError):
        group_from_json(doc)


def test_function_round_trip_bit_exact(s3):
    f = random_function(s3, random.Random("json"))
    back = function_from_json(function_to_json(f), s3)
    assert back.values == f.values


def test_function_rejects_wrong_group(z4, s3):
    f = GroupFunction(z4, (1 + 0j, 0j, 0j, 0j))
    doc = function_to_json(f)
    with pytest.raises(DomainMismatchError):
        function_from_json(doc, s3)


def test_function_rejects_non_finite(z4):
    f = GroupFunction(z4, (complex(math.nan, 0),) + (0j,) * 3)
    with pytest.raises(ValidationError):
        function_to_json(f)


def test_subgroup_round_trip(s3, a3):
    doc = subgroup_to_json(a3)
    back = subgroup_from_json(doc, s3)
    assert back.members == a3.members
    assert subgroup_id(back) == subgroup_id(a3)


def test_character_round_trip(z4, z4_evens):
    for char in enumerate_characters(z4_evens):
        back = character_from_json(character_to_json(char), z4_evens)
        assert back.phases == char.phases


def test_character_from_json_revalidates(z4, z4_evens):
    doc = character_to_json(enumerate_characters(z4_evens)[1])
    doc["phases"] = [[0, 1], [1, 3]]
    with pytest.raises(ValidationError):
        character_from_json(doc, z4_evens)


def test_covariant_round_trip(z4, z4_evens, z4_quot):
    f = random_function(z4, random.Random("cj"))
    for char in enumerate_characters(z4_evens):
        psi = t_xi(f, char, quot=z4_quot)
        back = covariant_from_json(covariant_to_json(psi), z4)
        assert back.section == psi.section
        assert back.character.phases == psi.character.phases
        assert back.quotient.reps == psi.quotient.reps


def test_covariant_rejects_non_normal_members(s3):
    sub_doc = {
        "group": group_id(s3),
        "normal": [0, 1],
        "character": [[0, 1], [0, 1]],
        "section": [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
    }
    with pytest.raises(NormalityError):
        covariant_from_json(sub_doc, s3)
