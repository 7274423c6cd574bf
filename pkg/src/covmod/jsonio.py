"""JSON interchange for groups, subgroups, characters, and functions.

Serialization is canonical: keys appear in a fixed order, floats use the
shortest representation that round-trips the double bit-exactly, and
integers are written verbatim.  Objects that depend on a group carry a short
structural fingerprint of that group so mismatched files fail loudly instead
of silently reinterpreting indices.
"""

from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction
from typing import Sequence

from .covariant import CovariantFunction, from_section
from .characters import Character, make_character
from .errors import DomainMismatchError, ValidationError
from .groups import (
    FiniteGroup,
    GroupFunction,
    Subgroup,
    make_from_table,
    make_subgroup,
    quotient,
)


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValidationError(f"cannot serialize non-finite value {x}")
    return repr(x)


def _emit(value, out: list[str]) -> None:
    if isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(k)))
            out.append(":")
            _emit(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, v in enumerate(value):
            if i:
                out.append(",")
            _emit(v, out)
        out.append("]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(_fmt_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif value is None:
        out.append("null")
    else:
        raise ValidationError(f"cannot serialize value of type {type(value).__name__}")


def dumps(doc) -> str:
    """Serialize to a canonical single-line JSON string."""
    out: list[str] = []
    _emit(doc, out)
    return "".join(out)


def group_id(group: FiniteGroup) -> str:
    """A short structural fingerprint: order and multiplication table only."""
    h = hashlib.sha256()
    h.update(b"covmod-group-v1:")
    h.update(str(group.order).encode())
    for row in group.mul:
        h.update(b"|")
        h.update(",".join(map(str, row)).encode())
    return h.hexdigest()[:16]


def subgroup_id(sub: Subgroup) -> str:
    h = hashlib.sha256()
    h.update(b"covmod-subgroup-v1:")
    h.update(group_id(sub.parent).encode())
    h.update(",".join(map(str, sub.members)).encode())
    return h.hexdigest()[:16]


def _pairs(values: Sequence[complex]) -> list[list[float]]:
    for v in values:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValidationError(f"cannot serialize non-finite value {v}")
    return [[float(v.real), float(v.imag)] for v in values]


def _unpairs(doc, what: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(float(re), float(im)) for re, im in doc)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what} must be a list of [re, im] pairs") from exc


def group_to_json(group: FiniteGroup) -> dict:
    doc = {"order": group.order, "mul": [list(row) for row in group.mul]}
    if group.labels is not None:
        doc["labels"] = list(group.labels)
    return doc


def group_from_json(doc: dict) -> FiniteGroup:
    """Rebuild a group from its table, re-running the full axiom validation."""
    try:
        order, table = doc["order"], doc["mul"]
    except (TypeError, KeyError) as exc:
        raise ValidationError("group document needs 'order' and 'mul'") from exc
    if len(table) != order:
        raise ValidationError(
            f"group document claims order {order} but has {len(table)} table rows"
        )
    return make_from_table(table, doc.get("labels"))


def _check_group_id(doc: dict, group: FiniteGroup, what: str) -> None:
    gid = doc.get("group")
    if gid is not None and gid != group_id(group):
        raise DomainMismatchError(
            f"{what} was serialized for group {gid}, not {group_id(group)}"
        )


def function_to_json(f: GroupFunction) -> dict:
    return {"group": group_id(f.group), "values": _pairs(f.values)}


def function_from_json(doc: dict, group: FiniteGroup) -> GroupFunction:
    _check_group_id(doc, group, "function")
    return GroupFunction(group, _unpairs(doc.get("values", ()), "values"))


def subgroup_to_json(sub: Subgroup) -> dict:
    return {"group": group_id(sub.parent), "members": list(sub.members)}


def subgroup_from_json(doc: dict, group: FiniteGroup) -> Subgroup:
    _check_group_id(doc, group, "subgroup")
    members = doc.get("members")
    if members is None:
        raise ValidationError("subgroup document needs 'members'")
    return make_subgroup(group, members)


def _phase_pairs(char: Character) -> list[list[int]]:
    return [[q.numerator, q.denominator] for q in char.phases]


def _phases_from(doc, what: str) -> list[Fraction]:
    try:
        return [Fraction(int(num), int(den)) for num, den in doc]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{what} must be [numerator, denominator] pairs") from exc


def character_to_json(char: Character) -> dict:
    return {"domain": subgroup_id(char.domain), "phases": _phase_pairs(char)}


def character_from_json(doc: dict, domain: Subgroup) -> Character:
    did = doc.get("domain")
    if did is not None and did != subgroup_id(domain):
        raise DomainMismatchError(
            f"character was serialized for subgroup {did}, not {subgroup_id(domain)}"
        )
    return make_character(domain, _phases_from(doc.get("phases", ()), "phases"))


def covariant_to_json(psi: CovariantFunction) -> dict:
    return {
        "group": group_id(psi.group),
        "normal": list(psi.quotient.normal.members),
        "character": _phase_pairs(psi.character),
        "section": _pairs(psi.section),
    }


def covariant_from_json(doc: dict, group: FiniteGroup) -> CovariantFunction:
    _check_group_id(doc, group, "covariant function")
    members = doc.get("normal")
    if members is None:
        raise ValidationError("covariant document needs 'normal'")
    sub = make_subgroup(group, members)
    char = make_character(sub, _phases_from(doc.get("character", ()), "character"))
    quot = quotient(group, sub)
    return from_section(_unpairs(doc.get("section", ()), "section"), char, quot)
