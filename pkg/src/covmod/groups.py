"""Finite groups as dense index tables, with subgroups, quotients, and compatible weights.

Elements of a group of order n are the integers 0..n-1.  All types are
immutable once constructed; operation tables are plain nested tuples so that
scalar indexing stays cheap inside the convolution kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DomainMismatchError,
    ExponentError,
    MeasureError,
    NormalityError,
    ResourceError,
    ValidationError,
)

MAX_GROUP_ORDER = 1 << 20

# Orders up to this bound get an exhaustive associativity scan; larger
# tables are checked on a fixed-seed sample of triples.
ASSOC_EXHAUSTIVE_LIMIT = 512
ASSOC_SAMPLE_TRIPLES = 200_000


def _check_order(order: int) -> None:
    if order < 1:
        raise ValidationError(f"group order must be at least 1, got {order}")
    if order > MAX_GROUP_ORDER:
        raise ResourceError(
            f"group order {order} exceeds the supported maximum {MAX_GROUP_ORDER}"
        )


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group: order, multiplication table, inverse table, identity."""

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    labels: tuple[str, ...] | None = None

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul[y][x]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.mul
        return all(
            mul[a][b] == mul[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )


@dataclass(frozen=True)
class Subgroup:
    """A validated subgroup, stored as sorted member indices of the parent."""

    parent: FiniteGroup
    members: tuple[int, ...]

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def position(self) -> dict[int, int]:
        """Map a parent element index to its slot in `members`."""
        return {m: i for i, m in enumerate(self.members)}

    @property
    def order(self) -> int:
        return len(self.members)

    def same_as(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and self.members == other.members


@dataclass(frozen=True)
class QuotientGroup:
    """Left cosets of a normal subgroup, with the induced group on coset indices.

    Cosets are enumerated in increasing order of their smallest member, and
    each coset's representative is that smallest member.  `proj[x]` is the
    coset index of element x; `table` is the quotient as a plain FiniteGroup.
    """

    parent: FiniteGroup
    normal: Subgroup
    cosets: tuple[tuple[int, ...], ...]
    reps: tuple[int, ...]
    proj: tuple[int, ...]
    table: FiniteGroup

    @property
    def order(self) -> int:
        return len(self.reps)


@dataclass(frozen=True)
class MeasureTriple:
    """Per-element weights on a group, a subgroup, and the quotient.

    The three families satisfy the compatibility wQ * wN = wG elementwise
    (uniform scales), so that summing over cosets and then over the subgroup
    reproduces the full-group sum.
    """

    wG: tuple[float, ...]
    wN: tuple[float, ...]
    wQ: tuple[float, ...]


@dataclass(frozen=True)
class GroupFunction:
    """A complex-valued function on a group, stored densely by element index."""

    group: FiniteGroup
    values: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.group.order:
            raise DomainMismatchError(
                f"function has {len(self.values)} values on a group of order "
                f"{self.group.order}"
            )

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        if other.group is not self.group:
            raise DomainMismatchError("cannot add functions on different groups")
        return GroupFunction(
            self.group, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __sub__(self, other: "GroupFunction") -> "GroupFunction":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "GroupFunction":
        return GroupFunction(self.group, tuple(scalar * v for v in self.values))


def make_cyclic(order: int) -> FiniteGroup:
    """The additive group of integers modulo `order`."""
    _check_order(order)
    mul = tuple(tuple((a + b) % order for b in range(order)) for a in range(order))
    inv = tuple((-a) % order for a in range(order))
    return FiniteGroup(order, mul, inv, 0)


def make_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Direct product; the pair (x, y) gets index x * b.order + y."""
    order = a.order * b.order
    _check_order(order)
    nb = b.order
    mul = tuple(
        tuple(
            a.mul[xa][ya] * nb + b.mul[xb][yb]
            for ya in range(a.order)
            for yb in range(nb)
        )
        for xa in range(a.order)
        for xb in range(nb)
    )
    inv = tuple(
        a.inv[xa] * nb + b.inv[xb] for xa in range(a.order) for xb in range(nb)
    )
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = tuple(
            f"({la},{lb})" for la in a.labels for lb in b.labels
        )
    return FiniteGroup(order, mul, inv, a.identity * nb + b.identity, labels)


def _check_associative(arr: np.ndarray) -> None:
    n = arr.shape[0]
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        for a in range(n):
            left = arr[arr[a]]          # left[b, c] = (a*b)*c
            right = arr[a][arr]         # right[b, c] = a*(b*c)
            if not np.array_equal(left, right):
                b, c = map(int, np.argwhere(left != right)[0])
                raise ValidationError(
                    f"associativity fails at triple ({a}, {b}, {c}): "
                    f"({a}*{b})*{c} = {int(left[b, c])} but "
                    f"{a}*({b}*{c}) = {int(right[b, c])}"
                )
        return
    rng = np.random.default_rng(0)
    trips = rng.integers(0, n, size=(ASSOC_SAMPLE_TRIPLES, 3))
    ab = arr[trips[:, 0], trips[:, 1]]
    bc = arr[trips[:, 1], trips[:, 2]]
    bad = arr[ab, trips[:, 2]] != arr[trips[:, 0], bc]
    if np.any(bad):
        a, b, c = map(int, trips[np.argmax(bad)])
        raise ValidationError(f"associativity fails at sampled triple ({a}, {b}, {c})")


def make_from_table(
    table: Sequence[Sequence[int]], labels: Sequence[str] | None = None
) -> FiniteGroup:
    """Build a group from an explicit multiplication table, validating the axioms.

    The table must be square with entries in 0..n-1, possess a two-sided
    identity and two-sided inverses, and be associative (checked exhaustively
    up to order 512, on a fixed sample of triples beyond that).
    """
    rows = tuple(tuple(int(v) for v in row) for row in table)
    n = len(rows)
    _check_order(n)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValidationError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise ValidationError(f"entry mul({i},{j}) = {v} is outside 0..{n-1}")

    idrow = tuple(range(n))
    identity = None
    for e in range(n):
        if rows[e] == idrow and all(rows[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise ValidationError("table has no two-sided identity element")

    inv = []
    for x in range(n):
        y = next(
            (y for y in range(n) if rows[x][y] == identity and rows[y][x] == identity),
            None,
        )
        if y is None:
            raise ValidationError(f"element {x} has no two-sided inverse")
        inv.append(y)

    _check_associative(np.asarray(rows, dtype=np.int64))

    packed_labels = None
    if labels is not None:
        packed_labels = tuple(str(s) for s in labels)
        if len(packed_labels) != n:
            raise ValidationError(
                f"got {len(packed_labels)} labels for a group of order {n}"
            )
    return FiniteGroup(n, rows, tuple(inv), identity, packed_labels)


def make_subgroup(group: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Validate closure, identity, and inverses, and return the subgroup."""
    ms = tuple(sorted({int(m) for m in members}))
    if not ms:
        raise ValidationError("a subgroup needs at least the identity element")
    for m in ms:
        if not 0 <= m < group.order:
            raise ValidationError(f"member {m} is outside the group 0..{group.order-1}")
    mset = frozenset(ms)
    if group.identity not in mset:
        raise ValidationError("subgroup does not contain the identity")
    for s in ms:
        if group.inv[s] not in mset:
            raise ValidationError(f"subgroup is missing the inverse of element {s}")
        row = group.mul[s]
        for t in ms:
            if row[t] not in mset:
                raise ValidationError(
                    f"subgroup is not closed: {s}*{t} = {row[t]} is not a member"
                )
    return Subgroup(group, ms)


def full_subgroup(group: FiniteGroup) -> Subgroup:
    """The whole group viewed as a subgroup of itself."""
    return Subgroup(group, tuple(range(group.order)))


def group_center(group: FiniteGroup) -> Subgroup:
    """The subgroup of elements commuting with every group element."""
    mul = group.mul
    members = tuple(
        z
        for z in range(group.order)
        if all(mul[z][x] == mul[x][z] for x in range(group.order))
    )
    return Subgroup(group, members)


def is_normal(group: FiniteGroup, sub: Subgroup) -> bool:
    """Whether the subgroup is stable under conjugation by every group element."""
    if sub.parent is not group:
        raise DomainMismatchError("subgroup belongs to a different group")
    mul, inv, mset = group.mul, group.inv, sub.member_set
    for x in range(group.order):
        xi = inv[x]
        for s in sub.members:
            if mul[mul[x][s]][xi] not in mset:
                return False
    return True


def quotient(group: FiniteGroup, normal: Subgroup) -> QuotientGroup:
    """Left cosets of a normal subgroup with the induced multiplication.

    Cosets appear in increasing order of their smallest member, which also
    serves as the coset representative, so the construction is canonical.
    """
    if not is_normal(group, normal):
        raise NormalityError(
            "cannot form the quotient: subgroup is not normal in the group"
        )
    n = group.order
    proj = [-1] * n
    cosets: list[tuple[int, ...]] = []
    reps: list[int] = []
    for x in range(n):
        if proj[x] >= 0:
            continue
        row = group.mul[x]
        coset = tuple(sorted(row[s] for s in normal.members))
        idx = len(cosets)
        for y in coset:
            proj[y] = idx
        cosets.append(coset)
        reps.append(x)

    k = len(cosets)
    tmul = tuple(
        tuple(proj[group.mul[reps[i]][reps[j]]] for j in range(k)) for i in range(k)
    )
    tinv = tuple(proj[group.inv[reps[i]]] for i in range(k))
    table = FiniteGroup(k, tmul, tinv, proj[group.identity])
    return QuotientGroup(group, normal, tuple(cosets), tuple(reps), tuple(proj), table)


def weil_measure(
    group: FiniteGroup,
    normal: Subgroup,
    quot: QuotientGroup,
    wG_scale: float = 1.0,
    wN_scale: float = 1.0,
) -> MeasureTriple:
    """Uniform weights on group, subgroup, and quotient with wQ = wG / wN.

    The default scales give counting measure on all three levels, for which
    iterated summation over cosets reproduces the plain group sum exactly.
    """
    if quot.parent is not group or not quot.normal.same_as(normal):
        raise DomainMismatchError("quotient does not match the given group and subgroup")
    if not (wG_scale > 0.0) or not (wN_scale > 0.0):
        raise MeasureError(
            f"weight scales must be positive, got wG={wG_scale}, wN={wN_scale}"
        )
    wq = wG_scale / wN_scale
    return MeasureTriple(
        (float(wG_scale),) * group.order,
        (float(wN_scale),) * normal.order,
        (float(wq),) * quot.order,
    )


def counting_measure(quot: QuotientGroup) -> MeasureTriple:
    return weil_measure(quot.parent, quot.normal, quot)


def weil_residual(f: GroupFunction, quot: QuotientGroup, measure: MeasureTriple) -> float:
    """|iterated coset sum - plain group sum| for one function and weight family."""
    if f.group is not quot.parent:
        raise DomainMismatchError("function lives on a different group")
    mul = quot.parent.mul
    members = quot.normal.members
    vals = f.values
    outer = 0j
    for i, r in enumerate(quot.reps):
        row = mul[r]
        inner = 0j
        for j, s in enumerate(members):
            inner += measure.wN[j] * vals[row[s]]
        outer += measure.wQ[i] * inner
    direct = 0j
    for x in range(quot.parent.order):
        direct += measure.wG[x] * vals[x]
    return abs(outer - direct)


def lp_norm(
    f: GroupFunction,
    p: float,
    weights: MeasureTriple | Sequence[float] | None = None,
) -> float:
    """Weighted p-norm (sum of w * |f|^p) ** (1/p) over the group."""
    if p < 1:
        raise ExponentError(f"norm exponent must be at least 1, got {p}")
    if isinstance(weights, MeasureTriple):
        w: Sequence[float] = weights.wG
    elif weights is None:
        w = (1.0,) * f.group.order
    else:
        w = tuple(float(x) for x in weights)
    if len(w) != f.group.order:
        raise MeasureError(
            f"got {len(w)} weights for a group of order {f.group.order}"
        )
    total = math.fsum(wx * abs(v) ** p for wx, v in zip(w, f.values))
    return total ** (1.0 / p)


def delta_function(group: FiniteGroup, at: int) -> GroupFunction:
    """The indicator of a single element."""
    if not 0 <= at < group.order:
        raise DomainMismatchError(f"element {at} is outside the group")
    return GroupFunction(
        group, tuple(1.0 + 0j if x == at else 0j for x in range(group.order))
    )


def random_function(group: FiniteGroup, rng) -> GroupFunction:
    """Standard complex Gaussian values drawn from the supplied PRNG."""
    return GroupFunction(
        group,
        tuple(complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0)) for _ in range(group.order)),
    )
