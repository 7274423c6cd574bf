"""Functions that transform by a character under right translation by a subgroup.

A function psi on G is covariant for a character xi of a normal subgroup N
when psi(x * s) = xi(s) * psi(x) for every x in G and s in N.  Such a psi is
determined by its values on one transversal of the cosets, so it is stored as
that section, indexed like the quotient's representatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .characters import Character, trivial_character
from .errors import DomainMismatchError, ExponentError, IdentificationError
from .groups import (
    FiniteGroup,
    GroupFunction,
    MeasureTriple,
    QuotientGroup,
    counting_measure,
    quotient,
)


@dataclass(frozen=True)
class CovariantFunction:
    """A covariant function stored as its section over coset representatives."""

    quotient: QuotientGroup
    character: Character
    section: tuple[complex, ...]

    def __post_init__(self) -> None:
        if not self.character.domain.same_as(self.quotient.normal):
            raise DomainMismatchError(
                "character domain differs from the quotient's normal subgroup"
            )
        if len(self.section) != self.quotient.order:
            raise DomainMismatchError(
                f"section has {len(self.section)} values for "
                f"{self.quotient.order} cosets"
            )

    @property
    def group(self) -> FiniteGroup:
        return self.quotient.parent

    def value_at(self, x: int) -> complex:
        """The function's value at any group element, extended by covariance."""
        q = self.quotient
        i = q.proj[x]
        s = q.parent.mul[q.parent.inv[q.reps[i]]][x]
        return self.character.value(s) * self.section[i]

    def full(self) -> GroupFunction:
        """Materialize the function on the whole group."""
        q = self.quotient
        mul, inv = q.parent.mul, q.parent.inv
        char = self.character
        vals = [0j] * q.parent.order
        for i, r in enumerate(q.reps):
            base = self.section[i]
            row = mul[r]
            for s in char.domain.members:
                vals[row[s]] = char.value(s) * base
        return GroupFunction(q.parent, tuple(vals))

    def __add__(self, other: "CovariantFunction") -> "CovariantFunction":
        if other.quotient is not self.quotient or other.character is not self.character:
            if not (
                other.quotient.parent is self.quotient.parent
                and other.character.domain.same_as(self.character.domain)
                and other.character.phases == self.character.phases
            ):
                raise DomainMismatchError(
                    "cannot add covariant functions with different covariance data"
                )
        return CovariantFunction(
            self.quotient,
            self.character,
            tuple(a + b for a, b in zip(self.section, other.section)),
        )

    def __sub__(self, other: "CovariantFunction") -> "CovariantFunction":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "CovariantFunction":
        return CovariantFunction(
            self.quotient, self.character, tuple(scalar * v for v in self.section)
        )


def t_xi(
    f: GroupFunction,
    char: Character,
    measure: MeasureTriple | None = None,
    quot: QuotientGroup | None = None,
) -> CovariantFunction:
    """Average f against the conjugated character over the normal subgroup.

    The output section at a representative r is
    sum over s in N of wN(s) * f(r * s) * conj(xi(s)), and the result is
    covariant for xi by construction.  Passing a precomputed quotient skips
    re-deriving the coset structure.
    """
    if char.domain.parent is not f.group:
        raise DomainMismatchError("character domain is not a subgroup of f's group")
    if quot is None:
        quot = quotient(f.group, char.domain)
    elif not quot.normal.same_as(char.domain):
        raise DomainMismatchError("quotient was built for a different subgroup")
    if measure is None:
        measure = counting_measure(quot)
    mul = f.group.mul
    members = char.domain.members
    conj_vals = tuple(v.conjugate() for v in char.complex_values)
    wN = measure.wN
    fvals = f.values
    section = []
    for r in quot.reps:
        row = mul[r]
        acc = 0j
        for j, s in enumerate(members):
            acc += wN[j] * fvals[row[s]] * conj_vals[j]
        section.append(acc)
    return CovariantFunction(quot, char, tuple(section))


def is_covariant(psi: GroupFunction, char: Character, tol: float = 1e-9) -> bool:
    """Check psi(x * s) = xi(s) * psi(x) for all x in the group and s in the domain."""
    if char.domain.parent is not psi.group:
        raise DomainMismatchError("character domain is not a subgroup of psi's group")
    mul = psi.group.mul
    vals = psi.values
    members = char.domain.members
    cvals = char.complex_values
    for x in range(psi.group.order):
        row = mul[x]
        base = vals[x]
        for j, s in enumerate(members):
            if abs(vals[row[s]] - cvals[j] * base) > tol:
                return False
    return True


def from_section(
    section: Sequence[complex], char: Character, quot: QuotientGroup
) -> CovariantFunction:
    """Extend values on the coset representatives to a covariant function."""
    return CovariantFunction(quot, char, tuple(complex(v) for v in section))


def cov_norm(
    psi: CovariantFunction, p: float, measure: MeasureTriple | None = None
) -> float:
    """The p-norm of the section against the quotient weights.

    Because |psi| is constant on each coset, this is the natural norm of the
    covariant function itself; with counting weights it differs from the
    full-group p-norm exactly by the factor |N| ** (1/p).
    """
    if p < 1:
        raise ExponentError(f"norm exponent must be at least 1, got {p}")
    wQ = measure.wQ if measure is not None else (1.0,) * psi.quotient.order
    if len(wQ) != psi.quotient.order:
        raise DomainMismatchError(
            f"got {len(wQ)} quotient weights for {psi.quotient.order} cosets"
        )
    total = math.fsum(w * abs(v) ** p for w, v in zip(wQ, psi.section))
    return total ** (1.0 / p)


def project_trivial(psi: CovariantFunction) -> GroupFunction:
    """Identify a trivially-covariant function with a function on the quotient."""
    if not psi.character.is_trivial:
        raise IdentificationError(
            "only functions covariant for the trivial character descend to the quotient"
        )
    return GroupFunction(psi.quotient.table, psi.section)


def average_over_subgroup(
    f: GroupFunction,
    quot: QuotientGroup,
    measure: MeasureTriple | None = None,
) -> CovariantFunction:
    """Plain subgroup averaging: t_xi with the trivial character."""
    return t_xi(f, trivial_character(quot.normal), measure, quot)
