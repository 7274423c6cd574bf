"""Semidirect products and their specialized convolution kernels.

A semidirect product is built from two finite groups H and K and an action
table theta, where theta[h] is the automorphism of K contributed by h.  The
pair (h, k) is packed as index h * |K| + k.  Because every finite group is
unimodular, the modulus of each theta[h] is identically 1; it is still kept
explicit so the measure bookkeeping on products and their quotients stays
visible.

Two families get dedicated constructors: the discrete step groups on
Z_M x (Z_M x Z_M) where h shears the second coordinate by h times the first,
and their circle-extension analogues on Z_M x (Z_M x Z_R) with shear step
R / M.  For those, the convolution action against a covariant function
collapses to small closed-form sums, implemented here and checked against
the generic kernels by the verification suite.

The closed-form kernels assume unit counting weights.  Under any other
uniform weight w the convolution scales linearly, so multiply the output
by w; there is no per-element weighting to restore.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .characters import Character, phase_to_complex
from .covariant import CovariantFunction
from .errors import (
    DiscretizationError,
    DomainMismatchError,
    NormalityError,
    ValidationError,
)
from .groups import (
    FiniteGroup,
    GroupFunction,
    QuotientGroup,
    Subgroup,
    make_cyclic,
    make_product,
    make_subgroup,
    quotient,
    _check_order,
)


@dataclass(frozen=True)
class SemidirectGroup:
    """H acting on K, with the packed product group and the action kept around."""

    h: FiniteGroup
    k: FiniteGroup
    action: tuple[tuple[int, ...], ...]
    product: FiniteGroup
    delta: tuple[float, ...]

    def pair_index(self, h: int, k: int) -> int:
        return h * self.k.order + k

    def split_index(self, x: int) -> tuple[int, int]:
        return divmod(x, self.k.order)


def semidirect(
    h_group: FiniteGroup,
    k_group: FiniteGroup,
    action: Sequence[Sequence[int]],
) -> SemidirectGroup:
    """Build H acting on K after validating the action table.

    Each row of `action` must be an automorphism of K, the row of H's
    identity must be the identity map, and rows must compose like H does:
    action[h * h'] = action[h] after action[h'].
    """
    nh, nk = h_group.order, k_group.order
    _check_order(nh * nk)
    rows = tuple(tuple(int(v) for v in row) for row in action)
    if len(rows) != nh:
        raise ValidationError(f"action has {len(rows)} rows for |H| = {nh}")
    for h, row in enumerate(rows):
        if len(row) != nk:
            raise ValidationError(f"action row {h} has length {len(row)}, expected {nk}")
        for v in row:
            if not 0 <= v < nk:
                raise ValidationError(f"action row {h} maps into {v}, outside 0..{nk-1}")
        if sorted(row) != list(range(nk)):
            raise ValidationError(f"action row {h} is not a bijection of K")

    if rows[h_group.identity] != tuple(range(nk)):
        raise ValidationError("the identity of H must act as the identity map on K")

    arr = np.asarray(rows, dtype=np.int64)
    kmul = np.asarray(k_group.mul, dtype=np.int64)
    for h in range(nh):
        row = arr[h]
        left = row[kmul]                 # theta_h(k * k')
        right = kmul[np.ix_(row, row)]   # theta_h(k) * theta_h(k')
        if not np.array_equal(left, right):
            k1, k2 = map(int, np.argwhere(left != right)[0])
            raise ValidationError(
                f"action row {h} is not multiplicative at pair ({k1}, {k2})"
            )
    hmul = np.asarray(h_group.mul, dtype=np.int64)
    for h in range(nh):
        composed = arr[h][arr]           # composed[h'] = theta_h after theta_h'
        if not np.array_equal(arr[hmul[h]], composed):
            h2 = int(np.any(arr[hmul[h]] != composed, axis=1).argmax())
            raise ValidationError(
                f"action rows do not compose like H at pair ({h}, {h2})"
            )

    order = nh * nk
    prod = np.empty((order, order), dtype=np.int64)
    for h in range(nh):
        block = kmul[:, arr[h]]          # block[k, k'] = k * theta_h(k')
        for h2 in range(nh):
            r0, c0 = h * nk, h2 * nk
            prod[r0 : r0 + nk, c0 : c0 + nk] = hmul[h, h2] * nk + block
    mul = tuple(tuple(int(v) for v in row) for row in prod)

    hinv, kinv = h_group.inv, k_group.inv
    inv = tuple(
        hinv[h] * nk + rows[hinv[h]][kinv[k]]
        for h in range(nh)
        for k in range(nk)
    )
    identity = h_group.identity * nk + k_group.identity
    labels = None
    if h_group.labels is not None and k_group.labels is not None:
        labels = tuple(
            f"({lh},{lk})" for lh in h_group.labels for lk in k_group.labels
        )
    product = FiniteGroup(order, mul, inv, identity, labels)
    return SemidirectGroup(h_group, k_group, rows, product, (1.0,) * nh)


def delta_factor(sd: SemidirectGroup, sub: Subgroup, h: int) -> float:
    """Modulus of the action of h on an invariant subgroup of K; always 1.0.

    Finite groups carry counting measure, so automorphisms cannot rescale it;
    the call still validates that the subgroup is preserved by every row of
    the action, which is what makes restriction and quotient constructions
    measure-compatible.
    """
    if sub.parent is not sd.k:
        raise DomainMismatchError("subgroup does not live in the K factor")
    if not 0 <= h < sd.h.order:
        raise DomainMismatchError(f"element {h} is outside H")
    mset = sub.member_set
    for hh, row in enumerate(sd.action):
        for s in sub.members:
            if row[s] not in mset:
                raise NormalityError(
                    f"subgroup is not preserved by the action: row {hh} moves "
                    f"{s} to {row[s]}"
                )
    return 1.0


def lift_subgroup(sd: SemidirectGroup, sub: Subgroup) -> Subgroup:
    """View a subgroup of K as a subgroup of the product, via k -> (e_H, k)."""
    if sub.parent is not sd.k:
        raise DomainMismatchError("subgroup does not live in the K factor")
    base = sd.h.identity * sd.k.order
    return make_subgroup(sd.product, tuple(base + s for s in sub.members))


def lift_character(sd: SemidirectGroup, char: Character) -> Character:
    """Transport a character on a subgroup of K to the lifted subgroup."""
    lifted = lift_subgroup(sd, char.domain)
    return Character(lifted, char.phases)


def quotient_action(
    sd: SemidirectGroup, sub: Subgroup
) -> tuple[QuotientGroup, tuple[tuple[int, ...], ...]]:
    """The induced action of H on K / N for an action-invariant normal N."""
    delta_factor(sd, sub, sd.h.identity)  # validates invariance
    qk = quotient(sd.k, sub)
    act = tuple(
        tuple(qk.proj[row[qk.reps[j]]] for j in range(qk.order))
        for row in sd.action
    )
    return qk, act


def induced_semidirect(sd: SemidirectGroup, sub: Subgroup) -> SemidirectGroup:
    """H acting on K / N; its product realizes the quotient of the product by N."""
    qk, act = quotient_action(sd, sub)
    return semidirect(sd.h, qk.table, act)


def heisenberg_finite(m: int) -> SemidirectGroup:
    """Z_m acting on Z_m x Z_m by shearing: x sends (y, s) to (y, s + x*y).

    The packed triple (x, y, s) multiplies as
    (x, y, s) * (x', y', s') = (x + x', y + y', s + s' + x*y'), all mod m.
    """
    _check_order(m)
    h = make_cyclic(m)
    k = make_product(make_cyclic(m), make_cyclic(m))
    action = tuple(
        tuple(y * m + (s + x * y) % m for y in range(m) for s in range(m))
        for x in range(m)
    )
    return semidirect(h, k, action)


def weyl_heisenberg_finite(m: int, r: int) -> SemidirectGroup:
    """Z_m acting on Z_m x Z_r by the shear of step r/m; requires m to divide r.

    The Z_r factor discretizes the circle: t stands for the phase t/r, and
    h = x shears (l, t) to (l, t + (r/m)*x*l).  With r = m this is exactly
    the plain step-1 shear group.
    """
    _check_order(m)
    _check_order(r)
    if r % m != 0:
        raise DiscretizationError(
            f"the circle resolution {r} must be a multiple of the base order {m}"
        )
    step = r // m
    h = make_cyclic(m)
    k = make_product(make_cyclic(m), make_cyclic(r))
    action = tuple(
        tuple(l * r + (t + step * x * l) % r for l in range(m) for t in range(r))
        for x in range(m)
    )
    return semidirect(h, k, action)


def _wh_parameters(sd: SemidirectGroup) -> tuple[int, int, int]:
    """Recover (m, r, step) from a shear-shaped product, validating the shape.

    The factor tables were validated as groups when the product was built, so
    checking the generator rows pins the whole structure: a valid table whose
    row at 1 is the unit shift is the standard cyclic table, and the action
    row at 1 determines every row through the composition law.
    """
    m = sd.h.order
    if sd.k.order % m != 0:
        raise DomainMismatchError("K does not factor as Z_m x Z_r")
    r = sd.k.order // m
    if r % m != 0:
        raise DomainMismatchError(f"circle resolution {r} is not a multiple of {m}")
    step = r // m
    if sd.h.identity != 0 or sd.k.identity != 0:
        raise DomainMismatchError("factors are not in standard form (identity at 0)")
    if m > 1 and sd.h.mul[1] != _std_rows(m, r)[0]:
        raise DomainMismatchError("H is not the standard cyclic table")
    if m > 1 and sd.k.mul[r] != _std_rows(m, r)[1]:
        raise DomainMismatchError("K is not the standard Z_m x Z_r table")
    if r > 1 and sd.k.mul[1] != _std_rows(m, r)[2]:
        raise DomainMismatchError("K is not the standard Z_m x Z_r table")
    if m > 1 and sd.action[1] != _std_rows(m, r)[3]:
        raise DomainMismatchError("action is not the shear of step r/m")
    return m, r, step


@lru_cache(maxsize=None)
def _std_rows(m: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Generator rows of the standard shear tables: H shift, both K shifts,
    and the shear row, used to recognize the shape at closed-form call time."""
    step = r // m
    return (
        tuple((1 + b) % m for b in range(m)),
        tuple(((1 + l) % m) * r + t for l in range(m) for t in range(r)),
        tuple(l * r + (1 + t) % r for l in range(m) for t in range(r)),
        tuple(l * r + (t + step * l) % r for l in range(m) for t in range(r)),
    )


@lru_cache(maxsize=None)
def _roots_of_unity(n: int) -> tuple[complex, ...]:
    return tuple(phase_to_complex(Fraction(j, n)) for j in range(n))


def _require_normal_members(psi: CovariantFunction, expected: tuple[int, ...], what: str) -> None:
    if psi.quotient.normal.members != expected:
        raise DomainMismatchError(f"covariant function is not covariant over {what}")


def conv_fast_full_k(
    sd: SemidirectGroup, f: GroupFunction, psi: CovariantFunction
) -> CovariantFunction:
    """Closed-form module action when the covariance subgroup is all of K.

    For each output coset (a, K) the double sum over (h, k) factors through
    the character twisted by the action of a^-1, so the cost is
    |H|^2 * |K| instead of the |G|^2 of the structure-blind path.
    """
    if f.group is not sd.product:
        raise DomainMismatchError("function does not live on the product group")
    if psi.group is not sd.product:
        raise DomainMismatchError("covariant function does not live on the product group")
    nk = sd.k.order
    base = sd.h.identity * nk
    _require_normal_members(psi, tuple(range(base, base + nk)), "the full K fiber")
    char = psi.character
    cvals = char.complex_values  # indexed by K index: members are base + k in order
    hmul, hinv = sd.h.mul, sd.h.inv
    action = sd.action
    fv = f.values

    psi_h = [psi.value_at(c * nk + sd.k.identity) for c in range(sd.h.order)]

    section = []
    for i in range(psi.quotient.order):
        rep = psi.quotient.reps[i]
        a, b = divmod(rep, nk)
        tha = action[hinv[a]]
        weights = [cvals[tha[k]].conjugate() for k in range(nk)]
        acc = 0j
        for h in range(sd.h.order):
            off = h * nk
            inner = 0j
            for k in range(nk):
                inner += fv[off + k] * weights[k]
            acc += inner * psi_h[hmul[hinv[h]][a]]
        prefactor = cvals[tha[b]]
        section.append(prefactor * acc)
    return CovariantFunction(psi.quotient, char, tuple(section))


def conv_fast_wh_center(
    sd: SemidirectGroup, f: GroupFunction, psi: CovariantFunction, n: int
) -> CovariantFunction:
    """Closed-form module action over the central fiber of a shear group.

    The covariance character must be the n-th character of the center
    {(0, 0, t)}.  The t-sum of f is taken once against that character, and
    the remaining double sum over (m', l') carries only an m'(l'-l) phase,
    so the cost is quadratic in the number of cosets rather than in |G|.
    """
    m, r, _ = _wh_parameters(sd)
    if f.group is not sd.product:
        raise DomainMismatchError("function does not live on the product group")
    if psi.group is not sd.product:
        raise DomainMismatchError("covariant function does not live on the product group")
    _require_normal_members(psi, tuple(range(r)), "the central fiber")
    n %= r
    for t, q in enumerate(psi.character.phases):
        # exact comparison q == (n*t mod r)/r by integer cross-multiplication
        if q.numerator * r != q.denominator * ((n * t) % r):
            raise DomainMismatchError(
                "character does not match the requested central character index"
            )
    root_r = _roots_of_unity(r)
    root_m = _roots_of_unity(m)
    fv = f.values
    mr = m * r

    reps = psi.quotient.reps
    psec = [[0j] * m for _ in range(m)]
    for i, rep in enumerate(reps):
        mm, ll = divmod(i, m)
        if rep != mm * mr + ll * r:
            raise DomainMismatchError("coset representatives are not aligned with t = 0")
        psec[mm][ll] = psi.section[i]

    crow = [root_r[(-n * t) % r] for t in range(r)]
    f1 = []
    for mp in range(m):
        row = []
        for lp in range(m):
            off = mp * mr + lp * r
            acc = 0j
            for t in range(r):
                acc += fv[off + t] * crow[t]
            row.append(acc)
        f1.append(row)

    # The remaining phase depends only on m' and d = (l - l') mod m, so it is
    # folded into shifted copies of the section once per output row of m'
    # values, leaving a plain multiply-accumulate as the core double sum.
    wtab = [[root_m[(-n * mp * d) % m] for d in range(m)] for mp in range(m)]
    drow = [[(ll - lp) % m for lp in range(m)] for ll in range(m)]

    section = []
    for mm in range(m):
        folded = [
            [g * p for g, p in zip(wtab[mp], psec[(mm - mp) % m])]
            for mp in range(m)
        ]
        for ll in range(m):
            dl = drow[ll]
            acc = 0j
            for mp in range(m):
                frow = f1[mp]
                grow = folded[mp]
                for lp in range(m):
                    acc += frow[lp] * grow[dl[lp]]
            section.append(acc)
    return CovariantFunction(psi.quotient, psi.character, tuple(section))


def conv_fast_wh_full(
    sd: SemidirectGroup,
    f: GroupFunction,
    psi: CovariantFunction,
    y: int,
    n: int,
) -> CovariantFunction:
    """Closed-form module action over the whole Z_m x Z_r fiber of a shear group.

    The covariance character is indexed by (y, n); covariance pins the whole
    function to its values at (m, 0, 0), and the action reduces to a length-m
    correlation after one t-sum and one l-sum of f.
    """
    m, r, step = _wh_parameters(sd)
    if f.group is not sd.product:
        raise DomainMismatchError("function does not live on the product group")
    if psi.group is not sd.product:
        raise DomainMismatchError("covariant function does not live on the product group")
    _require_normal_members(psi, tuple(range(m * r)), "the full K fiber")
    y %= m
    n %= r
    for idx, q in enumerate(psi.character.phases):
        l, t = divmod(idx, r)
        # q must equal (y*l/m + n*t/r) mod 1 = ((y*l*step + n*t) mod r)/r, exactly
        if q.numerator * r != q.denominator * ((y * l * step + n * t) % r):
            raise DomainMismatchError(
                "character does not match the requested (y, n) character indices"
            )
    root_r = _roots_of_unity(r)
    root_m = _roots_of_unity(m)
    fv = f.values

    psec = list(psi.section)
    for i, rep in enumerate(psi.quotient.reps):
        if rep != i * m * r:
            raise DomainMismatchError("coset representatives are not aligned with (m, 0, 0)")

    f1 = [[0j] * m for _ in range(m)]
    for mp in range(m):
        for lp in range(m):
            off = mp * m * r + lp * r
            acc = 0j
            for t in range(r):
                acc += fv[off + t] * root_r[(-n * t) % r]
            f1[mp][lp] = acc

    section = []
    for mm in range(m):
        acc = 0j
        for mp in range(m):
            row = f1[mp]
            inner = 0j
            for lp in range(m):
                inner += row[lp] * root_m[(-lp * (y - n * mm)) % m]
            acc += inner * psec[(mm - mp) % m]
        section.append(acc)
    return CovariantFunction(psi.quotient, psi.character, tuple(section))
