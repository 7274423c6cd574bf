"""Convolution on a group and its action on covariant functions.

The generic kernels are deliberately written as scalar loops with a fixed
summation order, so results are bit-reproducible and wall time tracks the
operation count.  Convolution outputs may be computed concurrently across
output indices; the COVMOD_THREADS environment variable caps that worker
pool (default 1, fully sequential).
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from .characters import Character
from .covariant import CovariantFunction, cov_norm, t_xi
from .errors import DomainMismatchError, MeasureError
from .groups import (
    GroupFunction,
    MeasureTriple,
    QuotientGroup,
    lp_norm,
    random_function,
)


def _worker_count() -> int:
    raw = os.environ.get("COVMOD_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_outputs(compute: Callable[[int], complex], count: int) -> list[complex]:
    """Evaluate independent output points, optionally across a thread pool.

    Each point carries its own fixed-order summation, so the result does not
    depend on scheduling.
    """
    workers = _worker_count()
    if workers <= 1 or count < 2 * workers:
        return [compute(x) for x in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(compute, range(count)))


def _group_weights(
    f: GroupFunction, measure: MeasureTriple | Sequence[float] | None
) -> Sequence[float]:
    if measure is None:
        return (1.0,) * f.group.order
    w = measure.wG if isinstance(measure, MeasureTriple) else measure
    if len(w) != f.group.order:
        raise MeasureError(f"got {len(w)} weights for a group of order {f.group.order}")
    return w


def convolve(
    f: GroupFunction,
    g: GroupFunction,
    measure: MeasureTriple | Sequence[float] | None = None,
) -> GroupFunction:
    """(f * g)(x) = sum over y of w(y) * f(y) * g(y^-1 x), counting weights by default."""
    if f.group is not g.group:
        raise DomainMismatchError("cannot convolve functions on different groups")
    group = f.group
    w = _group_weights(f, measure)
    wf = [wy * fy for wy, fy in zip(w, f.values)]
    inv_rows = [group.mul[group.inv[y]] for y in range(group.order)]
    gv = g.values

    def compute(x: int) -> complex:
        acc = 0j
        for wfy, row in zip(wf, inv_rows):
            acc += wfy * gv[row[x]]
        return acc

    return GroupFunction(group, tuple(_map_outputs(compute, group.order)))


def module_action(
    f: GroupFunction,
    psi: CovariantFunction,
    measure: MeasureTriple | Sequence[float] | None = None,
) -> CovariantFunction:
    """Convolve a function against a covariant function, evaluated on representatives.

    The output is covariant for the same character, so only one value per
    coset is computed; cost is |G| * |G/N| instead of |G| squared.
    """
    if f.group is not psi.group:
        raise DomainMismatchError("function and covariant function live on different groups")
    group = f.group
    quot = psi.quotient
    w = _group_weights(f, measure)
    wf = [wy * fy for wy, fy in zip(w, f.values)]
    full = psi.full().values
    mul, inv = group.mul, group.inv
    reps = quot.reps

    def compute(i: int) -> complex:
        r = reps[i]
        acc = 0j
        for y, wfy in enumerate(wf):
            acc += wfy * full[mul[inv[y]][r]]
        return acc

    section = _map_outputs(compute, quot.order)
    return CovariantFunction(quot, psi.character, tuple(section))


def full_module_action(
    f: GroupFunction,
    psi: CovariantFunction,
    measure: MeasureTriple | Sequence[float] | None = None,
) -> GroupFunction:
    """The same action computed the structure-blind way: materialize and convolve.

    This is the |G| squared reference path; `module_action` must agree with
    it on every coset representative.
    """
    return convolve(f, psi.full(), measure)


def quotient_convolve(
    phi: GroupFunction,
    psi: GroupFunction,
    measure: MeasureTriple | Sequence[float] | None = None,
) -> GroupFunction:
    """Convolution of two functions on the quotient group with the wQ weights."""
    w = measure.wQ if isinstance(measure, MeasureTriple) else measure
    return convolve(phi, psi, w)


def _max_section_diff(a: CovariantFunction, b: CovariantFunction) -> float:
    return max(abs(x - y) for x, y in zip(a.section, b.section))


def covariance_residual(psi: GroupFunction, char: Character) -> float:
    """max |psi(x s) - xi(s) psi(x)| over the whole group and subgroup."""
    mul = psi.group.mul
    vals = psi.values
    members = char.domain.members
    cvals = char.complex_values
    worst = 0.0
    for x in range(psi.group.order):
        row = mul[x]
        base = vals[x]
        for j, s in enumerate(members):
            dev = abs(vals[row[s]] - cvals[j] * base)
            if dev > worst:
                worst = dev
    return worst


def verify_module_axioms(
    quot: QuotientGroup,
    char: Character,
    trials: int,
    tol: float = 1e-9,
    seed: int | str = 0,
) -> dict:
    """Check the Banach-module laws on random data and report max residuals.

    Laws covered: associativity of the action against convolution,
    bilinearity in both arguments, the L1 operator norm bound for
    p in {1, 2, 3}, covariance of outputs, and the intertwining identity
    t_xi(f * g) = f acted on t_xi(g).  Zero trials yields an empty, passing
    report.
    """
    group = quot.parent
    rng = random.Random(f"{seed}:module-axioms")
    laws = {
        "associativity": 0.0,
        "bilinearity": 0.0,
        "norm_bound": 0.0,
        "output_covariance": 0.0,
        "txi_homomorphism": 0.0,
    }
    for _ in range(trials):
        f = random_function(group, rng)
        g = random_function(group, rng)
        h = random_function(group, rng)
        psi = t_xi(h, char, quot=quot)
        chi = t_xi(random_function(group, rng), char, quot=quot)
        alpha = complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0))
        beta = complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0))

        assoc = _max_section_diff(
            module_action(convolve(f, g), psi), module_action(f, module_action(g, psi))
        )
        laws["associativity"] = max(laws["associativity"], assoc)

        left = _max_section_diff(
            module_action(alpha * f + beta * g, psi),
            alpha * module_action(f, psi) + beta * module_action(g, psi),
        )
        right = _max_section_diff(
            module_action(f, alpha * psi + beta * chi),
            alpha * module_action(f, psi) + beta * module_action(f, chi),
        )
        laws["bilinearity"] = max(laws["bilinearity"], left, right)

        acted = module_action(f, psi)
        f_l1 = lp_norm(f, 1)
        for p in (1, 2, 3):
            excess = cov_norm(acted, p) - f_l1 * cov_norm(psi, p)
            laws["norm_bound"] = max(laws["norm_bound"], excess)

        laws["output_covariance"] = max(
            laws["output_covariance"], covariance_residual(acted.full(), char)
        )

        inter = _max_section_diff(t_xi(convolve(f, g), char, quot=quot),
                                  module_action(f, t_xi(g, char, quot=quot)))
        laws["txi_homomorphism"] = max(laws["txi_homomorphism"], inter)

    return {
        "seed": seed,
        "trials": trials,
        "tol": tol,
        "laws": laws,
        "passed": all(v <= tol for v in laws.values()),
    }


def max_abs_diff(a: GroupFunction, b: GroupFunction) -> float:
    if a.group.order != b.group.order:
        raise DomainMismatchError("functions have different lengths")
    return max(abs(x - y) for x, y in zip(a.values, b.values))


def l1_norm(f: GroupFunction, measure: MeasureTriple | None = None) -> float:
    return lp_norm(f, 1, measure)


def section_residual(a: CovariantFunction, b: CovariantFunction) -> float:
    """Max pointwise gap between two sections over the same covariance data."""
    if a.quotient is not b.quotient and not (
        a.quotient.parent is b.quotient.parent
        and a.quotient.normal.same_as(b.quotient.normal)
    ):
        raise DomainMismatchError("sections live over different quotients")
    if a.character.phases != b.character.phases:
        raise DomainMismatchError("sections are covariant for different characters")
    return _max_section_diff(a, b)
