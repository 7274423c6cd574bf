"""Timing comparison: structure-blind convolution against the closed-form kernels.

The baseline is the path a consumer would take without exploiting
covariance at all: materialize the covariant function on the whole group
and convolve, at |G| squared scalar operations per call.  The per-coset
action (|G| times |G/N| operations) is timed alongside for reference, and
the closed-form shear-group kernels are the contenders.  Every kernel is
checked for agreement on the exact inputs being timed before any clock
starts, so a reported speedup cannot come from a wrong answer.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .characters import Character, make_character
from .convolution import full_module_action, module_action, section_residual
from .covariant import from_section
from .errors import ValidationError
from .groups import make_subgroup, quotient, random_function
from .semidirect import (
    SemidirectGroup,
    conv_fast_wh_center,
    conv_fast_wh_full,
    lift_subgroup,
    weyl_heisenberg_finite,
)

AGREEMENT_TOL = 1e-9


def _center_character(sd: SemidirectGroup, r: int, n: int) -> Character:
    lifted = lift_subgroup(sd, make_subgroup(sd.k, range(r)))
    phases = [Fraction(n * t, r) % 1 for t in range(r)]
    return make_character(lifted, phases)


def _fiber_character(sd: SemidirectGroup, m: int, r: int, y: int, n: int) -> Character:
    lifted = lift_subgroup(sd, make_subgroup(sd.k, range(sd.k.order)))
    phases = [
        (Fraction(y * ell, m) + Fraction(n * t, r)) % 1
        for ell in range(m)
        for t in range(r)
    ]
    return make_character(lifted, phases)


def _time_per_call(fn, repetitions: int) -> float:
    fn()  # warm up allocations and bytecode before the clock starts
    t0 = time.perf_counter()
    for _ in range(repetitions):
        fn()
    return (time.perf_counter() - t0) / repetitions


def _run_variant(
    sd: SemidirectGroup,
    name: str,
    char: Character,
    fast,
    rng: random.Random,
    repetitions: int,
) -> dict:
    quot = quotient(sd.product, char.domain)
    f = random_function(sd.product, rng)
    section = [
        complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0)) for _ in range(quot.order)
    ]
    psi = from_section(section, char, quot)

    generic = module_action(f, psi)
    closed = fast(sd, f, psi)
    agreement = section_residual(closed, generic)
    if agreement > AGREEMENT_TOL:
        raise ValidationError(
            f"closed-form kernel disagrees with the generic action on variant "
            f"{name!r} (residual {agreement:.3e}); refusing to time a wrong answer"
        )

    seconds = {
        "full_convolution": _time_per_call(
            lambda: full_module_action(f, psi), repetitions
        ),
        "per_coset": _time_per_call(lambda: module_action(f, psi), repetitions),
        "closed_form": _time_per_call(lambda: fast(sd, f, psi), repetitions),
    }
    floor = max(seconds["closed_form"], 1e-12)
    return {
        "name": name,
        "normal_order": char.domain.order,
        "agreement": agreement,
        "seconds": seconds,
        "speedup": seconds["full_convolution"] / floor,
        "speedup_per_coset": seconds["per_coset"] / floor,
    }


def run_bench(m: int, r: int, repetitions: int = 50, seed: int = 0) -> dict:
    """Time the convolution routes on the (m, r) shear group.

    Two covariance configurations are measured: a character of the central
    cyclic factor (n = 1 when r > 1) and a character of the whole abelian
    fiber (y = n = 1 where the sizes allow).  Returns a report dict; render
    it with `bench_table`.
    """
    if repetitions < 1:
        raise ValidationError(f"repetitions must be positive, got {repetitions}")
    sd = weyl_heisenberg_finite(m, r)
    rng = random.Random(f"{seed}:bench:{m}x{r}")

    n = 1 % r
    y = 1 % m
    variants = [
        _run_variant(
            sd,
            f"center n={n}",
            _center_character(sd, r, n),
            lambda s, f, p: conv_fast_wh_center(s, f, p, n),
            rng,
            repetitions,
        ),
        _run_variant(
            sd,
            f"fiber y={y} n={n}",
            _fiber_character(sd, m, r, y, n),
            lambda s, f, p: conv_fast_wh_full(s, f, p, y, n),
            rng,
            repetitions,
        ),
    ]
    return {
        "m": m,
        "r": r,
        "group_order": sd.product.order,
        "repetitions": repetitions,
        "seed": seed,
        "variants": variants,
    }


def bench_table(report: dict) -> str:
    """Render a bench report as an aligned text table."""
    head = (
        f"shear group m={report['m']} r={report['r']} "
        f"(order {report['group_order']}), "
        f"{report['repetitions']} calls per timing, seed {report['seed']}"
    )
    cols = ["variant", "|N|", "full-conv", "per-coset", "closed-form", "speedup"]
    rows = []
    for v in report["variants"]:
        s = v["seconds"]
        rows.append(
            [
                v["name"],
                str(v["normal_order"]),
                f"{s['full_convolution']:.3e}s",
                f"{s['per_coset']:.3e}s",
                f"{s['closed_form']:.3e}s",
                f"{v['speedup']:.1f}x",
            ]
        )
    widths = [max(len(r[i]) for r in [cols] + rows) for i in range(len(cols))]
    lines = [head, ""]
    for r in [cols] + rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines)
