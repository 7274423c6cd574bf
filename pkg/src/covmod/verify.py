"""Built-in corpus of worked groups and the residual checks behind `covmod verify`.

Each check draws seeded random data, computes the two sides of one proved
identity, and reports the worst residual seen.  Exact checks (characters,
table isomorphisms, pullback shifts) report a mismatch count instead, so a
passing run shows literal zeros there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .characters import (
    Character,
    char_inner,
    enumerate_characters,
    make_character,
    pullback,
    trivial_character,
)
from .convolution import (
    convolve,
    covariance_residual,
    full_module_action,
    max_abs_diff,
    module_action,
    quotient_convolve,
    section_residual,
    verify_module_axioms,
)
from .covariant import CovariantFunction, cov_norm, from_section, project_trivial, t_xi
from .groups import (
    FiniteGroup,
    GroupFunction,
    QuotientGroup,
    Subgroup,
    counting_measure,
    group_center,
    lp_norm,
    make_cyclic,
    make_from_table,
    make_subgroup,
    quotient,
    random_function,
    weil_residual,
)
from .semidirect import (
    SemidirectGroup,
    _wh_parameters,
    conv_fast_full_k,
    conv_fast_wh_center,
    conv_fast_wh_full,
    delta_factor,
    heisenberg_finite,
    induced_semidirect,
    lift_subgroup,
    semidirect,
    weyl_heisenberg_finite,
)

DEFAULT_TOLS = {
    "weil_formula": 1e-12,
    "characters_exact": 0.0,
    "txi_covariance": 1e-9,
    "txi_averaging": 1e-9,
    "norm_identity": 1e-9,
    "txi_homomorphism": 1e-9,
    "norm_bound": 1e-9,
    "module_axioms": 1e-9,
    "trivial_identification": 1e-9,
    "full_convolution_agreement": 1e-9,
    "covariance_shape": 1e-9,
    "semidirect_structure": 1e-12,
    "fast_kernels": 1e-9,
    "pullback_shift": 0.0,
}

_TINY = 1e-300

# Grid of shear-group sizes exercised by the fast-kernel check regardless of
# which corpus entries were selected.
FAST_GRID = ((1, 1), (2, 2), (2, 4), (4, 4))


@dataclass(frozen=True)
class CorpusEntry:
    """One (group, normal subgroup) configuration under test."""

    name: str
    group: FiniteGroup
    normal: Subgroup
    quot: QuotientGroup
    sd: SemidirectGroup | None = None
    normal_in_k: Subgroup | None = None


def symmetric_3() -> FiniteGroup:
    """The symmetric group on three points, elements in lexicographic order."""
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms
    ]
    labels = ["".join(map(str, p)) for p in perms]
    return make_from_table(table, labels)


def _lifted_center_entry(name: str, sd: SemidirectGroup) -> CorpusEntry:
    center = group_center(sd.product)
    nk = sd.k.order
    k_members = []
    for x in center.members:
        h, k = divmod(x, nk)
        if h != sd.h.identity:
            raise AssertionError("center is expected to sit inside the K fiber")
        k_members.append(k)
    in_k = make_subgroup(sd.k, k_members)
    normal = make_subgroup(sd.product, center.members)
    return CorpusEntry(
        name, sd.product, normal, quotient(sd.product, normal), sd, in_k
    )


def _full_k_entry(name: str, sd: SemidirectGroup) -> CorpusEntry:
    in_k = make_subgroup(sd.k, range(sd.k.order))
    normal = lift_subgroup(sd, in_k)
    return CorpusEntry(
        name, sd.product, normal, quotient(sd.product, normal), sd, in_k
    )


def builtin_corpus() -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []

    z4 = make_cyclic(4)
    n4 = make_subgroup(z4, (0, 2))
    entries.append(CorpusEntry("Z4/evens", z4, n4, quotient(z4, n4)))

    z6 = make_cyclic(6)
    n6 = make_subgroup(z6, (0, 2, 4))
    entries.append(CorpusEntry("Z6/Z3", z6, n6, quotient(z6, n6)))

    s3 = symmetric_3()
    a3 = make_subgroup(s3, (0, 3, 4))
    entries.append(CorpusEntry("S3/A3", s3, a3, quotient(s3, a3)))

    entries.append(_lifted_center_entry("Heis2/center", heisenberg_finite(2)))
    entries.append(_lifted_center_entry("Heis3/center", heisenberg_finite(3)))

    wh24 = weyl_heisenberg_finite(2, 4)
    entries.append(_lifted_center_entry("WH(2,4)/center", wh24))
    entries.append(_full_k_entry("WH(2,4)/K", wh24))

    z2, z3 = make_cyclic(2), make_cyclic(3)
    flip = semidirect(z2, z3, ((0, 1, 2), (0, 2, 1)))
    entries.append(_full_k_entry("Z2xZ3/K", flip))

    return entries


def _rng(seed: int, check: str, config: str) -> random.Random:
    return random.Random(f"{seed}:{check}:{config}")


def _row(check: str, config: str, residual: float, tol: float | None) -> dict:
    t = DEFAULT_TOLS[check] if tol is None else tol
    return {
        "check": check,
        "config": config,
        "residual": residual,
        "tol": t,
        "passed": residual <= t,
    }


def _random_covariant(
    quot: QuotientGroup, char: Character, rng: random.Random
) -> CovariantFunction:
    section = [
        complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0)) for _ in range(quot.order)
    ]
    return from_section(section, char, quot)


def check_weil(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    rng = _rng(seed, "weil_formula", entry.name)
    measure = counting_measure(entry.quot)
    worst = 0.0
    for _ in range(trials):
        f = random_function(entry.group, rng)
        res = weil_residual(f, entry.quot, measure) / max(lp_norm(f, 1), _TINY)
        worst = max(worst, res)
    return _row("weil_formula", entry.name, worst, tol)


def _abelianization_order(sub: Subgroup) -> int:
    group = sub.parent
    mul, inv = group.mul, group.inv
    members = sub.members
    comms = {
        mul[mul[mul[s][t]][inv[s]]][inv[t]] for s in members for t in members
    }
    closure = set(comms) | {group.identity}
    queue = list(closure)
    while queue:
        a = queue.pop()
        for b in list(closure):
            for c in (mul[a][b], mul[b][a]):
                if c not in closure:
                    closure.add(c)
                    queue.append(c)
    return len(members) // len(closure)


def check_characters(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    """Exact character theory: count, homomorphism law, orthogonality."""
    del seed, trials  # deterministic; kept for a uniform check signature
    mismatches = 0
    chars = enumerate_characters(entry.normal)
    if len(chars) != _abelianization_order(entry.normal):
        mismatches += 1
    order = entry.normal.order
    for i, a in enumerate(chars):
        try:
            make_character(entry.normal, a.phases)
        except Exception:
            mismatches += 1
        for j, b in enumerate(chars):
            try:
                got = char_inner(a, b)
            except Exception:
                mismatches += 1
                continue
            if got != (order if i == j else 0):
                mismatches += 1
    return _row("characters_exact", entry.name, float(mismatches), tol)


def check_txi_covariance(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    rng = _rng(seed, "txi_covariance", entry.name)
    worst = 0.0
    for char in enumerate_characters(entry.normal):
        for _ in range(trials):
            f = random_function(entry.group, rng)
            psi = t_xi(f, char, quot=entry.quot)
            worst = max(worst, covariance_residual(psi.full(), char))
    return _row("txi_covariance", entry.name, worst, tol)


def check_txi_averaging(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    """Averaging a covariant function reproduces it scaled by the fiber size."""
    rng = _rng(seed, "txi_averaging", entry.name)
    scale = float(entry.normal.order)
    worst = 0.0
    for char in enumerate_characters(entry.normal):
        for _ in range(trials):
            psi = _random_covariant(entry.quot, char, rng)
            back = t_xi(psi.full(), char, quot=entry.quot)
            worst = max(worst, section_residual(back, scale * psi))
    return _row("txi_averaging", entry.name, worst, tol)


def check_norm_identity(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    """Section norm vs full-group norm: they differ exactly by |N| ** (1/p)."""
    rng = _rng(seed, "norm_identity", entry.name)
    n_order = entry.normal.order
    worst = 0.0
    for char in enumerate_characters(entry.normal):
        for _ in range(trials):
            psi = _random_covariant(entry.quot, char, rng)
            full = psi.full()
            for p in (1, 2, 3):
                lhs = cov_norm(psi, p)
                rhs = n_order ** (-1.0 / p) * lp_norm(full, p)
                worst = max(worst, abs(lhs - rhs) / max(lhs, _TINY))
    return _row("norm_identity", entry.name, worst, tol)


def check_txi_homomorphism(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    """Averaging intertwines convolution with the module action."""
    rng = _rng(seed, "txi_homomorphism", entry.name)
    worst = 0.0
    for char in enumerate_characters(entry.normal):
        for _ in range(trials):
            f = random_function(entry.group, rng)
            g = random_function(entry.group, rng)
            left = t_xi(convolve(f, g), char, quot=entry.quot)
            right = module_action(f, t_xi(g, char, quot=entry.quot))
            scale = max(lp_norm(f, 1) * lp_norm(g, 1), _TINY)
            worst = max(worst, section_residual(left, right) / scale)
    return _row("txi_homomorphism", entry.name, worst, tol)


def check_norm_bound(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    rng = _rng(seed, "norm_bound", entry.name)
    worst = 0.0
    for char in enumerate_characters(entry.normal):
        for _ in range(trials):
            f = random_function(entry.group, rng)
            psi = _random_covariant(entry.quot, char, rng)
            acted = module_action(f, psi)
            f_l1 = lp_norm(f, 1)
            for p in (1, 2, 3):
                excess = cov_norm(acted, p) - f_l1 * cov_norm(psi, p)
                worst = max(worst, excess)
    return _row("norm_bound", entry.name, worst, tol)


def check_module_axioms(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    t = DEFAULT_TOLS["module_axioms"] if tol is None else tol
    worst = 0.0
    for j, char in enumerate(enumerate_characters(entry.normal)):
        report = verify_module_axioms(
            entry.quot, char, trials, tol=t, seed=f"{seed}:{entry.name}:{j}"
        )
        worst = max(worst, max(report["laws"].values()))
    return _row("module_axioms", entry.name, worst, tol)


def check_trivial_identification(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    """With the trivial character, the action descends to quotient convolution."""
    rng = _rng(seed, "trivial_identification", entry.name)
    triv = trivial_character(entry.normal)
    worst = 0.0
    for _ in range(trials):
        f = random_function(entry.group, rng)
        psi = _random_covariant(entry.quot, triv, rng)
        descended = project_trivial(module_action(f, psi))
        averaged = project_trivial(t_xi(f, triv, quot=entry.quot))
        via_quotient = quotient_convolve(averaged, project_trivial(psi))
        worst = max(worst, max_abs_diff(descended, via_quotient))
    return _row("trivial_identification", entry.name, worst, tol)


def check_full_agreement(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict:
    """The per-representative action equals the structure-blind convolution."""
    rng = _rng(seed, "full_convolution_agreement", entry.name)
    worst = 0.0
    for char in enumerate_characters(entry.normal):
        for _ in range(trials):
            f = random_function(entry.group, rng)
            psi = _random_covariant(entry.quot, char, rng)
            blind = full_module_action(f, psi)
            direct = module_action(f, psi)
            for i, r in enumerate(entry.quot.reps):
                worst = max(worst, abs(blind.values[r] - direct.section[i]))
            worst = max(worst, covariance_residual(blind, char))
    return _row("full_convolution_agreement", entry.name, worst, tol)


def check_covariance_shape(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict | None:
    """On a semidirect product, covariance pins values along the K fiber."""
    sd = entry.sd
    if sd is None or entry.normal_in_k is None:
        return None
    rng = _rng(seed, "covariance_shape", entry.name)
    nk = sd.k.order
    base = sd.h.identity * nk
    e_k = sd.k.identity
    worst = 0.0
    for char in enumerate_characters(entry.normal):
        for _ in range(trials):
            psi = _random_covariant(entry.quot, char, rng)
            for h in range(sd.h.order):
                anchor = psi.value_at(h * nk + e_k)
                row = sd.action[sd.h.inv[h]]
                for s in entry.normal_in_k.members:
                    got = psi.value_at(h * nk + s)
                    want = char.value(base + row[s]) * anchor
                    worst = max(worst, abs(got - want))
    return _row("covariance_shape", entry.name, worst, tol)


def check_semidirect_structure(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict | None:
    """Modulus bookkeeping and the quotient's semidirect realization.

    Verified facts: every action modulus is exactly 1 (on K, on the invariant
    subgroup, and on K / N), the quotient of the product by the lifted
    subgroup has exactly the table of H acting on K / N, and integrating over
    that quotient agrees with the iterated H then K / N sum.
    """
    sd = entry.sd
    if sd is None or entry.normal_in_k is None:
        return None
    rng = _rng(seed, "semidirect_structure", entry.name)
    worst = 0.0

    k_full = make_subgroup(sd.k, range(sd.k.order))
    induced = induced_semidirect(sd, entry.normal_in_k)
    for h in range(sd.h.order):
        d_k = delta_factor(sd, k_full, h)
        d_n = delta_factor(sd, entry.normal_in_k, h)
        d_q = induced.delta[h]
        worst = max(worst, abs(d_k - d_n * d_q))
        worst = max(worst, abs(d_k - 1.0))

    if entry.quot.table.mul != induced.product.mul:
        count = sum(
            1
            for ra, rb in zip(entry.quot.table.mul, induced.product.mul)
            for a, b in zip(ra, rb)
            if a != b
        )
        worst = max(worst, float(count))

    qk = quotient(sd.k, entry.normal_in_k)
    for _ in range(trials):
        phi = random_function(entry.quot.table, rng)
        direct = sum(phi.values, 0j)
        iterated = 0j
        for h in range(sd.h.order):
            for j in range(qk.order):
                x = sd.pair_index(h, qk.reps[j])
                iterated += sd.delta[h] * phi.values[entry.quot.proj[x]]
        scale = max(lp_norm(phi, 1), _TINY)
        worst = max(worst, abs(direct - iterated) / scale)
    return _row("semidirect_structure", entry.name, worst, tol)


def _wh_char_indices(char: Character, m: int, r: int) -> tuple[int, int]:
    """Read off (y, n) for a character of the Z_m x Z_r fiber, exactly."""
    phases = char.phases
    n = int(phases[1] * r) if r > 1 else 0
    y = int(phases[r] * m) if m > 1 else 0
    return y, n


def _fast_rows_for_sd(
    sd: SemidirectGroup,
    entry_name: str,
    quot: QuotientGroup,
    normal: Subgroup,
    kind: str,
    seed: int,
    trials: int,
    tol: float | None,
) -> dict:
    rng = _rng(seed, "fast_kernels", entry_name)
    worst = 0.0
    m = sd.h.order
    r = sd.k.order // m if m and sd.k.order % m == 0 else 0
    for char in enumerate_characters(normal):
        for _ in range(trials):
            f = random_function(sd.product, rng)
            psi = _random_covariant(quot, char, rng)
            generic = module_action(f, psi)
            if kind == "full_k":
                fast = conv_fast_full_k(sd, f, psi)
                worst = max(worst, section_residual(fast, generic))
                y, n = _wh_char_indices(char, m, r)
                wh_fast = conv_fast_wh_full(sd, f, psi, y, n)
                worst = max(worst, section_residual(wh_fast, generic))
            elif kind == "full_k_generic":
                fast = conv_fast_full_k(sd, f, psi)
                worst = max(worst, section_residual(fast, generic))
            else:
                n = int(char.phases[1] * r) if r > 1 else 0
                fast = conv_fast_wh_center(sd, f, psi, n)
                worst = max(worst, section_residual(fast, generic))
    return _row("fast_kernels", entry_name, worst, tol)


def check_fast_kernels(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict | None:
    """Closed-form kernels agree with the generic action on the corpus entry."""
    sd = entry.sd
    if sd is None or entry.normal_in_k is None:
        return None
    full_k = entry.normal_in_k.order == sd.k.order
    center_like = sd.k.order % sd.h.order == 0 and entry.normal_in_k.members == tuple(
        range(sd.k.order // sd.h.order)
    )
    if full_k:
        try:
            _wh_parameters(sd)
            kind = "full_k"
        except Exception:
            kind = "full_k_generic"
    elif center_like:
        kind = "center"
    else:
        return None
    return _fast_rows_for_sd(
        sd, entry.name, entry.quot, entry.normal, kind, seed, trials, tol
    )


def fast_grid_rows(seed: int, trials: int, tol: float | None = None) -> list[dict]:
    """Fast-kernel agreement across the standard shear-group size grid."""
    rows = []
    for m, r in FAST_GRID:
        sd = weyl_heisenberg_finite(m, r)
        center_in_k = make_subgroup(sd.k, range(r))
        center = lift_subgroup(sd, center_in_k)
        quot_c = quotient(sd.product, center)
        rows.append(
            _fast_rows_for_sd(
                sd, f"WH({m},{r})/center", quot_c, center, "center", seed, trials, tol
            )
        )
        k_in_k = make_subgroup(sd.k, range(sd.k.order))
        lifted_k = lift_subgroup(sd, k_in_k)
        quot_k = quotient(sd.product, lifted_k)
        rows.append(
            _fast_rows_for_sd(
                sd, f"WH({m},{r})/K", quot_k, lifted_k, "full_k", seed, trials, tol
            )
        )
    return rows


def check_pullback_shift(entry: CorpusEntry, seed: int, trials: int, tol: float | None = None) -> dict | None:
    """On step-1 shear groups, composing a fiber character with the action of x
    shifts its first index by x times the second index."""
    del seed, trials
    sd = entry.sd
    if sd is None:
        return None
    m = sd.h.order
    if sd.k.order != m * m:
        return None
    try:
        _, r, step = _wh_parameters(sd)
    except Exception:
        return None
    if r != m or step != 1:
        return None

    k_full = make_subgroup(sd.k, range(m * m))
    mismatches = 0
    for z in range(m):
        for nu in range(m):
            phases = [
                Fraction(z * yy + nu * s, m) % 1 for yy in range(m) for s in range(m)
            ]
            char = make_character(k_full, phases)
            for x in range(m):
                moved = pullback(char, sd.action[x])
                want = [
                    Fraction(((z + nu * x) % m) * yy + nu * s, m) % 1
                    for yy in range(m)
                    for s in range(m)
                ]
                if list(moved.phases) != want:
                    mismatches += 1
    return _row("pullback_shift", entry.name, float(mismatches), tol)


CHECKS = (
    check_weil,
    check_characters,
    check_txi_covariance,
    check_txi_averaging,
    check_norm_identity,
    check_txi_homomorphism,
    check_norm_bound,
    check_module_axioms,
    check_trivial_identification,
    check_full_agreement,
    check_covariance_shape,
    check_semidirect_structure,
    check_fast_kernels,
    check_pullback_shift,
)


def run_verification(
    entries: list[CorpusEntry] | None = None,
    seed: int = 42,
    trials: int = 50,
    tol: float | None = None,
) -> dict:
    """Run every check over the corpus and aggregate a pass/fail report.

    Checks that do not apply to an entry (semidirect-only checks on a plain
    group) are skipped; the shear-group size grid is always exercised.
    """
    if entries is None:
        entries = builtin_corpus()
    rows: list[dict] = []
    for entry in entries:
        for check in CHECKS:
            row = check(entry, seed, trials, tol)
            if row is not None:
                rows.append(row)
    rows.extend(fast_grid_rows(seed, trials, tol))

    worst: dict[str, float] = {}
    for row in rows:
        worst[row["check"]] = max(worst.get(row["check"], 0.0), row["residual"])
    return {
        "seed": seed,
        "trials": trials,
        "corpus": [e.name for e in entries],
        "checks": rows,
        "worst_residuals": worst,
        "passed": all(row["passed"] for row in rows),
    }
