import math
import random

import pytest

from covmod import (
    DomainMismatchError,
    ExponentError,
    IdentificationError,
    average_over_subgroup,
    cov_norm,
    delta_function,
    enumerate_characters,
    from_section,
    is_covariant,
    lp_norm,
    GroupFunction,
    project_trivial,
    random_function,
    t_xi,
    trivial_character,
)


@pytest.fixture(scope="module")
def sign_char(z4_evens):
    chars = enumerate_characters(z4_evens)
    assert chars[1].value(2) == -1 + 0j
    return chars[1]


def test_from_section_full_oracle(z4_quot, sign_char):
    psi = from_section((1 + 0j, 2j), sign_char, z4_quot)
    assert psi.full().values == (1 + 0j, 2j, -1 + 0j, -2j)
    for x in range(4):
        assert psi.value_at(x) == psi.full().values[x]


def test_txi_delta_oracles(z4, z4_quot, z4_evens, sign_char):
    f = delta_function(z4, 0)
    triv = trivial_character(z4_evens)
    assert t_xi(f, triv, quot=z4_quot).full().values == (1 + 0j, 0j, 1 + 0j, 0j)
    assert t_xi(f, sign_char, quot=z4_quot).full().values == (1 + 0j, 0j, -1 + 0j, 0j)


def test_txi_output_is_covariant(s3, a3):
    rng = random.Random("cov")
    from covmod import quotient

    q = quotient(s3, a3)
    for char in enumerate_characters(a3):
        for _ in range(10):
            psi = t_xi(random_function(s3, rng), char, quot=q)
            assert is_covariant(psi.full(), char, tol=1e-12)


def test_txi_averaging_scale(z4_quot, sign_char):
    psi = from_section((0.5 - 1j, 3 + 0.25j), sign_char, z4_quot)
    back = t_xi(psi.full(), sign_char, quot=z4_quot)
    assert back.section == (2 * (0.5 - 1j), 2 * (3 + 0.25j))


def test_cov_norm_oracle(z4_quot, sign_char):
    psi = from_section((1 + 0j, 2j), sign_char, z4_quot)
    assert cov_norm(psi, 1) == 3.0
    assert cov_norm(psi, 2) == 2.2360679774997896
    assert lp_norm(psi.full(), 2) == math.sqrt(10.0)
    rel = abs(cov_norm(psi, 2) - lp_norm(psi.full(), 2) / math.sqrt(2.0))
    assert rel <= 1e-12 * cov_norm(psi, 2)


def test_cov_norm_rejects_small_exponent(z4_quot, sign_char):
    psi = from_section((1 + 0j, 0j), sign_char, z4_quot)
    with pytest.raises(ExponentError):
        cov_norm(psi, 0.9)


def test_is_covariant_detects_perturbation(z4, z4_quot, sign_char):
    psi = from_section((1 + 0j, 2j), sign_char, z4_quot)
    good = psi.full()
    assert is_covariant(good, sign_char)
    values = list(good.values)
    values[2] += 1e-6
    assert not is_covariant(GroupFunction(z4, tuple(values)), sign_char)


def test_project_trivial_requires_trivial(z4_quot, z4_evens, sign_char):
    triv = trivial_character(z4_evens)
    psi = from_section((1 + 0j, 2j), triv, z4_quot)
    on_quot = project_trivial(psi)
    assert on_quot.group is z4_quot.table
    assert on_quot.values == (1 + 0j, 2j)
    with pytest.raises(IdentificationError):
        project_trivial(from_section((1 + 0j, 2j), sign_char, z4_quot))


def test_average_over_subgroup_matches_trivial_txi(z4, z4_quot, z4_evens):
    f = random_function(z4, random.Random("avg"))
    a = average_over_subgroup(f, z4_quot)
    b = t_xi(f, trivial_character(z4_evens), quot=z4_quot)
    assert a.section == b.section


def test_covariant_arithmetic_guards(z4_quot, z4_evens, sign_char):
    triv = trivial_character(z4_evens)
    a = from_section((1 + 0j, 0j), sign_char, z4_quot)
    b = from_section((0j, 1 + 0j), triv, z4_quot)
    with pytest.raises(DomainMismatchError):
        _ = a + b
    c = a + from_section((1 + 0j, 1 + 0j), sign_char, z4_quot)
    assert c.section == (2 + 0j, 1 + 0j)
    assert (2.0 * a).section == (2 + 0j, 0j)


def test_section_length_guard(z4_quot, sign_char):
    with pytest.raises(DomainMismatchError):
        from_section((1 + 0j,), sign_char, z4_quot)
