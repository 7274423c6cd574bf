import random
from fractions import Fraction

import pytest

from covmod import (
    DiscretizationError,
    DomainMismatchError,
    NormalityError,
    ValidationError,
    conv_fast_full_k,
    conv_fast_wh_center,
    conv_fast_wh_full,
    delta_factor,
    delta_function,
    enumerate_characters,
    from_section,
    full_subgroup,
    group_center,
    heisenberg_finite,
    induced_semidirect,
    lift_character,
    lift_subgroup,
    make_character,
    make_cyclic,
    make_subgroup,
    module_action,
    quotient,
    random_function,
    section_residual,
    semidirect,
    t_xi,
    trivial_character,
    weyl_heisenberg_finite,
)

F = Fraction


@pytest.fixture(scope="module")
def flip():
    # the symmetric group on 3 points as Z_2 acting on Z_3 by inversion
    return semidirect(make_cyclic(2), make_cyclic(3), ((0, 1, 2), (0, 2, 1)))


def test_heisenberg_packing_oracle():
    sd = heisenberg_finite(2)
    assert sd.product.order == 8
    assert sd.pair_index(1, 1 * 2 + 0) == 6
    assert sd.split_index(6) == (1, 2)
    # (1,1,0) squared is (0,0,1): the shear leaves a central residue
    assert sd.product.mul[6][6] == 1


def test_heisenberg_center():
    for m in (2, 3):
        sd = heisenberg_finite(m)
        assert group_center(sd.product).members == tuple(range(m))


def test_wh_action_oracle():
    sd = weyl_heisenberg_finite(2, 4)
    # theta_1(l, t) = (l, t + 2 l)
    assert sd.action[1][1 * 4 + 0] == 1 * 4 + 2
    assert sd.action[1][0 * 4 + 3] == 0 * 4 + 3


def test_wh_square_case_is_heisenberg():
    assert weyl_heisenberg_finite(2, 2).product.mul == heisenberg_finite(2).product.mul
    assert weyl_heisenberg_finite(3, 3).product.mul == heisenberg_finite(3).product.mul


def test_wh_requires_divisibility():
    with pytest.raises(DiscretizationError):
        weyl_heisenberg_finite(2, 3)
    assert weyl_heisenberg_finite(3, 6).product.order == 54


def test_central_quotient_of_heis2_is_klein_four():
    sd = heisenberg_finite(2)
    center = make_subgroup(sd.product, range(2))
    q = quotient(sd.product, center)
    assert q.order == 4
    assert all(q.table.element_order(x) <= 2 for x in range(4))


def test_semidirect_rejects_non_bijective_row():
    with pytest.raises(ValidationError):
        semidirect(make_cyclic(2), make_cyclic(3), ((0, 1, 2), (0, 0, 2)))


def test_semidirect_rejects_non_multiplicative_row():
    # a bijection fixing the identity that is not an automorphism of Z_4
    with pytest.raises(ValidationError):
        semidirect(make_cyclic(2), make_cyclic(4), ((0, 1, 2, 3), (0, 1, 3, 2)))


def test_semidirect_rejects_non_composing_action():
    inv3 = (0, 2, 1)
    ident = (0, 1, 2)
    with pytest.raises(ValidationError):
        semidirect(make_cyclic(4), make_cyclic(3), (ident, inv3, inv3, inv3))


def test_flip_group_is_symmetric_3(flip, s3):
    orders = sorted(flip.product.element_order(x) for x in range(6))
    assert orders == sorted(s3.element_order(x) for x in range(6))
    assert not flip.product.is_abelian


def test_delta_factor_is_one(flip):
    sub = full_subgroup(flip.k)
    assert [delta_factor(flip, sub, h) for h in range(2)] == [1.0, 1.0]


def test_delta_factor_rejects_non_invariant():
    sd = weyl_heisenberg_finite(2, 4)
    # {(0,0), (1,0)} is a subgroup of K but the shear moves (1,0) to (1,2)
    sub = make_subgroup(sd.k, (0, 4))
    with pytest.raises(NormalityError):
        delta_factor(sd, sub, 1)


def test_lift_subgroup_and_character(flip):
    sub = full_subgroup(flip.k)
    lifted = lift_subgroup(flip, sub)
    assert lifted.members == (0, 1, 2)
    char = enumerate_characters(sub)[1]
    up = lift_character(flip, char)
    assert up.domain.members == (0, 1, 2)
    assert up.phases == char.phases


def test_induced_semidirect_matches_quotient():
    sd = heisenberg_finite(3)
    center_k = make_subgroup(sd.k, range(3))
    lifted = lift_subgroup(sd, center_k)
    q = quotient(sd.product, lifted)
    induced = induced_semidirect(sd, center_k)
    assert q.table.mul == induced.product.mul
    assert induced.delta == (1.0, 1.0, 1.0)


def test_fast_center_kernel_concrete():
    sd = weyl_heisenberg_finite(2, 4)
    center = make_subgroup(sd.product, range(4))
    q = quotient(sd.product, center)
    char = make_character(center, [F(0), F(1, 4), F(1, 2), F(3, 4)])
    rng = random.Random("fastc")
    for _ in range(10):
        f = random_function(sd.product, rng)
        psi = t_xi(random_function(sd.product, rng), char, quot=q)
        fast = conv_fast_wh_center(sd, f, psi, 1)
        slow = module_action(f, psi)
        assert section_residual(fast, slow) <= 1e-12


def test_fast_center_rejects_wrong_index():
    sd = weyl_heisenberg_finite(2, 4)
    center = make_subgroup(sd.product, range(4))
    q = quotient(sd.product, center)
    char = make_character(center, [F(0), F(1, 4), F(1, 2), F(3, 4)])
    psi = from_section((0j,) * q.order, char, q)
    f = delta_function(sd.product, 0)
    with pytest.raises(DomainMismatchError):
        conv_fast_wh_center(sd, f, psi, 3)


def test_fast_center_rejects_non_central_covariance(flip):
    sub = full_subgroup(flip.k)
    lifted = lift_subgroup(flip, sub)
    q = quotient(flip.product, lifted)
    psi = from_section((0j,) * q.order, trivial_character(lifted), q)
    f = delta_function(flip.product, 0)
    with pytest.raises(DomainMismatchError):
        conv_fast_wh_center(flip, f, psi, 0)


def test_fast_full_fiber_on_flip_group(flip):
    sub = full_subgroup(flip.k)
    lifted = lift_subgroup(flip, sub)
    q = quotient(flip.product, lifted)
    rng = random.Random("fastk")
    for char in enumerate_characters(lifted):
        for _ in range(10):
            f = random_function(flip.product, rng)
            psi = t_xi(random_function(flip.product, rng), char, quot=q)
            fast = conv_fast_full_k(flip, f, psi)
            slow = module_action(f, psi)
            assert section_residual(fast, slow) <= 1e-12


def test_fast_wh_full_fiber_kernel():
    sd = weyl_heisenberg_finite(2, 4)
    lifted = lift_subgroup(sd, full_subgroup(sd.k))
    q = quotient(sd.product, lifted)
    y, n = 1, 3
    phases = [
        (F(y * ell, 2) + F(n * t, 4)) % 1 for ell in range(2) for t in range(4)
    ]
    char = make_character(lifted, phases)
    rng = random.Random("fastw")
    for _ in range(10):
        f = random_function(sd.product, rng)
        psi = t_xi(random_function(sd.product, rng), char, quot=q)
        fast = conv_fast_wh_full(sd, f, psi, y, n)
        slow = module_action(f, psi)
        assert section_residual(fast, slow) <= 1e-12
    with pytest.raises(DomainMismatchError):
        conv_fast_wh_full(sd, delta_function(sd.product, 0), psi, y, n - 1)


def test_semidirect_labels():
    sd = semidirect(make_cyclic(2), make_cyclic(3), ((0, 1, 2), (0, 2, 1)))
    assert sd.product.label(sd.pair_index(1, 2)) is not None
