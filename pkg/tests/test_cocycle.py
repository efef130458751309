"""Tests for exponent-level deformation data and the dual twist."""

import random
from fractions import Fraction

import pytest

from qsubgroups.cocycle import (
    Bidegree,
    TableCapExceeded,
    chi_exponent,
    deformation_exponent,
    sigma_inverse_exponent,
    twist_J,
    twist_J_group_algebra,
)
from qsubgroups.exact import CyclotomicNumber
from qsubgroups.lie import Basis, LatticeElement, cartan_matrix
from qsubgroups.twist import (
    c3_parameter_matrix,
    enumerate_valid_twists,
    require_twist,
    zero_twist,
)

C3 = cartan_matrix("C", 3)


def worked_twist():
    return require_twist(C3, c3_parameter_matrix(1, 2, 0))


def b2_twist():
    # type B rank 2 admits twists with nonzero cocycle matrix mod 3
    tw = next(
        t for t in enumerate_valid_twists(cartan_matrix("B", 2), bound=2)
        if not t.is_zero()
    )
    return tw


def pairing_oracle(cd, alpha_coords_1, alpha_coords_2):
    """(lam, mu) for ALPHA-coordinate vectors, expanded entrywise through
    (alpha_i, alpha_j) = d_i a_ij."""
    total = Fraction(0)
    n = cd.rank
    for i in range(n):
        for j in range(n):
            total += (
                Fraction(alpha_coords_1[i])
                * Fraction(alpha_coords_2[j])
                * cd.d[i]
                * cd.A[i, j]
            )
    return total


def random_weight(rng, rank):
    return LatticeElement.make(
        Basis.OMEGA, [rng.randrange(-5, 6) for _ in range(rank)]
    )


def random_bidegree(rng, rank):
    return Bidegree(random_weight(rng, rank), random_weight(rng, rank))


class TestChiExponent:
    def test_zero_twist(self):
        tw = zero_twist(C3)
        rng = random.Random(1)
        for _ in range(10):
            assert chi_exponent(tw, random_weight(rng, 3), random_weight(rng, 3)) == 0

    def test_worked_value_against_expansion(self):
        tw = worked_twist()
        # phi(alpha_1) = 4a1 + 8a2 + 10a3; contract against alpha_2 by hand
        expected = -pairing_oracle(C3, (4, 8, 10), (0, 1, 0)) / 2
        got = chi_exponent(tw, C3.simple_root(1), C3.simple_root(2))
        assert got == expected == -2

    def test_diagonal_vanishes(self):
        rng = random.Random(2)
        tw = worked_twist()
        for _ in range(25):
            lam = random_weight(rng, 3)
            assert chi_exponent(tw, lam, lam) == 0

    def test_bicharacter_additivity_and_antisymmetry(self):
        rng = random.Random(3)
        tw = worked_twist()
        for _ in range(50):
            lam, lam2, mu = (random_weight(rng, 3) for _ in range(3))
            assert chi_exponent(tw, lam + lam2, mu) == chi_exponent(
                tw, lam, mu
            ) + chi_exponent(tw, lam2, mu)
            assert chi_exponent(tw, lam, mu) + chi_exponent(tw, mu, lam) == 0

    def test_two_cocycle_identity(self):
        rng = random.Random(4)
        tw = worked_twist()
        for _ in range(50):
            l1, l2, l3 = (random_weight(rng, 3) for _ in range(3))
            lhs = chi_exponent(tw, l2, l3) + chi_exponent(tw, l1, l2 + l3)
            rhs = chi_exponent(tw, l1, l2) + chi_exponent(tw, l1 + l2, l3)
            assert lhs == rhs


class TestSigmaAndDeformation:
    def test_zero_twist(self):
        tw = zero_twist(C3)
        rng = random.Random(5)
        for _ in range(10):
            bd1, bd2 = random_bidegree(rng, 3), random_bidegree(rng, 3)
            assert sigma_inverse_exponent(tw, bd1, bd2) == 0
            assert deformation_exponent(tw, bd1, bd2) == 0

    def test_sigma_inverse_unfolds_to_chi(self):
        tw = worked_twist()
        rng = random.Random(6)
        for _ in range(25):
            lam = random_weight(rng, 3)
            bd1 = Bidegree(lam, lam)
            bd2 = random_bidegree(rng, 3)
            assert sigma_inverse_exponent(tw, bd1, bd2) == chi_exponent(
                tw, lam, bd2.lam
            )

    def test_sigma_inverse_against_direct_expansion(self):
        tw = worked_twist()
        rng = random.Random(7)
        for _ in range(25):
            bd1, bd2 = random_bidegree(rng, 3), random_bidegree(rng, 3)
            # direct expansion of -(phi(mu1), lam2)/2 via the pairing oracle
            expected = -pairing_oracle(
                C3, _phi_alpha(tw, bd1.mu), _to_alpha(tw, bd2.lam)
            ) / 2
            assert sigma_inverse_exponent(tw, bd1, bd2) == expected

    def test_diagonal_bidegrees_vanish(self):
        tw = worked_twist()
        rng = random.Random(8)
        for _ in range(25):
            bd = random_bidegree(rng, 3)
            assert deformation_exponent(tw, bd, bd) == chi_exponent(
                tw, bd.lam, bd.lam
            ) - chi_exponent(tw, bd.mu, bd.mu)

    def test_deformation_is_chi_difference(self):
        tw = worked_twist()
        rng = random.Random(9)
        for _ in range(40):
            bd1, bd2 = random_bidegree(rng, 3), random_bidegree(rng, 3)
            direct = (
                pairing_oracle(C3, _phi_alpha(tw, bd1.mu), _to_alpha(tw, bd2.mu))
                - pairing_oracle(C3, _phi_alpha(tw, bd1.lam), _to_alpha(tw, bd2.lam))
            ) / 2
            via_chi = chi_exponent(tw, bd1.lam, bd2.lam) - chi_exponent(
                tw, bd1.mu, bd2.mu
            )
            assert deformation_exponent(tw, bd1, bd2) == direct == via_chi

    def test_rejects_non_lattice_bidegree(self):
        with pytest.raises(ValueError):
            Bidegree(
                LatticeElement.make(Basis.OMEGA, [Fraction(1, 2), 0, 0]),
                LatticeElement.make(Basis.OMEGA, [0, 0, 0]),
            )


def _to_alpha(tw, lam):
    from qsubgroups.lie import omega_to_alpha

    return tuple(omega_to_alpha(lam, tw.cd).coords)


def _phi_alpha(tw, lam):
    from qsubgroups.lie import omega_to_alpha
    from qsubgroups.twist import apply_phi

    return tuple(omega_to_alpha(apply_phi(tw, lam), tw.cd).coords)


class TestTwistJ:
    def test_zero_twist_gives_zero_cocycle(self):
        cocycle = twist_J(zero_twist(C3), 11)
        rng = random.Random(10)
        for _ in range(20):
            z1 = [rng.randrange(11) for _ in range(3)]
            z2 = [rng.randrange(11) for _ in range(3)]
            assert cocycle.value(z1, z2) == 0

    def test_worked_basis_value(self):
        tw = worked_twist()
        cocycle = twist_J(tw, 11)
        # (phi(alpha_1), alpha_2)/2 expanded by hand, then reduced mod 11
        expected = pairing_oracle(C3, (4, 8, 10), (0, 1, 0)) / 2
        assert expected.denominator == 1
        assert cocycle.value((1, 0, 0), (0, 1, 0)) == int(expected) % 11
        assert cocycle.value((1, 0, 0), (0, 1, 0)) == 2

    def test_normalization(self):
        tw = worked_twist()
        cocycle = twist_J(tw, 11)
        rng = random.Random(11)
        for _ in range(20):
            z = [rng.randrange(11) for _ in range(3)]
            assert cocycle.value((0, 0, 0), z) == 0
            assert cocycle.value(z, (0, 0, 0)) == 0

    def test_well_defined_mod_ell(self):
        tw = worked_twist()
        cocycle = twist_J(tw, 11)
        rng = random.Random(12)
        for _ in range(30):
            z1 = [rng.randrange(11) for _ in range(3)]
            z2 = [rng.randrange(11) for _ in range(3)]
            v = [rng.randrange(-3, 4) for _ in range(3)]
            shifted = [a + 11 * b for a, b in zip(z1, v)]
            assert cocycle.value(shifted, z2) == cocycle.value(z1, z2)

    def test_dual_cocycle_identity(self):
        tw = worked_twist()
        cocycle = twist_J(tw, 11)
        rng = random.Random(13)
        for _ in range(40):
            z1, z2, z3 = (
                tuple(rng.randrange(11) for _ in range(3)) for _ in range(3)
            )
            z12 = tuple((a + b) % 11 for a, b in zip(z1, z2))
            z23 = tuple((a + b) % 11 for a, b in zip(z2, z3))
            lhs = (cocycle.value(z1, z2) + cocycle.value(z12, z3)) % 11
            rhs = (cocycle.value(z2, z3) + cocycle.value(z1, z23)) % 11
            assert lhs == rhs

    def test_level_guards(self):
        tw = worked_twist()
        for ell in (1, 2, 4):
            with pytest.raises(ValueError):
                twist_J(tw, ell)
        g2 = zero_twist(cartan_matrix("G", 2))
        with pytest.raises(ValueError):
            twist_J(g2, 9)
        twist_J(g2, 5)  # coprime to 3 is fine


class TestGroupAlgebraTwist:
    def test_zero_twist_is_identity_element(self):
        ga = twist_J_group_algebra(zero_twist(cartan_matrix("A", 2)), 3)
        assert ga.element.is_identity()
        assert ga.inverse.is_identity()

    def test_character_values_recovered(self):
        # the tabulated element must evaluate to eps^J(z1,z2) on characters
        tw = b2_twist()
        ell = 3
        cocycle = twist_J(tw, ell)
        ga = twist_J_group_algebra(tw, ell)
        import itertools

        vectors = list(itertools.product(range(ell), repeat=2))
        for z1 in vectors:
            for z2 in vectors:
                total = CyclotomicNumber.zero(ell)
                for g in vectors:
                    for h in vectors:
                        coeff = ga.element.coefficient(g, h)
                        if coeff.is_zero():
                            continue
                        expo = (
                            sum(a * b for a, b in zip(z1, g))
                            + sum(a * b for a, b in zip(z2, h))
                        ) % ell
                        from qsubgroups.exact import root_of_unity_power

                        total = total + coeff * root_of_unity_power(ell, expo)
                assert total == root_of_unity_power(ell, cocycle.value(z1, z2))

    def test_convolution_inverse_level_three(self):
        tw = b2_twist()
        ga = twist_J_group_algebra(tw, 3)
        assert not ga.element.is_identity()  # the check is not vacuous
        assert ga.element.convolve(ga.inverse).is_identity()
        assert ga.inverse.convolve(ga.element).is_identity()

    def test_counit_normalizations(self):
        tw = b2_twist()
        for ell in (3, 5):
            ga = twist_J_group_algebra(tw, ell)
            assert ga.element.counit_is_one("left")
            assert ga.element.counit_is_one("right")

    def test_table_cap(self):
        tw = worked_twist()
        with pytest.raises(TableCapExceeded):
            twist_J_group_algebra(tw, 11)  # 11^6 entries is far past the cap


class TestTwistJBilinearRule:
    def test_matches_exact_pairing_on_random_arguments(self):
        # the matrix rule must agree with (phi(l_z1), l_z2)/2 computed
        # through the lattice machinery, not just on basis vectors
        from qsubgroups.lie import Basis as _Basis

        rng = random.Random(89)
        for tw in (worked_twist(), b2_twist()):
            for ell in (5, 11):
                cocycle = twist_J(tw, ell)
                n = tw.rank
                for _ in range(40):
                    z1 = tuple(rng.randrange(ell) for _ in range(n))
                    z2 = tuple(rng.randrange(ell) for _ in range(n))
                    lam1 = LatticeElement.make(_Basis.ALPHA, z1)
                    lam2 = LatticeElement.make(_Basis.ALPHA, z2)
                    half = -chi_exponent(tw, lam1, lam2)
                    assert half.denominator == 1
                    assert cocycle.value(z1, z2) == int(half) % ell


class TestGroupAlgebraRankThree:
    def test_singular_pairing_matrix_path(self):
        # at odd rank the cocycle matrix is antisymmetric hence singular,
        # so Fourier fibers are non-singletons and coefficients are sums
        # of several root-of-unity terms; the inverse law must still hold
        tw = worked_twist()
        ga = twist_J_group_algebra(tw, 3)
        bil = twist_J(tw, 3).bilinear
        assert bil.det() % 3 == 0
        assert ga.element.convolve(ga.inverse).is_identity()
        assert ga.element.counit_is_one("left")
        assert ga.element.counit_is_one("right")

    def test_character_recovery_on_sample(self):
        import itertools

        from qsubgroups.exact import CyclotomicNumber, root_of_unity_power

        tw = worked_twist()
        ell = 3
        cocycle = twist_J(tw, ell)
        ga = twist_J_group_algebra(tw, ell)
        vectors = list(itertools.product(range(ell), repeat=3))
        rng = random.Random(101)
        for _ in range(6):
            z1 = vectors[rng.randrange(len(vectors))]
            z2 = vectors[rng.randrange(len(vectors))]
            total = CyclotomicNumber.zero(ell)
            for (g, h), _vec in sorted(ga.element.vectors.items()):
                coeff = ga.element.coefficient(g, h)
                if coeff.is_zero():
                    continue
                expo = (
                    sum(a * b for a, b in zip(z1, g))
                    + sum(a * b for a, b in zip(z2, h))
                ) % ell
                total = total + coeff * root_of_unity_power(ell, expo)
            assert total == root_of_unity_power(ell, cocycle.value(z1, z2))
