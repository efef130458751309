"""Tests for torus subgroups, kernels, annihilators and triples."""

import random

import pytest

from qsubgroups.exact import IntMatrix
from qsubgroups.lie import cartan_matrix
from qsubgroups.torus import (
    SigmaGenerator,
    TorusSubgroup,
    Triple,
    annihilator,
    canonical_row_form,
    enumerate_subgroups,
    n_phi_from_sigma,
    s_phi_matrix,
    sigma_order_identity,
    t_hat_I_complement,
    t_phi_I,
    validate_triple,
)
from qsubgroups.twist import c3_parameter_matrix, require_twist, zero_twist

from oracles import brute_annihilator, brute_subgroups, span_elements

C3 = cartan_matrix("C", 3)


def worked_twist():
    return require_twist(C3, c3_parameter_matrix(1, 2, 0))


def random_subgroup(rng, ell, n):
    gens = [
        tuple(rng.randrange(ell) for _ in range(n))
        for _ in range(rng.randrange(0, n + 1))
    ]
    return TorusSubgroup.from_generators(ell, n, gens), gens


class TestTorusSubgroup:
    def test_trivial_and_full(self):
        triv = TorusSubgroup.trivial(11, 3)
        full = TorusSubgroup.full(11, 3)
        assert triv.order == 1 and full.order == 11**3
        assert triv.generators == ()
        assert triv.is_subgroup_of(full)

    def test_membership_matches_enumeration(self):
        rng = random.Random(19)
        for ell in (3, 5, 9, 11):
            for _ in range(15):
                n = rng.randrange(1, 4)
                sub, gens = random_subgroup(rng, ell, n)
                elements = span_elements(gens, ell, n)
                assert sub.order == len(elements)
                for _ in range(20):
                    v = tuple(rng.randrange(ell) for _ in range(n))
                    assert sub.contains(v) == (v in elements)

    def test_canonical_form_unique_per_subgroup(self):
        rng = random.Random(37)
        for ell in (3, 9, 11):
            for _ in range(20):
                n = rng.randrange(1, 4)
                sub, gens = random_subgroup(rng, ell, n)
                elements = sorted(span_elements(gens, ell, n))
                # regenerate from random element subsets that still span
                for _ in range(5):
                    pick = [
                        elements[rng.randrange(len(elements))]
                        for _ in range(min(len(elements), n + 2))
                    ]
                    candidate = TorusSubgroup.from_generators(ell, n, pick)
                    if span_elements(pick, ell, n) == frozenset(elements):
                        assert candidate == sub
                        assert candidate.lattice == sub.lattice
                    else:
                        assert candidate != sub or candidate.order == sub.order

    def test_join_and_elements(self):
        a = TorusSubgroup.from_generators(5, 2, [(1, 0)])
        b = TorusSubgroup.from_generators(5, 2, [(0, 1)])
        assert a.join(b) == TorusSubgroup.full(5, 2)
        assert a.elements() == [(i, 0) for i in range(5)]


class TestTPhiI:
    def test_empty_is_trivial(self):
        tw = worked_twist()
        assert t_phi_I(tw, 11, (), ()).order == 1

    def test_worked_pair(self):
        tw = worked_twist()
        sub = t_phi_I(tw, 11, {2}, {1})
        assert sub.order == 121
        assert sub.contains((2, 3, 2)) and sub.contains((5, 8, 10))

    def test_worked_single(self):
        tw = worked_twist()
        sub = t_phi_I(tw, 11, {2}, ())
        assert sub.order == 11
        assert sub.contains((2, 3, 2))


class TestValidateTriple:
    def test_full_torus_always_valid(self):
        tw = worked_twist()
        triple = Triple.make(
            tw, 11, {2}, {1},
            sigma_gens=[(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        )
        assert validate_triple(tw, 11, triple).ok

    def test_worked_triple_fills_torus(self):
        tw = worked_twist()
        triple = Triple.make(
            tw, 11, {2}, {1},
            recipe=[
                SigmaGenerator.kbar(2),
                SigmaGenerator.ktilde(1),
                SigmaGenerator.tau(3),
                SigmaGenerator.tau(2),
            ],
        )
        assert validate_triple(tw, 11, triple).ok
        assert triple.sigma.order == 11**3
        assert triple.sigma == TorusSubgroup.full(11, 3)

    def test_missing_generator_reported(self):
        tw = worked_twist()
        # drop (5, 8, 10): the required generator for 1 in I- goes missing
        triple = Triple.make(
            tw, 11, {2}, {1},
            sigma_gens=[(2, 3, 2), (10, 10, 10)],
        )
        report = validate_triple(tw, 11, triple)
        assert not report.ok
        assert report.missing == (("ktilde", 1),)


class TestSPhiMatrix:
    def test_zero_twist_delta_rows(self):
        tw = zero_twist(cartan_matrix("A", 3))
        s = s_phi_matrix(tw, 7, {2}, {1})
        assert s.to_lists() == [[0, 1, 0], [1, 0, 0]]

    def test_worked_rows_and_canonical_form(self):
        tw = worked_twist()
        s = s_phi_matrix(tw, 11, {2}, {1})
        assert s.to_lists() == [[2, 3, 2], [5, 8, 10]]
        assert canonical_row_form(s, 11).to_lists() == [[1, 0, 8], [0, 1, 10]]

    def test_single_row(self):
        tw = worked_twist()
        assert s_phi_matrix(tw, 11, {2}, ()).to_lists() == [[2, 3, 2]]


class TestKernelAndAnnihilator:
    def test_worked_kernels(self):
        tw = worked_twist()
        k_a = t_hat_I_complement(tw, 11, {2}, {1})
        assert k_a.order == 11
        assert k_a.contains((3, 1, 1))
        assert k_a == TorusSubgroup.from_generators(11, 3, [(3, 1, 1)])

        k_b = t_hat_I_complement(tw, 11, {2}, ())
        assert k_b.order == 121
        assert k_b.contains((1, 0, 10)) and k_b.contains((0, 1, 4))

        k_empty = t_hat_I_complement(tw, 11, (), ())
        assert k_empty.order == 11**3

    def test_annihilator_extremes(self):
        assert annihilator(TorusSubgroup.trivial(9, 2)) == TorusSubgroup.full(9, 2)
        assert annihilator(TorusSubgroup.full(9, 2)) == TorusSubgroup.trivial(9, 2)

    def test_spanning_generators_annihilate_to_trivial(self):
        # determinant of the three generators is 6 mod 11, hence a spanning set
        gens = [(2, 3, 2), (5, 8, 10), (10, 10, 10)]
        assert IntMatrix(gens).det() % 11 == 6
        sub = TorusSubgroup.from_generators(11, 3, gens)
        assert sub.order == 11**3
        assert annihilator(sub).order == 1

    def test_double_annihilator_and_order_product(self):
        rng = random.Random(53)
        for ell in (3, 5, 9, 11):
            for _ in range(20):
                n = rng.randrange(1, 4)
                sub, _ = random_subgroup(rng, ell, n)
                ann = annihilator(sub)
                assert sub.order * ann.order == ell**n
                assert annihilator(ann) == sub

    def test_annihilator_matches_brute_force(self):
        rng = random.Random(59)
        for ell in (3, 5, 9):
            for _ in range(15):
                n = rng.randrange(1, 4)
                sub, gens = random_subgroup(rng, ell, n)
                expected = brute_annihilator(
                    span_elements(gens, ell, n), ell, n
                )
                got = set(annihilator(sub).elements())
                assert got == expected

    def test_prime_level_rank_formula(self):
        rng = random.Random(61)
        tw = worked_twist()
        for iplus, iminus in (((), ()), ((2,), ()), ((2,), (1,)), ((1, 2, 3), ())):
            s = s_phi_matrix(tw, 11, iplus, iminus)
            kernel = t_hat_I_complement(tw, 11, iplus, iminus)
            rank = len(canonical_row_form(s, 11).data)
            assert kernel.order == 11 ** (3 - rank)


class TestNPhiAndOrderIdentity:
    def test_worked_triple_a(self):
        tw = worked_twist()
        triple = Triple.make(
            tw, 11, {2}, {1},
            sigma_gens=[(2, 3, 2), (5, 8, 10), (10, 10, 10)],
        )
        nsub = n_phi_from_sigma(tw, 11, triple)
        assert nsub.order == 1
        assert sigma_order_identity(tw, 11, triple) == (11**3, 1, True)

    def test_worked_triple_b(self):
        tw = worked_twist()
        triple = Triple.make(
            tw, 11, {2}, (),
            sigma_gens=[(5, 8, 10), (2, 3, 2)],
        )
        nsub = n_phi_from_sigma(tw, 11, triple)
        assert nsub.order == 11
        assert nsub.contains((3, 1, 1))
        assert nsub == TorusSubgroup.from_generators(11, 3, [(3, 1, 1)])
        assert sigma_order_identity(tw, 11, triple) == (121, 11, True)

    def test_full_sigma_gives_trivial_n(self):
        tw = worked_twist()
        triple = Triple.make(
            tw, 11, {2}, {1},
            sigma_gens=IntMatrix.identity(3).to_lists(),
        )
        assert n_phi_from_sigma(tw, 11, triple).order == 1

    def test_invalid_triple_rejected(self):
        tw = worked_twist()
        triple = Triple.make(tw, 11, {2}, {1}, sigma_gens=[(2, 3, 2)])
        with pytest.raises(ValueError):
            n_phi_from_sigma(tw, 11, triple)

    def test_order_identity_on_random_valid_triples(self):
        rng = random.Random(67)
        tw = worked_twist()
        for _ in range(40):
            iplus = frozenset(i for i in (1, 2, 3) if rng.random() < 0.4)
            iminus = frozenset(i for i in (1, 2, 3) if rng.random() < 0.4)
            required = t_phi_I(tw, 11, iplus, iminus)
            extras = [
                tuple(rng.randrange(11) for _ in range(3))
                for _ in range(rng.randrange(0, 3))
            ]
            triple = Triple.make(
                tw, 11, iplus, iminus,
                sigma_gens=list(required.generators) + extras,
            )
            sigma_order, n_order, ok = sigma_order_identity(tw, 11, triple)
            assert ok and sigma_order * n_order == 11**3


class TestEnumerateSubgroups:
    def test_small_counts_match_brute_force(self):
        for ell, n in ((3, 1), (3, 2), (5, 1), (9, 1), (5, 2)):
            got = enumerate_subgroups(TorusSubgroup.full(ell, n))
            expected = brute_subgroups(ell, n)
            assert len(got) == len(expected)
            assert {frozenset(s.elements()) for s in got} == expected

    def test_respects_ambient(self):
        ambient = TorusSubgroup.from_generators(11, 3, [(3, 1, 1)])
        subs = enumerate_subgroups(ambient)
        assert [s.order for s in subs] == [1, 11]


class TestOmegaOrder:
    def test_worked_values(self):
        from qsubgroups.torus import omega_order

        tw = worked_twist()
        triple_a = Triple.make(
            tw, 11, {2}, {1},
            sigma_gens=[(2, 3, 2), (5, 8, 10), (10, 10, 10)],
        )
        # |Sigma| = 11^3 over |T_I| = 121
        assert omega_order(tw, 11, triple_a) == 11
        triple_b = Triple.make(tw, 11, {2}, (), sigma_gens=[(5, 8, 10), (2, 3, 2)])
        # |Sigma| = 121 over |T_I| = 11
        assert omega_order(tw, 11, triple_b) == 11
        minimal = Triple.make(tw, 11, {2}, (), sigma_gens=[(2, 3, 2)])
        assert omega_order(tw, 11, minimal) == 1

    def test_shared_index_containment_confirmed(self):
        tw = worked_twist()
        triple = Triple.make(
            tw, 11, {1}, {1},
            sigma_gens=IntMatrix.identity(3).to_lists(),
        )
        report = validate_triple(tw, 11, triple)
        assert report.ok  # T_{I'} inside T_I holds at odd level


class TestCharacter:
    def test_pairing_and_value(self):
        from qsubgroups.exact import root_of_unity_power
        from qsubgroups.torus import Character

        chi = Character(11, (3, 1, 1))
        assert chi.pairing((2, 3, 2)) == (6 + 3 + 2) % 11
        assert chi.value((5, 8, 10)) == root_of_unity_power(11, 15 + 8 + 10)

    def test_kernel_characters_kill_required_generators(self):
        tw = worked_twist()
        from qsubgroups.torus import Character

        kernel = t_hat_I_complement(tw, 11, {2}, {1})
        for z in kernel.elements():
            chi = Character(11, z)
            assert chi.pairing((2, 3, 2)) == 0
            assert chi.pairing((5, 8, 10)) == 0


class TestGuards:
    def test_elements_guard(self):
        from qsubgroups.torus import EnumerationGuard

        big = TorusSubgroup.full(11, 3)
        with pytest.raises(EnumerationGuard):
            big.elements(cap=100)

    def test_enumerate_subgroups_guard(self):
        from qsubgroups.torus import EnumerationGuard

        with pytest.raises(EnumerationGuard):
            enumerate_subgroups(TorusSubgroup.full(11, 3), cap=5)


class TestCanonicalRowForm:
    def test_matches_field_rref_for_prime_levels(self):
        from oracles import rref_mod_p

        rng = random.Random(83)
        for p in (3, 5, 11):
            for _ in range(30):
                n = rng.randrange(1, 4)
                rows = [
                    [rng.randrange(p) for _ in range(n)]
                    for _ in range(rng.randrange(0, 4))
                ]
                got = canonical_row_form(IntMatrix(rows, ncols=n), p)
                assert got.to_lists() == rref_mod_p(rows, p, n)
