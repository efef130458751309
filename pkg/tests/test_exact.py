"""Tests for the exact arithmetic substrate."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsubgroups.exact import (
    CyclotomicNumber,
    IntMatrix,
    cyclotomic_polynomial,
    euler_phi,
    hermite_normal_form,
    kernel_mod,
    root_of_unity_power,
    smith_normal_form,
    solve_linear_mod,
)

from oracles import (
    brute_kernel,
    cyclotomic_by_division,
    span_elements,
)


class TestCyclotomicPolynomial:
    def test_base_case(self):
        assert cyclotomic_polynomial(1) == (-1, 1)  # q - 1

    def test_degree_three_matches_division_oracle(self):
        assert list(cyclotomic_polynomial(3)) == cyclotomic_by_division(3)
        assert cyclotomic_polynomial(3) == (1, 1, 1)

    def test_prime_eleven_matches_division_oracle(self):
        assert list(cyclotomic_polynomial(11)) == cyclotomic_by_division(11)
        assert cyclotomic_polynomial(11) == (1,) * 11

    def test_composite_levels_match_division_oracle(self):
        for ell in (2, 4, 6, 9, 12, 15, 21, 105):
            assert list(cyclotomic_polynomial(ell)) == cyclotomic_by_division(ell)

    def test_degree_is_totient(self):
        for ell in range(1, 40):
            assert len(cyclotomic_polynomial(ell)) - 1 == euler_phi(ell)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            cyclotomic_polynomial(0)


class TestRootOfUnity:
    def test_identity_power(self):
        assert root_of_unity_power(3, 0) == CyclotomicNumber.one(3)

    def test_reduction_at_level_three(self):
        # q^2 mod (q^2 + q + 1) = -1 - q
        assert root_of_unity_power(3, 2).coeffs == (Fraction(-1), Fraction(-1))

    def test_full_period(self):
        assert root_of_unity_power(11, 11) == CyclotomicNumber.one(11)

    def test_rejects_even_or_small_levels(self):
        for ell in (-3, 0, 1, 2, 4):
            with pytest.raises(ValueError):
                root_of_unity_power(ell, 1)

    def test_product_law(self):
        rng = random.Random(7)
        for ell in (3, 5, 9, 11, 15):
            for _ in range(40):
                a, b = rng.randrange(-30, 30), rng.randrange(-30, 30)
                lhs = root_of_unity_power(ell, a) * root_of_unity_power(ell, b)
                assert lhs == root_of_unity_power(ell, a + b)

    def test_minimal_polynomial_vanishes(self):
        for ell in (3, 5, 9, 11, 15):
            eps = root_of_unity_power(ell, 1)
            acc = CyclotomicNumber.zero(ell)
            power = CyclotomicNumber.one(ell)
            for c in cyclotomic_polynomial(ell):
                acc = acc + power * c
                power = power * eps
            assert acc.is_zero()

    def test_inverse(self):
        rng = random.Random(13)
        for ell in (3, 9, 11):
            phi = euler_phi(ell)
            for _ in range(15):
                x = CyclotomicNumber(
                    ell, [Fraction(rng.randrange(-4, 5)) for _ in range(phi)]
                )
                if x.is_zero():
                    continue
                assert x * x.inverse() == CyclotomicNumber.one(ell)

    def test_division_and_power(self):
        eps = root_of_unity_power(11, 3)
        assert eps**-2 == root_of_unity_power(11, -6)
        assert (eps / eps) == CyclotomicNumber.one(11)


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


def _is_unimodular(m):
    return abs(m.det()) == 1


class TestSmithNormalForm:
    def test_identity(self):
        u, s, v = smith_normal_form(IntMatrix.identity(2))
        assert s == IntMatrix.identity(2)

    def test_two_by_two_elementary_divisors(self):
        # hand reduction: gcd 2, determinant -8, so divisors 2 and 4
        u, s, v = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
        assert [s[0, 0], s[1, 1]] == [2, 4]
        assert u @ IntMatrix([[2, 4], [6, 8]]) @ v == s

    def test_wide_matrix_unit_divisors(self):
        # gcd of entries 1 and gcd of 2x2 minors 1, so diag(1, 1)
        m = IntMatrix([[5, 8, 10], [2, 3, 2]])
        u, s, v = smith_normal_form(m)
        assert s.to_lists() == [[1, 0, 0], [0, 1, 0]]
        assert u @ m @ v == s

    @settings(max_examples=120, deadline=None)
    @given(small_matrices)
    def test_invariants_on_random_matrices(self, rows):
        m = IntMatrix(rows)
        u, s, v = smith_normal_form(m)
        assert u @ m @ v == s
        assert _is_unimodular(u) and _is_unimodular(v)
        diag = [s[i, i] for i in range(min(s.nrows, s.ncols))]
        for i in range(s.nrows):
            for j in range(s.ncols):
                if i != j:
                    assert s[i, j] == 0
        assert all(x >= 0 for x in diag)
        for a, b in zip(diag, diag[1:]):
            if a:
                assert b % a == 0
            else:
                assert b == 0

    def test_square_preserves_determinant_magnitude(self):
        rng = random.Random(5)
        for _ in range(60):
            n = rng.randrange(1, 4)
            m = IntMatrix(
                [[rng.randrange(-6, 7) for _ in range(n)] for _ in range(n)]
            )
            _, s, _ = smith_normal_form(m)
            prod = 1
            for i in range(n):
                prod *= s[i, i]
            assert prod == abs(m.det())


class TestHermiteNormalForm:
    @settings(max_examples=100, deadline=None)
    @given(small_matrices)
    def test_canonical_for_row_lattice(self, rows):
        m = IntMatrix(rows)
        h = hermite_normal_form(m)
        # permuting rows or adding one row to another keeps the form
        permuted = IntMatrix(list(reversed(m.to_lists())))
        assert hermite_normal_form(permuted) == h
        if m.nrows >= 2:
            mixed = m.to_lists()
            mixed[0] = [a + b for a, b in zip(mixed[0], mixed[1])]
            assert hermite_normal_form(IntMatrix(mixed)) == h

    def test_echelon_shape(self):
        h = hermite_normal_form(IntMatrix([[4, 6], [2, 2]]))
        assert h.to_lists() == [[2, 0], [0, 2]]


class TestKernelMod:
    def test_zero_matrix_full_kernel(self):
        gens = kernel_mod(IntMatrix([[0, 0, 0]]), 11)
        sub = span_elements([g for g, _ in gens], 11, 3)
        assert len(sub) == 1331

    def test_worked_kernel_rank_one(self):
        gens = kernel_mod(IntMatrix([[5, 8, 10], [2, 3, 2]]), 11)
        assert [order for _, order in gens] == [11]
        sub = span_elements([g for g, _ in gens], 11, 3)
        assert sub == span_elements([(3, 1, 1)], 11, 3)

    def test_worked_kernel_rank_two(self):
        gens = kernel_mod(IntMatrix([[2, 3, 2]]), 11)
        sub = span_elements([g for g, _ in gens], 11, 3)
        assert len(sub) == 121
        assert (1, 0, 10) in sub and (0, 1, 4) in sub

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValueError):
            kernel_mod(IntMatrix([[1]]), 0)

    def test_matches_brute_force_including_composite(self):
        rng = random.Random(23)
        for ell in (3, 5, 9, 11):
            for _ in range(25):
                n = rng.randrange(1, 4)
                rows = [
                    [rng.randrange(ell) for _ in range(n)]
                    for _ in range(rng.randrange(0, 4))
                ]
                m = IntMatrix(rows, ncols=n)
                gens = kernel_mod(m, ell)
                got = span_elements([g for g, _ in gens], ell, n)
                assert got == brute_kernel(rows, ell, n)
                for g, order in gens:
                    assert all(
                        sum(a * b for a, b in zip(row, g)) % ell == 0
                        for row in rows
                    )
                    assert order > 1
                    assert all((order * x) % ell == 0 for x in g)


class TestSolveLinearMod:
    def test_random_systems_agree_with_enumeration(self):
        rng = random.Random(31)
        for _ in range(60):
            ell = rng.choice([3, 5, 9])
            p, k = rng.randrange(1, 3), rng.randrange(1, 4)
            rows = [[rng.randrange(ell) for _ in range(k)] for _ in range(p)]
            b = [rng.randrange(ell) for _ in range(p)]
            solved = solve_linear_mod(IntMatrix(rows), b, ell)
            import itertools

            expected = {
                y
                for y in itertools.product(range(ell), repeat=k)
                if all(
                    sum(r * x for r, x in zip(row, y)) % ell == bi % ell
                    for row, bi in zip(rows, b)
                )
            }
            if solved is None:
                assert not expected
            else:
                y0, kernel = solved
                assert y0 in expected
                span = span_elements([g for g, _ in kernel], ell, k)
                got = {
                    tuple((a + s) % ell for a, s in zip(y0, shift))
                    for shift in span
                }
                assert got == expected


class TestLargeEntries:
    def test_normal_forms_with_huge_entries(self):
        rng = random.Random(97)
        for _ in range(10):
            m = IntMatrix(
                [
                    [rng.randrange(-10**12, 10**12) for _ in range(3)]
                    for _ in range(3)
                ]
            )
            u, s, v = smith_normal_form(m)
            assert u @ m @ v == s
            assert abs(u.det()) == 1 and abs(v.det()) == 1
            diag = [s[i, i] for i in range(3)]
            for a, b in zip(diag, diag[1:]):
                if a:
                    assert b % a == 0
            h = hermite_normal_form(m)
            assert hermite_normal_form(h) == h

    def test_inverse_at_larger_composite_levels(self):
        rng = random.Random(99)
        for ell in (15, 21):
            phi = euler_phi(ell)
            for _ in range(6):
                x = CyclotomicNumber(
                    ell, [Fraction(rng.randrange(-3, 4)) for _ in range(phi)]
                )
                if x.is_zero():
                    continue
                assert x * x.inverse() == CyclotomicNumber.one(ell)
