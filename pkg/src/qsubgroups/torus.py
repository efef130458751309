"""Subgroups and characters of the finite torus (Z/ell)^n.

The group of group-like elements of the twisted small quantum group is
(Z/ell)^n with basis the K_{alpha_i}; its character group is identified
with (Z/ell)^n via z -> (K_{alpha_t} -> eps^{z_t}).  Everything here is
linear algebra over Z/ell with ell possibly composite, so subgroups are
handled through integer lattices:

  subgroup generated by g_1, ..., g_k
      <->  lattice  Z g_1 + ... + Z g_k + ell Z^n.

The Hermite normal form of that lattice is the canonical form of the
subgroup; equality of subgroups is syntactic equality of the forms, and
membership is integer back-substitution.  Annihilators (characters
vanishing on a subgroup) reduce to kernel computations mod ell.

A Hopf-subalgebra triple (I+, I-, Sigma) requires Sigma to contain the
exponent vectors (1 -+ phi)(alpha_i) for i in I+-; the coefficient
matrix S built from exactly those vectors has the character kernel as
its kernel mod ell.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .exact import IntMatrix, hermite_normal_form, kernel_mod, root_of_unity_power
from .twist import TwistMap, kbar_exponent, ktilde_exponent

__all__ = [
    "TorusSubgroup",
    "Character",
    "SigmaGenerator",
    "Triple",
    "TripleReport",
    "t_phi_I",
    "validate_triple",
    "s_phi_matrix",
    "canonical_row_form",
    "t_hat_I_complement",
    "annihilator",
    "n_phi_from_sigma",
    "sigma_order_identity",
    "omega_order",
    "enumerate_subgroups",
    "EnumerationGuard",
]

ENUM_CAP_ENV = "QSUBGROUPS_ENUM_CAP"
DEFAULT_ENUM_CAP = 200_000


class EnumerationGuard(RuntimeError):
    """Raised when an enumeration would exceed the configured cap."""


def _enum_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENUM_CAP_ENV} must be an integer") from exc


class TorusSubgroup:
    """A subgroup of (Z/ell)^n in canonical (Hermite) form."""

    __slots__ = ("ell", "n", "lattice", "generators", "order")

    def __init__(self, ell: int, n: int, lattice: IntMatrix):
        if ell < 1:
            raise ValueError("level must be >= 1")
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "lattice", lattice)
        diag = 1
        for i in range(n):
            diag *= lattice[i, i]
        order, rem = divmod(ell**n, diag)
        assert rem == 0
        gens = tuple(
            row_mod
            for row in lattice.data
            if any(row_mod := tuple(x % ell for x in row))
        )
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TorusSubgroup is immutable")

    @classmethod
    def from_generators(cls, ell: int, n: int, gens) -> "TorusSubgroup":
        rows = [tuple(int(x) for x in g) for g in gens]
        if any(len(r) != n for r in rows):
            raise ValueError("generator length mismatch")
        stacked = IntMatrix(rows + IntMatrix.identity(n).scaled(ell).to_lists(),
                            ncols=n)
        return cls(ell, n, hermite_normal_form(stacked))

    @classmethod
    def trivial(cls, ell: int, n: int) -> "TorusSubgroup":
        return cls.from_generators(ell, n, [])

    @classmethod
    def full(cls, ell: int, n: int) -> "TorusSubgroup":
        return cls.from_generators(ell, n, IntMatrix.identity(n).to_lists())

    def _compat(self, other: "TorusSubgroup") -> None:
        if (self.ell, self.n) != (other.ell, other.n):
            raise ValueError("subgroups live in different tori")

    def contains(self, vec) -> bool:
        """Membership by forward substitution against the lattice basis."""
        v = [int(x) for x in vec]
        if len(v) != self.n:
            raise ValueError("vector length mismatch")
        for i in range(self.n):
            pivot = self.lattice[i, i]
            q, r = divmod(v[i], pivot)
            if r:
                return False
            if q:
                for j in range(i, self.n):
                    v[j] -= q * self.lattice[i, j]
        return True

    def is_subgroup_of(self, other: "TorusSubgroup") -> bool:
        self._compat(other)
        return all(other.contains(g) for g in self.generators)

    def join(self, other: "TorusSubgroup") -> "TorusSubgroup":
        self._compat(other)
        return TorusSubgroup.from_generators(
            self.ell, self.n, self.generators + other.generators
        )

    def extended_by(self, vec) -> "TorusSubgroup":
        return TorusSubgroup.from_generators(
            self.ell, self.n, self.generators + (tuple(vec),)
        )

    def elements(self, cap: int | None = None):
        """All elements, deterministic order; guarded by cap."""
        limit = cap if cap is not None else _enum_cap()
        if self.order > limit:
            raise EnumerationGuard(
                f"subgroup order {self.order} exceeds cap {limit}"
            )
        seen = {(0,) * self.n}
        frontier = [(0,) * self.n]
        while frontier:
            nxt = []
            for el in frontier:
                for g in self.generators:
                    cand = tuple((a + b) % self.ell for a, b in zip(el, g))
                    if cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
            frontier = nxt
        assert len(seen) == self.order
        return sorted(seen)

    def __eq__(self, other):
        if not isinstance(other, TorusSubgroup):
            return NotImplemented
        return (self.ell, self.n, self.lattice) == (other.ell, other.n, other.lattice)

    def __hash__(self):
        return hash((self.ell, self.n, self.lattice))

    def __repr__(self):
        return (
            f"TorusSubgroup(ell={self.ell}, n={self.n}, order={self.order}, "
            f"generators={list(self.generators)!r})"
        )


@dataclass(frozen=True)
class Character:
    """A character of the torus, acting on K_{alpha_t} by eps^{z_t}."""

    ell: int
    z: tuple[int, ...]

    def pairing(self, g) -> int:
        g = tuple(g)
        if len(g) != len(self.z):
            raise ValueError("length mismatch")
        return sum(a * b for a, b in zip(self.z, g)) % self.ell

    def value(self, g):
        return root_of_unity_power(self.ell, self.pairing(g))


# ---------------------------------------------------------------------------
# symbolic Sigma generators

@dataclass(frozen=True)
class SigmaGenerator:
    """A generator of Sigma given symbolically, so it can be re-evaluated
    for a different twisting map (in particular for phi = 0).

    kind is one of "kbar" ((1-phi)(alpha_i)), "ktilde" ((1+phi)(alpha_j)),
    "tau" (tau_i = phi(alpha_i)/2) or "vector" (a fixed exponent vector,
    independent of phi).
    """

    kind: str
    index: int | None = None
    vector: tuple[int, ...] | None = None

    def evaluate(self, tw: TwistMap, ell: int) -> tuple[int, ...]:
        if self.kind == "kbar":
            raw = kbar_exponent(tw, self.index)
        elif self.kind == "ktilde":
            raw = ktilde_exponent(tw, self.index)
        elif self.kind == "tau":
            raw = tw.tau_exponent(self.index)
        elif self.kind == "vector":
            raw = self.vector
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        return tuple(x % ell for x in raw)

    @classmethod
    def kbar(cls, i: int) -> "SigmaGenerator":
        return cls("kbar", index=i)

    @classmethod
    def ktilde(cls, j: int) -> "SigmaGenerator":
        return cls("ktilde", index=j)

    @classmethod
    def tau(cls, i: int) -> "SigmaGenerator":
        return cls("tau", index=i)

    @classmethod
    def fixed(cls, vec) -> "SigmaGenerator":
        return cls("vector", vector=tuple(int(x) for x in vec))


def evaluate_recipe(tw: TwistMap, ell: int, recipe) -> TorusSubgroup:
    gens = [g.evaluate(tw, ell) for g in recipe]
    return TorusSubgroup.from_generators(ell, tw.rank, gens)


@dataclass(frozen=True)
class Triple:
    """(I+, I-, Sigma): the parametrization of Hopf subalgebras.

    The optional recipe records how Sigma's generators depend on the
    twisting map; it is required by the deformation-obstruction check,
    which re-evaluates the same generators at phi = 0.
    """

    iplus: frozenset[int]
    iminus: frozenset[int]
    sigma: TorusSubgroup
    recipe: tuple[SigmaGenerator, ...] | None = None

    @classmethod
    def make(cls, tw: TwistMap, ell: int, iplus, iminus,
             sigma_gens=(), recipe=None) -> "Triple":
        iplus = frozenset(int(i) for i in iplus)
        iminus = frozenset(int(i) for i in iminus)
        _check_indices(tw, iplus | iminus)
        if recipe is not None:
            # raw extras join the recipe as fixed vectors, so the whole
            # Sigma stays re-evaluable at a different twist
            recipe = tuple(recipe) + tuple(
                SigmaGenerator.fixed(tuple(int(x) % ell for x in g))
                for g in sigma_gens
            )
            sigma = evaluate_recipe(tw, ell, recipe)
        else:
            gens = [tuple(int(x) % ell for x in g) for g in sigma_gens]
            sigma = TorusSubgroup.from_generators(ell, tw.rank, gens)
        return cls(iplus, iminus, sigma, recipe)


@dataclass(frozen=True)
class TripleReport:
    ok: bool
    missing: tuple[tuple[str, int], ...]  # e.g. ("kbar", 2) not in Sigma


def _check_indices(tw: TwistMap, indices) -> None:
    bad = set(indices) - set(range(1, tw.rank + 1))
    if bad:
        raise ValueError(f"simple indices out of range: {sorted(bad)}")


def t_phi_I(tw: TwistMap, ell: int, iplus, iminus) -> TorusSubgroup:
    """The subgroup generated by the required elements of a triple:
    (1-phi)(alpha_i) for i in I+ and (1+phi)(alpha_j) for j in I-."""
    iplus, iminus = frozenset(iplus), frozenset(iminus)
    _check_indices(tw, iplus | iminus)
    gens = [kbar_exponent(tw, i) for i in sorted(iplus)]
    gens += [ktilde_exponent(tw, j) for j in sorted(iminus)]
    return TorusSubgroup.from_generators(ell, tw.rank, gens)


def validate_triple(tw: TwistMap, ell: int, triple: Triple) -> TripleReport:
    """Check the containment chain behind a triple.

    Sigma must contain every required generator, and the inner subgroup
    on I+ cap I- must sit inside the required subgroup (automatic for
    odd ell since the sum of the two required vectors at a shared index
    is twice the basis vector, but confirmed here so the report is
    self-contained).
    """
    missing = []
    for i in sorted(triple.iplus):
        if not triple.sigma.contains(kbar_exponent(tw, i)):
            missing.append(("kbar", i))
    for j in sorted(triple.iminus):
        if not triple.sigma.contains(ktilde_exponent(tw, j)):
            missing.append(("ktilde", j))
    required = t_phi_I(tw, ell, triple.iplus, triple.iminus)
    for i in sorted(triple.iplus & triple.iminus):
        basis = tuple(int(r == i - 1) for r in range(tw.rank))
        if not required.contains(basis):
            missing.append(("kalpha", i))
    return TripleReport(ok=not missing, missing=tuple(missing))


def s_phi_matrix(tw: TwistMap, ell: int, iplus, iminus) -> IntMatrix:
    """The coefficient matrix of the character-kernel system mod ell.

    One row per i in I+ with entries (delta_ij - 2 y_ji) and one row per
    j in I- with entries (delta_jk + 2 y_kj); these are exactly the
    exponent vectors of the required Sigma generators.  Rows are ordered
    I+ ascending, then I- ascending.
    """
    iplus, iminus = frozenset(iplus), frozenset(iminus)
    _check_indices(tw, iplus | iminus)
    rows = [kbar_exponent(tw, i) for i in sorted(iplus)]
    rows += [ktilde_exponent(tw, j) for j in sorted(iminus)]
    return IntMatrix([[x % ell for x in row] for row in rows], ncols=tw.rank)


def canonical_row_form(M: IntMatrix, ell: int) -> IntMatrix:
    """Canonical row form of a matrix over Z/ell: the nonzero rows of the
    Hermite form of its row lattice together with ell Z^n."""
    stacked = IntMatrix(
        list(M.data) + IntMatrix.identity(M.ncols).scaled(ell).to_lists(),
        ncols=M.ncols,
    )
    h = hermite_normal_form(stacked)
    rows = [
        reduced
        for row in h.data
        if any(reduced := tuple(x % ell for x in row))
    ]
    return IntMatrix(rows, ncols=M.ncols)


def t_hat_I_complement(tw: TwistMap, ell: int, iplus, iminus) -> TorusSubgroup:
    """Characters that kill every required generator: the kernel of the
    coefficient matrix mod ell.  For prime ell its order is
    ell^(n - rank)."""
    s = s_phi_matrix(tw, ell, iplus, iminus)
    gens = [g for g, _ in kernel_mod(s, ell)]
    return TorusSubgroup.from_generators(ell, tw.rank, gens)


def annihilator(sub: TorusSubgroup) -> TorusSubgroup:
    """{z : <z, g> = 0 mod ell for every g in sub}."""
    mat = IntMatrix(list(sub.generators), ncols=sub.n)
    gens = [g for g, _ in kernel_mod(mat, sub.ell)]
    return TorusSubgroup.from_generators(sub.ell, sub.n, gens)


def n_phi_from_sigma(tw: TwistMap, ell: int, triple: Triple) -> TorusSubgroup:
    """The character subgroup killing Sigma.

    Because Sigma contains every required generator, the annihilator of
    Sigma automatically lands inside the kernel of the coefficient
    matrix, so no intersection is needed.
    """
    report = validate_triple(tw, ell, triple)
    if not report.ok:
        raise ValueError(f"invalid triple, missing generators: {report.missing}")
    result = annihilator(triple.sigma)
    assert result.is_subgroup_of(t_hat_I_complement(tw, ell, triple.iplus,
                                                    triple.iminus))
    return result


def sigma_order_identity(tw: TwistMap, ell: int, triple: Triple):
    """(|Sigma|, |N|, |Sigma| * |N| == ell^n)."""
    nsub = n_phi_from_sigma(tw, ell, triple)
    sigma_order = triple.sigma.order
    return sigma_order, nsub.order, sigma_order * nsub.order == ell**tw.rank


def omega_order(tw: TwistMap, ell: int, triple: Triple) -> int:
    """Order of Sigma modulo the required subgroup, |Sigma| / |T_I|;
    the quotient itself is never materialized."""
    report = validate_triple(tw, ell, triple)
    if not report.ok:
        raise ValueError(f"invalid triple, missing generators: {report.missing}")
    required = t_phi_I(tw, ell, triple.iplus, triple.iminus)
    order, rem = divmod(triple.sigma.order, required.order)
    assert rem == 0
    return order


def enumerate_subgroups(ambient: TorusSubgroup, cap: int | None = None):
    """Every subgroup of a subgroup of (Z/ell)^n, deterministically.

    Subgroups correspond one-to-one to Hermite-form lattices between
    ell Z^n and Z^n: upper triangular, pivots dividing ell, entries above
    each pivot reduced modulo it.  Those matrices are enumerated
    directly (no closure search), filtered by containment of ell Z^n and
    by inclusion in the ambient subgroup.  Output sorted by
    (order, lattice).  Guarded by the enumeration cap.
    """
    import itertools as _it

    ell, n = ambient.ell, ambient.n
    limit = cap if cap is not None else _enum_cap()
    divisors = [d for d in range(1, ell + 1) if ell % d == 0]
    found = []
    above = [(i, j) for j in range(n) for i in range(j)]
    for diag in _it.product(divisors, repeat=n):
        ranges = [range(diag[j]) for _, j in above]
        for combo in _it.product(*ranges):
            rows = [[0] * n for _ in range(n)]
            for k in range(n):
                rows[k][k] = diag[k]
            for (i, j), value in zip(above, combo):
                rows[i][j] = value
            candidate = TorusSubgroup(ell, n, IntMatrix(rows))
            # the lattice must reach ell Z^n and stay inside the ambient
            if not all(
                candidate.contains(tuple(ell * int(r == k) for r in range(n)))
                for k in range(n)
            ):
                continue
            if not candidate.is_subgroup_of(ambient):
                continue
            found.append(candidate)
            if len(found) > limit:
                raise EnumerationGuard(f"subgroup count exceeds cap {limit}")
    return sorted(found, key=lambda s: (s.order, s.lattice.data))
