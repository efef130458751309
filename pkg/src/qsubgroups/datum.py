"""Twisted subgroup data: validation, dimensions, order and equivalence.

A twisted subgroup datum is a tuple (I+, I-, N, Gamma, gamma, delta):
index sets of simple roots, a subgroup N of the character kernel for
(I+, I-), a group Gamma with an injective homomorphism gamma into the
maximal torus, and a homomorphism delta from N into the character group
of Gamma.  Gamma is restricted to finite abelian groups presented by
invariant factors and embedded in the torus; arbitrary groups are
accepted only as opaque records carrying their order, for which the
partial-order test degrades to "unknown" on the bullet that needs the
embedding.

Dimension bookkeeping.  The quotient attached to a triple has
    dim H = |Sigma| * ell^(#Psi+ + #Psi-),
where |Sigma| = ell^n / |N| and Psi+- are the positive roots supported
in I+-; this is the count forced by the PBW basis.  The simpler count
ell^(|I+| + |I-|) agrees exactly when every supported root is simple
and is reported side by side, never asserted.  A finite Gamma then
multiplies: dim A = |Gamma| * dim H.

The partial order on data:  D <= D' iff I'+ <= I+, I'- <= I-, N <= N'
(as annihilator subgroups of (Z/ell)^n, where the comparison map is the
literal inclusion), some tau: Gamma' -> Gamma satisfies gamma tau =
gamma', and delta' restricted to N equals the pullback of delta along
tau.  Mutual <= forces equal (I+, I-, N) and |Gamma| = |Gamma'|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exact import IntMatrix, kernel_mod, solve_linear_mod
from .lie import roots_supported
from .torus import (
    SigmaGenerator,
    TorusSubgroup,
    Triple,
    annihilator,
    enumerate_subgroups,
    evaluate_recipe,
    s_phi_matrix,
    t_hat_I_complement,
    t_phi_I,
    validate_triple,
)
from .twist import TwistMap, zero_twist

__all__ = [
    "INFINITE",
    "FiniteAbelianGroup",
    "OpaqueGroup",
    "TorusEmbedding",
    "DualHom",
    "TwistedSubgroupDatum",
    "DatumReport",
    "validate_datum",
    "DimH",
    "dim_H",
    "dim_A",
    "LeqResult",
    "datum_leq",
    "datum_equiv",
    "TripleRecord",
    "enumerate_triples",
    "ObstructionReport",
    "obstruction_check",
    "Predicates",
    "predicates",
]


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group by invariant factors m1 | m2 | ... (each >= 2);
    the empty tuple is the trivial group."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(m) for m in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for m in factors:
            if m < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        total = 1
        for m in self.invariant_factors:
            total *= m
        return total

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def elements(self):
        return itertools.product(*(range(m) for m in self.invariant_factors))

    def reduce(self, vec) -> tuple[int, ...]:
        return tuple(int(v) % m for v, m in zip(vec, self.invariant_factors))


@dataclass(frozen=True)
class OpaqueGroup:
    """A group known only by its order (None means infinite)."""

    order: int | None = None
    label: str = "opaque"


@dataclass(frozen=True)
class TorusEmbedding:
    """An injective homomorphism of a finite abelian group into the
    maximal torus: generator i goes to the torus point whose coordinates
    are the i-th column of the matrix, read modulo the i-th invariant
    factor (a root of unity exponent)."""

    group: FiniteAbelianGroup
    matrix: tuple[tuple[int, ...], ...]  # n rows, ngens columns
    n: int

    @classmethod
    def make(cls, group: FiniteAbelianGroup, matrix, n: int) -> "TorusEmbedding":
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(rows) != n or any(len(r) != group.ngens for r in rows):
            raise ValueError(f"embedding matrix must be {n} x {group.ngens}")
        return cls(group, rows, n)

    @classmethod
    def trivial(cls, n: int) -> "TorusEmbedding":
        return cls.make(FiniteAbelianGroup(()), [()] * n, n)

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.matrix)

    def point_exponents(self, g, modulus: int) -> tuple[int, ...]:
        """The image of a group element as a vector of root-of-unity
        exponents modulo the given common modulus (a multiple of the
        group exponent)."""
        factors = self.group.invariant_factors
        out = [0] * self.n
        for i, (gi, m) in enumerate(zip(g, factors)):
            if modulus % m:
                raise ValueError("modulus must be a multiple of every factor")
            step = modulus // m
            col = self.column(i)
            for r in range(self.n):
                out[r] = (out[r] + gi * step * col[r]) % modulus
        return tuple(out)

    def _exponent_matrix(self, modulus: int) -> IntMatrix:
        factors = self.group.invariant_factors
        cols = []
        for i, m in enumerate(factors):
            step = modulus // m
            cols.append([step * x for x in self.column(i)])
        rows = [[cols[i][r] for i in range(len(factors))] for r in range(self.n)]
        return IntMatrix(rows, ncols=len(factors))

    def is_injective(self) -> bool:
        """Trivial kernel: the solution subgroup of the congruence system
        must coincide with the relation subgroup of the presentation."""
        factors = self.group.invariant_factors
        if not factors:
            return True
        modulus = lcm(*factors)
        emat = self._exponent_matrix(modulus)
        solutions = TorusSubgroup.from_generators(
            modulus, len(factors), [g for g, _ in kernel_mod(emat, modulus)]
        )
        relations = TorusSubgroup.from_generators(
            modulus,
            len(factors),
            [
                tuple(m * int(i == j) for j in range(len(factors)))
                for i, m in enumerate(factors)
            ],
        )
        return solutions == relations


@dataclass(frozen=True)
class DualHom:
    """A homomorphism from a torus-character subgroup N into the character
    group of a finite abelian Gamma.

    Given by the images of N's canonical generators; image coordinates
    c_j are read modulo the j-th invariant factor (the character sends
    the j-th Gamma generator to a primitive m_j-th root raised to c_j).
    Well-definedness means every relation among the generators maps to
    the trivial character.
    """

    source_generators: tuple[tuple[int, ...], ...]
    target: FiniteAbelianGroup
    images: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, source: TorusSubgroup, target: FiniteAbelianGroup, images) -> "DualHom":
        images = tuple(target.reduce(im) for im in images)
        if len(images) != len(source.generators):
            raise ValueError("need one image per canonical generator")
        return cls(source.generators, target, images)

    @classmethod
    def trivial(cls, source: TorusSubgroup, target: FiniteAbelianGroup) -> "DualHom":
        zero = tuple(0 for _ in target.invariant_factors)
        return cls(source.generators, target, tuple(zero for _ in source.generators))

    def _combine(self, coeffs) -> tuple[int, ...]:
        out = [0] * self.target.ngens
        for x, image in zip(coeffs, self.images):
            for j in range(self.target.ngens):
                out[j] += x * image[j]
        return self.target.reduce(out)

    def well_defined(self, ell: int) -> bool:
        """Every relation among the source generators must map to zero."""
        r = len(self.source_generators)
        if r == 0:
            return True
        n = len(self.source_generators[0])
        gmat = IntMatrix(
            [[self.source_generators[i][j] for i in range(r)] for j in range(n)],
            ncols=r,
        )
        relations = [g for g, _ in kernel_mod(gmat, ell)]
        relations += [
            tuple(ell * int(i == j) for j in range(r)) for i in range(r)
        ]
        zero = tuple(0 for _ in self.target.invariant_factors)
        return all(self._combine(rel) == zero for rel in relations)

    def evaluate(self, source: TorusSubgroup, vec) -> tuple[int, ...]:
        """Image of an arbitrary element of N (well-definedness makes the
        choice of expression immaterial)."""
        r = len(self.source_generators)
        if r == 0:
            if not source.contains(vec):
                raise ValueError("element not in the source subgroup")
            return tuple(0 for _ in self.target.invariant_factors)
        n = len(self.source_generators[0])
        gmat = IntMatrix(
            [[self.source_generators[i][j] for i in range(r)] for j in range(n)],
            ncols=r,
        )
        solved = solve_linear_mod(gmat, tuple(vec), source.ell)
        if solved is None:
            raise ValueError("element not in the source subgroup")
        coeffs, _ = solved
        return self._combine(coeffs)


@dataclass(frozen=True)
class TwistedSubgroupDatum:
    """(I+, I-, N, Gamma, gamma, delta) with Gamma torus-embedded (or an
    opaque order-only record)."""

    iplus: frozenset[int]
    iminus: frozenset[int]
    N: TorusSubgroup
    embedding: TorusEmbedding | OpaqueGroup
    delta: DualHom | None
    sigma_recipe: tuple[SigmaGenerator, ...] | None = None

    @classmethod
    def make(cls, iplus, iminus, N, embedding=None, delta=None,
             sigma_recipe=None) -> "TwistedSubgroupDatum":
        iplus = frozenset(int(i) for i in iplus)
        iminus = frozenset(int(i) for i in iminus)
        if embedding is None:
            embedding = TorusEmbedding.trivial(N.n)
        if delta is None and isinstance(embedding, TorusEmbedding):
            delta = DualHom.trivial(N, embedding.group)
        if sigma_recipe is not None:
            sigma_recipe = tuple(sigma_recipe)
        return cls(iplus, iminus, N, embedding, delta, sigma_recipe)

    @property
    def gamma_order(self):
        if isinstance(self.embedding, TorusEmbedding):
            return self.embedding.group.order
        return self.embedding.order if self.embedding.order else INFINITE

    @property
    def is_opaque(self) -> bool:
        return isinstance(self.embedding, OpaqueGroup)


@dataclass(frozen=True)
class DatumViolation:
    condition: str
    detail: str


@dataclass(frozen=True)
class DatumReport:
    ok: bool
    violations: tuple[DatumViolation, ...]


def validate_datum(tw: TwistMap, ell: int, d: TwistedSubgroupDatum) -> DatumReport:
    """Check every requirement of the datum, reporting all failures."""
    violations: list[DatumViolation] = []
    n = tw.rank
    bad = (d.iplus | d.iminus) - set(range(1, n + 1))
    if bad:
        violations.append(
            DatumViolation("index_range", f"simple indices out of range: {sorted(bad)}")
        )
    if (d.N.ell, d.N.n) != (ell, n):
        violations.append(
            DatumViolation("n_shape", "N lives in the wrong torus")
        )
    elif not bad:
        kernel = t_hat_I_complement(tw, ell, d.iplus, d.iminus)
        for g in d.N.generators:
            if not kernel.contains(g):
                s = s_phi_matrix(tw, ell, d.iplus, d.iminus)
                rows = [
                    (row, sum(a * b for a, b in zip(row, g)) % ell)
                    for row in s.data
                ]
                witness = next((f"{row} . {g} = {val} != 0 (mod {ell})"
                                for row, val in rows if val), "")
                violations.append(
                    DatumViolation(
                        "n_in_kernel",
                        f"generator {g} is not killed by the required "
                        f"relations: {witness}",
                    )
                )
    if isinstance(d.embedding, TorusEmbedding):
        if d.embedding.n != n:
            violations.append(
                DatumViolation("gamma_shape", "embedding has the wrong torus rank")
            )
        elif not d.embedding.is_injective():
            violations.append(
                DatumViolation("gamma_injective", "gamma has a nontrivial kernel")
            )
        if d.delta is None:
            violations.append(
                DatumViolation("delta_missing", "no delta supplied")
            )
        else:
            if d.delta.source_generators != d.N.generators:
                violations.append(
                    DatumViolation(
                        "delta_source", "delta is not given on N's canonical generators"
                    )
                )
            elif d.delta.target != d.embedding.group:
                violations.append(
                    DatumViolation("delta_target", "delta maps into the wrong group")
                )
            elif not d.delta.well_defined(ell):
                violations.append(
                    DatumViolation(
                        "delta_well_defined",
                        "delta does not kill the relations among N's generators",
                    )
                )
    return DatumReport(ok=not violations, violations=tuple(violations))


# ---------------------------------------------------------------------------
# dimensions

@dataclass(frozen=True)
class DimH:
    """The quotient dimension attached to (I+, I-, N), reported in both
    conventions (root-count exponent is the primary one)."""

    ell: int
    rank: int
    sigma_order: int
    roots_plus: int
    roots_minus: int
    simple_plus: int
    simple_minus: int

    @property
    def value(self) -> int:
        return self.sigma_order * self.ell ** (self.roots_plus + self.roots_minus)

    @property
    def value_simple_convention(self) -> int:
        return self.sigma_order * self.ell ** (self.simple_plus + self.simple_minus)

    def factored(self) -> tuple[int, int]:
        """value as (cofactor, exponent) with value = cofactor * ell^exponent
        and ell not dividing the cofactor."""
        return factor_out(self.value, self.ell)


def factor_out(value: int, base: int) -> tuple[int, int]:
    if value == 0:
        return 0, 0
    e = 0
    while value % base == 0:
        value //= base
        e += 1
    return value, e


def dim_H(tw: TwistMap, ell: int, iplus, iminus, N: TorusSubgroup) -> DimH:
    """|Sigma| * ell^(#roots supported in I+ and I-), with |Sigma| =
    ell^n / |N|.  N must lie in the character kernel of (I+, I-)."""
    iplus = frozenset(int(i) for i in iplus)
    iminus = frozenset(int(i) for i in iminus)
    kernel = t_hat_I_complement(tw, ell, iplus, iminus)
    if not N.is_subgroup_of(kernel):
        raise ValueError("N is not inside the character kernel for (I+, I-)")
    total = ell**tw.rank
    sigma_order, rem = divmod(total, N.order)
    assert rem == 0
    return DimH(
        ell=ell,
        rank=tw.rank,
        sigma_order=sigma_order,
        roots_plus=len(roots_supported(tw.cd, iplus)),
        roots_minus=len(roots_supported(tw.cd, iminus)),
        simple_plus=len(iplus),
        simple_minus=len(iminus),
    )


def dim_A(tw: TwistMap, ell: int, d: TwistedSubgroupDatum):
    """|Gamma| * dim H; INFINITE for an opaque infinite Gamma."""
    report = validate_datum(tw, ell, d)
    if not report.ok:
        raise ValueError(f"invalid datum: {[v.detail for v in report.violations]}")
    h = dim_H(tw, ell, d.iplus, d.iminus, d.N)
    order = d.gamma_order
    if order is INFINITE:
        return INFINITE
    return order * h.value


# ---------------------------------------------------------------------------
# partial order

@dataclass(frozen=True)
class LeqResult:
    status: str  # "true", "false" or "unknown"
    reasons: tuple[str, ...] = ()
    tau: tuple[tuple[int, ...], ...] | None = None  # columns: images of
    # the second datum's generators in the first datum's group

    def __bool__(self):
        return self.status == "true"


def _solve_tau(
    gamma: TorusEmbedding, gamma_p: TorusEmbedding
) -> tuple[tuple[int, ...], ...] | None:
    """The unique tau with gamma . tau = gamma', or None.

    Works in a common torsion modulus; injectivity of gamma makes the
    solution unique once reduced modulo the invariant factors.
    """
    factors = gamma.group.invariant_factors
    factors_p = gamma_p.group.invariant_factors
    if not factors_p:
        return ()
    modulus = lcm(*(factors + factors_p)) if factors else lcm(*factors_p)
    emat = gamma._exponent_matrix(modulus) if factors else None
    columns = []
    for j in range(gamma_p.group.ngens):
        target = gamma_p.point_exponents(
            tuple(int(i == j) for i in range(gamma_p.group.ngens)), modulus
        )
        if not factors:
            if any(target):
                return None
            columns.append(())
            continue
        solved = solve_linear_mod(emat, target, modulus)
        if solved is None:
            return None
        y0, _ = solved
        columns.append(gamma.group.reduce(y0))
    return tuple(columns)


def _pullback_character(
    coords, source: FiniteAbelianGroup, tau, target: FiniteAbelianGroup
) -> tuple[int, ...]:
    """Pull a character of `source` back along tau: target' -> source,
    yielding a character of the tau domain `target`."""
    out = []
    for j in range(target.ngens):
        total = Fraction(0)
        col = tau[j]
        for t in range(source.ngens):
            total += Fraction(coords[t] * col[t], source.invariant_factors[t])
        scaled = total * target.invariant_factors[j]
        assert scaled.denominator == 1, "pullback character is not integral"
        out.append(int(scaled) % target.invariant_factors[j])
    return tuple(out)


def datum_leq(
    tw: TwistMap, ell: int, d: TwistedSubgroupDatum, dp: TwistedSubgroupDatum
) -> LeqResult:
    """Decide d <= d' with a certificate.

    The comparison map between character kernels is the literal inclusion
    of annihilator subgroups, available exactly when I'+- <= I+-.
    """
    if (d.N.ell, d.N.n) != (dp.N.ell, dp.N.n) or d.N.ell != ell or d.N.n != tw.rank:
        raise ValueError("data live over different levels or ranks")
    reasons = []
    if not (dp.iplus <= d.iplus and dp.iminus <= d.iminus):
        return LeqResult("false", ("index sets are not nested",))
    if not d.N.is_subgroup_of(dp.N):
        return LeqResult("false", ("N is not contained in N'",))
    if d.is_opaque or dp.is_opaque:
        return LeqResult(
            "unknown",
            ("tau existence is undecidable for an opaque Gamma",),
        )
    tau = _solve_tau(d.embedding, dp.embedding)
    if tau is None:
        return LeqResult("false", ("no tau with gamma . tau = gamma'",))
    # delta' on N must be the pullback of delta along tau
    gamma_group = d.embedding.group
    gamma_p_group = dp.embedding.group
    for g in d.N.generators:
        lhs = dp.delta.evaluate(dp.N, g)
        rhs = _pullback_character(
            d.delta.evaluate(d.N, g), gamma_group, tau, gamma_p_group
        )
        if lhs != rhs:
            reasons.append(
                f"delta mismatch on generator {g}: {lhs} != {rhs}"
            )
    if reasons:
        return LeqResult("false", tuple(reasons))
    return LeqResult("true", (), tau)


def datum_equiv(
    tw: TwistMap, ell: int, d: TwistedSubgroupDatum, dp: TwistedSubgroupDatum
) -> bool:
    """Mutual <=; when it holds the data agree on (I+, I-, N) and the
    group orders match (consistency of the order with equivalence)."""
    forward = datum_leq(tw, ell, d, dp)
    backward = datum_leq(tw, ell, dp, d)
    if forward.status == "unknown" or backward.status == "unknown":
        raise ValueError("equivalence is undecidable for opaque groups")
    result = bool(forward) and bool(backward)
    if result:
        assert d.iplus == dp.iplus and d.iminus == dp.iminus
        assert d.N == dp.N
        assert d.gamma_order == dp.gamma_order
    return result


# ---------------------------------------------------------------------------
# enumeration

@dataclass(frozen=True)
class TripleRecord:
    iplus: tuple[int, ...]
    iminus: tuple[int, ...]
    N: TorusSubgroup
    dims: DimH


def enumerate_triples(
    tw: TwistMap,
    ell: int,
    max_results: int | None = None,
    fixed_pair=None,
    cap: int | None = None,
):
    """All classification triples (I+, I-, N) with their dimensions.

    Pairs (I+, I-) run over subsets of the simple roots in binary-mask
    order; for each pair, N runs over every subgroup of the character
    kernel in canonical order.  max_results truncates the stream;
    fixed_pair restricts to one (I+, I-).
    """
    n = tw.rank
    emitted = 0

    def subsets():
        for mask in range(1 << n):
            yield tuple(i + 1 for i in range(n) if mask >> i & 1)

    if fixed_pair is not None:
        pairs = [(tuple(sorted(fixed_pair[0])), tuple(sorted(fixed_pair[1])))]
    else:
        pairs = [(p, m) for p in subsets() for m in subsets()]
    results = []
    for iplus, iminus in pairs:
        if max_results is not None and emitted >= max_results:
            break
        kernel = t_hat_I_complement(tw, ell, iplus, iminus)
        for sub in enumerate_subgroups(kernel, cap=cap):
            if max_results is not None and emitted >= max_results:
                return results
            results.append(
                TripleRecord(iplus, iminus, sub, dim_H(tw, ell, iplus, iminus, sub))
            )
            emitted += 1
    return results


# ---------------------------------------------------------------------------
# structural predicates

@dataclass(frozen=True)
class ObstructionReport:
    """Order data of the same generator recipe at phi and at phi = 0."""

    sigma_order_twisted: int
    n_order_twisted: int
    sigma_order_untwisted: int
    n_order_untwisted: int
    dim_twisted: int
    dim_untwisted: int
    obstructed: bool

    @property
    def dim_ratio(self) -> Fraction:
        return Fraction(self.dim_twisted, self.dim_untwisted)


def obstruction_check(
    tw: TwistMap, ell: int, iplus, iminus, recipe
) -> ObstructionReport:
    """Re-evaluate Sigma's generator recipe at phi = 0 and compare.

    The quotient is not a 2-cocycle deformation of its untwisted
    counterpart when Sigma fills the torus at phi but the re-evaluated
    Sigma does not at 0 (the dimensions then differ).
    """
    iplus = frozenset(int(i) for i in iplus)
    iminus = frozenset(int(i) for i in iminus)
    total = ell**tw.rank
    sigma_tw = evaluate_recipe(tw, ell, recipe)
    zero = zero_twist(tw.cd)
    sigma_zero = evaluate_recipe(zero, ell, recipe)
    for side, some_tw, sigma in (("twisted", tw, sigma_tw),
                                 ("untwisted", zero, sigma_zero)):
        report = validate_triple(
            some_tw, ell, Triple(iplus, iminus, sigma, None)
        )
        if not report.ok:
            raise ValueError(
                f"recipe does not produce a valid {side} triple; "
                f"missing generators: {report.missing}"
            )
    n_tw = annihilator(sigma_tw)
    n_zero = annihilator(sigma_zero)
    dim_tw = dim_H(tw, ell, iplus, iminus, n_tw)
    dim_zero = dim_H(zero, ell, iplus, iminus, n_zero)
    return ObstructionReport(
        sigma_order_twisted=sigma_tw.order,
        n_order_twisted=n_tw.order,
        sigma_order_untwisted=sigma_zero.order,
        n_order_untwisted=n_zero.order,
        dim_twisted=dim_tw.value,
        dim_untwisted=dim_zero.value,
        obstructed=sigma_tw.order == total and sigma_zero.order != total,
    )


@dataclass(frozen=True)
class Predicates:
    pointed_necessary: bool
    semisimple: bool
    dual_pointed_consistent: bool | None
    cocycle_deformation_obstructed: bool
    obstruction: ObstructionReport | None = None


def default_sigma_recipe(tw: TwistMap, ell: int, d: TwistedSubgroupDatum):
    """Recipe used when the datum does not carry one: the required
    generators symbolically, plus Sigma's canonical generators as fixed
    vectors (treated as twist-independent)."""
    recipe = [SigmaGenerator.kbar(i) for i in sorted(d.iplus)]
    recipe += [SigmaGenerator.ktilde(j) for j in sorted(d.iminus)]
    sigma = annihilator(d.N)
    required = t_phi_I(tw, ell, d.iplus, d.iminus)
    for g in sigma.generators:
        if not required.contains(g):
            recipe.append(SigmaGenerator.fixed(g))
    return tuple(recipe)


def predicates(
    tw: TwistMap, ell: int, d: TwistedSubgroupDatum, recipe=None
) -> Predicates:
    """The structural predicates of a valid datum."""
    report = validate_datum(tw, ell, d)
    if not report.ok:
        raise ValueError(f"invalid datum: {[v.detail for v in report.violations]}")
    recipe = recipe if recipe is not None else d.sigma_recipe
    if recipe is None:
        recipe = default_sigma_recipe(tw, ell, d)
    else:
        sigma = evaluate_recipe(tw, ell, recipe)
        if annihilator(sigma) != d.N:
            raise ValueError("sigma recipe does not reproduce the datum's N")
    ob = obstruction_check(tw, ell, d.iplus, d.iminus, recipe)
    finite = not (d.is_opaque and d.embedding.order is None)
    return Predicates(
        pointed_necessary=not (d.iplus & d.iminus),
        semisimple=not (d.iplus | d.iminus) and finite,
        dual_pointed_consistent=True if not d.is_opaque else None,
        cocycle_deformation_obstructed=ob.obstructed,
        obstruction=ob,
    )
