"""Root systems, weight lattices and the invariant bilinear form.

Conventions.  A Cartan matrix A = (a_ij) has a_ij = 2 (alpha_j, alpha_i)
/ (alpha_i, alpha_i); the symmetrizers d_i = (alpha_i, alpha_i) / 2 are
the minimal positive integers making D A symmetric.  Fundamental weights
satisfy (omega_i, alpha_j) = d_i delta_ij, so alpha_i = sum_j a_ji
omega_j; lattice elements carry their basis tag (ALPHA or OMEGA) and
rational coordinates.

The built-in matrices for types B, C, F and G place the arrow so that
for type C of rank 3 one gets
    [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]        with d = (2, 2, 1),
the labelling used by every worked fixture downstream.  Symmetrizers are
always recomputed from the matrix, never assumed from the label, and
arbitrary user-supplied Cartan matrices are accepted.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction

from .exact import IntMatrix, invert_rational_matrix

__all__ = [
    "Basis",
    "CartanDatum",
    "LatticeElement",
    "Root",
    "cartan_matrix",
    "symmetrizers",
    "bilinear_form",
    "alpha_to_omega",
    "omega_to_alpha",
    "positive_roots",
    "roots_supported",
]


class Basis(enum.Enum):
    ALPHA = "alpha"
    OMEGA = "omega"


class InvalidCartanMatrix(ValueError):
    pass


def symmetrizers(A: IntMatrix) -> tuple[int, ...]:
    """Minimal positive integers d with d_i a_ij = d_j a_ji.

    Raises InvalidCartanMatrix when no positive solution exists (the
    matrix is not symmetrizable) or the matrix is not a generalized
    Cartan matrix.
    """
    n = A.nrows
    if A.ncols != n:
        raise InvalidCartanMatrix("Cartan matrix must be square")
    for i in range(n):
        if A[i, i] != 2:
            raise InvalidCartanMatrix(f"diagonal entry a[{i}][{i}] != 2")
        for j in range(n):
            if i != j:
                if A[i, j] > 0:
                    raise InvalidCartanMatrix(f"positive off-diagonal at ({i},{j})")
                if (A[i, j] == 0) != (A[j, i] == 0):
                    raise InvalidCartanMatrix(f"zero pattern asymmetric at ({i},{j})")
    # propagate ratios along the Coxeter graph
    ratio: list[Fraction | None] = [None] * n
    for start in range(n):
        if ratio[start] is not None:
            continue
        ratio[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or A[i, j] == 0:
                    continue
                # d_i a_ij = d_j a_ji  =>  d_j = d_i a_ij / a_ji
                want = ratio[i] * Fraction(A[i, j], A[j, i])
                if want <= 0:
                    raise InvalidCartanMatrix("no positive symmetrizer exists")
                if ratio[j] is None:
                    ratio[j] = want
                    stack.append(j)
                elif ratio[j] != want:
                    raise InvalidCartanMatrix("matrix is not symmetrizable")
    lcm_den = 1
    for r in ratio:
        lcm_den = lcm_den * r.denominator // _gcd(lcm_den, r.denominator)
    ints = [int(r * lcm_den) for r in ratio]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    d = tuple(x // g for x in ints)
    for i in range(n):
        for j in range(n):
            if d[i] * A[i, j] != d[j] * A[j, i]:
                raise InvalidCartanMatrix("matrix is not symmetrizable")
    return d


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan matrix with its symmetrizers."""

    lie_type: str
    rank: int
    A: IntMatrix
    d: tuple[int, ...]

    @classmethod
    def from_matrix(cls, A: IntMatrix, lie_type: str = "X") -> "CartanDatum":
        d = symmetrizers(A)
        datum = cls(lie_type, A.nrows, A, d)
        datum._require_finite_type()
        return datum

    def _require_finite_type(self) -> None:
        # DA positive definite <=> finite type; this also guarantees that
        # the reflection closure below terminates.
        n = self.rank
        da = [[self.d[i] * self.A[i, j] for j in range(n)] for i in range(n)]
        for k in range(1, n + 1):
            minor = IntMatrix([row[:k] for row in da[:k]])
            if minor.det() <= 0:
                raise InvalidCartanMatrix("matrix is not of finite type")

    def simple_root(self, i: int) -> "LatticeElement":
        """alpha_i, 1-based index, in ALPHA coordinates."""
        coords = [Fraction(0)] * self.rank
        coords[i - 1] = Fraction(1)
        return LatticeElement(Basis.ALPHA, tuple(coords))

    def fundamental_weight(self, i: int) -> "LatticeElement":
        coords = [Fraction(0)] * self.rank
        coords[i - 1] = Fraction(1)
        return LatticeElement(Basis.OMEGA, tuple(coords))


_BUILTIN_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def cartan_matrix(lie_type: str, n: int) -> CartanDatum:
    """Built-in Cartan datum for the finite series A-G."""
    lie_type = lie_type.upper()
    if lie_type not in _BUILTIN_RANK_RANGE:
        raise InvalidCartanMatrix(f"unknown type {lie_type!r}")
    lo, hi = _BUILTIN_RANK_RANGE[lie_type]
    if n < lo or (hi is not None and n > hi):
        raise InvalidCartanMatrix(f"invalid rank {n} for type {lie_type}")

    a = [[2 * int(i == j) for j in range(n)] for i in range(n)]

    def chain_edge(i, j, back=-1, forth=-1):
        a[i][j] = forth
        a[j][i] = back

    if lie_type in ("A", "B", "C"):
        for i in range(n - 1):
            chain_edge(i, i + 1)
        if lie_type == "B" and n >= 2:
            a[n - 2][n - 1] = -2  # last root long
        if lie_type == "C" and n >= 2:
            a[n - 1][n - 2] = -2  # last root short
    elif lie_type == "D":
        for i in range(n - 2):
            chain_edge(i, i + 1)
        chain_edge(n - 3, n - 1)
    elif lie_type == "E":
        # chain 1-3-4-5-...-n with node 2 hanging off node 4
        chain_edge(0, 2)
        for i in range(2, n - 1):
            chain_edge(i, i + 1)
        chain_edge(1, 3)
    elif lie_type == "F":
        chain_edge(0, 1)
        chain_edge(1, 2)
        a[2][1] = -2
        chain_edge(2, 3)
    elif lie_type == "G":
        a[0][1] = -1
        a[1][0] = -3
    return CartanDatum.from_matrix(IntMatrix(a), lie_type)


@dataclass(frozen=True)
class LatticeElement:
    """A vector in the rational span of the weight lattice."""

    basis: Basis
    coords: tuple[Fraction, ...]

    @classmethod
    def make(cls, basis: Basis, coords) -> "LatticeElement":
        return cls(basis, tuple(Fraction(c) for c in coords))

    @classmethod
    def zero(cls, basis: Basis, rank: int) -> "LatticeElement":
        return cls(basis, tuple(Fraction(0) for _ in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: "LatticeElement") -> "LatticeElement":
        if self.basis != other.basis:
            raise ValueError("cannot add elements in different bases")
        return LatticeElement(
            self.basis, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "LatticeElement") -> "LatticeElement":
        if self.basis != other.basis:
            raise ValueError("cannot subtract elements in different bases")
        return LatticeElement(
            self.basis, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "LatticeElement":
        return LatticeElement(self.basis, tuple(-a for a in self.coords))

    def scaled(self, c) -> "LatticeElement":
        c = Fraction(c)
        return LatticeElement(self.basis, tuple(c * a for a in self.coords))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)


@functools.lru_cache(maxsize=None)
def _inverse_cartan(cd: CartanDatum) -> tuple[tuple[Fraction, ...], ...]:
    return invert_rational_matrix(cd.A)


def alpha_to_omega(lam: LatticeElement, cd: CartanDatum) -> LatticeElement:
    """Coordinates in the fundamental-weight basis: omega = A alpha."""
    _rank_check(lam, cd)
    if lam.basis == Basis.OMEGA:
        return lam
    coords = tuple(
        sum((Fraction(cd.A[i, j]) * lam.coords[j] for j in range(cd.rank)),
            Fraction(0))
        for i in range(cd.rank)
    )
    return LatticeElement(Basis.OMEGA, coords)


def omega_to_alpha(lam: LatticeElement, cd: CartanDatum) -> LatticeElement:
    """Coordinates in the simple-root basis: alpha = A^(-1) omega."""
    _rank_check(lam, cd)
    if lam.basis == Basis.ALPHA:
        return lam
    ainv = _inverse_cartan(cd)
    coords = tuple(
        sum((ainv[i][j] * lam.coords[j] for j in range(cd.rank)), Fraction(0))
        for i in range(cd.rank)
    )
    return LatticeElement(Basis.ALPHA, coords)


def bilinear_form(lam: LatticeElement, mu: LatticeElement, cd: CartanDatum) -> Fraction:
    """The symmetric form with (omega_i, alpha_j) = d_i delta_ij."""
    _rank_check(lam, cd)
    _rank_check(mu, cd)
    left = alpha_to_omega(lam, cd)
    right = omega_to_alpha(mu, cd)
    return sum(
        (left.coords[i] * cd.d[i] * right.coords[i] for i in range(cd.rank)),
        Fraction(0),
    )


def _rank_check(lam: LatticeElement, cd: CartanDatum) -> None:
    if lam.rank != cd.rank:
        raise ValueError(f"rank mismatch: element has {lam.rank}, datum has {cd.rank}")


@dataclass(frozen=True)
class Root:
    """A positive root in integer ALPHA coordinates with its support."""

    coords: tuple[int, ...]
    support: frozenset[int]  # 1-based simple indices

    @classmethod
    def from_coords(cls, coords) -> "Root":
        coords = tuple(int(c) for c in coords)
        return cls(coords, frozenset(i + 1 for i, c in enumerate(coords) if c))

    def element(self) -> LatticeElement:
        return LatticeElement.make(Basis.ALPHA, self.coords)

    @property
    def height(self) -> int:
        return sum(self.coords)


def _reflect(coords: tuple[int, ...], i: int, cd: CartanDatum) -> tuple[int, ...]:
    # s_i(c) = c - (A c)_i e_i in ALPHA coordinates, i 0-based here
    pairing = sum(cd.A[i, j] * coords[j] for j in range(cd.rank))
    out = list(coords)
    out[i] -= pairing
    return tuple(out)


@functools.lru_cache(maxsize=None)
def positive_roots(cd: CartanDatum) -> tuple[Root, ...]:
    """All positive roots via the reflection closure of the simple ones.

    Returned sorted by height, then lexicographically on coordinates, a
    fixed deterministic order.  For type A_n the count is n(n+1)/2 and in
    general dim g = rank + 2 * count.
    """
    n = cd.rank
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for coords in frontier:
            for i in range(n):
                image = _reflect(coords, i, cd)
                if image in seen:
                    continue
                if all(c >= 0 for c in image):
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    ordered = sorted(seen, key=lambda c: (sum(c), c))
    return tuple(Root.from_coords(c) for c in ordered)


def roots_supported(cd: CartanDatum, indices) -> tuple[Root, ...]:
    """Positive roots whose support lies inside the given simple indices."""
    allowed = frozenset(int(i) for i in indices)
    bad = allowed - set(range(1, cd.rank + 1))
    if bad:
        raise ValueError(f"simple indices out of range: {sorted(bad)}")
    return tuple(r for r in positive_roots(cd) if r.support <= allowed)
