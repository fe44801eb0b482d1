"""Exact arithmetic for integral lattices.

A lattice is a free abelian group with a symmetric, nondegenerate integer
Gram matrix. Vectors are plain integer tuples of coordinates in the lattice
basis; dual-lattice vectors are tuples of ``Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Sequence

from . import _linalg as la
from .errors import DegenerateLatticeError, DimensionError, DomainError

Vector = tuple[int, ...]

E8_CARTAN = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)


@dataclass(frozen=True)
class IntegralLattice:
    """Free Z-module with an integer Gram matrix.

    ``uu_witness`` optionally holds four vectors spanning a copy of U + U
    (needed to certify orbit completeness of isotropic invariants), and
    ``disc_generators`` optionally fixes preferred generator lifts for the
    discriminant group. Neither takes part in equality.
    """

    gram: tuple[tuple[int, ...], ...]
    label: str = ""
    uu_witness: tuple[Vector, ...] | None = field(default=None, compare=False, repr=False)
    disc_generators: tuple[tuple[Fraction, ...], ...] | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(g)
        if n == 0:
            raise DomainError("a lattice needs positive rank")
        if any(len(row) != n for row in g):
            raise DimensionError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise DomainError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)
        if la.det(g) == 0:
            raise DegenerateLatticeError(f"degenerate Gram matrix {list(map(list, g))}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return la.det(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def to_json(self) -> dict:
        return {"label": self.label, "gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, doc: dict) -> "IntegralLattice":
        return cls(doc["gram"], doc.get("label", ""))


@dataclass(frozen=True)
class SNFResult:
    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def standard_lattice(name: str, t: int | None = None) -> IntegralLattice:
    """Building blocks: ``"U"``, ``"E8_minus"`` or ``"rank1"`` with Gram ``[[t]]``."""
    if name == "U":
        return IntegralLattice(((0, 1), (1, 0)), "U")
    if name == "E8_minus":
        return IntegralLattice(tuple(tuple(-x for x in r) for r in E8_CARTAN), "E8(-1)")
    if name == "rank1":
        if not t:
            raise DegenerateLatticeError("rank1(0) is degenerate")
        return IntegralLattice(((t,),), f"<{t}>")
    raise DomainError(f"unknown standard lattice {name!r}")


def direct_sum(*lattices: IntegralLattice, label: str | None = None) -> IntegralLattice:
    n = sum(L.rank for L in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                gram[off + i][off + j] = L.gram[i][j]
        off += L.rank
    if label is None:
        label = " + ".join(L.label or "?" for L in lattices)
    return IntegralLattice(gram, label)


def _check_vec(L: IntegralLattice, x: Sequence[int]) -> Vector:
    if len(x) != L.rank:
        raise DimensionError(f"vector of length {len(x)} in a rank {L.rank} lattice")
    return tuple(x)


def pair(L: IntegralLattice, x: Sequence, y: Sequence):
    _check_vec(L, x)
    _check_vec(L, y)
    return la.dot(x, la.mat_vec(L.gram, y))


def quadratic(L: IntegralLattice, x: Sequence):
    return pair(L, x, x)


def _nonzero(x: Sequence[int]) -> None:
    if not any(x):
        raise DomainError("zero vector")


def divisibility(L: IntegralLattice, x: Sequence[int]) -> int:
    """Positive generator of the ideal ``(x, L)`` in Z."""
    _check_vec(L, x)
    _nonzero(x)
    return reduce(gcd, la.mat_vec(L.gram, x), 0)


def is_primitive(x: Sequence[int]) -> bool:
    _nonzero(x)
    return reduce(gcd, x, 0) == 1


def primitive_part(x: Sequence[int]) -> tuple[int, Vector]:
    _nonzero(x)
    g = reduce(gcd, x, 0)
    return g, tuple(c // g for c in x)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SNFResult:
    """Return unimodular ``U``, ``V`` and diagonal ``D`` with ``U A V = D``.

    Pivot is always the entry of least absolute value; the diagonal comes out
    nonnegative with ``d1 | d2 | ...``.
    """
    D = [list(map(int, r)) for r in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (D, U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
            rest = [(i, t) for i in range(t + 1, m) if D[i][t]] + [
                (t, j) for j in range(t + 1, n) if D[t][j]
            ]
            if rest:
                i, j = min(rest, key=lambda p: abs(D[p[0]][p[1]]))
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(la.as_matrix(U), la.as_matrix(D), la.as_matrix(V))


def rational_diagonalization(gram) -> tuple[tuple[Fraction, ...], tuple[tuple[Fraction, ...], ...]]:
    """Congruence-diagonalize a symmetric matrix over Q.

    Returns ``(diag, T)`` with ``T @ gram @ T^t = diag(diag)``; the rows of
    ``T`` are pairwise orthogonal vectors in lattice coordinates.
    """
    n = len(gram)
    A = [[Fraction(x) for x in r] for r in gram]
    T = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for r in A:
            r[i], r[j] = r[j], r[i]
        T[i], T[j] = T[j], T[i]

    def add(dst, src, q):  # congruence: row and column dst += q * src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        for r in A:
            r[dst] += q * r[src]
        T[dst] = [a + q * b for a, b in zip(T[dst], T[src])]

    for i in range(n):
        if A[i][i] == 0:
            j = next((j for j in range(i + 1, n) if A[j][j] != 0), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if A[i][j] != 0), None)
                if j is None:
                    continue
                add(i, j, Fraction(1))
        for j in range(i + 1, n):
            if A[j][i]:
                add(j, i, -A[j][i] / A[i][i])
    return tuple(A[i][i] for i in range(n)), la.as_matrix(T)


def signature(L: IntegralLattice) -> tuple[int, int]:
    diag, _ = rational_diagonalization(L.gram)
    if any(x == 0 for x in diag):
        raise DegenerateLatticeError("signature of a degenerate form")
    return sum(1 for x in diag if x > 0), sum(1 for x in diag if x < 0)


def positive_subspace_basis(L: IntegralLattice) -> tuple[tuple[Fraction, ...], ...]:
    """Pairwise orthogonal rational vectors spanning a maximal positive subspace."""
    diag, T = rational_diagonalization(L.gram)
    return tuple(T[i] for i, x in enumerate(diag) if x > 0)


def integer_kernel(M: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
    """Basis of ``{x in Z^n : M x = 0}``; saturated because ``V`` is unimodular."""
    snf = smith_normal_form(M)
    n = len(snf.V)
    r = snf.rank
    return tuple(tuple(snf.V[i][j] for i in range(n)) for j in range(r, n))


def orthogonal_complement(
    L: IntegralLattice, vs: Sequence[Sequence[int]], label: str = ""
) -> tuple[IntegralLattice, tuple[tuple[int, ...], ...]]:
    """Saturated sublattice ``vs^perp`` with its Gram and embedding matrix.

    The embedding has the basis vectors of the complement as columns.
    """
    if not vs:
        raise DomainError("need at least one vector")
    for v in vs:
        _check_vec(L, v)
        _nonzero(v)
    rows = tuple(la.mat_vec(L.gram, v) for v in vs)
    basis = integer_kernel(rows)
    if not basis:
        raise DomainError("orthogonal complement is zero")
    gram = tuple(tuple(pair(L, b, c) for c in basis) for b in basis)
    sub = IntegralLattice(gram, label)
    return sub, la.transpose(basis)


def sublattice_coordinates(embedding, x: Sequence[int]) -> Vector:
    """Integer coordinates of ambient vector ``x`` in a sublattice basis."""
    y = la.solve_rational(embedding, x)
    if y is None:
        raise DomainError("vector is not in the span of the sublattice")
    if any(c.denominator != 1 for c in y):
        raise DomainError("vector is not in the sublattice")
    return tuple(int(c) for c in y)


def _reduce_mod2(q: Fraction) -> Fraction:
    q = Fraction(q)
    return q - 2 * (q.numerator // (2 * q.denominator))


@dataclass(frozen=True)
class DiscriminantGroup:
    """``L^dual / L`` as a product of cyclic groups with its Q/2Z form.

    Elements are integer coordinate tuples with respect to ``generator_lifts``
    (entry ``i`` is taken mod ``orders[i]``).
    """

    lattice: IntegralLattice
    orders: tuple[int, ...]
    generator_lifts: tuple[tuple[Fraction, ...], ...]
    _snf_rows: tuple[tuple[int, ...], ...] = field(repr=False)
    _snf_orders: tuple[int, ...] = field(repr=False)
    _unit: int = field(default=1, repr=False)

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def coords(self, x: Sequence) -> tuple[int, ...]:
        """Coordinates of the class of a dual vector ``x``."""
        gx = la.mat_vec(self.lattice.gram, x)
        if any(Fraction(c).denominator != 1 for c in gx):
            raise DomainError("vector is not in the dual lattice")
        gx = [int(c) for c in gx]
        raw = tuple(la.dot(row, gx) % d for row, d in zip(self._snf_rows, self._snf_orders))
        if self._unit != 1:
            raw = ((raw[0] * self._unit) % self.orders[0],)
        return raw

    def lift(self, c: Sequence[int]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.lattice.rank
        for ci, g in zip(c, self.generator_lifts):
            out = [a + ci * b for a, b in zip(out, g)]
        return tuple(out)

    def reduce(self, c: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % d for x, d in zip(c, self.orders))

    def neg(self, c: Sequence[int]) -> tuple[int, ...]:
        return self.reduce(tuple(-x for x in c))

    def qform(self, c: Sequence[int]) -> Fraction:
        x = self.lift(c)
        return _reduce_mod2(pair(self.lattice, x, x))

    def bform(self, c1: Sequence[int], c2: Sequence[int]) -> Fraction:
        q = Fraction(pair(self.lattice, self.lift(c1), self.lift(c2)))
        return q - q.numerator // q.denominator

    def element_order(self, c: Sequence[int]) -> int:
        out = 1
        for x, d in zip(self.reduce(c), self.orders):
            k = d // gcd(x, d)
            out = out * k // gcd(out, k)
        return out


def discriminant_group(L: IntegralLattice) -> DiscriminantGroup:
    snf = smith_normal_form(L.gram)
    n = L.rank
    keep = [i for i, d in enumerate(snf.diagonal) if d > 1]
    orders = tuple(snf.diagonal[i] for i in keep)
    # G = U^-1 D V^-1, so G^-1 U^-1 e_i = V e_i / d_i
    lifts = tuple(tuple(Fraction(snf.V[r][i], snf.diagonal[i]) for r in range(n)) for i in keep)
    rows = tuple(snf.U[i] for i in keep)
    grp = DiscriminantGroup(L, orders, lifts, rows, orders)
    if L.disc_generators is not None:
        grp = _rebase_cyclic(grp, L.disc_generators)
    return grp


def _rebase_cyclic(grp: DiscriminantGroup, gens) -> DiscriminantGroup:
    if len(grp.orders) != 1 or len(gens) != 1:
        raise DomainError("preferred discriminant generators only supported for cyclic groups")
    N = grp.orders[0]
    (c,) = grp.coords(gens[0])
    if gcd(c, N) != 1:
        raise DomainError("preferred lift does not generate the discriminant group")
    return DiscriminantGroup(
        grp.lattice, grp.orders, (tuple(gens[0]),), grp._snf_rows, grp._snf_orders, pow(c, -1, N)
    )


def vector_disc_class(L: IntegralLattice, x: Sequence[int], group: DiscriminantGroup | None = None):
    """Class of ``x / div(x)`` in the discriminant group, for primitive ``x``."""
    if not is_primitive(x):
        raise DomainError("vector must be primitive")
    group = group or discriminant_group(L)
    d = divisibility(L, x)
    return group.coords(tuple(Fraction(c, d) for c in x))
