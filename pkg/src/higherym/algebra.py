"""Finite-dimensional Lie algebras given by structure constants.

The structure tensor c stores [e_a, e_b] = Σ_k c[a][b][k] e_k as a dense
rank-3 tuple of Fractions.  Everything is immutable and exact: the float
mode used by quadrature cross-checks lives in the callers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import ZERO, q


class StructureError(ValueError):
    """Mismatched algebras, bad dimensions or other structural misuse."""


Tensor3 = tuple[tuple[tuple[Fraction, ...], ...], ...]


def zero_tensor(d1: int, d2: int, d3: int) -> Tensor3:
    return tuple(
        tuple(tuple(ZERO for _ in range(d3)) for _ in range(d2)) for _ in range(d1)
    )


def tensor_from_entries(d1: int, d2: int, d3: int, entries) -> Tensor3:
    """Dense rank-3 tensor from sparse (i, j, k, value) entries."""
    data = [[[ZERO] * d3 for _ in range(d2)] for _ in range(d1)]
    for i, j, k, v in entries:
        data[i][j][k] = data[i][j][k] + q(v)
    return tuple(tuple(tuple(row) for row in plane) for plane in data)


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    dim: int
    structure: Tensor3

    def __post_init__(self):
        if self.dim < 0:
            raise StructureError("negative dimension")
        if len(self.structure) != self.dim or any(
            len(p) != self.dim or any(len(r) != self.dim for r in p)
            for p in self.structure
        ):
            raise StructureError(f"structure tensor shape must be {self.dim}^3")

    @classmethod
    def abelian(cls, name: str, dim: int) -> "LieAlgebra":
        return cls(name, dim, zero_tensor(dim, dim, dim))

    @classmethod
    def from_brackets(cls, name: str, dim: int, entries) -> "LieAlgebra":
        """Build from entries (a, b, k, value) given for a < b only.

        The antisymmetric counterpart c[b][a][k] = -value is filled in, so a
        config cannot ship an inconsistent pair.
        """
        data = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for a, b, k, v in entries:
            if a >= b:
                raise StructureError(
                    f"structure entries must have a < b, got ({a},{b},{k})"
                )
            v = q(v)
            data[a][b][k] += v
            data[b][a][k] -= v
        return cls(name, dim, tuple(tuple(tuple(r) for r in p) for p in data))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (ZERO,) * self.dim)

    def basis(self, a: int) -> "AlgebraElement":
        return AlgebraElement(
            self, tuple(Fraction(1) if i == a else ZERO for i in range(self.dim))
        )

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, tuple(q(c) for c in coords))

    def is_abelian(self) -> bool:
        return all(
            c == 0 for plane in self.structure for row in plane for c in row
        )


@dataclass(frozen=True)
class AlgebraElement:
    algebra: LieAlgebra
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise StructureError("coordinate length does not match algebra dim")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self, other)
        return AlgebraElement(
            self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self, other)
        return AlgebraElement(
            self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __rmul__(self, c) -> "AlgebraElement":
        c = q(c)
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def max_abs(self) -> Fraction:
        return max((abs(c) for c in self.coords), default=ZERO)


def _same_algebra(a: AlgebraElement, b: AlgebraElement):
    if a.algebra != b.algebra:
        raise StructureError(
            f"elements live in different algebras: {a.algebra.name} vs {b.algebra.name}"
        )


def bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """[a, b] by contraction with the structure tensor; bilinear, antisymmetric."""
    _same_algebra(a, b)
    L = a.algebra
    out = [ZERO] * L.dim
    for i, ci in enumerate(a.coords):
        if ci == 0:
            continue
        for j, cj in enumerate(b.coords):
            if cj == 0:
                continue
            cij = ci * cj
            row = L.structure[i][j]
            for k in range(L.dim):
                if row[k] != 0:
                    out[k] += cij * row[k]
    return AlgebraElement(L, tuple(out))


def jacobi_residual(L: LieAlgebra) -> Fraction:
    """Max |[[e_a,e_b],e_c] + [[e_b,e_c],e_a] + [[e_c,e_a],e_b]| over basis triples."""
    worst = ZERO
    basis = [L.basis(a) for a in range(L.dim)]
    for a in range(L.dim):
        for b in range(L.dim):
            for c in range(L.dim):
                cyc = (
                    bracket(bracket(basis[a], basis[b]), basis[c])
                    + bracket(bracket(basis[b], basis[c]), basis[a])
                    + bracket(bracket(basis[c], basis[a]), basis[b])
                )
                worst = max(worst, cyc.max_abs())
    return worst


def antisymmetry_residual(L: LieAlgebra) -> Fraction:
    worst = ZERO
    for a in range(L.dim):
        for b in range(L.dim):
            for k in range(L.dim):
                worst = max(
                    worst, abs(L.structure[a][b][k] + L.structure[b][a][k])
                )
    return worst


def random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_element(L: LieAlgebra, seed: int, bound: int = 5) -> AlgebraElement:
    """Deterministic pseudo-random element; same seed gives the same coords."""
    if bound < 1:
        raise StructureError("bound must be >= 1")
    rng = random.Random(seed)
    return AlgebraElement(
        L, tuple(random_rational(rng, bound) for _ in range(L.dim))
    )


def so3() -> LieAlgebra:
    """Rotation algebra: [e_a, e_b] = e_c for cyclic (a, b, c)."""
    return LieAlgebra.from_brackets(
        "so3", 3, [(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)]
    )


def so3_adjoint_rep():
    """Adjoint 3x3 matrices of so3 (integer entries, faithful)."""
    from .linalg import mat

    e1 = mat([[0, 0, 0], [0, 0, -1], [0, 1, 0]])
    e2 = mat([[0, 0, 1], [0, 0, 0], [-1, 0, 0]])
    e3 = mat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    return (e1, e2, e3)
