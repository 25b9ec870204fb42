"""Squares and cubes over finite 2-crossed modules of groups.

Groups are multiplication tables (index 0 is the identity).  A square is a
2-cell (g1, g2, h) with alpha(h) = g2 g1^{-1}; a cube is a 3-cell between
two squares with beta(l) = h2 h1^{-1}.  All composition and inverse laws
are exact table lookups, so shipped instances can be checked exhaustively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class CompositionError(ValueError):
    """Cells do not share the face/edge required by the composition."""


class GroupTableError(ValueError):
    """A table fails the group or 2-crossed-module conditions."""


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: tuple[tuple[int, ...], ...]  # table[a][b] = a*b
    inverse: tuple[int, ...]

    @classmethod
    def from_table(cls, name: str, table) -> "FiniteGroup":
        t = tuple(tuple(row) for row in table)
        n = len(t)
        if any(len(row) != n for row in t):
            raise GroupTableError(f"{name}: table is not square")
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise GroupTableError(f"{name}: element 0 is not the identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise GroupTableError(f"{name}: not associative at ({a},{b},{c})")
        inv = []
        for a in range(n):
            j = next((b for b in range(n) if t[a][b] == 0 and t[b][a] == 0), None)
            if j is None:
                raise GroupTableError(f"{name}: element {a} has no inverse")
            inv.append(j)
        return cls(name, t, tuple(inv))

    @classmethod
    def cyclic(cls, name: str, n: int) -> "FiniteGroup":
        return cls.from_table(name, [[(a + b) % n for b in range(n)] for a in range(n)])

    @classmethod
    def trivial(cls, name: str = "1") -> "FiniteGroup":
        return cls.cyclic(name, 1)

    @classmethod
    def symmetric3(cls, name: str = "S3") -> "FiniteGroup":
        """S3 as permutations of {0,1,2}; element 0 is the identity."""
        perms = [
            (0, 1, 2), (1, 2, 0), (2, 0, 1),  # rotations
            (0, 2, 1), (2, 1, 0), (1, 0, 2),  # transpositions
        ]
        index = {p: i for i, p in enumerate(perms)}
        table = [
            [index[tuple(p[qq] for qq in q)] for q in perms] for p in perms
        ]
        return cls.from_table(name, table)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def conjugation_action(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self.mul(self.mul(g, a), self.inv(g)) for a in self.elements())
            for g in self.elements()
        )


def _check_hom(name: str, src: FiniteGroup, dst: FiniteGroup, table: tuple[int, ...]):
    if len(table) != src.order:
        raise GroupTableError(f"{name}: map table has wrong length")
    if any(v < 0 or v >= dst.order for v in table):
        raise GroupTableError(f"{name}: value out of range")
    for a in src.elements():
        for b in src.elements():
            if table[src.mul(a, b)] != dst.mul(table[a], table[b]):
                raise GroupTableError(f"{name}: not a homomorphism at ({a},{b})")


def _check_action(
    name: str, g: FiniteGroup, target: FiniteGroup, act: tuple[tuple[int, ...], ...]
):
    """Left action of g on target by automorphisms."""
    if len(act) != g.order or any(len(row) != target.order for row in act):
        raise GroupTableError(f"{name}: action table has wrong shape")
    for e in target.elements():
        if act[0][e] != e:
            raise GroupTableError(f"{name}: identity does not act trivially")
    for a in g.elements():
        for b in g.elements():
            for e in target.elements():
                if act[g.mul(a, b)][e] != act[a][act[b][e]]:
                    raise GroupTableError(f"{name}: not a left action at ({a},{b},{e})")
    for a in g.elements():
        for e1 in target.elements():
            for e2 in target.elements():
                if act[a][target.mul(e1, e2)] != target.mul(act[a][e1], act[a][e2]):
                    raise GroupTableError(f"{name}: not by automorphisms at ({a},{e1},{e2})")


@dataclass(frozen=True)
class FiniteTwoCrossedGroupModule:
    L: FiniteGroup
    H: FiniteGroup
    G: FiniteGroup
    beta: tuple[int, ...]  # L -> H
    alpha: tuple[int, ...]  # H -> G
    act_on_l: tuple[tuple[int, ...], ...]  # per G element, permutation of L
    act_on_h: tuple[tuple[int, ...], ...]
    peiffer_lift: tuple[tuple[int, ...], ...]  # H x H -> L

    @classmethod
    def build(cls, L, H, G, beta, alpha, act_on_l, act_on_h, peiffer_lift):
        mod = cls(
            L,
            H,
            G,
            tuple(beta),
            tuple(alpha),
            tuple(tuple(r) for r in act_on_l),
            tuple(tuple(r) for r in act_on_h),
            tuple(tuple(r) for r in peiffer_lift),
        )
        mod.validate()
        return mod

    def act_h_prime(self, h: int, l: int) -> int:
        """h |>' l = l * {beta(l)^{-1}, h}."""
        bl_inv = self.H.inv(self.beta[l])
        return self.L.mul(l, self.peiffer_lift[bl_inv][h])

    def validate(self):
        L, H, G = self.L, self.H, self.G
        _check_hom("beta", L, H, self.beta)
        _check_hom("alpha", H, G, self.alpha)
        for l in L.elements():
            if self.alpha[self.beta[l]] != 0:
                raise GroupTableError("alpha(beta(l)) != identity")
        _check_action("act_on_l", G, L, self.act_on_l)
        _check_action("act_on_h", G, H, self.act_on_h)
        if len(self.peiffer_lift) != H.order or any(
            len(r) != H.order for r in self.peiffer_lift
        ):
            raise GroupTableError("peiffer_lift has wrong shape")
        # Lifting is G-equivariant: g |> {h1, h2} = {g |> h1, g |> h2}
        for g in G.elements():
            for h1 in H.elements():
                for h2 in H.elements():
                    lhs = self.act_on_l[g][self.peiffer_lift[h1][h2]]
                    rhs = self.peiffer_lift[self.act_on_h[g][h1]][self.act_on_h[g][h2]]
                    if lhs != rhs:
                        raise GroupTableError("peiffer_lift not G-equivariant")
        # (H, G; alpha, |>) is a crossed module.
        for g in G.elements():
            for h in H.elements():
                if self.alpha[self.act_on_h[g][h]] != G.mul(
                    G.mul(g, self.alpha[h]), G.inv(g)
                ):
                    raise GroupTableError("alpha not equivariant for the G-action")
        for h1 in H.elements():
            for h2 in H.elements():
                if self.act_on_h[self.alpha[h1]][h2] != H.mul(
                    H.mul(h1, h2), H.inv(h1)
                ):
                    raise GroupTableError("(H, G) Peiffer identity fails")
        # beta is G-equivariant.
        for g in G.elements():
            for l in L.elements():
                if self.beta[self.act_on_l[g][l]] != self.act_on_h[g][self.beta[l]]:
                    raise GroupTableError("beta not equivariant for the G-action")
        # Derived action |>' makes (L, H; beta, |>') a crossed module.
        for h in H.elements():
            for l in L.elements():
                if self.beta[self.act_h_prime(h, l)] != H.mul(
                    H.mul(h, self.beta[l]), H.inv(h)
                ):
                    raise GroupTableError("beta not equivariant for the derived action")
        for l1 in L.elements():
            for l2 in L.elements():
                if self.act_h_prime(self.beta[l1], l2) != L.mul(
                    L.mul(l1, l2), L.inv(l1)
                ):
                    raise GroupTableError("(L, H) Peiffer identity fails")
        # |>' is a left action of H on L by automorphisms.
        for l in L.elements():
            if self.act_h_prime(0, l) != l:
                raise GroupTableError("identity does not act trivially via |>'")
        for h1 in H.elements():
            for h2 in H.elements():
                for l in L.elements():
                    if self.act_h_prime(H.mul(h1, h2), l) != self.act_h_prime(
                        h1, self.act_h_prime(h2, l)
                    ):
                        raise GroupTableError("|>' is not a left action")
        for h in H.elements():
            for l1 in L.elements():
                for l2 in L.elements():
                    if self.act_h_prime(h, L.mul(l1, l2)) != L.mul(
                        self.act_h_prime(h, l1), self.act_h_prime(h, l2)
                    ):
                        raise GroupTableError("|>' is not by automorphisms")


@dataclass(frozen=True)
class Square:
    module: FiniteTwoCrossedGroupModule
    g1: int
    g2: int
    h: int

    def __post_init__(self):
        G = self.module.G
        if self.module.alpha[self.h] != G.mul(self.g2, G.inv(self.g1)):
            raise GroupTableError("square boundary fails: alpha(h) != g2 g1^{-1}")

    def is_identity(self) -> bool:
        return self.h == 0 and self.g1 == self.g2


def identity_square(module: FiniteTwoCrossedGroupModule, g: int) -> Square:
    return Square(module, g, g, 0)


def square_compose_h(s1: Square, s2: Square) -> Square:
    """Glue along the shared edge: result value h1 ∘ h2 = h2 h1."""
    if s1.module is not s2.module and s1.module != s2.module:
        raise CompositionError("squares over different modules")
    if s1.g2 != s2.g1:
        raise CompositionError("edge mismatch: s1.g2 != s2.g1")
    H = s1.module.H
    return Square(s1.module, s1.g1, s2.g2, H.mul(s2.h, s1.h))


def square_compose_v(s1: Square, s2: Square) -> Square:
    """Stack: boundaries multiply, value h1 ⋆ h2 = h1 (g1 |> h2)."""
    if s1.module is not s2.module and s1.module != s2.module:
        raise CompositionError("squares over different modules")
    m = s1.module
    G, H = m.G, m.H
    h = H.mul(s1.h, m.act_on_h[s1.g1][s2.h])
    return Square(m, G.mul(s1.g1, s2.g1), G.mul(s1.g2, s2.g2), h)


def square_inverse_h(s: Square) -> Square:
    return Square(s.module, s.g2, s.g1, s.module.H.inv(s.h))


def square_inverse_v(s: Square) -> Square:
    m = s.module
    h = m.act_on_h[m.G.inv(s.g1)][m.H.inv(s.h)]
    return Square(m, m.G.inv(s.g1), m.G.inv(s.g2), h)


@dataclass(frozen=True)
class Cube:
    """3-cell from the square (g1, g2, h1) to the square (g3, g4, h2)."""

    module: FiniteTwoCrossedGroupModule
    s1: Square
    s2: Square
    l: int

    def __post_init__(self):
        H = self.module.H
        if self.module.beta[self.l] != H.mul(self.s2.h, H.inv(self.s1.h)):
            raise GroupTableError("cube boundary fails: beta(l) != h2 h1^{-1}")

    def is_identity(self) -> bool:
        return self.l == 0 and self.s1 == self.s2

    def is_unit(self) -> bool:
        """Trivial volume over identity squares: the unit for vertical stacking."""
        return self.l == 0 and self.s1.is_identity() and self.s2.is_identity()


def identity_cube(s: Square) -> Cube:
    return Cube(s.module, s, s, 0)


def cube_compose_h(c1: Cube, c2: Cube) -> Cube:
    """Glue along the shared square: volume l ∘ l' = l' l."""
    if c1.s2 != c2.s1:
        raise CompositionError("face mismatch: c1's target square differs from c2's source")
    L = c1.module.L
    return Cube(c1.module, c1.s1, c2.s2, L.mul(c2.l, c1.l))


def cube_compose_v(c1: Cube, c2: Cube) -> Cube:
    """Stack along the square direction: volume l ⋆ l' = l (h1 |>' l').

    The result faces are h1 h3 and h2 h4, making the volume boundary
    beta(l ⋆ l') = h2 h4 h3^{-1} h1^{-1} exact.
    """
    if c1.s1.g2 != c2.s1.g1 or c1.s2.g2 != c2.s2.g1:
        raise CompositionError("face mismatch: bottom edges of c1 differ from top edges of c2")
    m = c1.module
    H, L = m.H, m.L
    left = Square(m, c1.s1.g1, c2.s1.g2, H.mul(c1.s1.h, c2.s1.h))
    right = Square(m, c1.s2.g1, c2.s2.g2, H.mul(c1.s2.h, c2.s2.h))
    vol = L.mul(c1.l, m.act_h_prime(c1.s1.h, c2.l))
    return Cube(m, left, right, vol)


def cube_inverse_h(c: Cube) -> Cube:
    return Cube(c.module, c.s2, c.s1, c.module.L.inv(c.l))


def cube_inverse_v(c: Cube) -> Cube:
    m = c.module
    H, L = m.H, m.L
    s1 = Square(m, c.s1.g2, c.s1.g1, H.inv(c.s1.h))
    s2 = Square(m, c.s2.g2, c.s2.g1, H.inv(c.s2.h))
    vol = m.act_h_prime(H.inv(c.s1.h), L.inv(c.l))
    return Cube(m, s1, s2, vol)


def all_squares(m: FiniteTwoCrossedGroupModule):
    for g1 in m.G.elements():
        for h in m.H.elements():
            yield Square(m, g1, m.G.mul(m.alpha[h], g1), h)


def all_cubes(m: FiniteTwoCrossedGroupModule):
    for s1 in all_squares(m):
        for l in m.L.elements():
            h2 = m.H.mul(m.beta[l], s1.h)
            for g3 in m.G.elements():
                s2 = Square(m, g3, m.G.mul(m.alpha[h2], g3), h2)
                yield Cube(m, s1, s2, l)


def exhaustive_checks(m: FiniteTwoCrossedGroupModule) -> dict[str, tuple[int, int]]:
    """Exhaustively verify every composition/inverse law on every cell.

    Returns {check name: (violations, cases)}.  The boundary relations are
    also enforced by the Square/Cube constructors, so a violation would

    surface as an exception; both paths count as failures here.
    """
    G, H, L = m.G, m.H, m.L
    out: dict[str, tuple[int, int]] = {}
    squares = list(all_squares(m))
    cubes = list(all_cubes(m))

    def run(name, cases):
        bad = 0
        total = 0
        for case in cases:
            total += 1
            try:
                if not case():
                    bad += 1
            except (GroupTableError, CompositionError):
                bad += 1
        out[name] = (bad, total)

    def horiz_cases():
        for s1 in squares:
            for s2 in squares:
                if s1.g2 != s2.g1:
                    continue
                yield lambda s1=s1, s2=s2: (
                    square_compose_h(s1, s2).h == H.mul(s2.h, s1.h)
                    and m.alpha[square_compose_h(s1, s2).h]
                    == G.mul(s2.g2, G.inv(s1.g1))
                )

    run("square-horizontal-boundary", horiz_cases())

    def vert_cases():
        for s1 in squares:
            for s2 in squares:
                yield lambda s1=s1, s2=s2: m.alpha[square_compose_v(s1, s2).h] == G.mul(
                    G.mul(s1.g2, s2.g2), G.inv(G.mul(s1.g1, s2.g1))
                )

    run("square-vertical-boundary", vert_cases())

    sd = semidirect_product_table(m)
    pairs = [(g, h) for g in G.elements() for h in H.elements()]
    index = {p: i for i, p in enumerate(pairs)}

    def semidirect_cases():
        for s1 in squares:
            for s2 in squares:
                def case(s1=s1, s2=s2):
                    s = square_compose_v(s1, s2)
                    return index[(s.g1, s.h)] == sd.mul(
                        index[(s1.g1, s1.h)], index[(s2.g1, s2.h)]
                    )
                yield case

    run("square-vertical-semidirect", semidirect_cases())

    def assoc_cases():
        for s1 in squares:
            for s2 in squares:
                if s1.g2 != s2.g1:
                    continue
                for s3 in squares:
                    if s2.g2 != s3.g1:
                        continue
                    yield lambda s1=s1, s2=s2, s3=s3: square_compose_h(
                        square_compose_h(s1, s2), s3
                    ) == square_compose_h(s1, square_compose_h(s2, s3))

    run("square-horizontal-associative", assoc_cases())

    def sq_inverse_cases():
        for s in squares:
            yield lambda s=s: (
                square_compose_h(s, square_inverse_h(s)).is_identity()
                and square_compose_h(square_inverse_h(s), s).is_identity()
                and m.alpha[square_inverse_h(s).h] == G.mul(s.g1, G.inv(s.g2))
                and square_compose_v(s, square_inverse_v(s)).is_identity()
                and square_compose_v(square_inverse_v(s), s).is_identity()
                and m.alpha[square_inverse_v(s).h] == G.mul(G.inv(s.g2), s.g1)
            )

    run("square-inverses", sq_inverse_cases())

    def cube_h_cases():
        for c1 in cubes:
            for c2 in cubes:
                if c1.s2 != c2.s1:
                    continue
                yield lambda c1=c1, c2=c2: (
                    cube_compose_h(c1, c2).l == L.mul(c2.l, c1.l)
                    and m.beta[cube_compose_h(c1, c2).l]
                    == H.mul(c2.s2.h, H.inv(c1.s1.h))
                )

    run("cube-horizontal-boundary", cube_h_cases())

    def cube_v_cases():
        for c1 in cubes:
            for c2 in cubes:
                if c1.s1.g2 != c2.s1.g1 or c1.s2.g2 != c2.s2.g1:
                    continue

                def case(c1=c1, c2=c2):
                    c = cube_compose_v(c1, c2)
                    h1, h2 = c1.s1.h, c1.s2.h
                    h3, h4 = c2.s1.h, c2.s2.h
                    expect = H.mul(
                        H.mul(h2, h4), H.inv(H.mul(h1, h3))
                    )  # h2 h4 h3^{-1} h1^{-1}
                    return (
                        c.s1.h == H.mul(h1, h3)
                        and c.s2.h == H.mul(h2, h4)
                        and m.beta[c.l] == expect
                    )

                yield case

    run("cube-vertical-boundary", cube_v_cases())

    def cube_inverse_cases():
        for c in cubes:
            def case(c=c):
                ch = cube_inverse_h(c)
                cv = cube_inverse_v(c)
                return (
                    cube_compose_h(c, ch).is_identity()
                    and cube_compose_h(ch, c).is_identity()
                    and m.beta[ch.l] == H.mul(c.s1.h, H.inv(c.s2.h))
                    and cube_compose_v(c, cv).is_unit()
                    and cube_compose_v(cv, c).is_unit()
                    and m.beta[cv.l] == H.mul(H.inv(c.s2.h), c.s1.h)
                )
            yield case

    run("cube-inverses", cube_inverse_cases())
    return out


def semidirect_product_table(m: FiniteTwoCrossedGroupModule) -> FiniteGroup:
    """The group G ⋉ H with (g, h)(g', h') = (g g', h (g |> h'))."""
    G, H = m.G, m.H
    pairs = list(itertools.product(G.elements(), H.elements()))
    index = {p: i for i, p in enumerate(pairs)}
    table = []
    for g1, h1 in pairs:
        row = []
        for g2, h2 in pairs:
            prod = (G.mul(g1, g2), H.mul(h1, m.act_on_h[g1][h2]))
            row.append(index[prod])
        table.append(row)
    return FiniteGroup.from_table("GxH", table)
